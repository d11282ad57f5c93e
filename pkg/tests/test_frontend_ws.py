import random

import pytest

from tokenrelay.sim import ws
from tokenrelay.sim.apps import EchoApp

from conftest import DOMAIN


@pytest.fixture
def app():
    a = EchoApp(sentinel="wsapp").start()
    yield a
    a.stop()


def connect_via_proxy(rig, label, path="/kernel"):
    return ws.WsClient("127.0.0.1", rig.port, path=path, host_header=rig.host_for(label))


def test_echo_through_proxy(rig, app):
    label = rig.publish(app)
    client = connect_via_proxy(rig, label)
    client.send_text("ping")
    opcode, payload = client.recv()
    assert (opcode, payload) == (ws.OP_TEXT, b"ping")
    client.close()


def test_close_code_propagates(rig, app):
    label = rig.publish(app)
    client = connect_via_proxy(rig, label)
    client.send_close(1000, "done")
    opcode, payload = client.recv()
    assert opcode == ws.OP_CLOSE
    code, reason = ws.parse_close(payload)
    assert code == 1000 and reason == "done"
    client.close()


def test_binary_and_large_frames(rig, app):
    label = rig.publish(app)
    client = connect_via_proxy(rig, label)
    blob = random.Random(4).randbytes(150_000)  # forces 64-bit length frames
    client.send_binary(blob)
    opcode, payload = client.recv()
    assert opcode == ws.OP_BINARY
    assert payload == blob
    client.close()


def test_transcript_matches_direct_connection(rig, app):
    label = rig.publish(app)
    rng = random.Random(99)
    messages = []
    for _ in range(200):
        if rng.random() < 0.5:
            messages.append(("text", "".join(rng.choices("abcdefg h", k=rng.randint(0, 120)))))
        else:
            messages.append(("binary", rng.randbytes(rng.randint(0, 4000))))

    def run(client):
        transcript = []
        for kind, payload in messages:
            if kind == "text":
                client.send_text(payload)
            else:
                client.send_binary(payload)
            transcript.append(client.recv())
        client.send_close(1001, "bye")
        transcript.append(client.recv())
        client.close()
        return transcript

    direct = run(ws.WsClient("127.0.0.1", app.port))
    proxied = run(connect_via_proxy(rig, label))
    assert direct == proxied


def test_upgrade_to_dead_upstream_502(rig):
    import socket

    probe = socket.socket()
    probe.bind(("127.0.0.1", 0))
    dead_port = probe.getsockname()[1]
    probe.close()
    label = rig.registry.issue("127.0.0.1").label
    rig.registry.redeem(label, dead_port, "127.0.0.1")
    rig.registry.reconcile()
    with pytest.raises(ConnectionError):
        connect_via_proxy(rig, label)


def test_ws_upgrade_on_pending_token_gets_page(rig):
    label = rig.registry.issue("127.0.0.1").label
    with pytest.raises(ConnectionError) as exc:
        connect_via_proxy(rig, label)
    # refused with the pending page, not a 101
    assert " 200 " in str(exc.value)
