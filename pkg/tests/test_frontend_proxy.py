import hashlib
import socket
import threading
import time

import pytest
import requests

from tokenrelay import frontend as frontend_mod
from tokenrelay.frontend import PrivilegedDialRefused, dial_upstream
from tokenrelay.sim.apps import EchoApp

from conftest import DOMAIN


@pytest.fixture
def app():
    a = EchoApp(sentinel="alpha").start()
    yield a
    a.stop()


def get(rig, label, path="/", **kw):
    return requests.get(rig.url(path), headers={"Host": rig.host_for(label)}, timeout=10, **kw)


class TestBasicProxying:
    def test_path_method_and_body_preserved(self, rig, app):
        label = rig.publish(app)
        r = get(rig, label, "/tree")
        assert r.status_code == 200
        assert r.text == "upstream:alpha:/tree"
        assert r.headers["X-App"] == "alpha"

    def test_post_body_roundtrip(self, rig, app):
        label = rig.publish(app)
        payload = b"cell-output \x00\x01\x02" * 1000
        r = requests.post(
            rig.url("/echo"),
            headers={"Host": rig.host_for(label), "Content-Type": "application/octet-stream"},
            data=payload,
            timeout=10,
        )
        assert r.status_code == 200
        assert r.content == payload

    def test_forwarding_headers(self, rig, app):
        label = rig.publish(app)
        r = get(rig, label, "/headers")
        seen = r.json()
        assert seen["X-Forwarded-Host"] == rig.host_for(label)
        assert seen["X-Forwarded-Proto"] == "http"  # dev mode
        assert seen["X-Forwarded-For"] == "127.0.0.1"
        assert seen["Host"] == f"127.0.0.1:{app.port}"

    def test_client_xff_appended_not_trusted(self, rig, app):
        label = rig.publish(app)
        r = requests.get(
            rig.url("/headers"),
            headers={"Host": rig.host_for(label), "X-Forwarded-For": "6.6.6.6"},
            timeout=10,
        )
        xff = r.json()["X-Forwarded-For"]
        assert xff.split(",")[-1].strip() == "127.0.0.1"

    def test_query_string_preserved(self, rig, app):
        label = rig.publish(app)
        r = get(rig, label, "/bytes?n=64&seed=3")
        assert len(r.content) == 64

    def test_chunked_upstream_response(self, rig, app):
        label = rig.publish(app)
        r = get(rig, label, "/chunked?parts=5")
        assert r.text.count("part-") == 5

    def test_head_request(self, rig, app):
        label = rig.publish(app)
        r = requests.head(rig.url("/tree"), headers={"Host": rig.host_for(label)}, timeout=10)
        assert r.status_code == 200
        assert r.content == b""


class TestFidelity:
    def test_large_body_byte_identical(self, rig, app):
        label = rig.publish(app)
        path = "/bytes?n=1048576&seed=9"
        direct = requests.get(f"http://127.0.0.1:{app.port}{path}", timeout=30).content
        proxied = get(rig, label, path).content
        assert hashlib.sha256(direct).hexdigest() == hashlib.sha256(proxied).hexdigest()
        assert len(proxied) == 1048576


class TestIsolation:
    def test_two_labels_never_cross(self, rig):
        a = EchoApp(sentinel="app-a").start()
        b = EchoApp(sentinel="app-b").start()
        try:
            la = rig.publish(a)
            lb = rig.publish(b)
            results = {}

            def fetch(label, key):
                rs = [get(rig, label).text for _ in range(20)]
                results[key] = rs

            ta = threading.Thread(target=fetch, args=(la, "a"))
            tb = threading.Thread(target=fetch, args=(lb, "b"))
            ta.start(); tb.start(); ta.join(); tb.join()
            assert all("app-a" in t and "app-b" not in t for t in results["a"])
            assert all("app-b" in t and "app-a" not in t for t in results["b"])
        finally:
            a.stop()
            b.stop()


class TestErrors:
    def test_upstream_down_gives_502_naming_token_not_ip(self, rig):
        # claim a port with no listener
        probe = socket.socket()
        probe.bind(("127.0.0.1", 0))
        dead_port = probe.getsockname()[1]
        probe.close()
        label = rig.registry.issue("127.0.0.1").label
        rig.registry.redeem(label, dead_port, "127.0.0.1")
        rig.registry.reconcile()
        r = get(rig, label)
        assert r.status_code == 502
        assert label in r.text
        assert f"127.0.0.1:{dead_port}" not in r.text
        assert str(dead_port) not in r.text

    def test_pending_page_for_issued(self, rig):
        label = rig.registry.issue("127.0.0.1").label
        r = get(rig, label)
        assert r.status_code == 200
        assert label in r.text
        assert "not serving content yet" in r.text

    def test_not_found_for_unknown_and_destroyed_identical(self, rig, app):
        r_unknown = get(rig, "some-unknown-label")
        label = rig.publish(app)
        rig.registry.destroy(label, app.port, "127.0.0.1")
        rig.registry.reconcile()
        r_destroyed = get(rig, label)
        assert r_unknown.status_code == r_destroyed.status_code == 404
        assert r_unknown.text == r_destroyed.text


class TestDialGuard:
    def test_dial_refuses_privileged_ports(self):
        calls = []
        orig = socket.create_connection

        def recorder(*args, **kw):
            calls.append(args[0])
            raise AssertionError("should not be reached for privileged ports")

        socket.create_connection = recorder
        try:
            for port in [1, 80, 443, 1023]:
                with pytest.raises(PrivilegedDialRefused):
                    dial_upstream("127.0.0.1", port, 1.0)
            assert calls == []
        finally:
            socket.create_connection = orig

    def test_corrupt_mapping_never_dialed(self, rig, monkeypatch):
        # force a privileged-port route past redeem validation
        label = rig.registry.issue("127.0.0.1").label
        rig.registry.redeem(label, 8888, "127.0.0.1")
        rig.registry.reconcile()
        with rig.registry._lock:
            rig.registry._routes[label] = ("127.0.0.1", 80)
        dialed = []
        orig = socket.create_connection

        def recorder(addr, **kw):
            dialed.append(addr)
            return orig(addr, **kw)

        monkeypatch.setattr(socket, "create_connection", recorder)
        r = get(rig, label)
        assert r.status_code == 502
        assert dialed == []


class TestGrace:
    def _publish_slow(self, rig):
        app = EchoApp(sentinel="slow").start()
        label = rig.publish(app)
        return app, label

    def test_drain_lets_inflight_finish(self, rig):
        app, label = self._publish_slow(rig)
        try:
            t0 = rig.clock.now()
            result = {}

            def fetch():
                result["r"] = get(rig, label, "/slow?parts=4&delay=0.15")

            t = threading.Thread(target=fetch)
            t.start()
            time.sleep(0.2)  # stream is in flight
            rig.registry.destroy(label, app.port, "127.0.0.1")
            rig.registry.reconcile()
            t.join(timeout=10)
            assert result["r"].status_code == 200
            assert result["r"].text.count("slow-") == 4
            # but new requests fail immediately
            assert get(rig, label).status_code == 404
        finally:
            app.stop()

    def test_kill_tears_down_inflight(self):
        from conftest import FrontendRig

        rig = FrontendRig()
        rig.frontend.cfg.expiry_grace = "kill"
        app, label = self._publish_slow(rig)
        try:
            errors = []

            def fetch():
                try:
                    r = get(rig, label, "/slow?parts=30&delay=0.2")
                    errors.append(("finished", r.text))
                except requests.RequestException as exc:
                    errors.append(("aborted", exc))

            t = threading.Thread(target=fetch)
            t.start()
            time.sleep(0.4)
            rig.registry.destroy(label, app.port, "127.0.0.1")
            summary = rig.registry.reconcile()
            rig.frontend.on_deactivated(summary.deactivated)
            t.join(timeout=10)
            assert not t.is_alive()
            assert errors and errors[0][0] == "aborted"
        finally:
            app.stop()
            rig.stop()
