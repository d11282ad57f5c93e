import json
import random

import pytest

from tokenrelay.clock import ManualClock
from tokenrelay.journal import Journal, JournalCorrupt
from tokenrelay.registry import RegistryConfig, TokenRegistry, record_to_dict

from transcripts import CONFIG_KW, DualRun, random_transcript


def make_registry(path, clock, seed=1, **overrides):
    cfg = RegistryConfig(**{**CONFIG_KW, **overrides})
    journal = Journal(path)
    return TokenRegistry(cfg, clock=clock, rng=random.Random(seed), journal=journal), journal


def test_replay_reproduces_state_exactly(tmp_path):
    clock = ManualClock()
    reg, journal = make_registry(tmp_path / "j.ndjson", clock)
    a = reg.issue("10.1.0.5").label
    b = reg.issue("10.1.0.5").label
    reg.register_job(a, "42", "10.1.0.5")
    reg.redeem(a, 8888, "10.1.0.22")
    reg.reconcile()
    clock.advance(100)
    reg.redeem(b, 9000, "10.1.0.30")
    reg.destroy(b, 9000, "10.1.0.30")
    journal.close()

    reg2, _ = make_registry(tmp_path / "j.ndjson", clock, seed=999)
    want = {r.label: record_to_dict(r) for r in reg.all_records()}
    got = {r.label: record_to_dict(r) for r in reg2.all_records()}
    assert got == want
    assert reg2.active_routes() == reg.active_routes()
    assert reg2.get(a).mapping.active is True


def test_replay_after_random_transcripts(tmp_path):
    rng = random.Random(7)
    for i in range(25):
        path = tmp_path / f"j{i}.ndjson"
        run = DualRun(seed=i, journal=Journal(path))
        for op in random_transcript(rng):
            got, want = run.step(op)
            assert got == want
        reopened = TokenRegistry(
            RegistryConfig(**CONFIG_KW),
            clock=run.clock,
            rng=random.Random(0),
            journal=Journal(path),
        )
        want_recs = {r.label: record_to_dict(r) for r in run.registry.all_records()}
        got_recs = {r.label: record_to_dict(r) for r in reopened.all_records()}
        assert got_recs == want_recs
        assert reopened.active_routes() == run.registry.active_routes()


def test_journal_entry_fields(tmp_path):
    clock = ManualClock()
    reg, journal = make_registry(tmp_path / "j.ndjson", clock)
    label = reg.issue("10.1.0.5").label
    journal.close()
    entry = json.loads((tmp_path / "j.ndjson").read_text().splitlines()[0])
    assert entry["seq"] == 1
    assert entry["op"] == "issue"
    assert entry["token"] == label
    assert entry["args"] == {"client_ip": "10.1.0.5"}
    assert entry["state"] == "ISSUED"
    assert entry["ts"] == pytest.approx(clock.now())
    assert entry["record"]["label"] == label


def test_torn_final_line_is_dropped(tmp_path):
    clock = ManualClock()
    path = tmp_path / "j.ndjson"
    reg, journal = make_registry(path, clock)
    a = reg.issue("10.1.0.5").label
    reg.issue("10.1.0.5")
    journal.close()
    content = path.read_text()
    lines = content.splitlines(keepends=True)
    path.write_text(lines[0] + lines[1][: len(lines[1]) // 2])

    reg2, _ = make_registry(path, clock)
    assert [r.label for r in reg2.all_records()] == [a]


def test_mid_file_corruption_raises(tmp_path):
    clock = ManualClock()
    path = tmp_path / "j.ndjson"
    reg, journal = make_registry(path, clock)
    reg.issue("10.1.0.5")
    reg.issue("10.1.0.5")
    journal.close()
    lines = path.read_text().splitlines(keepends=True)
    path.write_text("GARBAGE\n" + lines[1])
    with pytest.raises(JournalCorrupt):
        make_registry(path, clock)


def test_compaction_preserves_state_and_shrinks(tmp_path):
    clock = ManualClock()
    path = tmp_path / "j.ndjson"
    cfg = RegistryConfig(**CONFIG_KW)
    journal = Journal(path, compact_threshold_bytes=4096)
    reg = TokenRegistry(cfg, clock=clock, rng=random.Random(3), journal=journal)
    labels = [reg.issue("10.1.0.5").label for _ in range(60)]
    reg.redeem(labels[0], 8888, "10.1.0.22")
    reg.reconcile()
    size = path.stat().st_size
    assert size < 4096 * 2  # compaction kept it near one snapshot
    lines = path.read_text().splitlines()
    assert any(json.loads(l)["op"] == "snapshot" for l in lines)
    journal.close()

    reg2, _ = make_registry(path, clock, seed=999)
    want = {r.label: record_to_dict(r) for r in reg.all_records()}
    got = {r.label: record_to_dict(r) for r in reg2.all_records()}
    assert got == want
    assert reg2.active_routes() == reg.active_routes()


def test_sequence_numbers_monotonic_across_reopen(tmp_path):
    clock = ManualClock()
    path = tmp_path / "j.ndjson"
    reg, journal = make_registry(path, clock)
    reg.issue("10.1.0.5")
    last = journal.seq
    journal.close()
    reg2, journal2 = make_registry(path, clock)
    reg2.issue("10.1.0.5")
    entries = [json.loads(l) for l in path.read_text().splitlines()]
    assert entries[-1]["seq"] == last + 1
