import random

import pytest
from hypothesis import given, settings, strategies as st

from tokenrelay.clock import ManualClock
from tokenrelay.frontend import Router
from tokenrelay.management import ManagementApi
from tokenrelay.registry import RegistryConfig, RouteKind, TokenRegistry
from tokenrelay.status import JobState, JobStatusReport, StatusBoard

DOMAIN = "nb.example.org"


@pytest.fixture
def setup():
    clock = ManualClock()
    cfg = RegistryConfig(trusted_cidrs=["10.0.0.0/8"], public_domain=DOMAIN)
    registry = TokenRegistry(cfg, clock=clock, rng=random.Random(3))
    board = StatusBoard()
    return registry, board, Router(registry, board, DOMAIN), clock


def test_active_mapping_proxies(setup):
    registry, board, router, clock = setup
    label = registry.issue("10.1.0.5").label
    registry.redeem(label, 8888, "10.1.0.22")
    registry.reconcile()
    d = router.resolve_host(f"{label}.{DOMAIN}")
    assert d.kind is RouteKind.PROXY
    assert d.target == ("10.1.0.22", 8888)


def test_issued_token_is_pending(setup):
    registry, board, router, clock = setup
    label = registry.issue("10.1.0.5").label
    d = router.resolve_host(f"{label}.{DOMAIN}")
    assert d.kind is RouteKind.PENDING
    assert d.status is None


def test_pending_carries_status_when_registered(setup):
    registry, board, router, clock = setup
    label = registry.issue("10.1.0.5").label
    registry.register_job(label, "3141592", "10.1.0.5")
    board.put(JobStatusReport("3141592", JobState.PENDING, "position 7 in queue", clock.now()))
    d = router.resolve_host(f"{label}.{DOMAIN}")
    assert d.kind is RouteKind.PENDING
    assert d.status.detail == "position 7 in queue"


def test_foreign_domain_not_found(setup):
    _, _, router, _ = setup
    assert router.resolve_host("evil.example.com").kind is RouteKind.NOT_FOUND


def test_multi_label_host_not_found(setup):
    registry, _, router, _ = setup
    label = registry.issue("10.1.0.5").label
    assert router.resolve_host(f"a.{label}.{DOMAIN}").kind is RouteKind.NOT_FOUND
    assert router.resolve_host(f"a.b.{DOMAIN}").kind is RouteKind.NOT_FOUND


def test_bare_domain_not_found(setup):
    _, _, router, _ = setup
    assert router.resolve_host(DOMAIN).kind is RouteKind.NOT_FOUND
    assert router.resolve_host(f".{DOMAIN}").kind is RouteKind.NOT_FOUND


def test_case_port_and_trailing_dot_normalization(setup):
    registry, _, router, _ = setup
    label = registry.issue("10.1.0.5").label
    registry.redeem(label, 8888, "10.1.0.22")
    registry.reconcile()
    for variant in [
        f"{label.upper()}.{DOMAIN.upper()}",
        f"{label}.{DOMAIN}:443",
        f"{label}.{DOMAIN}.",
        f"{label}.{DOMAIN}.:8443",
    ]:
        assert router.resolve_host(variant).kind is RouteKind.PROXY, variant


def test_garbage_hosts_not_found(setup):
    _, _, router, _ = setup
    for host in [None, "", "   ", "[::1]:443", "127.0.0.1", f"..{DOMAIN}",
                 f"bad_label.{DOMAIN}", f"-dash.{DOMAIN}", f"{'x' * 64}.{DOMAIN}"]:
        assert router.resolve_host(host).kind is RouteKind.NOT_FOUND, host


def test_destroyed_and_expired_not_found(setup):
    registry, _, router, clock = setup
    label = registry.issue("10.1.0.5").label
    registry.redeem(label, 8888, "10.1.0.22")
    registry.destroy(label, 8888, "10.1.0.22")
    assert router.resolve_host(f"{label}.{DOMAIN}").kind is RouteKind.NOT_FOUND


def test_two_tokens_distinct_hostnames(setup):
    registry, _, router, _ = setup
    a = registry.issue("10.1.0.5").label
    b = registry.issue("10.1.0.5").label
    assert a != b
    assert f"{a}.{DOMAIN}" != f"{b}.{DOMAIN}"


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=80))
def test_arbitrary_host_headers_never_crash(host):
    clock = ManualClock()
    cfg = RegistryConfig(trusted_cidrs=["10.0.0.0/8"], public_domain=DOMAIN)
    registry = TokenRegistry(cfg, clock=clock, rng=random.Random(0))
    router = Router(registry, StatusBoard(), DOMAIN)
    d = router.resolve_host(host)
    assert d.kind in (RouteKind.NOT_FOUND, RouteKind.PENDING, RouteKind.PROXY)
    assert d.kind is RouteKind.NOT_FOUND  # nothing is registered
