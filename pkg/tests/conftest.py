import random

import pytest

from tokenrelay.clock import ManualClock
from tokenrelay.frontend import FrontendConfig, FrontendServer, Router
from tokenrelay.management import ManagementApi
from tokenrelay.registry import RegistryConfig, TokenRegistry
from tokenrelay.status import StatusBoard

DOMAIN = "nb.example.org"
TRUSTED_CIDRS = ["10.0.0.0/8", "127.0.0.0/8"]


class FrontendRig:
    """A registry + status board + running plaintext frontend on loopback."""

    def __init__(self, clock=None, seed=11, **registry_overrides):
        self.clock = clock or ManualClock()
        cfg = RegistryConfig(
            trusted_cidrs=TRUSTED_CIDRS,
            public_domain=DOMAIN,
            **registry_overrides,
        )
        self.registry = TokenRegistry(cfg, clock=self.clock, rng=random.Random(seed))
        self.board = StatusBoard()
        self.api = ManagementApi(self.registry, self.board, self.clock)
        self.router = Router(self.registry, self.board, DOMAIN)
        self.frontend = FrontendServer(
            FrontendConfig(
                bind_host="127.0.0.1",
                bind_port=0,
                public_domain=DOMAIN,
                dev_plaintext=True,
                connect_timeout_s=2,
                read_timeout_s=10,
            ),
            self.router,
        )
        self.frontend.start()

    @property
    def port(self):
        return self.frontend.port

    def url(self, path="/"):
        return f"http://127.0.0.1:{self.port}{path}"

    def host_for(self, label):
        return f"{label}.{DOMAIN}"

    def publish(self, app, label=None):
        """Issue + redeem + reconcile a token mapped to a running EchoApp."""
        if label is None:
            label = self.registry.issue("127.0.0.1").label
        self.registry.redeem(label, app.port, "127.0.0.1")
        self.registry.reconcile()
        return label

    def stop(self):
        self.frontend.stop()


@pytest.fixture
def rig():
    r = FrontendRig()
    yield r
    r.stop()
