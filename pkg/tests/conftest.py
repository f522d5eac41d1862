import socket
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from claimcheck.evalharness.synthetic import SyntheticSearchProvider, build_corpus
from claimcheck.gateway import Gateway, OfflineProvider
from claimcheck.pipeline import VerifierDeps
from claimcheck.retrieval import Blacklist

FIXTURES = Path(__file__).parent / "fixtures"
GOLDENS = Path(__file__).parent / "goldens"
DATA = Path(__file__).parent.parent / "data"


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture
def offline_deps(corpus):
    return VerifierDeps(
        gateway=Gateway(OfflineProvider()),
        search=SyntheticSearchProvider(corpus),
        blacklist=Blacklist(domains=corpus.blacklist_domains),
    )


@pytest.fixture
def no_network(monkeypatch):
    """Fail the test on any attempt to reach the network."""

    def guard(*args, **kwargs):
        raise AssertionError("outbound network call attempted during offline test")

    monkeypatch.setattr(socket.socket, "connect", guard)
    monkeypatch.setattr(socket, "create_connection", guard)
    monkeypatch.setattr(socket, "getaddrinfo", guard)
