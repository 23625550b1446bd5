import pytest

from ontolms import persistence
from ontolms.auth import CredentialStore, seed_credentials
from ontolms.ontology import Ontology
from ontolms.service import LmsService


@pytest.fixture
def seed_store():
    return persistence.load_seed()


@pytest.fixture
def tiny_store():
    """A minimal schema: one class tree, one inverse pair, one data property."""
    store = Ontology()
    store.declare_class("Thing")
    store.declare_class("Agent", {"Thing"})
    store.declare_class("Item", {"Thing"})
    store.declare_object_property("owns", "Agent", "Item")
    store.declare_object_property("ownedBy", "Item", "Agent", inverse="owns")
    store.declare_data_property("label", "Thing")
    store.add_individual("alice", "Agent")
    store.add_individual("bob", "Agent")
    store.add_individual("ball", "Item")
    store.add_individual("bat", "Item")
    return store


@pytest.fixture(scope="session")
def _hashed_seed_credentials():
    """Key stretching is deliberately slow; do it once for the whole run."""
    template = CredentialStore(None)
    passwords = seed_credentials(persistence.load_seed(), template)
    return template, passwords


@pytest.fixture
def live_service(seed_store, _hashed_seed_credentials):
    """A running service over the seed with known seed passwords."""
    template, passwords = _hashed_seed_credentials
    credentials = CredentialStore(None)
    credentials._entries.update(template._entries)
    service = LmsService(seed_store, credentials).start()
    try:
        yield service, passwords
    finally:
        service.stop(persist=False)
