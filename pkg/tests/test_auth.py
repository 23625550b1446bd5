"""Credential hashing, token lifecycle, and role gates."""

import pytest

from ontolms import schema
from ontolms.auth import (
    CredentialStore,
    TokenRegistry,
    authorize,
    generate_password,
    seed_credentials,
)
from ontolms.errors import (
    DuplicateUserid,
    Forbidden,
    FormatError,
    InvalidCredentials,
    Unauthorized,
    UnknownUser,
)


class FakeClock:
    def __init__(self, now=1000.0):
        self.now = now

    def __call__(self):
        return self.now


# --- credential store -------------------------------------------------------------

def test_verify_round_trip():
    store = CredentialStore()
    store.add("a@b.com", schema.STUDENT, "hunter2")
    credential = store.verify("a@b.com", "hunter2")
    assert credential.userid == "a@b.com"
    assert credential.role == schema.STUDENT


def test_verify_failures_are_indistinguishable():
    store = CredentialStore()
    store.add("a@b.com", schema.STUDENT, "hunter2")
    details = []
    for userid, password in [("a@b.com", "wrong"), ("ghost@b.com", "hunter2")]:
        with pytest.raises(InvalidCredentials) as info:
            store.verify(userid, password)
        details.append(str(info.value))
    assert details[0] == details[1]  # byte-identical either way


def test_add_validation():
    store = CredentialStore()
    store.add("a@b.com", schema.STUDENT, "pw")
    with pytest.raises(DuplicateUserid):
        store.add("a@b.com", schema.TEACHER, "pw2")
    with pytest.raises(FormatError):
        store.add("has space@b.com", schema.STUDENT, "pw")
    with pytest.raises(FormatError):
        store.add("", schema.STUDENT, "pw")
    with pytest.raises(FormatError):
        store.add("b@b.com", "Wizard", "pw")


def test_remove_and_discard():
    store = CredentialStore()
    store.add("a@b.com", schema.STUDENT, "pw")
    assert store.has("a@b.com")
    store.remove("a@b.com")
    assert not store.has("a@b.com")
    with pytest.raises(UnknownUser):
        store.remove("a@b.com")
    store.discard("a@b.com")  # tolerant twin never raises


def test_credential_file_round_trip(tmp_path):
    path = tmp_path / "credentials.txt"
    store = CredentialStore(path)
    store.add("b@b.com", schema.TEACHER, "pw-b")
    store.add("a@b.com", schema.STUDENT, "pw-a")

    text = path.read_text()
    lines = text.splitlines()
    assert [line.split()[0] for line in lines] == ["a@b.com", "b@b.com"]
    assert all(len(line.split()) == 4 for line in lines)
    assert "pw-a" not in text and "pw-b" not in text  # hashes only, no plaintext

    reloaded = CredentialStore(path)
    assert reloaded.verify("a@b.com", "pw-a").role == schema.STUDENT
    with pytest.raises(InvalidCredentials):
        reloaded.verify("a@b.com", "pw-b")


def test_corrupt_credential_file_is_rejected(tmp_path):
    path = tmp_path / "credentials.txt"
    path.write_text("a@b.com Student deadbeef\n")  # 3 fields, not 4
    with pytest.raises(FormatError):
        CredentialStore(path)
    path.write_text("a@b.com Wizard aa bb\n")
    with pytest.raises(FormatError):
        CredentialStore(path)
    path.write_text("a@b.com Student xx yy\n")  # not hex
    with pytest.raises(FormatError):
        CredentialStore(path)


def test_generated_passwords_are_unique():
    batch = {generate_password() for _ in range(64)}
    assert len(batch) == 64
    assert all(len(password) >= 12 for password in batch)


# --- tokens ----------------------------------------------------------------------

def test_token_lifecycle_with_fake_clock():
    clock = FakeClock()
    registry = TokenRegistry(ttl_seconds=60.0, clock=clock)
    issued = registry.issue("a@b.com", schema.STUDENT)
    assert registry.resolve(issued.token).userid == "a@b.com"

    clock.now += 59.9
    assert registry.resolve(issued.token).role == schema.STUDENT
    clock.now += 0.2
    with pytest.raises(Unauthorized):
        registry.resolve(issued.token)


def test_revoked_and_unknown_tokens():
    registry = TokenRegistry()
    issued = registry.issue("a@b.com", schema.STUDENT)
    registry.revoke(issued.token)
    with pytest.raises(Unauthorized):
        registry.resolve(issued.token)
    with pytest.raises(Unauthorized):
        registry.resolve("never-issued")
    registry.revoke("never-issued")  # tolerated


def test_tokens_are_unpredictable():
    registry = TokenRegistry()
    tokens = {registry.issue("a@b.com", schema.STUDENT).token for _ in range(32)}
    assert len(tokens) == 32
    assert all(len(token) >= 32 for token in tokens)


# --- role gates -------------------------------------------------------------------

def test_authorize_enforces_roles():
    registry = TokenRegistry()
    student = registry.issue("s@e.com", schema.STUDENT)
    teacher = registry.issue("t@e.com", schema.TEACHER)
    admin = registry.issue("a@e.com", schema.ADMIN)

    gate = frozenset({schema.TEACHER})
    assert authorize(registry, teacher.token, gate).role == schema.TEACHER
    assert authorize(registry, admin.token, gate).role == schema.ADMIN  # super-pass
    with pytest.raises(Forbidden):
        authorize(registry, student.token, gate)
    # no gate at all: any valid token passes
    assert authorize(registry, student.token).userid == "s@e.com"


# --- bootstrap from a populated store ------------------------------------------------

def test_seed_credentials_covers_every_user(seed_store):
    credentials = CredentialStore()
    passwords = seed_credentials(seed_store, credentials)
    assert set(passwords) == {
        "abc05@gmail.com", "xyz04@gmail.com", "admin@lms.local"}
    for userid, password in passwords.items():
        assert credentials.verify(userid, password).userid == userid
    assert credentials.verify(
        "admin@lms.local", passwords["admin@lms.local"]).role == schema.ADMIN
    assert credentials.verify(
        "abc05@gmail.com", passwords["abc05@gmail.com"]).role == schema.STUDENT
