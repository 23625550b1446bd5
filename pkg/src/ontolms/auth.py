"""Credential storage and bearer-token authentication.

Passwords are never stored: the credential file keeps one line per account —
``<userid> <role> <salt hex> <pbkdf2 hex>`` — and verification recomputes the
hash in constant-time fashion, doing the same work for unknown userids so the
failure reveals nothing about which part was wrong. Tokens are opaque random
strings with a fixed time-to-live.
"""

import hashlib
import hmac
import secrets
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DuplicateUserid,
    FormatError,
    Forbidden,
    InvalidCredentials,
    Unauthorized,
    UnknownUser,
)
from .schema import ADMIN, ROLE_CLASSES

PBKDF2_ITERATIONS = 50_000
SALT_BYTES = 16
TOKEN_BYTES = 32  # 256 bits of randomness
DEFAULT_TTL_SECONDS = 3600.0

_DUMMY_SALT = b"\x00" * SALT_BYTES


def _digest(password: str, salt: bytes) -> bytes:
    return hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"),
                               salt, PBKDF2_ITERATIONS)


def generate_password() -> str:
    return secrets.token_urlsafe(12)


@dataclass(frozen=True)
class Credential:
    userid: str
    role: str
    salt: bytes
    digest: bytes


class CredentialStore:
    """Userid -> salted-hash credential map, optionally file-backed.

    With a path, every mutation rewrites the file; with ``path=None`` the
    store is purely in-memory (tests, ephemeral services).
    """

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._entries: dict[str, Credential] = {}
        self._mutex = threading.Lock()
        if self._path is not None and self._path.exists():
            self._load()

    def _load(self) -> None:
        for lineno, raw in enumerate(
                self._path.read_text("utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 4:
                raise FormatError(
                    f"{self._path}:{lineno}: expected "
                    "'userid role salt hash'")
            userid, role, salt_hex, digest_hex = parts
            if role not in ROLE_CLASSES:
                raise FormatError(f"{self._path}:{lineno}: unknown role {role!r}")
            try:
                salt, digest = bytes.fromhex(salt_hex), bytes.fromhex(digest_hex)
            except ValueError:
                raise FormatError(
                    f"{self._path}:{lineno}: salt and hash must be hex") from None
            self._entries[userid] = Credential(userid, role, salt, digest)

    def _save(self) -> None:
        if self._path is None:
            return
        lines = [f"{c.userid} {c.role} {c.salt.hex()} {c.digest.hex()}"
                 for c in sorted(self._entries.values(), key=lambda c: c.userid)]
        self._path.write_text("".join(line + "\n" for line in lines), "utf-8")

    def add(self, userid: str, role: str, password: str) -> None:
        if not userid or any(ch.isspace() for ch in userid):
            raise FormatError(f"userid {userid!r} must be non-empty with no spaces")
        if role not in ROLE_CLASSES:
            raise FormatError(f"{role!r} is not a role")
        with self._mutex:
            if userid in self._entries:
                raise DuplicateUserid(f"userid {userid!r} already registered")
            salt = secrets.token_bytes(SALT_BYTES)
            self._entries[userid] = Credential(
                userid, role, salt, _digest(password, salt))
            self._save()

    def remove(self, userid: str) -> None:
        with self._mutex:
            if userid not in self._entries:
                raise UnknownUser(f"no credential for {userid!r}")
            del self._entries[userid]
            self._save()

    def discard(self, userid: str) -> None:
        with self._mutex:
            if self._entries.pop(userid, None) is not None:
                self._save()

    def has(self, userid: str) -> bool:
        with self._mutex:
            return userid in self._entries

    def verify(self, userid: str, password: str) -> Credential:
        """Return the credential on success; one indistinguishable error otherwise."""
        with self._mutex:
            entry = self._entries.get(userid)
        if entry is None:
            # same hashing work as the known-user path, so timing does not
            # reveal whether the userid exists
            hmac.compare_digest(_digest(password, _DUMMY_SALT), _DUMMY_SALT)
            raise InvalidCredentials("invalid userid or password")
        if not hmac.compare_digest(_digest(password, entry.salt), entry.digest):
            raise InvalidCredentials("invalid userid or password")
        return entry

    def userids(self) -> list[str]:
        with self._mutex:
            return sorted(self._entries)


@dataclass(frozen=True)
class AuthToken:
    token: str
    userid: str
    role: str
    expiry: float  # seconds since epoch


class TokenRegistry:
    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS, clock=time.time):
        self._ttl = ttl_seconds
        self._clock = clock
        self._tokens: dict[str, AuthToken] = {}
        self._mutex = threading.Lock()

    def issue(self, userid: str, role: str) -> AuthToken:
        token = AuthToken(secrets.token_urlsafe(TOKEN_BYTES), userid, role,
                          self._clock() + self._ttl)
        with self._mutex:
            self._tokens[token.token] = token
        return token

    def resolve(self, token: str) -> AuthToken:
        with self._mutex:
            entry = self._tokens.get(token)
            if entry is None:
                raise Unauthorized("missing or unknown token")
            if entry.expiry <= self._clock():
                del self._tokens[token]
                raise Unauthorized("token expired")
            return entry

    def revoke(self, token: str) -> None:
        with self._mutex:
            self._tokens.pop(token, None)


def authorize(registry: TokenRegistry, token: str,
              required_roles=None) -> AuthToken:
    """Resolve a token and enforce a role gate; Admin passes every gate."""
    entry = registry.resolve(token)
    if required_roles and entry.role != ADMIN and entry.role not in required_roles:
        raise Forbidden(
            f"requires one of {sorted(required_roles)}, token is {entry.role}")
    return entry


def seed_credentials(store, credentials: CredentialStore) -> dict[str, str]:
    """Register a credential for every user in the store that has a userid.

    Returns the generated plaintext passwords keyed by userid — shown once;
    only hashes are retained.
    """
    from . import schema  # local import to keep auth free of store knowledge otherwise

    passwords: dict[str, str] = {}
    with store.read_lock():
        for individual in sorted(store.instances_of(schema.USER, transitive=True)):
            userid = store.data_values(individual, schema.USERID)
            if userid is None or credentials.has(userid):
                continue
            role = next((r for r in ROLE_CLASSES
                         if store.is_instance_of(individual, r)), None)
            if role is None:
                continue
            password = generate_password()
            credentials.add(userid, role, password)
            passwords[userid] = password
    return passwords
