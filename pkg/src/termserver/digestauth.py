"""HTTP Digest authentication (RFC 2617, qop="auth" only).

Credentials are htdigest-style triples ``username:realm:ha1`` where ha1 =
MD5(username:realm:password).  The server tracks issued nonces with a TTL
and the highest nonce count seen, so replayed (nonce, nc) pairs come back
stale.  MD5 is what the scheme mandates; this is an access gate, not a
general-purpose security boundary.
"""

from __future__ import annotations

import hashlib
import re
import secrets
import threading
import time
from dataclasses import dataclass
from enum import Enum
from typing import Optional


class UnsupportedQop(Exception):
    pass


class MalformedHeader(Exception):
    pass


@dataclass(frozen=True)
class DigestCredential:
    username: str
    realm: str
    ha1: str  # 32 lowercase hex chars

    def __post_init__(self):
        if ":" in self.username or ":" in self.realm:
            raise ValueError("username and realm must not contain ':'")
        if not re.fullmatch(r"[0-9a-f]{32}", self.ha1):
            raise ValueError("ha1 must be 32 lowercase hex chars")


def make_ha1(username: str, realm: str, password: str) -> str:
    return _md5(f"{username}:{realm}:{password}")


def _md5(text: str) -> str:
    return hashlib.md5(text.encode("utf-8")).hexdigest()


def compute_digest_response(
    ha1: str,
    method: str,
    uri: str,
    nonce: str,
    nc: Optional[str] = None,
    cnonce: Optional[str] = None,
    qop: Optional[str] = None,
) -> str:
    """Client response hash; with qop="auth" the nc/cnonce fields join in."""
    if qop not in (None, "auth"):
        raise UnsupportedQop(f"qop {qop!r} not supported")
    ha2 = _md5(f"{method}:{uri}")
    if qop == "auth":
        if nc is None or cnonce is None:
            raise MalformedHeader("qop=auth requires nc and cnonce")
        return _md5(f"{ha1}:{nonce}:{nc}:{cnonce}:auth:{ha2}")
    return _md5(f"{ha1}:{nonce}:{ha2}")


def load_credentials(path: str) -> dict[str, DigestCredential]:
    """Parse an htdigest file into a username -> credential map."""
    creds: dict[str, DigestCredential] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(":")
            if len(parts) != 3:
                raise ValueError(f"bad credentials line: {line!r}")
            username, realm, ha1 = parts
            creds[username] = DigestCredential(username, realm, ha1)
    return creds


class AuthStatus(Enum):
    OK = "ok"
    STALE = "stale"
    REJECTED = "rejected"


@dataclass(frozen=True)
class AuthResult:
    status: AuthStatus
    username: Optional[str] = None
    reason: Optional[str] = None


@dataclass
class NonceRecord:
    issued_at: float
    highest_nc_seen: int = 0


class NonceTable:
    """Issued-nonce registry: TTL expiry plus strictly-increasing nc."""

    def __init__(self, ttl_seconds: float = 300.0):
        self.ttl_seconds = ttl_seconds
        self._records: dict[str, NonceRecord] = {}
        self._lock = threading.Lock()

    def issue(self, now: Optional[float] = None) -> str:
        nonce = secrets.token_hex(16)
        with self._lock:
            self._records[nonce] = NonceRecord(time.time() if now is None else now)
        return nonce

    def check_and_record(self, nonce: str, nc: int, now: float) -> bool:
        """True if the nonce is live and nc advances; records the new nc."""
        with self._lock:
            self._prune(now)
            record = self._records.get(nonce)
            if record is None or now - record.issued_at > self.ttl_seconds:
                return False
            if nc <= record.highest_nc_seen:
                return False
            record.highest_nc_seen = nc
            return True

    def _prune(self, now: float) -> None:
        expired = [n for n, r in self._records.items() if now - r.issued_at > self.ttl_seconds]
        for n in expired:
            del self._records[n]


_TOKEN_PARAM = re.compile(r'(\w+)=(?:"((?:[^"\\]|\\.)*)"|([^\s,]+))\s*(?:,\s*|$)')


def parse_authorization(header: str) -> dict[str, str]:
    """Digest Authorization header -> param dict; raises MalformedHeader."""
    if not header.lower().startswith("digest "):
        raise MalformedHeader("not a Digest authorization header")
    params: dict[str, str] = {}
    rest = header[len("digest "):].strip()
    pos = 0
    for m in _TOKEN_PARAM.finditer(rest):
        if m.start() != pos:
            raise MalformedHeader(f"unparsable at {rest[pos:]!r}")
        quoted, bare = m.group(2), m.group(3)
        value = bare if quoted is None else re.sub(r"\\(.)", r"\1", quoted)
        params[m.group(1)] = value
        pos = m.end()
    if pos != len(rest) or not params:
        raise MalformedHeader(f"unparsable header: {header!r}")
    return params


def issue_challenge(realm: str, nonce_table: NonceTable, opaque: str, stale: bool = False) -> str:
    nonce = nonce_table.issue()
    header = f'Digest realm="{realm}", qop="auth", nonce="{nonce}", opaque="{opaque}"'
    if stale:
        header += ", stale=true"
    return header


def verify_request(
    authorization_header: str,
    method: str,
    request_uri: str,
    credentials: dict[str, DigestCredential],
    nonce_table: NonceTable,
    now: Optional[float] = None,
) -> AuthResult:
    """Check one Authorization header against the nonce table.

    Rejected: unknown user, uri mismatch, wrong response.  Stale: response
    correct but nonce expired/unknown or nc not increasing (client should
    retry with a fresh nonce).
    """
    now = time.time() if now is None else now
    params = parse_authorization(authorization_header)
    for required in ("username", "realm", "nonce", "uri", "response"):
        if required not in params:
            raise MalformedHeader(f"missing {required}")
    qop = params.get("qop")
    if qop not in (None, "auth"):
        return AuthResult(AuthStatus.REJECTED, reason=f"unsupported qop {qop!r}")
    if qop == "auth" and ("nc" not in params or "cnonce" not in params):
        raise MalformedHeader("qop=auth requires nc and cnonce")

    cred = credentials.get(params["username"])
    if cred is None or cred.realm != params["realm"]:
        return AuthResult(AuthStatus.REJECTED, reason="unknown user or realm")
    # clients may digest the full request target or just its path
    acceptable = {request_uri, request_uri.split("?", 1)[0]}
    if params["uri"] not in acceptable:
        return AuthResult(AuthStatus.REJECTED, reason="uri mismatch")

    expected = compute_digest_response(
        cred.ha1, method, params["uri"], params["nonce"],
        params.get("nc"), params.get("cnonce"), qop,
    )
    if params["response"] != expected:
        return AuthResult(AuthStatus.REJECTED, reason="bad response")

    if qop == "auth":
        try:
            nc = int(params["nc"], 16)
        except ValueError:
            raise MalformedHeader(f"bad nc {params['nc']!r}")
    else:
        nc = 1
    if not nonce_table.check_and_record(params["nonce"], nc, now):
        return AuthResult(AuthStatus.STALE, reason="nonce expired or replayed")
    return AuthResult(AuthStatus.OK, username=cred.username)
