"""Digest-authenticated HTTP API over a loaded terminology store.

Routes (all JSON unless noted; every route but /api/health requires auth):

    GET /api/health                       liveness, unauthenticated
    GET /api/concepts/{id}                neighborhood JSON
    GET /api/search?q=...&limit=N         search JSON
    GET /api/concepts/{id}/diagram.dot    DOT text (text/vnd.graphviz)
    GET /api/concepts/{id}/diagram.svg    rendered SVG (501 if no renderer)
    GET /ui/...                           static assets, when configured

Ids are serialized as strings: 18-digit ids overflow some JSON consumers.
The store is immutable, so reads are freely concurrent; the nonce table is
the only synchronized mutable state.
"""

from __future__ import annotations

import json
import mimetypes
import os
import re
import secrets
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, unquote, urlsplit

from . import dotgen, query
from .digestauth import (
    AuthStatus,
    DigestCredential,
    MalformedHeader,
    NonceTable,
    issue_challenge,
    verify_request,
)
from .model import TerminologyStore, UnknownConcept

_ID_RE = re.compile(r"^[1-9][0-9]{5,17}$")


@dataclass
class ApiConfig:
    port: int
    realm: str
    index_path: str = ""
    credentials_path: str = ""
    nonce_ttl_seconds: float = 300.0
    include_inactive: bool = False
    renderer_path: Optional[str] = None
    ui_dir: Optional[str] = None

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range")
        if self.nonce_ttl_seconds <= 0:
            raise ValueError("nonceTtlSeconds must be positive")


def neighborhood_json(n: query.Neighborhood) -> dict:
    def edges(rows, other_key, term_key):
        return [
            {
                "relationshipId": str(e.relationship_id),
                "typeId": str(e.type_id),
                "typeTerm": e.type_term,
                other_key: str(e.other_id),
                term_key: e.other_term,
                "group": e.group,
                "isHierarchy": e.is_hierarchy,
            }
            for e in rows
        ]

    return {
        "concept": {
            "id": str(n.concept_id),
            "preferredTerm": n.preferred_term,
            "fsn": n.fsn,
            "active": n.active,
        },
        "outbound": edges(n.outbound, "targetId", "targetTerm"),
        "inbound": edges(n.inbound, "sourceId", "sourceTerm"),
    }


def search_json(q: str, hits: list[query.SearchHit]) -> dict:
    return {
        "query": q,
        "hits": [
            {
                "conceptId": str(h.concept_id),
                "matchedTerm": h.matched_term,
                "preferredTerm": h.preferred_term,
                "rank": h.rank,
            }
            for h in hits
        ],
    }


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(
        self,
        config: ApiConfig,
        store: TerminologyStore,
        credentials: dict[str, DigestCredential],
        host: str = "127.0.0.1",
    ):
        self.config = config
        self.store = store
        self.credentials = credentials
        self.nonce_table = NonceTable(config.nonce_ttl_seconds)
        self.opaque = secrets.token_hex(8)  # fixed per boot
        self.render_semaphore = threading.BoundedSemaphore(4)
        super().__init__((host, config.port), ApiHandler)


class ApiHandler(BaseHTTPRequestHandler):
    server: ApiServer
    protocol_version = "HTTP/1.1"
    # headers and body go out as separate writes; without this, Nagle plus
    # delayed ACK stalls every keep-alive response by ~40ms
    disable_nagle_algorithm = True

    # -- plumbing --------------------------------------------------------

    def log_message(self, format, *args):  # quiet by default
        pass

    def _send(self, status: int, body: bytes, content_type: str, extra: dict | None = None):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        for k, v in (extra or {}).items():
            self.send_header(k, v)
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict, extra: dict | None = None):
        body = json.dumps(payload).encode("utf-8")
        self._send(status, body, "application/json", extra)

    def _send_error_json(self, status: int, code: str, detail: str, extra: dict | None = None):
        self._send_json(status, {"error": code, "detail": detail}, extra)

    def _challenge(self, stale: bool = False):
        header = issue_challenge(
            self.server.config.realm, self.server.nonce_table, self.server.opaque, stale
        )
        self._send_error_json(
            401, "unauthorized", "Digest authentication required",
            {"WWW-Authenticate": header},
        )

    # -- request handling ------------------------------------------------

    def do_GET(self):
        try:
            self._route()
        except BrokenPipeError:
            pass
        except Exception as e:
            try:
                self._send_error_json(500, "internal", str(e))
            except Exception:
                pass

    def _route(self):
        split = urlsplit(self.path)
        path = unquote(split.path)

        if path == "/api/health":
            self._send_json(200, {"status": "ok"})
            return

        if path.startswith("/ui/") or path == "/ui":
            self._serve_static(path)
            return

        if not path.startswith("/api/"):
            self._send_error_json(404, "not_found", path)
            return

        if not self._authenticate():
            return

        m = re.fullmatch(r"/api/concepts/([^/]+)", path)
        if m:
            self._concept_neighborhood(m.group(1))
            return
        m = re.fullmatch(r"/api/concepts/([^/]+)/diagram\.dot", path)
        if m:
            self._diagram(m.group(1), "dot")
            return
        m = re.fullmatch(r"/api/concepts/([^/]+)/diagram\.svg", path)
        if m:
            self._diagram(m.group(1), "svg")
            return
        if path == "/api/search":
            self._search(parse_qs(split.query))
            return
        self._send_error_json(404, "not_found", path)

    def _authenticate(self) -> bool:
        header = self.headers.get("Authorization")
        if header is None:
            self._challenge()
            return False
        try:
            result = verify_request(
                header, self.command, self.path,
                self.server.credentials, self.server.nonce_table,
            )
        except MalformedHeader as e:
            self._send_error_json(400, "bad_authorization", str(e))
            return False
        if result.status is AuthStatus.OK:
            return True
        if result.status is AuthStatus.STALE:
            self._challenge(stale=True)
            return False
        self._challenge()
        return False

    def _parse_concept_id(self, raw: str) -> Optional[int]:
        if not _ID_RE.fullmatch(raw):
            self._send_error_json(400, "bad_id", f"malformed concept id {raw!r}")
            return None
        return int(raw)

    def _concept_neighborhood(self, raw_id: str):
        cid = self._parse_concept_id(raw_id)
        if cid is None:
            return
        try:
            n = query.neighborhood(self.server.store, cid, self.server.config.include_inactive)
        except UnknownConcept:
            self._send_error_json(404, "unknown_concept", raw_id)
            return
        self._send_json(200, neighborhood_json(n))

    def _search(self, params: dict[str, list[str]]):
        q = params.get("q", [""])[0]
        if not q.strip():
            self._send_error_json(400, "empty_query", "q must be non-empty")
            return
        raw_limit = params.get("limit", ["50"])[0]
        if not raw_limit.isdigit() or int(raw_limit) < 1:
            self._send_error_json(400, "bad_limit", f"limit {raw_limit!r} must be a positive integer")
            return
        hits = query.search(self.server.store, q, int(raw_limit))
        self._send_json(200, search_json(q, hits))

    def _diagram(self, raw_id: str, fmt: str):
        cid = self._parse_concept_id(raw_id)
        if cid is None:
            return
        try:
            n = query.neighborhood(self.server.store, cid, self.server.config.include_inactive)
        except UnknownConcept:
            self._send_error_json(404, "unknown_concept", raw_id)
            return
        dot = dotgen.neighborhood_diagram(n)
        if fmt == "dot":
            self._send(200, dot.text.encode("utf-8"), "text/vnd.graphviz")
            return
        renderer = self.server.config.renderer_path
        if not renderer:
            self._send_error_json(501, "no_renderer", "no renderer configured")
            return
        try:
            with self.server.render_semaphore:
                svg = dotgen.render_external(dot, "svg", renderer)
        except dotgen.RendererUnavailable as e:
            self._send_error_json(501, "no_renderer", str(e))
            return
        except dotgen.RendererFailed as e:
            self._send_error_json(500, "renderer_failed", str(e))
            return
        self._send(200, svg, "image/svg+xml")

    def _serve_static(self, path: str):
        root = self.server.config.ui_dir
        if not root:
            self._send_error_json(404, "not_found", "no UI configured")
            return
        rel = path[len("/ui"):].lstrip("/") or "index.html"
        full = os.path.realpath(os.path.join(root, rel))
        if not full.startswith(os.path.realpath(root) + os.sep) and full != os.path.realpath(root):
            self._send_error_json(404, "not_found", path)
            return
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            self._send_error_json(404, "not_found", path)
            return
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as f:
            self._send(200, f.read(), ctype)


def create_server(
    config: ApiConfig,
    store: TerminologyStore,
    credentials: dict[str, DigestCredential],
    host: str = "127.0.0.1",
) -> ApiServer:
    return ApiServer(config, store, credentials, host)
