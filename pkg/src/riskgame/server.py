"""Read-only HTTP API serving precomputed policies.

Endpoints (all GET, JSON responses, permissive CORS):

    /api/v1/healthz            liveness probe, lists loaded targets
    /api/v1/policy/{n}         full policy document, canonical bytes
    /api/v1/table/{n}          stop-threshold grid for target n
    /api/v1/state?n=&a=&b=&c=  per-position advice

Unknown paths and unknown targets give 404, malformed parameters 400.
"""

from __future__ import annotations

import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .game_core import DeadPosition
from .interval import Solution
from .policy_doc import build_policy_document, canonical_json, state_answer
from .strategy_analysis import extract_thresholds

log = logging.getLogger("riskgame.server")


class PolicyService:
    """Holds solved targets plus their serialized documents and tables."""

    def __init__(self, solutions: dict[int, Solution]):
        self._solutions = dict(solutions)
        self._documents: dict[int, str] = {}
        self._tables: dict[int, str] = {}
        for n, sol in self._solutions.items():
            table = extract_thresholds(sol)
            self._documents[n] = canonical_json(
                build_policy_document(sol, table))
            self._tables[n] = canonical_json(
                {"n": n, "thresholds": table.rows()})

    @property
    def targets(self) -> list[int]:
        return sorted(self._solutions)

    def policy_json(self, n: int) -> str | None:
        return self._documents.get(n)

    def table_json(self, n: int) -> str | None:
        return self._tables.get(n)

    def state_json(self, n: int, a: int, b: int, c: int) -> str | None:
        """Advice for one position; None for unknown target."""
        sol = self._solutions.get(n)
        if sol is None:
            return None
        return canonical_json(state_answer(sol, a, b, c))


class _Handler(BaseHTTPRequestHandler):
    service: PolicyService  # set by make_server

    protocol_version = "HTTP/1.1"

    def log_message(self, fmt: str, *args) -> None:
        log.debug("%s %s", self.address_string(), fmt % args)

    def _send(self, status: int, body: str,
              content_type: str = "application/json") -> None:
        data = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", f"{content_type}; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "*")
        self.end_headers()
        self.wfile.write(data)

    def _error(self, status: int, message: str) -> None:
        self._send(status, json.dumps({"error": message}) + "\n")

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "*")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self) -> None:
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        if len(parts) < 2 or parts[0] != "api" or parts[1] != "v1":
            self._error(404, "unknown path")
            return
        route = parts[2:]
        if route == ["healthz"]:
            self._send(200, canonical_json(
                {"status": "ok", "targets": self.service.targets}))
        elif len(route) == 2 and route[0] in ("policy", "table"):
            try:
                n = int(route[1])
            except ValueError:
                self._error(400, "target must be an integer")
                return
            body = (self.service.policy_json(n) if route[0] == "policy"
                    else self.service.table_json(n))
            if body is None:
                self._error(404, f"no policy loaded for target {n}")
            else:
                self._send(200, body)
        elif route == ["state"]:
            self._handle_state(parse_qs(url.query))
        else:
            self._error(404, "unknown path")

    def _handle_state(self, query: dict[str, list[str]]) -> None:
        values = {}
        for key in ("n", "a", "b", "c"):
            raw = query.get(key)
            if raw is None or len(raw) != 1:
                self._error(400, f"missing parameter {key}")
                return
            try:
                values[key] = int(raw[0])
            except ValueError:
                self._error(400, f"parameter {key} must be an integer")
                return
        try:
            body = self.service.state_json(
                values["n"], values["a"], values["b"], values["c"])
        except DeadPosition as exc:
            self._error(404, str(exc))
            return
        if body is None:
            self._error(404, f"no policy loaded for target {values['n']}")
        else:
            self._send(200, body)


def make_server(service: PolicyService, host: str = "127.0.0.1",
                port: int = 0) -> ThreadingHTTPServer:
    """Create (but do not start) the HTTP server; port 0 picks a free one."""
    handler = type("Handler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(service: PolicyService, host: str, port: int) -> None:
    server = make_server(service, host, port)
    host_shown, port_shown = server.server_address[:2]
    log.info("serving on http://%s:%s", host_shown, port_shown)
    print(f"riskgame API listening on http://{host_shown}:{port_shown}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
