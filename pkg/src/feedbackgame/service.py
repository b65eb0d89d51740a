"""In-memory game sessions and the HTTP/JSON service the web UI talks to.

Sessions live in an LRU-with-idle-eviction registry (no persistence); each
session is guarded by its own lock so concurrent moves on one game cannot
interleave — the second caller gets a 409 instead of blocking. The engine
answers with the exact solver while the graph is within the edge limit and
falls back to a labeled greedy rule above it.

All JSON field names are lower_snake_case and vertices travel as names,
never indices.
"""

from __future__ import annotations

import json
import mimetypes
import threading
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import solver
from .engine import (
    ALICE,
    BOB,
    GameState,
    ONGOING,
    apply_move,
    legal_moves,
    new_game,
    state_to_json_dict,
)
from .errors import (
    DomainError,
    GameOver,
    IllegalMove,
    IsolatedStart,
    LimitError,
    UnknownVertex,
)
from .families import (
    cycle_graph,
    cycle_layout,
    double_wheel,
    double_wheel_layout,
    graph_with_layout_json_dict,
    octahedral_path,
    octapath_layout,
)
from .graph import Graph, graph_from_json_dict, graph_to_json_dict

DEFAULT_SESSION_CAP = 1024
DEFAULT_IDLE_TTL = 3600.0

FAMILY_ALIASES = {
    "octa": "octa",
    "octahedral_path": "octa",
    "dw": "dw",
    "double_wheel": "dw",
    "cycle": "cycle",
    "custom": "custom",
}


def family_graph(family: str, n: int | None = None, graph_data=None):
    """Resolve a family request to (graph, layout-or-None).

    ``n`` is the family's size parameter: level count for octahedral
    paths, rim length for double wheels, cycle length for cycles.
    """
    kind = FAMILY_ALIASES.get(family)
    if kind is None:
        raise DomainError(
            f"unknown family {family!r} (want octa, dw, cycle, or custom)"
        )
    if kind == "custom":
        if graph_data is None:
            raise DomainError("custom family needs an inline graph")
        return graph_from_json_dict(graph_data), None
    if n is None:
        raise DomainError(f"family {family!r} needs the size parameter n")
    if kind == "octa":
        return octahedral_path(n), octapath_layout(n)
    if kind == "dw":
        return double_wheel(n), double_wheel_layout(n)
    return cycle_graph(n), cycle_layout(n)


def _greedy_move(state: GameState) -> int:
    """Win immediately when possible, otherwise lowest-index move."""
    moves = legal_moves(state)
    for to in moves:
        nxt = apply_move(state, to)
        if nxt.status != ONGOING:
            return to
    return moves[0]


@dataclass
class Session:
    id: str
    graph: Graph
    layout: dict | None
    state: GameState
    engine_side: str | None
    engine_optimal: bool
    moves: list = field(default_factory=list)
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def to_json_dict(self) -> dict:
        g = self.graph
        data = {
            "id": self.id,
            "engine_side": self.engine_side,
            "engine_optimal": self.engine_optimal,
            "state": state_to_json_dict(self.state),
            "legal_moves": (
                [g.name(v) for v in legal_moves(self.state)]
                if self.state.status == ONGOING
                else []
            ),
            "moves": list(self.moves),
            "graph": graph_with_layout_json_dict(g, self.layout),
            "created": self.created,
            "updated": self.updated,
        }
        return data


class ServiceError(Exception):
    def __init__(self, status: int, message: str, kind: str = "error"):
        super().__init__(message)
        self.status = status
        self.kind = kind


class GameService:
    """Session registry plus the request-level operations of the API."""

    def __init__(self, session_cap: int = DEFAULT_SESSION_CAP,
                 idle_ttl: float = DEFAULT_IDLE_TTL):
        self.session_cap = session_cap
        self.idle_ttl = idle_ttl
        self._sessions: OrderedDict[str, Session] = OrderedDict()
        self._registry_lock = threading.Lock()
        self._solve_cache: dict = {}

    # -- registry -------------------------------------------------------

    def _evict(self) -> None:
        now = time.time()
        stale = [
            sid
            for sid, s in self._sessions.items()
            if now - s.updated > self.idle_ttl
        ]
        for sid in stale:
            del self._sessions[sid]
        while len(self._sessions) > self.session_cap:
            self._sessions.popitem(last=False)

    def _get_session(self, session_id: str) -> Session:
        with self._registry_lock:
            self._evict()
            session = self._sessions.get(session_id)
            if session is None:
                raise ServiceError(404, f"no such session: {session_id}", "unknown_session")
            self._sessions.move_to_end(session_id)
            return session

    # -- operations ------------------------------------------------------

    def create_session(self, body: dict) -> dict:
        if not isinstance(body, dict):
            raise ServiceError(400, "request body must be a JSON object", "bad_request")
        family = body.get("family", "octa")
        n = body.get("n")
        if n is not None and not isinstance(n, int):
            raise ServiceError(400, "'n' must be an integer", "bad_request")
        engine_side = body.get("engine_side", BOB)
        if engine_side in ("none", None):
            engine_side = None
        elif engine_side not in (ALICE, BOB):
            raise ServiceError(
                400, f"engine_side must be 'alice', 'bob' or 'none', got {engine_side!r}",
                "bad_request",
            )
        try:
            g, layout = family_graph(family, n, body.get("graph"))
        except LimitError as exc:
            raise ServiceError(413, str(exc), "limit_exceeded") from None
        except DomainError as exc:
            raise ServiceError(400, str(exc), _kind(exc)) from None

        start_name = body.get("start")
        if not isinstance(start_name, str):
            raise ServiceError(400, "'start' must be a vertex name", "bad_request")
        try:
            start = g.vertex_index(start_name)
        except UnknownVertex as exc:
            raise ServiceError(400, str(exc), _kind(exc)) from None
        try:
            state = new_game(g, start)
        except IsolatedStart as exc:
            raise ServiceError(422, str(exc), _kind(exc)) from None

        engine_optimal = g.n_edges <= solver.edge_limit()
        session = Session(
            id=uuid.uuid4().hex[:16],
            graph=g,
            layout=layout,
            state=state,
            engine_side=engine_side,
            engine_optimal=engine_optimal,
        )
        if engine_side == ALICE:
            self._engine_reply(session)
        with self._registry_lock:
            self._sessions[session.id] = session
            self._evict()
        return session.to_json_dict()

    def _engine_reply(self, session: Session) -> None:
        state = session.state
        if state.status != ONGOING or session.engine_side != state.mover:
            return
        if session.engine_optimal:
            to = solver.best_move(state)
        else:
            to = _greedy_move(state)
        session.state = apply_move(state, to)
        session.moves.append({"by": state.mover, "to": session.graph.name(to)})
        session.updated = time.time()

    def post_move(self, session_id: str, body: dict) -> dict:
        session = self._get_session(session_id)
        if not isinstance(body, dict) or not isinstance(body.get("to"), str):
            raise ServiceError(400, "body must be {\"to\": \"<vertex name>\"}", "bad_request")
        if not session.lock.acquire(blocking=False):
            raise ServiceError(409, "another move on this session is in flight", "busy")
        try:
            state = session.state
            if state.status != ONGOING:
                raise ServiceError(409, "the game is already decided", "game_over")
            if session.engine_side is not None and state.mover == session.engine_side:
                raise ServiceError(409, "not your turn: engine to move", "not_your_turn")
            try:
                to = session.graph.vertex_index(body["to"])
            except UnknownVertex as exc:
                raise ServiceError(422, str(exc), _kind(exc)) from None
            try:
                session.state = apply_move(state, to)
            except (IllegalMove, GameOver) as exc:
                raise ServiceError(422, str(exc), _kind(exc)) from None
            session.moves.append({"by": state.mover, "to": session.graph.name(to)})
            session.updated = time.time()
            if session.engine_side is not None:
                self._engine_reply(session)
            return session.to_json_dict()
        finally:
            session.lock.release()

    def get_state(self, session_id: str) -> dict:
        return self._get_session(session_id).to_json_dict()

    def solve_request(self, family: str, n: int, p: int | None,
                      start: str | None) -> dict:
        key = (family, n, p, start)
        cached = self._solve_cache.get(key)
        if cached is not None:
            return cached
        try:
            g, _ = family_graph(family, n)
        except DomainError as exc:
            raise ServiceError(400, str(exc), _kind(exc)) from None
        if start is not None:
            try:
                start_index = g.vertex_index(start)
            except UnknownVertex as exc:
                raise ServiceError(400, str(exc), _kind(exc)) from None
        elif p is not None:
            if FAMILY_ALIASES.get(family) != "octa":
                raise ServiceError(400, "'p' is only meaningful for octa", "bad_request")
            if not 0 <= p <= n:
                raise ServiceError(400, f"need 0 <= p <= n, got p={p}", "bad_request")
            start_index = 3 * p + 1  # canonical level-p start
        else:
            raise ServiceError(400, "need 'p' or 'start'", "bad_request")
        try:
            verdict = solver.solve(g, start_index)
        except LimitError as exc:
            raise ServiceError(413, str(exc), "limit_exceeded") from None
        except IsolatedStart as exc:
            raise ServiceError(422, str(exc), _kind(exc)) from None
        result = verdict.to_json_dict(g)
        result["start"] = g.name(start_index)
        self._solve_cache[key] = result
        return result

    def graph_request(self, family: str, n: int | None) -> dict:
        try:
            g, layout = family_graph(family, n)
        except DomainError as exc:
            raise ServiceError(400, str(exc), _kind(exc)) from None
        return graph_with_layout_json_dict(g, layout)


def _kind(exc: Exception) -> str:
    name = type(exc).__name__
    out = []
    for i, ch in enumerate(name):
        if ch.isupper() and i > 0:
            out.append("_")
        out.append(ch.lower())
    return "".join(out)


# --- HTTP layer ----------------------------------------------------------------

class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "feedbackgame"

    # the ThreadingHTTPServer instance carries .service, .static_dir, .verbose

    def log_message(self, fmt, *args):
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str, kind: str) -> None:
        self._send_json(status, {"error": message, "kind": kind})

    def _read_body(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            raise ServiceError(400, "request body is not valid JSON", "bad_json")

    def _dispatch(self, method: str) -> None:
        parsed = urlparse(self.path)
        parts = [p for p in parsed.path.split("/") if p]
        service: GameService = self.server.service
        try:
            if method == "POST" and parts == ["api", "games"]:
                self._send_json(201, service.create_session(self._read_body()))
            elif (
                method == "POST"
                and len(parts) == 4
                and parts[:2] == ["api", "games"]
                and parts[3] == "moves"
            ):
                self._send_json(200, service.post_move(parts[2], self._read_body()))
            elif method == "GET" and len(parts) == 3 and parts[:2] == ["api", "games"]:
                self._send_json(200, service.get_state(parts[2]))
            elif method == "GET" and parts == ["api", "solve"]:
                q = parse_qs(parsed.query)
                self._send_json(200, service.solve_request(
                    q.get("family", ["octa"])[0],
                    _int_param(q, "n"),
                    _int_param(q, "p"),
                    q.get("start", [None])[0],
                ))
            elif method == "GET" and parts == ["api", "graph"]:
                q = parse_qs(parsed.query)
                self._send_json(200, service.graph_request(
                    q.get("family", ["octa"])[0], _int_param(q, "n")
                ))
            elif method == "GET":
                self._serve_static(parsed.path)
            else:
                self._send_error_json(404, f"no route for {method} {parsed.path}", "not_found")
        except ServiceError as exc:
            self._send_error_json(exc.status, str(exc), exc.kind)
        except LimitError as exc:
            self._send_error_json(413, str(exc), "limit_exceeded")
        except DomainError as exc:
            self._send_error_json(400, str(exc), _kind(exc))
        except Exception as exc:  # pragma: no cover - defensive
            self._send_error_json(500, f"internal error: {exc}", "internal")

    def _serve_static(self, path: str) -> None:
        static_dir = getattr(self.server, "static_dir", None)
        if static_dir is None:
            self._send_error_json(404, f"no route for GET {path}", "not_found")
            return
        rel = path.lstrip("/") or "index.html"
        root = Path(static_dir).resolve()
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._send_error_json(404, "not found", "not_found")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_error_json(404, f"not found: {path}", "not_found")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")


def _int_param(q: dict, name: str):
    values = q.get(name)
    if not values:
        return None
    try:
        return int(values[0])
    except ValueError:
        raise ServiceError(400, f"query parameter {name!r} must be an integer", "bad_request")


def make_server(host: str = "127.0.0.1", port: int = 8080,
                static_dir: str | None = None, verbose: bool = False,
                session_cap: int = DEFAULT_SESSION_CAP,
                idle_ttl: float = DEFAULT_IDLE_TTL) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), ApiHandler)
    server.service = GameService(session_cap=session_cap, idle_ttl=idle_ttl)
    server.static_dir = static_dir
    server.verbose = verbose
    return server
