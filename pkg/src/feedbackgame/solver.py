"""Perfect-play winner determination and optimal-move extraction.

The search is a memoized AND/OR sweep over (token, used-mask) states; the
mover is implied by mask parity, so the memo key is just the pair. Two
interchangeable backends execute the identical kernel source: a
numba-compiled one (default when numba imports) and a plain-Python one.
Select with FEEDBACK_SOLVER_BACKEND=auto|numba|python or the ``backend``
argument. Winner, witness, and stats are backend-independent.

``solve_naive`` is a deliberately separate, unmemoized recursive
implementation kept as a cross-check oracle for small graphs; it shares no
code with the fast path.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass

import numpy as np

from .engine import ALICE, BOB, GameState, ONGOING
from .errors import (
    BadParameter,
    CapExceeded,
    GameOver,
    IsolatedStart,
    LimitExceeded,
    UnknownVertex,
)
from .families import octahedral_path
from .graph import Graph

DEFAULT_EDGE_LIMIT = 40
NAIVE_EDGE_LIMIT = 14
EDGE_LIMIT_ENV = "FEEDBACK_EDGE_LIMIT"
BACKEND_ENV = "FEEDBACK_SOLVER_BACKEND"


def edge_limit() -> int:
    raw = os.environ.get(EDGE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_EDGE_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise BadParameter(f"{EDGE_LIMIT_ENV} must be an integer, got {raw!r}") from None
    if not 1 <= value <= 60:
        raise BadParameter(f"{EDGE_LIMIT_ENV} must be in 1..60, got {value}")
    return value


@dataclass(frozen=True)
class SolveStats:
    states_explored: int
    memo_entries: int
    elapsed: float

    def to_json_dict(self) -> dict:
        return {
            "states_explored": self.states_explored,
            "memo_entries": self.memo_entries,
            "elapsed": round(self.elapsed, 6),
        }


@dataclass(frozen=True)
class Verdict:
    winner: str  # ALICE or BOB
    witness: int | None  # winning first move (vertex index), only when Alice wins
    stats: SolveStats

    def to_json_dict(self, g: Graph | None = None) -> dict:
        witness = self.witness
        if witness is not None and g is not None:
            witness = g.name(witness)
        return {
            "winner": self.winner,
            "witness": witness,
            "stats": self.stats.to_json_dict(),
        }


# --- backends -----------------------------------------------------------------

class _PythonBackend:
    name = "python"

    def __init__(self):
        from . import _search

        self.win_search = _search.win_search
        self.length_search = _search.length_search


_python_backend = None
_numba_backend = None


def _get_python_backend():
    global _python_backend
    if _python_backend is None:
        _python_backend = _PythonBackend()
    return _python_backend


def _get_numba_backend(strict: bool):
    global _numba_backend
    if _numba_backend is None:
        try:
            from . import _search_numba
        except ImportError:
            if strict:
                raise BadParameter("numba backend requested but numba is not installed") from None
            return None

        class _NumbaBackend:
            name = "numba"
            win_search = staticmethod(_search_numba.win_search)
            length_search = staticmethod(_search_numba.length_search)

        _numba_backend = _NumbaBackend()
    return _numba_backend


def resolve_backend(name: str | None = None):
    """Map a backend name (or the env default) to a kernel namespace."""
    if name is None:
        name = os.environ.get(BACKEND_ENV, "auto")
    if name == "python":
        return _get_python_backend()
    if name == "numba":
        return _get_numba_backend(strict=True)
    if name == "auto":
        return _get_numba_backend(strict=False) or _get_python_backend()
    raise BadParameter(f"unknown solver backend {name!r} (want auto|numba|python)")


def _csr_arrays(g: Graph):
    nv = g.n_vertices
    indptr = np.zeros(nv + 1, np.int64)
    for v in range(nv):
        indptr[v + 1] = indptr[v] + len(g.adjacency[v])
    total = int(indptr[nv])
    nbr = np.empty(total, np.int64)
    eidx = np.empty(total, np.int64)
    pos = 0
    for v in range(nv):
        for u, e in g.adjacency[v]:
            nbr[pos] = u
            eidx[pos] = e
            pos += 1
    inc = np.zeros(nv, np.int64)
    for e, (a, b) in enumerate(g.edges):
        inc[a] |= np.int64(1) << e
        inc[b] |= np.int64(1) << e
    return indptr, nbr, eidx, inc


def _check_limit(g: Graph, limit: int | None = None) -> None:
    cap = edge_limit() if limit is None else limit
    if g.n_edges > cap:
        raise LimitExceeded(
            f"graph has {g.n_edges} edges, above the solver limit of {cap} "
            f"(override with {EDGE_LIMIT_ENV})"
        )


def solve(g: Graph, start: int, *, memo_cap: int = 0, backend: str | None = None) -> Verdict:
    """Winner of the game on ``g`` started at ``start``, under optimal play.

    The witness, present exactly when the first player wins, is the
    lowest-index winning first move. Deterministic across runs and
    backends.
    """
    _check_limit(g)
    if not 0 <= start < g.n_vertices:
        raise UnknownVertex(start)
    if len(g.adjacency[start]) == 0:
        raise IsolatedStart(g.name(start))
    kernels = resolve_backend(backend)
    indptr, nbr, eidx, inc = _csr_arrays(g)
    t0 = time.perf_counter()
    code, witness, states, memo_entries = kernels.win_search(
        indptr, nbr, eidx, inc, g.n_vertices, start, start, 0, memo_cap
    )
    elapsed = time.perf_counter() - t0
    if code < 0:
        raise CapExceeded(memo_cap)
    stats = SolveStats(int(states), int(memo_entries), elapsed)
    if code == 1:
        return Verdict(winner=ALICE, witness=int(witness), stats=stats)
    return Verdict(winner=BOB, witness=None, stats=stats)


def _naive_win(adjacency, inc, start, token, mask):
    for to, e in adjacency[token]:
        if mask >> e & 1:
            continue
        nm = mask | 1 << e
        if to == start or inc[to] & ~nm == 0:
            return True
        if not _naive_win(adjacency, inc, start, to, nm):
            return True
    return False


def solve_naive(g: Graph, start: int) -> Verdict:
    """Unmemoized full recursion; the trusted oracle for small graphs."""
    if g.n_edges > NAIVE_EDGE_LIMIT:
        raise LimitExceeded(
            f"solve_naive accepts at most {NAIVE_EDGE_LIMIT} edges, got {g.n_edges}"
        )
    if not 0 <= start < g.n_vertices:
        raise UnknownVertex(start)
    if len(g.adjacency[start]) == 0:
        raise IsolatedStart(g.name(start))
    inc = [0] * g.n_vertices
    for e, (a, b) in enumerate(g.edges):
        inc[a] |= 1 << e
        inc[b] |= 1 << e
    t0 = time.perf_counter()
    witness = None
    for to, e in g.adjacency[start]:
        nm = 1 << e
        if inc[to] & ~nm == 0:
            witness = to
            break
        if not _naive_win(g.adjacency, inc, start, to, nm):
            witness = to
            break
    elapsed = time.perf_counter() - t0
    stats = SolveStats(0, 0, elapsed)
    if witness is not None:
        return Verdict(winner=ALICE, witness=witness, stats=stats)
    return Verdict(winner=BOB, witness=None, stats=stats)


def best_move(state: GameState, *, memo_cap: int = 0, backend: str | None = None) -> int:
    """Move choice for the side to move in an ongoing game.

    Returns the lowest-index winning move when the position is won;
    otherwise the lowest-index move that maximizes the remaining game
    length against fastest counterplay (delaying convention). A move
    always exists in an ongoing game, so there is no resign value.
    """
    if state.status != ONGOING:
        raise GameOver("no move to choose: the game is decided")
    g = state.graph
    _check_limit(g)
    kernels = resolve_backend(backend)
    indptr, nbr, eidx, inc = _csr_arrays(g)
    code, witness, _, memo_entries = kernels.win_search(
        indptr, nbr, eidx, inc, g.n_vertices, state.start, state.token,
        state.used, memo_cap,
    )
    if code < 0:
        raise CapExceeded(memo_cap)
    if code == 1:
        return int(witness)
    code, _, best_to, _, memo_entries = kernels.length_search(
        indptr, nbr, eidx, inc, g.n_vertices, state.start, state.token,
        state.used, memo_cap,
    )
    if code < 0:
        raise CapExceeded(memo_cap)
    return int(best_to)


# --- winner table ---------------------------------------------------------------

def expected_octapath_winner(n: int, p: int) -> str:
    """Closed-form winner of the level-p game on the n-level octahedral path.

    The rule depends only on (n mod 3, p mod 3): the first player wins
    everywhere except when n mod 3 == 1 and p mod 3 in {0, 1}, or
    n mod 3 == 2 and p mod 3 == 1.
    """
    if not 0 <= p <= n:
        raise BadParameter(f"need 0 <= p <= n, got n={n}, p={p}")
    n_res, p_res = n % 3, p % 3
    if n_res == 0:
        return ALICE
    if n_res == 1:
        return BOB if p_res in (0, 1) else ALICE
    return BOB if p_res == 1 else ALICE


@dataclass(frozen=True)
class TableRow:
    n: int
    p: int
    expected: str
    computed: str
    stats: SolveStats

    @property
    def agree(self) -> bool:
        return self.expected == self.computed


@dataclass(frozen=True)
class TableReport:
    rows: tuple[TableRow, ...]

    @property
    def all_agree(self) -> bool:
        return all(row.agree for row in self.rows)

    def to_text(self) -> str:
        lines = [
            f"{'n':>3} {'p':>3} {'expected':>9} {'computed':>9} {'agree':>6} "
            f"{'states':>10} {'seconds':>8}"
        ]
        for r in self.rows:
            lines.append(
                f"{r.n:>3} {r.p:>3} {r.expected:>9} {r.computed:>9} "
                f"{'yes' if r.agree else 'NO':>6} {r.stats.states_explored:>10} "
                f"{r.stats.elapsed:>8.3f}"
            )
        lines.append(
            "result: " + ("all rows agree" if self.all_agree else "DISAGREEMENT FOUND")
        )
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {
                    "n": r.n,
                    "p": r.p,
                    "expected": r.expected,
                    "computed": r.computed,
                    "agree": r.agree,
                    "stats": r.stats.to_json_dict(),
                }
                for r in self.rows
            ],
            "all_agree": self.all_agree,
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def verify_octapath_table(n_values, *, backend: str | None = None) -> TableReport:
    """Solve every level-p start for each requested n and compare against
    the closed-form winner rule. Start vertex is the canonical v_p
    (index 3p+1)."""
    rows = []
    for n in n_values:
        g = octahedral_path(n)
        _check_limit(g)
        for p in range(n + 1):
            verdict = solve(g, 3 * p + 1, backend=backend)
            rows.append(
                TableRow(
                    n=n,
                    p=p,
                    expected=expected_octapath_winner(n, p),
                    computed=verdict.winner,
                    stats=verdict.stats,
                )
            )
    return TableReport(rows=tuple(rows))
