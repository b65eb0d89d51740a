"""Even-kernel certificates and the kernel-following strategy.

An even kernel for a start vertex is a nonempty independent vertex set S
containing the start such that every vertex outside S has an even number
of neighbors inside S. When one exists, the second player wins: whenever
the token leaves S along some edge, the parity condition guarantees an
unused edge leading back into S, and the first player can neither reach
the start (it is in S, and S-vertices are only ever *left* by the first
player along... rather: the token sits in S exactly before first-player
moves) nor strand the token. ``kernel_strategy`` plays that argument and
``verify_strategy`` checks it exhaustively against every adversary line.

Searching for kernels: the parity conditions are linear over GF(2) — for
an independent S they say exactly A·x = 0 for the adjacency matrix A —
so candidates are enumerated from the nullspace and post-filtered for
independence, with plain subset brute force as the trusted fallback.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .engine import GameState, WON, legal_moves, apply_move, new_game, ALICE, BOB
from .errors import (
    BadBipartition,
    BadParameter,
    KernelVerificationError,
    LimitExceeded,
    PreconditionFailed,
    StrategyBreakdown,
    UnknownVertex,
)
from .families import octahedral_path
from .graph import (
    Graph,
    count_degree_residues,
    is_connected,
    is_eulerian,
    neighbors,
    proper_coloring,
    three_coloring,
)
from .solver import edge_limit

DEFAULT_VERTEX_LIMIT = 30
NULLITY_CUTOFF = 20

START_NOT_IN_SET = "start_not_in_set"
NOT_INDEPENDENT = "not_independent"
ODD_NEIGHBOR_COUNT = "odd_neighbor_count"


@dataclass(frozen=True)
class KernelSet:
    members: frozenset[int]
    start: int

    def names(self, g: Graph) -> list[str]:
        return sorted(g.name(v) for v in self.members)


@dataclass(frozen=True)
class KernelCheck:
    """Outcome of the even-kernel predicate, with a failure witness.

    ``clause`` identifies the first violated condition (checked in order:
    start membership, independence by edge index, parity by vertex index);
    ``edge`` carries the offending edge for independence failures and
    ``vertex`` the offending outside vertex for parity failures.
    """

    ok: bool
    clause: str | None = None
    vertex: int | None = None
    edge: tuple[int, int] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class KernelGraph:
    """Bipartite subgraph between a set S and a superset R of its neighbors."""

    left: frozenset[int]
    right: frozenset[int]
    edge_indices: tuple[int, ...]
    right_degrees: dict[int, int]

    def right_degree(self, r: int) -> int:
        return self.right_degrees.get(r, 0)

    @property
    def n_edges(self) -> int:
        return len(self.edge_indices)


@dataclass(frozen=True)
class NotApplicable:
    """Names the first hypothesis of the coloring rule that failed."""

    condition: str
    message: str

    def __bool__(self) -> bool:
        return False


def _check_members(g: Graph, members) -> frozenset[int]:
    out = set()
    for v in members:
        if not isinstance(v, int) or not 0 <= v < g.n_vertices:
            raise UnknownVertex(v)
        out.add(v)
    return frozenset(out)


def is_even_kernel(g: Graph, start: int, members) -> KernelCheck:
    """Predicate with first-failure witness.

    True iff start is in the set, the set is independent, and every
    vertex outside the set has an even number of neighbors inside it.
    """
    if not isinstance(start, int) or not 0 <= start < g.n_vertices:
        raise UnknownVertex(start)
    s = _check_members(g, members)
    if start not in s:
        return KernelCheck(
            ok=False,
            clause=START_NOT_IN_SET,
            vertex=start,
            message=f"start {g.name(start)!r} is not in the set",
        )
    for e, (a, b) in enumerate(g.edges):
        if a in s and b in s:
            return KernelCheck(
                ok=False,
                clause=NOT_INDEPENDENT,
                edge=(a, b),
                message=(
                    f"set is not independent: edge "
                    f"({g.name(a)!r}, {g.name(b)!r}) joins two members"
                ),
            )
    for v in range(g.n_vertices):
        if v in s:
            continue
        count = sum(1 for u, _ in g.adjacency[v] if u in s)
        if count % 2 == 1:
            return KernelCheck(
                ok=False,
                clause=ODD_NEIGHBOR_COUNT,
                vertex=v,
                message=(
                    f"vertex {g.name(v)!r} has {count} neighbors in the set "
                    f"(even count required)"
                ),
            )
    return KernelCheck(ok=True)


def kernel_graph(g: Graph, s_members, r_members) -> KernelGraph:
    """The bipartite subgraph with parts S and R and all S-R edges of g."""
    s = _check_members(g, s_members)
    r = _check_members(g, r_members)
    overlap = s & r
    if overlap:
        raise BadBipartition(
            f"S and R overlap at {sorted(g.name(v) for v in overlap)}"
        )
    for v in s:
        for u, _ in g.adjacency[v]:
            # covers S-S edges too: such a neighbor can never be in R,
            # because S and R are disjoint
            if u not in r:
                raise BadBipartition(
                    f"R must contain all neighbors of S: missing {g.name(u)!r}"
                )
    edge_indices = tuple(
        e
        for e, (a, b) in enumerate(g.edges)
        if (a in s and b in r) or (b in s and a in r)
    )
    degrees: dict[int, int] = {}
    for e in edge_indices:
        a, b = g.edges[e]
        rv = a if a in r else b
        degrees[rv] = degrees.get(rv, 0) + 1
    return KernelGraph(
        left=s, right=frozenset(r), edge_indices=edge_indices, right_degrees=degrees
    )


def _adjacency_bitrows(g: Graph) -> list[int]:
    rows = []
    for v in range(g.n_vertices):
        row = 0
        for u, _ in g.adjacency[v]:
            row |= 1 << u
        rows.append(row)
    return rows


def _independent(g: Graph, x: int) -> bool:
    return not any(x >> a & 1 and x >> b & 1 for a, b in g.edges)


def find_even_kernel_bruteforce(g: Graph, start: int,
                                vertex_limit: int = DEFAULT_VERTEX_LIMIT):
    """Trusted oracle: scan all vertex subsets containing the start, in
    subset-mask counting order, and return the first even kernel."""
    if g.n_vertices > vertex_limit:
        raise LimitExceeded(
            f"graph has {g.n_vertices} vertices, above the kernel search "
            f"limit of {vertex_limit}"
        )
    if not isinstance(start, int) or not 0 <= start < g.n_vertices:
        raise UnknownVertex(start)
    others = [v for v in range(g.n_vertices) if v != start]
    for mask in range(1 << len(others)):
        members = frozenset(
            [start] + [others[i] for i in range(len(others)) if mask >> i & 1]
        )
        if is_even_kernel(g, start, members).ok:
            return KernelSet(members=members, start=start)
    return None


def find_even_kernel(g: Graph, start: int,
                     vertex_limit: int = DEFAULT_VERTEX_LIMIT,
                     nullity_cutoff: int = NULLITY_CUTOFF):
    """Search for an even kernel containing ``start``; None when none exists.

    Parity constraints are solved over GF(2) (nullspace of the adjacency
    matrix), then candidates are filtered for start membership and
    independence, scanning nullspace coefficient vectors in counting order
    over the basis (ordered by free column). Falls back to subset brute
    force when the nullity is above ``nullity_cutoff``. Every returned set
    is re-checked through the predicate.
    """
    if g.n_vertices > vertex_limit:
        raise LimitExceeded(
            f"graph has {g.n_vertices} vertices, above the kernel search "
            f"limit of {vertex_limit}"
        )
    if not isinstance(start, int) or not 0 <= start < g.n_vertices:
        raise UnknownVertex(start)
    basis = gf2.nullspace_basis(_adjacency_bitrows(g), g.n_vertices)
    if len(basis) > nullity_cutoff:
        return find_even_kernel_bruteforce(g, start, vertex_limit)
    for coeff in range(1, 1 << len(basis)):
        x = gf2.combination(basis, coeff)
        if not x >> start & 1:
            continue
        if not _independent(g, x):
            continue
        members = frozenset(v for v in range(g.n_vertices) if x >> v & 1)
        check = is_even_kernel(g, start, members)
        assert check.ok, f"GF(2) kernel candidate failed the predicate: {check.message}"
        return KernelSet(members=members, start=start)
    return None


NOT_CONNECTED = "not_connected"
NOT_EULERIAN = "not_eulerian"
NOT_THREE_COLORABLE = "not_three_colorable"
TWO_COLORABLE = "two_colorable"
DEGREE_RESIDUES = "degree_residues"


def color_class_kernel(g: Graph, start: int):
    """Even kernel from the start's class of a 3-class coloring.

    Applies only to connected Eulerian graphs that need exactly 3 colors
    and have no vertex of degree ≡ 2 (mod 4); otherwise returns
    NotApplicable naming the first failed condition. For graphs passing
    all four checks the class is verified through the predicate; a failure
    there means the graph is outside the structural family the rule is
    stated for and is reported as invalid input, not as NotApplicable.
    """
    if not isinstance(start, int) or not 0 <= start < g.n_vertices:
        raise UnknownVertex(start)
    if not is_connected(g):
        return NotApplicable(NOT_CONNECTED, "graph is not connected")
    if not is_eulerian(g):
        return NotApplicable(NOT_EULERIAN, "graph has a vertex of odd degree")
    coloring = three_coloring(g)
    if coloring is None:
        return NotApplicable(NOT_THREE_COLORABLE, "graph needs more than 3 colors")
    if proper_coloring(g, 2) is not None:
        return NotApplicable(
            TWO_COLORABLE,
            "graph is 2-colorable; the rule needs exactly 3 classes",
        )
    residue_count = count_degree_residues(g, 4, 2)
    if residue_count != 0:
        return NotApplicable(
            DEGREE_RESIDUES,
            f"{residue_count} vertices have degree ≡ 2 (mod 4); the rule needs none",
        )
    members = frozenset(coloring.class_of(start))
    check = is_even_kernel(g, start, members)
    if not check.ok:
        raise KernelVerificationError(
            f"the color class of {g.name(start)!r} is not an even kernel "
            f"({check.message}); the graph is outside the family this rule covers"
        )
    return KernelSet(members=members, start=start)


def octapath_mod1_kernel(m: int, start_residue: int = 0) -> KernelSet:
    """The explicit even kernel of the (3m+1)-level octahedral path.

    Members are u-vertices of levels 0, 3, 6, ..., 3m and v-vertices of
    levels 1, 4, ..., 3m+1 (vertex indices 9i and 9i+4). It certifies the
    second player's win for starts at level residues 0 and 1; the returned
    start is u0 for ``start_residue`` 0 and v1 for 1 (the set contains a
    matching member for every congruent level, so other congruent starts
    follow by the same certificate).
    """
    if not isinstance(m, int) or m < 0:
        raise BadParameter(f"need integer m >= 0, got {m!r}")
    if start_residue not in (0, 1):
        raise BadParameter(f"start_residue must be 0 or 1, got {start_residue!r}")
    members = frozenset(
        [9 * i for i in range(m + 1)] + [9 * i + 4 for i in range(m + 1)]
    )
    start = 0 if start_residue == 0 else 4
    return KernelSet(members=members, start=start)


@dataclass(frozen=True)
class NearKernelSets:
    """The two overlapping candidate sets for (3m+2)-level octahedral paths.

    Their union is independent and contains the start, but it is *not* an
    even kernel: the u- and w-vertices of level 3k+1 each see three
    members. ``check`` carries the failing predicate outcome and
    ``parity_violators`` the offending vertices in index order.
    """

    graph: Graph
    s1: frozenset[int]
    s2: frozenset[int]
    start: int
    check: KernelCheck
    parity_violators: tuple[int, ...]

    @property
    def union(self) -> frozenset[int]:
        return self.s1 | self.s2


def octapath_mod2_sets(m: int, k: int) -> NearKernelSets:
    """Build the two near-kernel sets for the (3m+2)-level octahedral path.

    s1 covers levels 0..3k+1 with u/v members as in the mod-1 kernel; s2
    covers levels 3k+1..3m+2 with v/w members; they share the level-(3k+1)
    v-vertex, which is also the canonical start. The union provably fails
    the parity condition, and the failure is reported rather than hidden.
    """
    if not isinstance(m, int) or m < 0:
        raise BadParameter(f"need integer m >= 0, got {m!r}")
    if not isinstance(k, int) or not 0 <= k <= m:
        raise BadParameter(f"need 0 <= k <= m, got k={k!r}")
    g = octahedral_path(3 * m + 2)
    s1 = frozenset(
        [9 * i for i in range(k + 1)] + [9 * i + 4 for i in range(k + 1)]
    )
    # v at levels 3k+1+3j and w at levels 3k+2+3j, j = 0..m-k
    s2 = frozenset(
        [3 * (3 * k + 1 + 3 * j) + 1 for j in range(m - k + 1)]
        + [3 * (3 * k + 2 + 3 * j) + 2 for j in range(m - k + 1)]
    )
    start = 9 * k + 4  # v at level 3k+1, shared by both sets
    union = s1 | s2
    check = is_even_kernel(g, start, union)
    violators = tuple(
        v
        for v in range(g.n_vertices)
        if v not in union
        and sum(1 for u, _ in g.adjacency[v] if u in union) % 2 == 1
    )
    return NearKernelSets(
        graph=g, s1=s1, s2=s2, start=start, check=check, parity_violators=violators
    )


class KernelStrategy:
    """Second-player move chooser that walks the token back into the set.

    On each turn with the token outside the set, answer with the
    lowest-index member of the set reachable over an unused edge. The
    parity condition guarantees such an edge exists whenever the game has
    been played by the rules from the matching start.
    """

    def __init__(self, g: Graph, start: int, members: frozenset[int]):
        self.graph = g
        self.start = start
        self.members = members

    def __call__(self, state: GameState) -> int:
        for to, e in state.graph.adjacency[state.token]:
            if to in self.members and not state.used >> e & 1:
                return to
        raise StrategyBreakdown(
            f"no unused edge from {state.graph.name(state.token)!r} back into "
            f"the set: {sorted(state.graph.name(v) for v in self.members)}"
        )


def kernel_strategy(g: Graph, start: int, members) -> KernelStrategy:
    members = _check_members(g, members)
    check = is_even_kernel(g, start, members)
    if not check.ok:
        raise PreconditionFailed(
            f"the given set is not an even kernel: {check.message}"
        )
    return KernelStrategy(g, start, members)


@dataclass(frozen=True)
class StrategyReport:
    """Outcome of exhaustive adversary search against a fixed strategy."""

    verified: bool
    counter_line: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.verified


def verify_strategy(g: Graph, start: int, strategy, player: str) -> StrategyReport:
    """Check that ``player``, moving per ``strategy``, wins every line.

    The adversary tries all legal moves; the strategized side plays its
    single chosen move. States are memoized on (token, used-mask) once
    every line below them is known won. Returns the first losing line
    found (adversary moves in ascending order) when one exists.
    """
    if player not in (ALICE, BOB):
        raise BadParameter(f"player must be {ALICE!r} or {BOB!r}, got {player!r}")
    if g.n_edges > edge_limit():
        raise LimitExceeded(
            f"graph has {g.n_edges} edges, above the solver limit of {edge_limit()}"
        )
    verified_states: set[tuple[int, int]] = set()

    def explore(state: GameState):
        key = (state.token, state.used)
        if key in verified_states:
            return None
        if state.mover == player:
            mv = strategy(state)
            nxt = apply_move(state, mv)
            if nxt.status == WON:
                if nxt.winner == player:
                    verified_states.add(key)
                    return None
                return [mv]
            line = explore(nxt)
            if line is not None:
                return [mv] + line
            verified_states.add(key)
            return None
        for mv in legal_moves(state):
            nxt = apply_move(state, mv)
            if nxt.status == WON:
                if nxt.winner == player:
                    continue
                return [mv]
            line = explore(nxt)
            if line is not None:
                return [mv] + line
        verified_states.add(key)
        return None

    line = explore(new_game(g, start))
    if line is None:
        return StrategyReport(verified=True)
    return StrategyReport(verified=False, counter_line=tuple(line))
