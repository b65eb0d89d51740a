"""Move legality, edge deletion, and the two win conditions.

The token starts on a chosen vertex; Alice and Bob alternate (Alice first)
moving it along an edge that has not been used yet, and the traversed edge
is deleted. Whoever moves the token back to the starting vertex, or onto a
vertex with no remaining edges (isolated once the just-used edge is gone),
wins immediately. There are no draws: some move is always available to the
player to move, because the previous move would otherwise have ended the
game.

States are plain immutable values; ``apply_move`` returns a fresh state so
the solver and the HTTP service can branch cheaply. The mover is *derived*
from the parity of the used-edge count, never stored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, GameOver, IllegalMove, IsolatedStart, UnknownVertex
from .graph import Graph

ALICE = "alice"
BOB = "bob"

ONGOING = "ongoing"
WON = "won"

RETURNED_TO_START = "returned_to_start"
ISOLATED_VERTEX = "isolated_vertex"


@dataclass(frozen=True)
class GameState:
    graph: Graph
    start: int
    token: int
    used: int  # bitmask over the graph's edge indices
    status: str  # ONGOING or WON
    winner: str | None = None  # ALICE or BOB when status == WON
    reason: str | None = None  # RETURNED_TO_START or ISOLATED_VERTEX

    @property
    def mover(self) -> str:
        """Alice moves first, so she is on move whenever an even number of
        edges has been used."""
        return ALICE if bin(self.used).count("1") % 2 == 0 else BOB

    @property
    def moves_played(self) -> int:
        return bin(self.used).count("1")


def _incidence_masks(g: Graph) -> list[int]:
    masks = [0] * g.n_vertices
    for e, (a, b) in enumerate(g.edges):
        masks[a] |= 1 << e
        masks[b] |= 1 << e
    return masks


def new_game(g: Graph, start: int) -> GameState:
    if not 0 <= start < g.n_vertices:
        raise UnknownVertex(start)
    if len(g.adjacency[start]) == 0:
        raise IsolatedStart(g.name(start))
    return GameState(graph=g, start=start, token=start, used=0, status=ONGOING)


def legal_moves(state: GameState) -> list[int]:
    """Destinations reachable from the token via unused edges, ascending."""
    if state.status != ONGOING:
        raise GameOver("the game is already decided")
    return [
        to
        for to, e in state.graph.adjacency[state.token]
        if not state.used >> e & 1
    ]


def apply_move(state: GameState, to: int) -> GameState:
    if state.status != ONGOING:
        raise GameOver("the game is already decided")
    g = state.graph
    if not 0 <= to < g.n_vertices:
        raise UnknownVertex(to)
    edge = None
    for u, e in g.adjacency[state.token]:
        if u == to:
            edge = e
            break
    if edge is None:
        raise IllegalMove(
            f"no edge between {g.name(state.token)!r} and {g.name(to)!r}",
            edge=(g.name(state.token), g.name(to)),
        )
    if state.used >> edge & 1:
        raise IllegalMove(
            f"edge ({g.name(state.token)!r}, {g.name(to)!r}) was already used",
            edge=(g.name(state.token), g.name(to)),
        )

    mover = state.mover
    used = state.used | 1 << edge
    # win check: return-to-start takes precedence, then isolation of the
    # arrival vertex once the just-used edge is removed
    if to == state.start:
        return GameState(g, state.start, to, used, WON, winner=mover,
                         reason=RETURNED_TO_START)
    remaining = [e for _, e in g.adjacency[to] if not used >> e & 1]
    if not remaining:
        return GameState(g, state.start, to, used, WON, winner=mover,
                         reason=ISOLATED_VERTEX)
    return GameState(g, state.start, to, used, ONGOING)


def status(state: GameState) -> str:
    return state.status


def winner(state: GameState) -> str | None:
    return state.winner


# --- JSON --------------------------------------------------------------------

def state_to_json_dict(state: GameState) -> dict:
    g = state.graph
    used_pairs = [
        [g.vertices[a], g.vertices[b]]
        for e, (a, b) in enumerate(g.edges)
        if state.used >> e & 1
    ]
    data = {
        "start": g.name(state.start),
        "token": g.name(state.token),
        "used": used_pairs,
        "mover": state.mover,
        "status": state.status,
    }
    if state.status == WON:
        data["winner"] = state.winner
        data["reason"] = state.reason
    return data


def state_from_json_dict(g: Graph, data: dict) -> GameState:
    """Rebuild a state against ``g``, cross-checking the derived fields."""
    try:
        start = g.vertex_index(data["start"])
        token = g.vertex_index(data["token"])
        used_pairs = data["used"]
    except (KeyError, TypeError):
        raise DomainError("state JSON needs 'start', 'token' and 'used'") from None
    edge_index = {frozenset(pair): e for e, pair in enumerate(g.edges)}
    used = 0
    for pair in used_pairs:
        a, b = g.vertex_index(pair[0]), g.vertex_index(pair[1])
        e = edge_index.get(frozenset((a, b)))
        if e is None:
            raise DomainError(f"used entry {pair!r} is not an edge of the graph")
        if used >> e & 1:
            raise DomainError(f"used entry {pair!r} listed twice")
        used |= 1 << e
    st = GameState(g, start, token, used, ONGOING)
    if used and token == start:
        st = GameState(g, start, token, used, WON,
                       winner=ALICE if st.moves_played % 2 == 1 else BOB,
                       reason=RETURNED_TO_START)
    elif all(used >> e & 1 for _, e in g.adjacency[token]):
        st = GameState(g, start, token, used, WON,
                       winner=ALICE if st.moves_played % 2 == 1 else BOB,
                       reason=ISOLATED_VERTEX)
    declared = data.get("mover")
    if declared is not None and st.status == ONGOING and declared != st.mover:
        raise DomainError(
            f"mover field {declared!r} disagrees with used-edge parity ({st.mover})"
        )
    return st
