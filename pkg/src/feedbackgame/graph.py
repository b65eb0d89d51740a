"""Immutable simple-graph representation plus the degree/coloring utilities.

Vertices are identified by index once a graph is built; names exist only
for I/O. Edges are stored once, globally indexed 0..|E|-1, canonicalized
to (min-index, max-index) pairs. All downstream "used edge" bookkeeping
is a bitmask over this indexing, so edge indices must be stable for the
lifetime of the graph (they are: the structure is immutable).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    BadResidue,
    DomainError,
    DuplicateEdge,
    DuplicateVertex,
    SelfLoop,
    UnknownVertex,
)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    # adjacency[v] = tuple of (neighbor index, edge index), ascending by neighbor
    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    index: dict[str, int] = field(compare=False, repr=False)

    def vertex_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownVertex(name) from None

    def name(self, v: int) -> str:
        return self.vertices[v]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_names(self, e: int) -> tuple[str, str]:
        a, b = self.edges[e]
        return self.vertices[a], self.vertices[b]

    def __repr__(self):  # compact; full adjacency is noise in test output
        return f"Graph(|V|={self.n_vertices}, |E|={self.n_edges})"


@dataclass(frozen=True)
class ColorPartition:
    """A proper coloring as a list of disjoint vertex-index sets."""

    classes: tuple[frozenset[int], ...]

    def class_of(self, v: int) -> frozenset[int]:
        for cls in self.classes:
            if v in cls:
                return cls
        raise UnknownVertex(v)

    @property
    def n_classes(self) -> int:
        return len(self.classes)


def build_graph(vertex_names, edge_pairs) -> Graph:
    """Build an immutable simple graph from names and name pairs.

    Edge order follows first appearance in ``edge_pairs`` and defines the
    edge indexing used by every other module.
    """
    names = list(vertex_names)
    index: dict[str, int] = {}
    for name in names:
        if name in index:
            raise DuplicateVertex(name)
        index[name] = len(index)

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for pair in edge_pairs:
        a_name, b_name = pair
        if a_name not in index:
            raise UnknownVertex(a_name)
        if b_name not in index:
            raise UnknownVertex(b_name)
        a, b = index[a_name], index[b_name]
        if a == b:
            raise SelfLoop(a_name)
        if a > b:
            a, b = b, a
        if (a, b) in seen:
            raise DuplicateEdge(names[a], names[b])
        seen.add((a, b))
        edges.append((a, b))

    rows: list[list[tuple[int, int]]] = [[] for _ in names]
    for e, (a, b) in enumerate(edges):
        rows[a].append((b, e))
        rows[b].append((a, e))
    adjacency = tuple(tuple(sorted(row)) for row in rows)

    return Graph(
        vertices=tuple(names),
        edges=tuple(edges),
        adjacency=adjacency,
        index=index,
    )


def neighbors(g: Graph, v: int) -> set[int]:
    _check_vertex(g, v)
    return {u for u, _ in g.adjacency[v]}


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return len(g.adjacency[v])


def _check_vertex(g: Graph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < g.n_vertices:
        raise UnknownVertex(v)


def is_connected(g: Graph) -> bool:
    if g.n_vertices == 0:
        return True
    seen = [False] * g.n_vertices
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for u, _ in g.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                count += 1
                stack.append(u)
    return count == g.n_vertices


def is_eulerian(g: Graph) -> bool:
    """True iff every degree is even (connectivity is reported separately)."""
    return all(len(row) % 2 == 0 for row in g.adjacency)


def count_degree_residues(g: Graph, modulus: int, residue: int) -> int:
    """Number of vertices whose degree is congruent to ``residue`` mod ``modulus``."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise BadResidue(modulus, residue)
    return sum(1 for row in g.adjacency if len(row) % modulus == residue)


def proper_coloring(g: Graph, max_classes: int):
    """First vertex coloring with at most ``max_classes`` colors, or None.

    Plain backtracking in vertex-index order; each vertex tries colors in
    ascending order (first-fit per branch). Deterministic given the fixed
    vertex order. Exhaustive: returns None only when no proper coloring
    with that many classes exists.
    """
    n = g.n_vertices
    color = [-1] * n

    def feasible(v: int, c: int) -> bool:
        return all(color[u] != c for u, _ in g.adjacency[v])

    def assign(v: int) -> bool:
        if v == n:
            return True
        used = max(color[:v], default=-1) + 1
        # trying at most one brand-new color per level avoids symmetric branches
        for c in range(min(used + 1, max_classes)):
            if feasible(v, c):
                color[v] = c
                if assign(v + 1):
                    return True
                color[v] = -1
        return False

    if n == 0:
        return ColorPartition(classes=())
    if not assign(0):
        return None
    n_used = max(color) + 1
    classes = tuple(
        frozenset(v for v in range(n) if color[v] == c) for c in range(n_used)
    )
    return ColorPartition(classes=classes)


def three_coloring(g: Graph):
    """Proper coloring into <= 3 classes, or None when the graph needs 4+."""
    return proper_coloring(g, 3)


# --- JSON ------------------------------------------------------------------

def graph_to_json_dict(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[g.vertices[a], g.vertices[b]] for a, b in g.edges],
    }


def graph_to_json(g: Graph, indent=None) -> str:
    return json.dumps(graph_to_json_dict(g), indent=indent)


def graph_from_json_dict(data) -> Graph:
    """Parse {"vertices": [...], "edges": [[a,b], ...]}.

    Edge order in the document defines edge indices. Rejects the same
    error cases as build_graph.
    """
    if not isinstance(data, dict):
        raise DomainError("graph JSON must be an object")
    try:
        vertices = data["vertices"]
        edges = data["edges"]
    except (KeyError, TypeError):
        raise DomainError("graph JSON needs 'vertices' and 'edges' fields") from None
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise DomainError("'vertices' must be a list of strings")
    if not isinstance(edges, list):
        raise DomainError("'edges' must be a list of vertex-name pairs")
    pairs = []
    for item in edges:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise DomainError(f"bad edge entry: {item!r}")
        pairs.append((item[0], item[1]))
    return build_graph(vertices, pairs)


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from None
    return graph_from_json_dict(data)
