"""Constructors for the graph families used throughout the package.

Canonical naming: octahedral paths use "u0","v0","w0","u1",... interleaved
by level, so vertex indices are u_i = 3i, v_i = 3i+1, w_i = 3i+2; double
wheels use rim names "v0".."v{rim-1}" plus hubs "x" and "y"; cycles use
"c0".."c{n-1}". Stable names keep solver output and the web UI reproducible.
"""

from __future__ import annotations

import math

from .errors import (
    BadParameter,
    MissingEdge,
    NameCollision,
    NotATriangle,
    NotCommonNeighbor,
)
from .graph import Graph, build_graph, graph_to_json_dict, neighbors


def octahedral_path(n: int) -> Graph:
    """Chain of n octahedra sharing opposite faces.

    Level i carries the triangle u_i v_i w_i; consecutive levels are joined
    by the six edges u_i-u_{i+1}, u_i-w_{i+1}, v_i-v_{i+1}, v_i-u_{i+1},
    w_i-w_{i+1}, w_i-v_{i+1}. |V| = 3n+3, |E| = 9n+3; the six triangle
    vertices at the two ends have degree 4, all others degree 6.
    """
    if not isinstance(n, int) or n < 1:
        raise BadParameter(f"octahedral path needs integer n >= 1, got {n!r}")
    names = []
    for i in range(n + 1):
        names += [f"u{i}", f"v{i}", f"w{i}"]
    edges = []
    for i in range(n + 1):
        u, v, w = f"u{i}", f"v{i}", f"w{i}"
        edges += [(u, v), (u, w), (v, w)]
        if i < n:
            u2, v2, w2 = f"u{i+1}", f"v{i+1}", f"w{i+1}"
            edges += [(u, u2), (u, w2), (v, v2), (v, u2), (w, w2), (w, v2)]
    return build_graph(names, edges)


def double_wheel(rim: int) -> Graph:
    """Cycle v0..v{rim-1} plus two nonadjacent hubs x, y joined to every rim vertex."""
    if not isinstance(rim, int) or rim < 3:
        raise BadParameter(f"double wheel needs integer rim >= 3, got {rim!r}")
    rim_names = [f"v{i}" for i in range(rim)]
    names = rim_names + ["x", "y"]
    edges = [(rim_names[i], rim_names[(i + 1) % rim]) for i in range(rim)]
    edges += [(v, "x") for v in rim_names]
    edges += [(v, "y") for v in rim_names]
    return build_graph(names, edges)


def cycle_graph(n: int) -> Graph:
    if not isinstance(n, int) or n < 3:
        raise BadParameter(f"cycle needs integer n >= 3, got {n!r}")
    names = [f"c{i}" for i in range(n)]
    edges = [(names[i], names[(i + 1) % n]) for i in range(n)]
    return build_graph(names, edges)


def octahedron_addition(g: Graph, u1: str, u2: str, u3: str, name_prefix: str = "a") -> Graph:
    """Insert a new triangle inside the triangle u1 u2 u3.

    Adds vertices <prefix>1, <prefix>2, <prefix>3 joined into a triangle,
    with each new vertex also joined to the two anchor vertices of the
    *other* indices. Each new vertex gets degree 4 and each anchor gains
    exactly 2, so Eulerian graphs stay Eulerian. |V| grows by 3, |E| by 9.

    The caller is responsible for u1 u2 u3 actually bounding a face when
    that matters; only pairwise adjacency is checked here.
    """
    anchors = [g.vertex_index(u1), g.vertex_index(u2), g.vertex_index(u3)]
    if len(set(anchors)) != 3:
        raise NotATriangle(f"anchors must be three distinct vertices: {u1!r}, {u2!r}, {u3!r}")
    for i in range(3):
        for j in range(i + 1, 3):
            if anchors[j] not in neighbors(g, anchors[i]):
                raise NotATriangle(
                    f"{g.name(anchors[i])!r} and {g.name(anchors[j])!r} are not adjacent"
                )
    new_names = [f"{name_prefix}{k}" for k in (1, 2, 3)]
    for nn in new_names:
        if nn in g.index:
            raise NameCollision(f"vertex name {nn!r} already exists")

    names = list(g.vertices) + new_names
    edges = [(g.vertices[a], g.vertices[b]) for a, b in g.edges]
    a1, a2, a3 = new_names
    anchor_names = [u1, u2, u3]
    edges += [(a1, a2), (a1, a3), (a2, a3)]
    for i, ai in enumerate(new_names):
        for j in range(3):
            if j != i:
                edges.append((ai, anchor_names[j]))
    return build_graph(names, edges)


def two_subdivision(g: Graph, u: str, v: str, w: str, w2: str,
                    name_a: str = "a", name_b: str = "b") -> Graph:
    """Replace edge uv by the path u-a-b-v, fanning a and b to w and w2.

    Requires w and w2 to be distinct common neighbors of u and v (the
    triangles uvw and uvw2 are the caller-asserted faces). Degrees of u
    and v are unchanged; w and w2 each gain 2. |V| grows by 2, |E| by 6.
    """
    ui, vi = g.vertex_index(u), g.vertex_index(v)
    wi, w2i = g.vertex_index(w), g.vertex_index(w2)
    if vi not in neighbors(g, ui):
        raise MissingEdge(f"no edge between {u!r} and {v!r}")
    if wi == w2i:
        raise NotCommonNeighbor(f"{w!r} and {w2!r} must be distinct")
    common = neighbors(g, ui) & neighbors(g, vi)
    for cand, cname in ((wi, w), (w2i, w2)):
        if cand not in common:
            raise NotCommonNeighbor(f"{cname!r} is not a common neighbor of {u!r} and {v!r}")
    for nn in (name_a, name_b):
        if nn in g.index:
            raise NameCollision(f"vertex name {nn!r} already exists")
    if name_a == name_b:
        raise NameCollision(f"new vertex names must differ, both {name_a!r}")

    removed = tuple(sorted((ui, vi)))
    names = list(g.vertices) + [name_a, name_b]
    edges = [
        (g.vertices[a], g.vertices[b]) for a, b in g.edges if (a, b) != removed
    ]
    edges += [
        (u, name_a), (name_a, name_b), (name_b, v),
        (name_a, w), (name_b, w), (name_a, w2), (name_b, w2),
    ]
    return build_graph(names, edges)


# --- layout hints for the UI -------------------------------------------------

def octapath_layout(n: int) -> dict[str, tuple[float, float]]:
    """Schematic ladder: level i at x=i, rows u/v/w at y=0/1/2."""
    layout = {}
    for i in range(n + 1):
        layout[f"u{i}"] = (float(i), 0.0)
        layout[f"v{i}"] = (float(i), 1.0)
        layout[f"w{i}"] = (float(i), 2.0)
    return layout


def double_wheel_layout(rim: int) -> dict[str, tuple[float, float]]:
    """Rim on the unit circle, hubs at small vertical offsets from center."""
    layout = {}
    for i in range(rim):
        angle = 2.0 * math.pi * i / rim
        layout[f"v{i}"] = (round(math.cos(angle), 6), round(math.sin(angle), 6))
    layout["x"] = (0.0, 0.3)
    layout["y"] = (0.0, -0.3)
    return layout


def cycle_layout(n: int) -> dict[str, tuple[float, float]]:
    layout = {}
    for i in range(n):
        angle = 2.0 * math.pi * i / n
        layout[f"c{i}"] = (round(math.cos(angle), 6), round(math.sin(angle), 6))
    return layout


def graph_with_layout_json_dict(g: Graph, layout) -> dict:
    data = graph_to_json_dict(g)
    if layout is not None:
        data["layout"] = {name: [x, y] for name, (x, y) in layout.items()}
    return data
