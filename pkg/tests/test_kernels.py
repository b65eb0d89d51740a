"""Even kernels: predicate, searches, coloring rule, strategy verification."""

import pytest

from corpus import bowtie, full_corpus, path_graph, quad_regular_octad, triangle_abc
from feedbackgame.engine import ALICE, BOB, GameState, ONGOING, apply_move, new_game
from feedbackgame.errors import (
    BadBipartition,
    BadParameter,
    KernelVerificationError,
    LimitExceeded,
    PreconditionFailed,
    StrategyBreakdown,
    UnknownVertex,
)
from feedbackgame.families import cycle_graph, double_wheel, octahedral_path
from feedbackgame.graph import build_graph
from feedbackgame.kernels import (
    DEGREE_RESIDUES,
    NOT_CONNECTED,
    NOT_EULERIAN,
    NOT_INDEPENDENT,
    NOT_THREE_COLORABLE,
    NotApplicable,
    ODD_NEIGHBOR_COUNT,
    START_NOT_IN_SET,
    TWO_COLORABLE,
    color_class_kernel,
    find_even_kernel,
    find_even_kernel_bruteforce,
    is_even_kernel,
    kernel_graph,
    kernel_strategy,
    octapath_mod1_kernel,
    octapath_mod2_sets,
    verify_strategy,
)
from feedbackgame.solver import best_move, solve


def members_of(g, *names):
    return frozenset(g.vertex_index(name) for name in names)


def s_neighbors(g, v, s):
    return {u for u, _ in g.adjacency[v] if u in s}


# --- predicate -------------------------------------------------------------------

def test_predicate_accepts_the_antipodal_pair():
    g = octahedral_path(1)
    check = is_even_kernel(g, 0, members_of(g, "u0", "v1"))
    assert check.ok and bool(check)
    assert check.clause is None


def test_predicate_reports_missing_start_first():
    g = octahedral_path(1)
    check = is_even_kernel(g, 0, members_of(g, "v0"))
    assert not check
    assert check.clause == START_NOT_IN_SET
    assert check.vertex == 0


def test_predicate_reports_independence_before_parity():
    g = octahedral_path(1)
    # {u0, v0} has both an internal edge and a parity violation at w1;
    # the edge must win, identified by lowest edge index
    check = is_even_kernel(g, 0, members_of(g, "u0", "v0"))
    assert check.clause == NOT_INDEPENDENT
    assert check.edge == (0, 1)


def test_predicate_reports_first_parity_violator_by_index():
    g = octahedral_path(1)
    check = is_even_kernel(g, 0, members_of(g, "u0"))
    assert check.clause == ODD_NEIGHBOR_COUNT
    assert check.vertex == g.vertex_index("v0")
    assert "v0" in check.message


def test_predicate_rejects_unknown_vertices():
    g = triangle_abc()
    with pytest.raises(UnknownVertex):
        is_even_kernel(g, 9, {0})
    with pytest.raises(UnknownVertex):
        is_even_kernel(g, 0, {0, 9})
    with pytest.raises(UnknownVertex):
        is_even_kernel(g, 0, {"a"})


# --- searches ---------------------------------------------------------------------

def test_find_frozen_values():
    octa = octahedral_path(1)
    found = find_even_kernel(octa, 0)
    assert found.members == members_of(octa, "u0", "v1")
    assert found.names(octa) == ["u0", "v1"]

    assert find_even_kernel(cycle_graph(5), 0) is None
    assert find_even_kernel(octahedral_path(2), 4) is None

    dw4 = double_wheel(4)
    assert find_even_kernel(dw4, 0).members == members_of(dw4, "v0", "v2")

    dw6 = double_wheel(6)
    assert find_even_kernel(dw6, 0) is None  # no certificate from any rim start
    assert find_even_kernel(dw6, dw6.vertex_index("x")).members == members_of(dw6, "x", "y")

    dw8 = double_wheel(8)
    assert find_even_kernel(dw8, 0).members == members_of(dw8, "v0", "v2", "v4", "v6")


def test_bruteforce_agrees_with_nullspace_search():
    for label, g in full_corpus():
        if g.n_vertices > 12:
            continue
        for start in range(g.n_vertices):
            fast = find_even_kernel(g, start)
            slow = find_even_kernel_bruteforce(g, start)
            assert (fast is None) == (slow is None), f"{label} start {g.name(start)}"
            if fast is not None:
                assert is_even_kernel(g, start, fast.members).ok
                assert is_even_kernel(g, start, slow.members).ok


def test_find_respects_vertex_limit():
    big = cycle_graph(31)
    with pytest.raises(LimitExceeded):
        find_even_kernel(big, 0)
    with pytest.raises(LimitExceeded):
        find_even_kernel_bruteforce(big, 0)
    assert find_even_kernel(big, 0, vertex_limit=35) is None  # 31 is not divisible by 3


def test_find_falls_back_to_bruteforce_on_high_nullity():
    g = cycle_graph(6)
    found = find_even_kernel(g, 0, nullity_cutoff=1)
    assert found.members == {0, 2, 4}
    assert found.members == find_even_kernel(g, 0).members


def test_find_rejects_unknown_start():
    with pytest.raises(UnknownVertex):
        find_even_kernel(triangle_abc(), 7)


# --- bipartite kernel graph -------------------------------------------------------

def test_kernel_graph_of_the_antipodal_kernel():
    g = octahedral_path(1)
    s = members_of(g, "u0", "v1")
    r = members_of(g, "v0", "w0", "u1", "w1")
    h = kernel_graph(g, s, r)
    assert h.left == s and h.right == r
    assert h.n_edges == 8
    assert list(h.edge_indices) == sorted(h.edge_indices)
    for v in r:
        assert h.right_degree(v) == 2
    assert sum(h.right_degree(v) for v in r) == h.n_edges
    assert h.right_degree(0) == 0  # left vertices have no right-degree


def test_kernel_graph_star_case():
    g = bowtie()
    c = g.vertex_index("c")
    h = kernel_graph(g, {c}, members_of(g, "a", "b", "d", "e"))
    assert h.n_edges == 4
    assert all(h.right_degree(v) == 1 for v in h.right)


def test_kernel_graph_rejects_bad_bipartitions():
    g = octahedral_path(1)
    with pytest.raises(BadBipartition):
        kernel_graph(g, {0}, {0, 1, 2, 3, 4})  # overlap
    with pytest.raises(BadBipartition):
        kernel_graph(g, {0}, {1})  # neighbors w0, u1, w1 missing
    with pytest.raises(BadBipartition):
        kernel_graph(g, members_of(g, "u0", "v0"), members_of(g, "w0", "u1", "v1", "w1"))


# --- coloring rule ----------------------------------------------------------------

def test_color_class_kernel_success_cases():
    octa = octahedral_path(1)
    assert color_class_kernel(octa, 0).members == members_of(octa, "u0", "v1")
    assert color_class_kernel(octa, octa.vertex_index("w1")).members == members_of(
        octa, "v0", "w1"
    )
    dw4 = double_wheel(4)
    assert color_class_kernel(dw4, 0).members == members_of(dw4, "v0", "v2")
    dw8 = double_wheel(8)
    assert color_class_kernel(dw8, 1).members == members_of(dw8, "v1", "v3", "v5", "v7")


def test_color_class_kernel_condition_cascade():
    two_triangles = build_graph(
        ["a", "b", "c", "d", "e", "f"],
        [("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")],
    )
    result = color_class_kernel(two_triangles, 0)
    assert isinstance(result, NotApplicable) and not result
    assert result.condition == NOT_CONNECTED

    assert color_class_kernel(path_graph("abc"), 0).condition == NOT_EULERIAN

    k5 = build_graph(
        list("abcde"),
        [(a, b) for i, a in enumerate("abcde") for b in "abcde"[i + 1:]],
    )
    assert color_class_kernel(k5, 0).condition == NOT_THREE_COLORABLE

    assert color_class_kernel(cycle_graph(4), 0).condition == TWO_COLORABLE
    assert color_class_kernel(cycle_graph(6), 0).condition == TWO_COLORABLE

    assert color_class_kernel(octahedral_path(2), 0).condition == DEGREE_RESIDUES
    assert color_class_kernel(bowtie(), 0).condition == DEGREE_RESIDUES


def test_color_class_kernel_rejects_class_that_is_no_kernel():
    g = quad_regular_octad()
    for start in range(g.n_vertices):
        with pytest.raises(KernelVerificationError, match="not an even kernel"):
            color_class_kernel(g, start)


def test_color_class_kernel_unknown_start():
    with pytest.raises(UnknownVertex):
        color_class_kernel(octahedral_path(1), 44)


# --- the explicit certificate families --------------------------------------------

@pytest.mark.parametrize("m", [0, 1, 2])
def test_mod1_kernel_members_and_validity(m):
    g = octahedral_path(3 * m + 1)
    expected = frozenset(
        [9 * i for i in range(m + 1)] + [9 * i + 4 for i in range(m + 1)]
    )
    for residue, start in ((0, 0), (1, 4)):
        ks = octapath_mod1_kernel(m, residue)
        assert ks.members == expected
        assert ks.start == start
        assert is_even_kernel(g, start, ks.members).ok


def test_mod1_kernel_rejects_bad_arguments():
    with pytest.raises(BadParameter):
        octapath_mod1_kernel(-1)
    with pytest.raises(BadParameter):
        octapath_mod1_kernel(1, start_residue=2)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_mod1_kernel_intersection_law(m):
    """Each outside vertex sees the members the level pattern dictates:
    levels 3i and 3i+1 see {u_{3i}, v_{3i+1}}, levels 3i+2 see
    {v_{3i+1}, u_{3i+3}} except the w row, which sees nothing."""
    g = octahedral_path(3 * m + 1)
    s = octapath_mod1_kernel(m).members
    for i in range(m + 1):
        low_pair = members_of(g, f"u{3 * i}", f"v{3 * i + 1}")
        assert s_neighbors(g, g.vertex_index(f"v{3 * i}"), s) == low_pair
        assert s_neighbors(g, g.vertex_index(f"w{3 * i}"), s) == low_pair
        assert s_neighbors(g, g.vertex_index(f"u{3 * i + 1}"), s) == low_pair
        assert s_neighbors(g, g.vertex_index(f"w{3 * i + 1}"), s) == low_pair
    for i in range(m):
        high_pair = members_of(g, f"v{3 * i + 1}", f"u{3 * i + 3}")
        assert s_neighbors(g, g.vertex_index(f"u{3 * i + 2}"), s) == high_pair
        assert s_neighbors(g, g.vertex_index(f"v{3 * i + 2}"), s) == high_pair
        assert s_neighbors(g, g.vertex_index(f"w{3 * i + 2}"), s) == set()


def test_mod1_certificate_scales_past_the_search_limit():
    m = 5  # 48 vertices, far beyond the kernel search cap
    g = octahedral_path(3 * m + 1)
    assert is_even_kernel(g, 0, octapath_mod1_kernel(m).members).ok


@pytest.mark.parametrize(
    "m,k",
    [(0, 0), (1, 0), (1, 1), (2, 1)],
)
def test_mod2_sets_fail_parity_exactly_at_the_seam(m, k):
    near = octapath_mod2_sets(m, k)
    g = near.graph
    assert g.n_vertices == 3 * (3 * m + 2) + 3
    assert near.start == 9 * k + 4
    assert near.s1 & near.s2 == {near.start}
    # the union is independent and contains the start, but parity fails
    assert not near.check.ok
    assert near.check.clause == ODD_NEIGHBOR_COUNT
    assert near.parity_violators == (9 * k + 3, 9 * k + 5)
    # both violators are adjacent to exactly the three seam members
    seam = {9 * k, 9 * k + 4, 3 * (3 * k + 2) + 2}
    for v in near.parity_violators:
        assert s_neighbors(g, v, near.union) == seam


def test_mod2_component_sets_as_written():
    near = octapath_mod2_sets(0, 0)
    g = near.graph
    assert near.s1 == members_of(g, "u0", "v1")
    assert near.s2 == members_of(g, "v1", "w2")
    near = octapath_mod2_sets(1, 1)
    g = near.graph
    assert near.s1 == members_of(g, "u0", "v1", "u3", "v4")
    assert near.s2 == members_of(g, "v4", "w5")


def test_mod2_rejects_bad_arguments():
    with pytest.raises(BadParameter):
        octapath_mod2_sets(-1, 0)
    with pytest.raises(BadParameter):
        octapath_mod2_sets(1, 2)


# --- strategy play and verification ------------------------------------------------

def test_kernel_strategy_returns_into_the_set():
    g = octahedral_path(1)
    strategy = kernel_strategy(g, 0, members_of(g, "u0", "v1"))
    state = apply_move(new_game(g, 0), g.vertex_index("v0"))
    reply = strategy(state)
    assert g.name(reply) == "v1"
    state = apply_move(state, reply)
    assert state.status == ONGOING and state.token == g.vertex_index("v1")


def test_kernel_strategy_rejects_non_kernels():
    g = octahedral_path(1)
    with pytest.raises(PreconditionFailed, match="not an even kernel"):
        kernel_strategy(g, 0, members_of(g, "u0", "w1"))


def test_strategy_breakdown_when_no_edge_leads_back():
    g = octahedral_path(1)
    strategy = kernel_strategy(g, 0, members_of(g, "u0", "v1"))
    blocked = 0
    for e, (a, b) in enumerate(g.edges):
        if {g.name(a), g.name(b)} in ({"w0", "u0"}, {"w0", "v1"}):
            blocked |= 1 << e
    stranded = GameState(g, start=0, token=g.vertex_index("w0"),
                         used=blocked, status=ONGOING)
    with pytest.raises(StrategyBreakdown):
        strategy(stranded)


def test_verify_strategy_confirms_kernel_play():
    cases = [
        (octahedral_path(1), 0),
        (double_wheel(4), 0),
        (double_wheel(6), double_wheel(6).vertex_index("x")),
    ]
    for g, start in cases:
        found = find_even_kernel(g, start)
        strategy = kernel_strategy(g, start, found.members)
        assert verify_strategy(g, start, strategy, BOB).verified
        assert solve(g, start).winner == BOB


def test_verify_strategy_reports_a_counter_line():
    g = octahedral_path(1)

    def greedy_left(state):
        from feedbackgame.engine import legal_moves

        return legal_moves(state)[0]

    report = verify_strategy(g, 0, greedy_left, BOB)
    assert not report.verified
    assert report.counter_line is not None
    # the reported line must be legal from the start and end with a loss
    state = new_game(g, 0)
    for mv in report.counter_line:
        state = apply_move(state, mv)
    assert state.status == "won" and state.winner == ALICE


def test_verify_strategy_for_the_first_player():
    g = triangle_abc()
    report = verify_strategy(g, 0, best_move, ALICE)
    assert report.verified
    octa2 = octahedral_path(2)
    assert verify_strategy(octa2, 1, best_move, ALICE).verified


def test_verify_strategy_validation_and_limits():
    g = triangle_abc()
    with pytest.raises(BadParameter):
        verify_strategy(g, 0, best_move, "carol")
    with pytest.raises(LimitExceeded):
        verify_strategy(octahedral_path(5), 0, best_move, BOB)
