import pytest
from corpus import graph_strategy
from hypothesis import given, settings, strategies as st

from tcoi.errors import InfeasibleError, InvalidInputError, IsolatedVertexError, NotATreeError
from tcoi.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    double_star,
    empty_graph,
    path_graph,
    spider,
    star_graph,
)
from tcoi.solvers import (
    ForcedAssignment,
    Method,
    Problem,
    alpha,
    beta,
    branch_and_bound,
    brute_force,
    certifies,
    component_sum,
    gamma_t,
    gamma_tcoi,
    in_some_min_tcid_set,
    solve_constrained,
    tree_gamma_t,
    tree_gamma_tcoi,
)

K4_MINUS_E = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])

# (gamma_t, gamma_tcoi, alpha, beta), each confirmed by exhaustive search
KNOWN = [
    ("P4", path_graph(4), (2, 2, 2, 2)),
    ("C4", cycle_graph(4), (2, 3, 2, 2)),
    ("C5", cycle_graph(5), (3, 4, 3, 2)),
    ("C6", cycle_graph(6), (4, 4, 3, 3)),
    ("K4-e", K4_MINUS_E, (2, 2, 2, 2)),
    ("K4", complete_graph(4), (2, 3, 3, 1)),
    ("S2,2", double_star(2), (2, 2, 2, 4)),
    ("S3,3", double_star(3), (2, 2, 2, 6)),
    ("K1,3", star_graph(3), (2, 2, 1, 3)),
    ("P7", path_graph(7), (4, 4, 3, 4)),
    ("spider(3,2)", spider(3, 2), (4, 4, 3, 4)),
]


@pytest.mark.parametrize("name, g, expected", KNOWN, ids=[k[0] for k in KNOWN])
@pytest.mark.parametrize("solver", [brute_force, branch_and_bound], ids=["bf", "bb"])
def test_known_values(name, g, expected, solver):
    got = tuple(solver(g, p).value for p in Problem)
    assert got == expected


@pytest.mark.parametrize("name, g, expected", [k for k in KNOWN if k[1].is_tree()],
                         ids=[k[0] for k in KNOWN if k[1].is_tree()])
def test_tree_dp_known_values(name, g, expected):
    assert tree_gamma_t(g).value == expected[0]
    assert tree_gamma_tcoi(g).value == expected[1]


def test_witnesses_are_certified():
    for _, g, _ in KNOWN:
        for p in Problem:
            for solver in (brute_force, branch_and_bound):
                res = solver(g, p)
                assert len(res.witness) == res.value
                assert certifies(g, p, res.witness)


@pytest.mark.parametrize("method", [None, Method.BRUTE_FORCE, Method.BRANCH_AND_BOUND])
def test_forced_assignments_on_p4(method):
    p4 = path_graph(4)
    solve = lambda f: solve_constrained(p4, Problem.GAMMA_TCOI, f, method).value  # noqa: E731
    assert solve(ForcedAssignment(forced_in={0})) == 3
    assert solve(ForcedAssignment(forced_in={1})) == 2
    assert solve(ForcedAssignment(forced_out={0})) == 2
    with pytest.raises(InfeasibleError):
        solve(ForcedAssignment(forced_out={1, 2}))


def test_forced_sets_must_be_disjoint():
    with pytest.raises(InvalidInputError):
        ForcedAssignment(forced_in={1}, forced_out={1})


def test_p2_has_no_tcid_set():
    p2 = path_graph(2)
    assert gamma_t(p2).value == 2
    for solver in (brute_force, branch_and_bound):
        with pytest.raises(InfeasibleError):
            solver(p2, Problem.GAMMA_TCOI)
    with pytest.raises(InfeasibleError):
        tree_gamma_tcoi(p2)
    with pytest.raises(InfeasibleError):
        component_sum(disjoint_union(p2, p2))


def test_isolated_vertex_rejected():
    g = Graph(3, [(0, 1)])
    for p in (Problem.GAMMA_T, Problem.GAMMA_TCOI):
        with pytest.raises(IsolatedVertexError):
            brute_force(g, p)
        with pytest.raises(IsolatedVertexError):
            branch_and_bound(g, p)
    assert alpha(g).value == 1 and beta(g).value == 2


def test_empty_graph_rejected():
    with pytest.raises(InvalidInputError):
        gamma_t(empty_graph(0))


def test_brute_force_size_guard():
    with pytest.raises(InvalidInputError):
        brute_force(path_graph(25), Problem.GAMMA_T)
    with pytest.raises(InvalidInputError):
        brute_force(path_graph(5), Problem.ALPHA, limit=4)
    assert brute_force(path_graph(5), Problem.ALPHA, limit=None).value == 2


def test_tree_dp_needs_tree():
    with pytest.raises(NotATreeError):
        tree_gamma_t(cycle_graph(5))
    with pytest.raises(InvalidInputError):
        gamma_t(cycle_graph(5), Method.TREE_DP)


def test_component_sum_with_a_p2_part():
    g = disjoint_union(path_graph(2), path_graph(4))
    assert component_sum(g) == 4
    assert gamma_tcoi(g).value == 4


def test_membership_in_some_minimum_set():
    assert all(in_some_min_tcid_set(path_graph(6), v) for v in range(6))
    p4 = path_graph(4)
    assert [in_some_min_tcid_set(p4, v) for v in range(4)] == [False, True, True, False]
    with pytest.raises(InvalidInputError):
        in_some_min_tcid_set(p4, 9)


def test_long_path_uses_tree_dp():
    res = gamma_tcoi(path_graph(60))
    assert res.method is Method.TREE_DP
    assert certifies(path_graph(60), Problem.GAMMA_TCOI, res.witness)


@settings(max_examples=120, deadline=None)
@given(graph_strategy(min_n=2, max_n=9))
def test_branch_and_bound_agrees_with_brute_force(g):
    for p in Problem:
        try:
            expected = brute_force(g, p)
        except (InfeasibleError, IsolatedVertexError) as exc:
            with pytest.raises(type(exc)):
                branch_and_bound(g, p)
            continue
        got = branch_and_bound(g, p)
        assert got.value == expected.value
        assert certifies(g, p, got.witness)


@st.composite
def trees_with_forcing(draw):
    n = draw(st.integers(3, 11))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    t = Graph(n, [(p, v) for v, p in enumerate(parents, start=1)])
    marks = draw(st.lists(st.sampled_from("-io"), min_size=n, max_size=n))
    f = ForcedAssignment({v for v, m in enumerate(marks) if m == "i"},
                         {v for v, m in enumerate(marks) if m == "o"})
    return t, f


@settings(max_examples=200, deadline=None)
@given(trees_with_forcing())
def test_tree_dp_agrees_with_brute_force_under_forcing(case):
    t, forced = case
    for dp, problem in ((tree_gamma_t, Problem.GAMMA_T), (tree_gamma_tcoi, Problem.GAMMA_TCOI)):
        try:
            expected = brute_force(t, problem, forced).value
        except InfeasibleError:
            with pytest.raises(InfeasibleError):
                dp(t, forced)
            continue
        res = dp(t, forced)
        assert res.value == expected
        assert forced.forced_in <= res.witness
        assert not forced.forced_out & res.witness
