from itertools import product

import pytest

from tcoi.catalog import canonical_form
from tcoi.errors import NotATreeError, ParseError, PreconditionError
from tcoi.graph import Graph, cycle_graph, double_star, path_graph, star_graph
from tcoi.solvers import tree_gamma_t, tree_gamma_tcoi
from tcoi.trees import (
    Recognizer,
    TreeOp,
    TreeOpSequence,
    apply_tree_op,
    build_context,
    canonical_tree_code,
    enumerate_free_trees,
    generate_family_f,
    is_in_t_gamma_t,
    is_star,
    op_allowed,
    recognize_family_f,
)


def _prufer_tree(seq, n):
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return Graph(n, edges)


@pytest.mark.parametrize("n", range(2, 8))
def test_free_tree_enumeration_matches_prufer_oracle(n):
    oracle = {canonical_form(_prufer_tree(seq, n)) for seq in product(range(n), repeat=n - 2)}
    ours = [canonical_form(t) for t in enumerate_free_trees(n)]
    assert len(ours) == len(set(ours))
    assert set(ours) == oracle


def test_canonical_code_is_label_independent():
    t = Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
    u = t.relabel([5, 3, 0, 1, 2, 4])
    assert canonical_tree_code(t) == canonical_tree_code(u)
    assert canonical_tree_code(t) != canonical_tree_code(path_graph(6))


def test_context_of_p4():
    ctx = build_context(path_graph(4))
    assert ctx.d_set == {1, 2}
    assert ctx.l3 == {0, 3}
    assert ctx.v23 == {0, 3}


def test_double_star_leaves_all_in_l3():
    ctx = build_context(double_star(2))
    assert ctx.l3 == double_star(2).leaves()


def test_context_needs_two_supports():
    with pytest.raises(PreconditionError):
        build_context(star_graph(3))
    with pytest.raises(NotATreeError):
        build_context(cycle_graph(5))


def test_membership_rejects_stars_and_small_trees():
    with pytest.raises(PreconditionError):
        is_in_t_gamma_t(star_graph(4))
    with pytest.raises(PreconditionError):
        is_in_t_gamma_t(path_graph(3))
    assert is_in_t_gamma_t(path_graph(4))
    assert not is_in_t_gamma_t(path_graph(8))


@pytest.mark.parametrize("op, n", [("F2", 5), ("F3", 6), ("F4", 7)])
def test_single_operations_on_p4(op, n):
    t = apply_tree_op(path_graph(4), op, 0)
    assert canonical_tree_code(t) == canonical_tree_code(path_graph(n))


def test_operation_precondition_enforced():
    p4 = path_graph(4)
    assert not op_allowed(p4, TreeOp.F2, 1)
    with pytest.raises(PreconditionError):
        apply_tree_op(p4, TreeOp.F2, 1)
    with pytest.raises(PreconditionError):
        apply_tree_op(star_graph(3), TreeOp.F1, 0)


def test_generation_at_small_orders():
    assert [m.tree for m in generate_family_f(4)] == [path_graph(4)]
    codes = {m.code for m in generate_family_f(5)}
    assert canonical_tree_code(path_graph(5)) in codes
    assert canonical_tree_code(double_star(1, 2)) in codes
    assert len(codes) == 3


def test_sample_script_replays():
    s = TreeOpSequence.loads("base P4\nF4 3\nF5 6\nF1 2\nF1 7\nF2 11\nF3 10\n")
    t = s.replay()
    assert t.n == 15
    assert tree_gamma_t(t).value == tree_gamma_tcoi(t).value == 9
    found = recognize_family_f(t)
    assert found is not None
    assert canonical_tree_code(found.replay()) == canonical_tree_code(t)


def test_script_text_round_trip_and_errors():
    s = TreeOpSequence(((TreeOp.F2, 0), (TreeOp.F1, 1)))
    assert TreeOpSequence.loads(s.dumps()) == s
    for bad, line in [("F1 0\n", 1), ("base P4\nF9 1\n", 2), ("base P4\nF1 x\n", 2)]:
        with pytest.raises(ParseError) as err:
            TreeOpSequence.loads(bad)
        assert err.value.line == line


def test_recognizer_on_members_and_non_members():
    rec = Recognizer()
    for n in range(4, 9):
        for t in enumerate_free_trees(n):
            if is_star(t):
                assert rec.recognize(t) is None
                continue
            script = rec.recognize(t)
            if is_in_t_gamma_t(t):
                assert script is not None
            if script is not None:
                assert canonical_tree_code(script.replay()) == canonical_tree_code(t)
    assert rec.recognize(path_graph(8)) is None


def test_which_operations_build_small_paths():
    rec = Recognizer()
    assert rec.op_multisets(path_graph(5)) == {("F2",)}
    assert rec.op_multisets(path_graph(6)) == {("F3",)}
    assert ("F4",) in rec.op_multisets(path_graph(7))
    assert all("F5" in ms for ms in rec.op_multisets(path_graph(10)))
    assert rec.op_multisets(double_star(2, 3)) == {("F1", "F1", "F1")}


def test_value_changes_under_each_operation():
    seen = {op: set() for op in TreeOp}
    for n in range(4, 9):
        for t in enumerate_free_trees(n):
            if is_star(t) or not is_in_t_gamma_t(t):
                continue
            before = (tree_gamma_t(t).value, tree_gamma_tcoi(t).value)
            for op in TreeOp:
                for v in range(t.n):
                    if not op_allowed(t, op, v):
                        continue
                    child = apply_tree_op(t, op, v, check=False)
                    after = (tree_gamma_t(child).value, tree_gamma_tcoi(child).value)
                    seen[op].add((after[0] - before[0], after[1] - before[1]))
    assert seen[TreeOp.F1] == {(0, 0)}
    assert seen[TreeOp.F2] == {(1, 1)}
    assert {d[1] for d in seen[TreeOp.F3]} <= {1, 2}
    assert {d[1] for d in seen[TreeOp.F4]} == {2}
    assert {d[1] for d in seen[TreeOp.F5]} == {2}
