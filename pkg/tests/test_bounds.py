from fractions import Fraction

import pytest
from corpus import graph_strategy
from hypothesis import given, settings

from tcoi.bounds import (
    degree_bound_rhs,
    evaluate_bounds,
    is_star_graph,
    size_degree_bound_rhs,
)
from tcoi.errors import InfeasibleError, IsolatedVertexError
from tcoi.graph import Graph, cycle_graph, disjoint_union, double_star, path_graph, star_graph


def test_star_detection():
    assert is_star_graph(star_graph(2)) and is_star_graph(star_graph(5))
    assert not is_star_graph(path_graph(2))
    assert not is_star_graph(path_graph(4))
    assert not is_star_graph(cycle_graph(3))


def test_degree_bounds_are_exact_fractions():
    assert degree_bound_rhs(5, 2, 2) == Fraction(10, 3)
    assert size_degree_bound_rhs(4, 3, 1, 2) == 2


def test_report_on_p4():
    rep = evaluate_bounds(path_graph(4))
    assert rep.values == {"gamma_t": 2, "gamma_tcoi": 2, "alpha": 2, "beta": 2}
    assert rep.names() == [
        "gallai", "independence_lower", "total_domination_lower", "trivial_lower",
        "trivial_upper", "cover_lower", "cover_upper", "degree_lower", "size_degree_lower",
    ]
    assert rep.holds
    assert rep.record("cover_lower").tight


def test_fractional_rhs_serialized_as_string():
    d = evaluate_bounds(cycle_graph(5)).to_dict()
    degree = next(b for b in d["bounds"] if b["name"] == "degree_lower")
    assert degree["rhs"] == "10/3" and degree["lhs"] == 4 and degree["holds"]


def test_star_uses_its_exact_value():
    rep = evaluate_bounds(star_graph(4))
    assert rep.star
    assert "cover_upper" not in rep.names()
    r = rep.record("star_value")
    assert r.lhs == 2 and r.holds


def test_disconnected_graph_skips_the_upper_bounds():
    g = disjoint_union(path_graph(3), path_graph(3))
    rep = evaluate_bounds(g)
    assert not rep.connected
    assert "cover_upper" not in rep.names() and "trivial_upper" not in rep.names()
    assert rep.values["gamma_tcoi"] == 4 and rep.values["alpha"] == 2
    assert any("disconnected" in note for note in rep.notes)
    assert rep.holds


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_double_stars_are_tight_for_degree_bounds(k):
    rep = evaluate_bounds(double_star(k))
    for name in ("degree_lower", "size_degree_lower"):
        assert rep.record(name).tight


def test_errors_propagate():
    with pytest.raises(InfeasibleError):
        evaluate_bounds(path_graph(2))
    with pytest.raises(IsolatedVertexError):
        evaluate_bounds(Graph(3, [(0, 1)]))


@settings(max_examples=120, deadline=None)
@given(graph_strategy(min_n=3, max_n=9, connected=True))
def test_every_applicable_bound_holds(g):
    assert evaluate_bounds(g).holds
