"""The T6 gadget reduction from independence number to gamma_t,coi.

``build_gt`` hangs one six-vertex gadget off every vertex of the input graph.
On the result, ``gamma_tcoi(G_T) == 3n - beta(G)``, which is what
``verify_reduction`` checks instance by instance. Planarity is preserved by
the construction but is not tested here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError
from .graph import Graph
from .solvers import SolveResult, beta, gamma_tcoi

GADGET_SIZE = 6


@dataclass(frozen=True)
class GadgetAttachment:
    base_vertex: int
    gadget_u: int
    gadget_v: int
    gadget_leaves: tuple[int, int, int, int]  # u1, u2, v1, v2

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.gadget_u, self.gadget_v, *self.gadget_leaves)


def _gadget_edges(u: int, v: int, u1: int, u2: int, v1: int, v2: int) -> list[tuple[int, int]]:
    return [(u, v), (u, u1), (u, u2), (v, v1), (v, v2)]


def build_t6() -> Graph:
    """The gadget alone: ids (u, v, u1, u2, v1, v2) = 0..5."""
    return Graph(GADGET_SIZE, _gadget_edges(0, 1, 2, 3, 4, 5))


def build_gt(g: Graph) -> tuple[Graph, list[GadgetAttachment]]:
    """Attach a T6 copy to each vertex ``i`` through an edge to its ``u``.

    Gadget ``i`` occupies ids ``n + 6i .. n + 6i + 5`` in the order
    (u, v, u1, u2, v1, v2).
    """
    if g.n < 1 or g.m == 0:
        raise InvalidInputError("the reduction needs a graph with at least one edge")
    n = g.n
    edges = list(g.edges)
    attachments = []
    for i in range(n):
        u, v, u1, u2, v1, v2 = range(n + GADGET_SIZE * i, n + GADGET_SIZE * (i + 1))
        edges += _gadget_edges(u, v, u1, u2, v1, v2)
        edges.append((i, u))
        attachments.append(GadgetAttachment(i, u, v, (u1, u2, v1, v2)))
    return Graph(n + GADGET_SIZE * n, edges), attachments


@dataclass(frozen=True)
class ReductionCheck:
    lhs: int
    rhs: int
    holds: bool
    gt_result: SolveResult
    beta_result: SolveResult


def verify_reduction(g: Graph, method=None) -> ReductionCheck:
    gt, _ = build_gt(g)
    lhs = gamma_tcoi(gt, method)
    b = beta(g, method)
    rhs = 3 * g.n - b.value
    return ReductionCheck(lhs.value, rhs, lhs.value == rhs, lhs, b)


def decision_transfer(g: Graph, k: int, method=None) -> tuple[int, bool]:
    """Return ``(j, equivalence)`` with ``j = 3n - k``.

    ``equivalence`` is the truth of ``gamma_tcoi(G_T) <= j  <=>  beta(G) >= k``,
    each side evaluated exactly.
    """
    check = verify_reduction(g, method)
    j = 3 * g.n - k
    return j, (check.lhs <= j) == (check.beta_result.value >= k)
