"""Audit of the known inequalities for gamma_t,coi on a single instance.

All comparisons are exact. Degree-based lower bounds are kept as Fractions
and compared without rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, connected_components
from .solvers import Method, alpha, beta, gamma_t, gamma_tcoi

_RELATIONS = {
    ">=": lambda x, y: x >= y,
    "<=": lambda x, y: x <= y,
    "==": lambda x, y: x == y,
}


@dataclass(frozen=True)
class BoundRecord:
    name: str
    relation: str  # lhs <relation> rhs
    lhs: int
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        rhs = self.rhs
        return {
            "name": self.name,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": str(rhs) if rhs.denominator != 1 else rhs.numerator,
            "holds": self.holds,
            "tight": self.tight,
        }


@dataclass
class BoundsReport:
    n: int
    m: int
    min_degree: int
    max_degree: int
    connected: bool
    star: bool
    values: dict[str, int] = field(default_factory=dict)
    records: list[BoundRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.records)

    def record(self, name: str) -> BoundRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.records]

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "min_degree": self.min_degree,
            "max_degree": self.max_degree, "connected": self.connected, "star": self.star,
            "values": dict(self.values),
            "bounds": [r.to_dict() for r in self.records],
            "notes": list(self.notes),
            "holds": self.holds,
        }


def is_star_graph(g: Graph) -> bool:
    """K_{1,r} with r >= 2 (the single edge P2 is excluded)."""
    if g.n < 3 or g.m != g.n - 1:
        return False
    return g.max_degree() == g.n - 1


def degree_bound_rhs(n: int, min_deg: int, max_deg: int) -> Fraction:
    return Fraction(n * min_deg, max_deg + min_deg - 1)


def size_degree_bound_rhs(n: int, m: int, min_deg: int, max_deg: int) -> Fraction:
    return Fraction(2 * m + n * min_deg, 3 * max_deg + min_deg - 2)


def evaluate_bounds(g: Graph, method: Method | str | None = None) -> BoundsReport:
    """Solve the four parameters and check every inequality that applies to ``g``.

    Raises the solver errors for inputs with no TC-ID set or an isolated vertex.
    """
    gt_coi = gamma_tcoi(g, method).value
    gt = gamma_t(g, method).value
    a = alpha(g, method).value
    b = beta(g, method).value
    connected = len(connected_components(g)) == 1
    star = is_star_graph(g)
    dmin, dmax = g.min_degree(), g.max_degree()
    rep = BoundsReport(g.n, g.m, dmin, dmax, connected, star,
                       {"gamma_t": gt, "gamma_tcoi": gt_coi, "alpha": a, "beta": b})
    add = rep.records.append
    F = Fraction

    add(BoundRecord("gallai", "==", a + b, F(g.n)))
    add(BoundRecord("independence_lower", ">=", gt_coi, F(g.n - b)))
    add(BoundRecord("total_domination_lower", ">=", gt_coi, F(gt)))
    add(BoundRecord("trivial_lower", ">=", gt_coi, F(2)))
    if connected:
        add(BoundRecord("trivial_upper", "<=", gt_coi, F(g.n - 1)))
    else:
        rep.notes.append("trivial_upper skipped: graph is disconnected")
    if star:
        add(BoundRecord("star_value", "==", gt_coi, F(2 * a)))
        rep.notes.append("cover bounds skipped for a star; star_value applied instead")
    elif connected:
        add(BoundRecord("cover_lower", ">=", gt_coi, F(a)))
        add(BoundRecord("cover_upper", "<=", gt_coi, F(2 * a - 1)))
    else:
        add(BoundRecord("cover_lower", ">=", gt_coi, F(a)))
        rep.notes.append("cover_upper skipped: graph is disconnected")
    add(BoundRecord("degree_lower", ">=", gt_coi, degree_bound_rhs(g.n, dmin, dmax)))
    add(BoundRecord("size_degree_lower", ">=", gt_coi, size_degree_bound_rhs(g.n, g.m, dmin, dmax)))
    return rep
