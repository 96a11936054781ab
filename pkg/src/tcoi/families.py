"""Extremal families for the upper bound 2*alpha - 1 and the Q_r caterpillars.

Graphs are produced by replaying a :class:`BuildScript`: a base graph and a
list of primitive steps (subdivision, inflation, pendant addition). New
vertices always receive the next free ids, so a script determines its graph
exactly. Inflation keeps the inflated vertex as the first of its ``k`` copies.
"""

from __future__ import annotations

import enum
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidInputError, ParseError, PreconditionError
from .graph import Graph, cycle_graph, distances_from, path_graph, star_graph
from .solvers import Method, alpha, gamma_tcoi

# --- primitive steps ---------------------------------------------------------------------------


class StepKind(str, enum.Enum):
    SUBDIVIDE = "subdivide"
    INFLATE = "inflate"
    PENDANTS = "pendants"


@dataclass(frozen=True)
class Step:
    kind: StepKind
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "kind", StepKind(self.kind))

    @classmethod
    def subdivide(cls, u: int, v: int) -> Step:
        return cls(StepKind.SUBDIVIDE, u, v)

    @classmethod
    def inflate(cls, v: int, k: int) -> Step:
        return cls(StepKind.INFLATE, v, k)

    @classmethod
    def pendants(cls, v: int, t: int) -> Step:
        return cls(StepKind.PENDANTS, v, t)

    def dumps(self) -> str:
        return f"{self.kind.value} {self.a} {self.b}"


def apply_step(g: Graph, s: Step) -> Graph:
    """Apply one primitive step; new vertices get ids ``g.n, g.n + 1, ...``."""
    if s.kind is StepKind.SUBDIVIDE:
        u, v = s.a, s.b
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise PreconditionError(f"subdivide: ({u}, {v}) is not an edge")
        w = g.n
        return g.remove_edge(u, v).add(1, [(u, w), (w, v)])
    if s.kind is StepKind.INFLATE:
        v, k = s.a, s.b
        if not 0 <= v < g.n:
            raise PreconditionError(f"inflate: vertex {v} out of range")
        if g.degree(v) != 2:
            raise PreconditionError(f"inflate: vertex {v} has degree {g.degree(v)}, needs 2")
        if k < 1:
            raise PreconditionError(f"inflate: size must be >= 1, got {k}")
        x, y = g.adj[v]
        if g.has_edge(x, y):
            raise PreconditionError(f"inflate: path {x}-{v}-{y} is not induced")
        copies = range(g.n, g.n + k - 1)
        return g.add(k - 1, [e for c in copies for e in ((x, c), (c, y))])
    v, t = s.a, s.b
    if not 0 <= v < g.n:
        raise PreconditionError(f"pendants: vertex {v} out of range")
    if t < 0:
        raise PreconditionError(f"pendants: count must be >= 0, got {t}")
    return g.add(t, [(v, g.n + i) for i in range(t)])


# --- build scripts -----------------------------------------------------------------------------


def _base_graph(base: str) -> Graph:
    if base == "cycle6":
        return cycle_graph(6)
    if base == "path4":
        return path_graph(4)
    if base.startswith("star") and base[4:].isdigit() and int(base[4:]) >= 1:
        return star_graph(int(base[4:]))
    raise InvalidInputError(f"unknown base {base!r}; expected starN, cycle6 or path4")


@dataclass(frozen=True)
class BuildScript:
    """Base graph name (``star<N>``, ``cycle6``, ``path4``) plus steps.

    Construction replays the script, so an invalid script cannot exist.
    """

    base: str
    steps: tuple[Step, ...] = ()
    graph: Graph = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        g = _base_graph(self.base)
        for i, s in enumerate(self.steps):
            try:
                g = apply_step(g, s)
            except PreconditionError as exc:
                raise PreconditionError(f"step {i + 1} ({s.dumps()}): {exc}") from None
        object.__setattr__(self, "graph", g)

    def replay(self) -> Graph:
        return self.graph

    def dumps(self) -> str:
        return "\n".join([f"base {self.base}"] + [s.dumps() for s in self.steps]) + "\n"

    @classmethod
    def loads(cls, text: str) -> BuildScript:
        rows = [
            (i, ln.split("#", 1)[0].split())
            for i, ln in enumerate(text.splitlines(), start=1)
        ]
        rows = [(i, parts) for i, parts in rows if parts]
        if not rows or rows[0][1][0] != "base" or len(rows[0][1]) != 2:
            raise ParseError("script must start with 'base <name>'", rows[0][0] if rows else 1)
        steps = []
        for i, parts in rows[1:]:
            if len(parts) != 3 or parts[0] not in {k.value for k in StepKind}:
                raise ParseError(f"bad step {' '.join(parts)!r}", i)
            try:
                steps.append(Step(StepKind(parts[0]), int(parts[1]), int(parts[2])))
            except ValueError:
                raise ParseError(f"non-integer argument in {' '.join(parts)!r}", i) from None
        try:
            return cls(rows[0][1][1], tuple(steps))
        except InvalidInputError as exc:
            raise ParseError(str(exc), rows[0][0]) from None


# --- family F1 (built from a star) -------------------------------------------------------------


@dataclass(frozen=True)
class F1Params:
    """Star ``S_n``; the first ``a`` edges are subdivided and the first ``b`` of
    those inflated with sizes ``k``. ``q`` pendants go on the leaf of each
    inflated path, ``t_outer`` on the leaf of each remaining subdivided path
    and ``t_center`` on the center."""

    n: int
    a: int
    b: int = 0
    k: tuple[int, ...] = ()
    q: tuple[int, ...] = ()
    t_outer: tuple[int, ...] = ()
    t_center: int = 0

    def __post_init__(self):
        for name in ("k", "q", "t_outer"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.n < 1:
            raise InvalidInputError("n must be >= 1")
        if not 1 <= self.a <= self.n:
            raise InvalidInputError(f"need 1 <= a <= n, got a={self.a}, n={self.n}")
        if not 0 <= self.b <= self.a:
            raise InvalidInputError(f"need 0 <= b <= a, got b={self.b}")
        if len(self.k) != self.b or any(x < 2 for x in self.k):
            raise InvalidInputError("k needs b entries, each >= 2")
        if len(self.q) != self.b or any(x < 0 for x in self.q):
            raise InvalidInputError("q needs b entries, each >= 0")
        if len(self.t_outer) != self.a - self.b or any(x < 1 for x in self.t_outer):
            raise InvalidInputError("t_outer needs a - b entries, each >= 1")
        if self.a < self.n and self.t_center != 0:
            raise InvalidInputError("t_center must be 0 when a < n")
        if self.a == self.n and self.b == 0 and self.t_center < 1:
            raise InvalidInputError("t_center must be >= 1 when a = n and b = 0")
        if self.t_center < 0:
            raise InvalidInputError("t_center must be >= 0")

    @property
    def order(self) -> int:
        return (1 + self.n + self.a + sum(x - 1 for x in self.k) + sum(self.q)
                + sum(self.t_outer) + self.t_center)


def f1_script(p: F1Params) -> BuildScript:
    # star: center 0, leaves 1..n; subdividing (0, i) creates vertex n + i
    steps = [Step.subdivide(0, i) for i in range(1, p.a + 1)]
    steps += [Step.inflate(p.n + i, p.k[i - 1]) for i in range(1, p.b + 1)]
    steps += [Step.pendants(i, p.q[i - 1]) for i in range(1, p.b + 1)]
    steps += [Step.pendants(i, p.t_outer[i - p.b - 1]) for i in range(p.b + 1, p.a + 1)]
    steps.append(Step.pendants(0, p.t_center))
    return BuildScript(f"star{p.n}", tuple(steps))


def build_f1(p: F1Params) -> Graph:
    g = f1_script(p).graph
    if g.n != p.order:
        raise AssertionError(f"built {g.n} vertices, expected {p.order}")
    return g


# --- family F2 (built from C6) -----------------------------------------------------------------

# C6 is labeled 0..5 cyclically; {0, 2, 4} is the independent triple v1, v2, v3 and
# path p (p = 0, 1, 2) runs 2p - (2p + 1) - (2p + 2 mod 6).


def _path_between(i: int, j: int) -> int:
    if i == j or not (0 <= i < 3 and 0 <= j < 3):
        raise InvalidInputError(f"bad path endpoints {i}, {j}")
    return i if (i + 1) % 3 == j else j


def _normalize_step_b(raw) -> tuple[tuple[int, int, int], ...]:
    if raw is None:
        return ()
    raw = tuple(raw)
    if raw and isinstance(raw[0], int):
        raw = (raw,)
    out = []
    for entry in raw:
        entry = tuple(entry)
        if len(entry) == 2:
            entry = (entry[0], entry[1], (entry[0] + 1) % 3)
        if len(entry) != 3:
            raise InvalidInputError("each path-inflation entry is (i, k) or (i, k, j)")
        out.append(entry)
    return tuple(out)


@dataclass(frozen=True)
class F2Params:
    """``t`` pendants on v1..v3, then path inflations, then inflation sizes ``c``.

    The path inflations are a sequence of inflations ``(i, k, j)`` of the path between v_i
    and v_j (``j`` defaults to ``i + 1 mod 3``). Each entry needs ``t[i] == 0``
    and ``deg(v_i) == 2`` when applied, and the step repeats while such a v_i
    remains, so no v_i is left with degree two.
    """

    t: tuple[int, int, int] = (0, 0, 0)
    step_b: tuple[tuple[int, int, int], ...] = ()
    c: tuple[int, int, int] = (1, 1, 1)

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "step_b", _normalize_step_b(self.step_b))
        if len(self.t) != 3 or any(x < 0 for x in self.t):
            raise InvalidInputError("t needs three entries, each >= 0")
        if len(self.c) != 3 or any(x < 1 for x in self.c):
            raise InvalidInputError("c needs three entries, each >= 1")
        deg = [2 + x for x in self.t]
        for i, k, j in self.step_b:
            _path_between(i, j)
            if self.t[i] != 0 or deg[i] != 2:
                raise InvalidInputError(f"path inflation needs t[{i}] = 0 and deg(v{i + 1}) = 2")
            if k < 2:
                raise InvalidInputError("path inflation size must be >= 2")
            deg[i] += k - 1
            deg[j] += k - 1
        left = [i for i in range(3) if deg[i] == 2]
        if left:
            raise InvalidInputError(
                f"a path inflation is still required at v{left[0] + 1} (t = 0, degree 2)"
            )

    @property
    def order(self) -> int:
        extra = sum(k - 1 for _, k, _ in self.step_b)
        return 6 + sum(self.t) + extra + sum(x - 1 for x in self.c)


def f2_script(p: F2Params) -> BuildScript:
    steps = [Step.pendants(2 * i, p.t[i]) for i in range(3)]
    steps += [Step.inflate(2 * _path_between(i, j) + 1, k) for i, k, j in p.step_b]
    steps += [Step.inflate(2 * path + 1, p.c[path]) for path in range(3)]
    return BuildScript("cycle6", tuple(steps))


def build_f2(p: F2Params) -> Graph:
    g = f2_script(p).graph
    if g.n != p.order:
        raise AssertionError(f"built {g.n} vertices, expected {p.order}")
    return g


# --- Q_r ---------------------------------------------------------------------------------------


def build_qr(r: int) -> Graph:
    """Spine v=0, s=1, s_i=1+i; the pendant of s is r+2 and that of s_i is r+2+i."""
    if r < 2:
        raise InvalidInputError(f"Q_r needs r >= 2, got {r}")
    spine = path_graph(r + 2)
    return spine.add(r + 1, [(j, r + 1 + j) for j in range(1, r + 2)])


# --- verification ------------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyCheck:
    n: int
    alpha: int
    gamma_tcoi: int
    expected_alpha: int
    expected_gamma_tcoi: int

    @property
    def holds(self) -> bool:
        return (self.alpha, self.gamma_tcoi) == (self.expected_alpha, self.expected_gamma_tcoi)

    @property
    def upper_bound_tight(self) -> bool:
        return self.gamma_tcoi == 2 * self.alpha - 1

    def to_dict(self) -> dict:
        return {
            "n": self.n, "alpha": self.alpha, "gamma_tcoi": self.gamma_tcoi,
            "expected_alpha": self.expected_alpha,
            "expected_gamma_tcoi": self.expected_gamma_tcoi,
            "holds": self.holds, "upper_bound_tight": self.upper_bound_tight,
        }


def _family_check(g: Graph, exp_a: int, exp_g: int, method) -> FamilyCheck:
    return FamilyCheck(g.n, alpha(g, method).value, gamma_tcoi(g, method).value, exp_a, exp_g)


def verify_f1(p: F1Params, method: Method | str | None = None) -> FamilyCheck:
    return _family_check(build_f1(p), p.a + 1, 2 * p.a + 1, method)


def verify_f2(p: F2Params, method: Method | str | None = None) -> FamilyCheck:
    return _family_check(build_f2(p), 3, 5, method)


# --- parameter enumeration ---------------------------------------------------------------------


def _compositions(total: int, parts: int, minimum: int) -> Iterator[tuple[int, ...]]:
    """Tuples of ``parts`` integers >= minimum summing to at most ``total``."""
    if parts == 0:
        yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first, *rest)


def f1_params_up_to(max_order: int) -> Iterator[F1Params]:
    """Every F1Params whose graph has at most ``max_order`` vertices.

    Inflated and plain paths are listed in non-increasing order of their
    parameters, which removes most (not all) isomorphic duplicates.
    """
    for n in range(1, max_order):
        for a in range(1, n + 1):
            base = 1 + n + a
            if base > max_order:
                break
            for b in range(a + 1):
                budget = max_order - base - (a - b)  # each plain path needs a pendant
                if budget < b:
                    continue
                for ks in _compositions(budget, b, 1):
                    spent = sum(ks)
                    for qs in _compositions(budget - spent, b, 0):
                        inflated = sorted(zip(ks, qs), reverse=True)
                        if list(zip(ks, qs)) != inflated:
                            continue
                        left = budget - spent - sum(qs)
                        for ts in _compositions(left, a - b, 0):
                            if list(ts) != sorted(ts, reverse=True):
                                continue
                            rest = left - sum(ts)
                            if a < n:
                                centers = [0]
                            else:
                                centers = range(1 if b == 0 else 0, rest + 1)
                            for tc in centers:
                                yield F1Params(
                                    n, a, b, tuple(x + 1 for x in ks), qs,
                                    tuple(x + 1 for x in ts), tc,
                                )


def f2_params_up_to(max_order: int) -> Iterator[F2Params]:
    """One F2Params per (pendant counts, final path sizes) pair of order <= max_order."""
    budget = max_order - 6
    if budget < 0:
        return
    for ts in _compositions(budget, 3, 0):
        for extra in _compositions(budget - sum(ts), 3, 0):
            sizes = [x + 1 for x in extra]
            deg = [2 + x for x in ts]
            b_steps = []
            c = list(sizes)
            for i in range(3):
                if deg[i] != 2:
                    continue
                # the larger of the two paths at v_i (path i, then path i - 1)
                path = max((i, (i - 1) % 3), key=lambda p: (sizes[p], p == i))
                if c[path] < 2:
                    break
                j = (i + 1) % 3 if path == i else (i - 1) % 3
                b_steps.append((i, c[path], j))
                deg[i] += c[path] - 1
                deg[j] += c[path] - 1
                c[path] = 1
            else:
                yield F2Params(ts, tuple(b_steps), tuple(c))


# --- improvement lemmas ------------------------------------------------------------------------


def minimum_vertex_covers(g: Graph, size: int | None = None) -> Iterator[frozenset[int]]:
    if size is None:
        size = alpha(g).value
    for combo in combinations(range(g.n), size):
        mask = 0
        for v in combo:
            mask |= 1 << v
        if all(mask >> u & 1 or mask >> v & 1 for u, v in g.edges):
            yield frozenset(combo)


def _has_disjoint_p3_pairs(g: Graph, cover: frozenset[int], dist: list[list[int | None]]) -> bool:
    """Four cover vertices u1,u2,v1,v2 joined pairwise by vertex-disjoint paths of length 2."""
    paths = []
    for x, y in combinations(sorted(cover), 2):
        if dist[x][y] == 2:
            for w in set(g.adj[x]) & set(g.adj[y]):
                paths.append(frozenset((x, y, w)))
    return any(not (p & q) for p, q in combinations(paths, 2))


@dataclass(frozen=True)
class LemmaReport:
    alpha: int
    gamma_tcoi: int
    non_independent_cover: bool
    disjoint_paths_cover: bool

    @property
    def bound_holds(self) -> bool:
        return self.gamma_tcoi <= 2 * self.alpha - 2

    @property
    def holds(self) -> bool:
        fired = self.non_independent_cover or self.disjoint_paths_cover
        return not fired or self.bound_holds

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha, "gamma_tcoi": self.gamma_tcoi,
            "non_independent_cover": self.non_independent_cover,
            "disjoint_paths_cover": self.disjoint_paths_cover,
            "holds": self.holds,
        }


def check_improvement_lemmas(g: Graph, method: Method | str | None = None) -> LemmaReport:
    """Test both hypotheses over every minimum vertex cover of ``g``."""
    a = alpha(g, method).value
    gt = gamma_tcoi(g, method).value
    dist = [distances_from(g, v) for v in range(g.n)]
    non_indep = disjoint = False
    for cover in minimum_vertex_covers(g, a):
        if not non_indep and any(u in cover and v in cover for u, v in g.edges):
            non_indep = True
        if not disjoint and _has_disjoint_p3_pairs(g, cover, dist):
            disjoint = True
        if non_indep and disjoint:
            break
    return LemmaReport(a, gt, non_indep, disjoint)


__all__ = [
    "BuildScript", "F1Params", "F2Params", "FamilyCheck", "LemmaReport", "Step", "StepKind",
    "apply_step", "build_f1", "build_f2", "build_qr", "check_improvement_lemmas",
    "f1_params_up_to", "f1_script", "f2_params_up_to", "f2_script", "minimum_vertex_covers",
    "verify_f1", "verify_f2",
]
