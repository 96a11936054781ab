"""Exact solvers for gamma_t, gamma_t,coi, alpha (vertex cover) and beta.

Three independent routes:

* ``brute_force`` -- subsets in increasing cardinality, first feasible wins
  (lexicographically smallest witness among the minimum ones);
* ``branch_and_bound`` -- in/out search on bitmasks with unit propagation;
* ``tree_dp`` -- linear dynamic programs for gamma_t and gamma_t,coi on trees.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InfeasibleError, InvalidInputError, IsolatedVertexError
from .graph import (
    Graph,
    VertexSet,
    _independent_mask,
    _tcid_mask,
    _total_dominating_mask,
    connected_components,
    require_tree,
)

BRUTE_FORCE_LIMIT = 24


class Problem(str, enum.Enum):
    GAMMA_T = "gamma_t"
    GAMMA_TCOI = "gamma_tcoi"
    ALPHA = "alpha"
    BETA = "beta"


class Method(str, enum.Enum):
    BRUTE_FORCE = "brute_force"
    BRANCH_AND_BOUND = "branch_and_bound"
    TREE_DP = "tree_dp"


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: VertexSet
    nodes_explored: int
    method: Method


@dataclass(frozen=True)
class ForcedAssignment:
    forced_in: VertexSet = field(default_factory=frozenset)
    forced_out: VertexSet = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "forced_in", frozenset(self.forced_in))
        object.__setattr__(self, "forced_out", frozenset(self.forced_out))
        if self.forced_in & self.forced_out:
            raise InvalidInputError("forced_in and forced_out must be disjoint")


NO_FORCING = ForcedAssignment()


def certifies(g: Graph, problem: Problem, witness) -> bool:
    """Run the defining predicate for ``problem`` on ``witness``."""
    mask = g.mask_of(witness)
    if problem is Problem.GAMMA_T:
        return _total_dominating_mask(g, mask)
    if problem is Problem.GAMMA_TCOI:
        return _tcid_mask(g, mask)
    if problem is Problem.ALPHA:
        return _independent_mask(g, g.full_mask & ~mask)
    return _independent_mask(g, mask)


# --- preconditions -------------------------------------------------------------

def _check_domination_input(g: Graph, problem: Problem) -> None:
    if g.n == 0:
        raise InvalidInputError("graph has no vertices")
    isolated = [v for v in range(g.n) if not g.adj[v]]
    if isolated:
        raise IsolatedVertexError(
            f"vertex {isolated[0]} is isolated; total domination is undefined"
        )
    if problem is Problem.GAMMA_TCOI and all(len(c) == 2 for c in connected_components(g)):
        raise InfeasibleError("every component is P2; no TC-ID set has nonempty complement")


def _forced_masks(g: Graph, forced: ForcedAssignment) -> tuple[int, int]:
    return g.mask_of(forced.forced_in), g.mask_of(forced.forced_out)


# --- brute force -----------------------------------------------------------------

def brute_force(g: Graph, problem: Problem, forced: ForcedAssignment = NO_FORCING,
                limit: int | None = BRUTE_FORCE_LIMIT) -> SolveResult:
    problem = Problem(problem)
    if limit is not None and g.n > limit:
        raise InvalidInputError(f"brute force refused for n={g.n} > {limit}")
    if problem in (Problem.GAMMA_T, Problem.GAMMA_TCOI):
        _check_domination_input(g, problem)
    fin, fout = _forced_masks(g, forced)
    free = [v for v in range(g.n) if not (fin >> v & 1 or fout >> v & 1)]
    base = fin.bit_count()

    if problem is Problem.GAMMA_T:
        def ok(mask):
            return _total_dominating_mask(g, mask)
    elif problem is Problem.GAMMA_TCOI:
        def ok(mask):
            return _tcid_mask(g, mask)
    elif problem is Problem.ALPHA:
        full = g.full_mask

        def ok(mask):
            return _independent_mask(g, full & ~mask)
    else:
        def ok(mask):
            return _independent_mask(g, mask)

    sizes = range(len(free) + 1)
    if problem is Problem.BETA:
        sizes = reversed(sizes)
    tried = 0
    for k in sizes:
        for combo in combinations(free, k):
            tried += 1
            mask = fin
            for v in combo:
                mask |= 1 << v
            if ok(mask):
                return SolveResult(base + k, g.set_of(mask), tried, Method.BRUTE_FORCE)
    raise InfeasibleError(f"no feasible set for {problem.value} under the given forcing")


# --- branch and bound ------------------------------------------------------------

def _popcount(x: int) -> int:
    return x.bit_count()


class _MinSearch:
    """Depth-first in/out search for the minimisation problems.

    Branches on the lowest undecided vertex, "in" before "out". A state is
    closed as soon as the chosen vertices already satisfy every constraint,
    since sending all undecided vertices out is then feasible and optimal.
    """

    def __init__(self, g: Graph, cover: bool, tdom: bool, need_out: bool):
        self.g = g
        self.cover = cover
        self.tdom = tdom
        self.need_out = need_out
        self.full = g.full_mask
        self.best = g.n + 1
        self.best_mask: int | None = None
        self.nodes = 0

    def propagate(self, inm: int, outm: int):
        masks = self.g.masks
        changed = True
        while changed:
            changed = False
            if self.cover and outm:
                need = 0
                m = outm
                while m:
                    low = m & -m
                    need |= masks[low.bit_length() - 1]
                    m ^= low
                if need & outm:
                    return None
                if need & ~inm:
                    inm |= need
                    changed = True
            if self.tdom:
                for nb in masks:
                    if nb & inm:
                        continue
                    cand = nb & ~outm
                    if not cand:
                        return None
                    if not cand & (cand - 1):
                        inm |= cand
                        changed = True
        if self.need_out and inm == self.full:
            return None
        return inm, outm

    def lower_bound(self, inm: int, outm: int) -> int:
        g = self.g
        masks = g.masks
        undecided = self.full & ~(inm | outm)
        extra = 0
        if self.tdom:
            umask = 0
            for v, nb in enumerate(masks):
                if not nb & inm:
                    umask |= 1 << v
            if umask:
                need = _popcount(umask)
                gains = []
                m = undecided
                while m:
                    low = m & -m
                    gain = _popcount(masks[low.bit_length() - 1] & umask)
                    if gain:
                        gains.append(gain)
                    m ^= low
                gains.sort(reverse=True)
                got = 0
                for gain in gains:
                    if got >= need:
                        break
                    got += gain
                    extra += 1
        if self.cover:
            used = 0
            matched = 0
            for u, v in g.edges:
                bu, bv = 1 << u, 1 << v
                if undecided & bu and undecided & bv and not (used & (bu | bv)):
                    used |= bu | bv
                    matched += 1
            extra = max(extra, matched)
        return extra

    def complete(self, inm: int) -> bool:
        if self.tdom and not all(nb & inm for nb in self.g.masks):
            return False
        if self.cover and not _independent_mask(self.g, self.full & ~inm):
            return False
        return True

    def run(self, inm: int, outm: int) -> None:
        self.nodes += 1
        state = self.propagate(inm, outm)
        if state is None:
            return
        inm, outm = state
        size = _popcount(inm)
        if size >= self.best:
            return
        if self.complete(inm):
            self.best = size
            self.best_mask = inm
            return
        if size + self.lower_bound(inm, outm) >= self.best:
            return
        undecided = self.full & ~(inm | outm)
        if not undecided:
            return
        bit = undecided & -undecided
        self.run(inm | bit, outm)
        self.run(inm, outm | bit)


def _mis_search(g: Graph, fin: int, fout: int) -> tuple[int, int, int]:
    """Maximum independent set containing ``fin`` and avoiding ``fout``."""
    masks = g.masks
    if not _independent_mask(g, fin):
        raise InfeasibleError("forced_in is not independent")
    blocked = fin | fout
    m = fin
    while m:
        low = m & -m
        blocked |= masks[low.bit_length() - 1]
        m ^= low
    cand0 = g.full_mask & ~blocked
    best = [-1, 0]
    nodes = [0]

    def rec(cand: int, cur: int, size: int) -> None:
        nodes[0] += 1
        if size + _popcount(cand) <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, cur
            return
        bit = cand & -cand
        v = bit.bit_length() - 1
        rec(cand & ~(masks[v] | bit), cur | bit, size + 1)
        if masks[v] & cand:
            rec(cand & ~bit, cur, size)

    rec(cand0, fin, _popcount(fin))
    return best[0], best[1], nodes[0]


def branch_and_bound(g: Graph, problem: Problem,
                     forced: ForcedAssignment = NO_FORCING) -> SolveResult:
    problem = Problem(problem)
    if problem in (Problem.GAMMA_T, Problem.GAMMA_TCOI):
        _check_domination_input(g, problem)
    fin, fout = _forced_masks(g, forced)
    if problem is Problem.BETA:
        value, mask, nodes = _mis_search(g, fin, fout)
        return SolveResult(value, g.set_of(mask), nodes, Method.BRANCH_AND_BOUND)
    search = _MinSearch(
        g,
        cover=problem in (Problem.ALPHA, Problem.GAMMA_TCOI),
        tdom=problem in (Problem.GAMMA_T, Problem.GAMMA_TCOI),
        need_out=problem is Problem.GAMMA_TCOI,
    )
    search.run(fin, fout)
    if search.best_mask is None:
        raise InfeasibleError(f"no feasible set for {problem.value} under the given forcing")
    return SolveResult(search.best, g.set_of(search.best_mask), search.nodes,
                       Method.BRANCH_AND_BOUND)


# --- tree dynamic programs --------------------------------------------------------

def _tree_dp(t: Graph, coi: bool, fin: int = 0, fout: int = 0,
             leaf_penalty: bool = False) -> tuple[int, int, int]:
    """Rooted DP over (in set, dominated by a child, subtree has an out vertex).

    Costs are ``(size, leaves used)`` compared lexicographically, so with
    ``leaf_penalty`` the optimum avoids leaves whenever the size allows it.
    Returns ``(value, witness mask, states visited)``.
    """
    n = t.n
    adj = t.adj
    parent = [-1] * n
    order = [0]
    parent[0] = 0
    for u in order:
        for w in adj[u]:
            if parent[w] == -1:
                parent[w] = u
                order.append(w)
    parent[0] = -1
    children = [[w for w in adj[u] if w != parent[u]] for u in range(n)]
    INF = (n + 1, n + 1)

    # best[v][(x, d, h)] = cost; trail[v][x] = per-child backpointers
    best: list[dict] = [None] * n
    trail: list[dict] = [None] * n
    visited = 0
    for v in reversed(order):
        table = {}
        trails = {}
        for x in (0, 1):
            if x == 1 and fout >> v & 1:
                continue
            if x == 0 and fin >> v & 1:
                continue
            pen = 1 if (x and leaf_penalty and len(adj[v]) == 1) else 0
            agg = {(0, int(coi and x == 0)): (x, pen)}
            steps = []
            for c in children[v]:
                nxt = {}
                back = {}
                for (d, h), cost in agg.items():
                    for cstate, ccost in best[c].items():
                        cx, cd, ch = cstate
                        if not cd and not x:
                            continue
                        if coi and not x and not cx:
                            continue
                        key = (d | cx, h | ch)
                        tot = (cost[0] + ccost[0], cost[1] + ccost[1])
                        visited += 1
                        if tot < nxt.get(key, INF):
                            nxt[key] = tot
                            back[key] = ((d, h), cstate)
                agg = nxt
                steps.append(back)
            for (d, h), cost in agg.items():
                table[(x, d, h)] = cost
            trails[x] = steps
        best[v] = table
        trail[v] = trails

    root_best = None
    root_state = None
    for state, cost in best[0].items():
        x, d, h = state
        if not d or (coi and not h):
            continue
        if root_best is None or cost < root_best:
            root_best, root_state = cost, state
    if root_state is None:
        raise InfeasibleError("no feasible set for the tree under the given forcing")

    mask = 0
    stack = [(0, root_state)]
    while stack:
        v, (x, d, h) = stack.pop()
        if x:
            mask |= 1 << v
        key = (d, h)
        steps = trail[v][x]
        for i in range(len(children[v]) - 1, -1, -1):
            prev, cstate = steps[i][key]
            stack.append((children[v][i], cstate))
            key = prev
    return root_best[0], mask, visited


def tree_gamma_t(t: Graph, forced: ForcedAssignment = NO_FORCING) -> SolveResult:
    require_tree(t, 2)
    fin, fout = _forced_masks(t, forced)
    value, mask, visited = _tree_dp(t, coi=False, fin=fin, fout=fout)
    return SolveResult(value, t.set_of(mask), visited, Method.TREE_DP)


def tree_gamma_tcoi(t: Graph, forced: ForcedAssignment = NO_FORCING,
                    prefer_leaf_free: bool = True) -> SolveResult:
    """gamma_t,coi of a tree; the witness avoids leaves whenever possible."""
    require_tree(t, 1)
    if t.n < 3:
        raise InfeasibleError(f"gamma_t,coi is undefined for trees of order {t.n}")
    fin, fout = _forced_masks(t, forced)
    value, mask, visited = _tree_dp(t, coi=True, fin=fin, fout=fout,
                                    leaf_penalty=prefer_leaf_free)
    return SolveResult(value, t.set_of(mask), visited, Method.TREE_DP)


# --- public entry points -----------------------------------------------------------

def solve_constrained(g: Graph, problem: Problem, forced: ForcedAssignment = NO_FORCING,
                      method: Method | str | None = None) -> SolveResult:
    """Optimum of ``problem`` over solutions honouring ``forced``.

    ``method=None`` picks the tree DP for gamma_t/gamma_t,coi on trees and
    branch-and-bound otherwise. Raises ``InfeasibleError`` if nothing fits.
    """
    problem = Problem(problem)
    method = Method(method) if method is not None else None
    if method is Method.BRUTE_FORCE:
        return brute_force(g, problem, forced)
    dp_ok = problem in (Problem.GAMMA_T, Problem.GAMMA_TCOI) and g.is_tree()
    if method is Method.TREE_DP and not dp_ok:
        raise InvalidInputError("tree_dp only solves gamma_t / gamma_tcoi on trees")
    if method is Method.TREE_DP or (method is None and dp_ok and g.n >= 2):
        if problem is Problem.GAMMA_T:
            return tree_gamma_t(g, forced)
        return tree_gamma_tcoi(g, forced)
    return branch_and_bound(g, problem, forced)


def gamma_t(g: Graph, method: Method | str | None = None) -> SolveResult:
    return solve_constrained(g, Problem.GAMMA_T, NO_FORCING, method)


def gamma_tcoi(g: Graph, method: Method | str | None = None) -> SolveResult:
    return solve_constrained(g, Problem.GAMMA_TCOI, NO_FORCING, method)


def alpha(g: Graph, method: Method | str | None = None) -> SolveResult:
    return solve_constrained(g, Problem.ALPHA, NO_FORCING, method)


def beta(g: Graph, method: Method | str | None = None) -> SolveResult:
    """Independence number; cross-checked against ``n - alpha`` (Gallai)."""
    res = solve_constrained(g, Problem.BETA, NO_FORCING, method)
    cover = alpha(g, method)
    if res.value + cover.value != g.n:
        raise AssertionError(
            f"alpha + beta = {cover.value} + {res.value} != n = {g.n}"
        )
    return res


def in_some_min_tcid_set(t: Graph, v: int) -> bool:
    """Whether ``v`` belongs to at least one minimum TC-ID set of ``t``."""
    require_tree(t, 3)
    if not 0 <= v < t.n:
        raise InvalidInputError(f"vertex {v} out of range for n={t.n}")
    target = tree_gamma_tcoi(t).value
    try:
        forced = tree_gamma_tcoi(t, ForcedAssignment(forced_in=frozenset([v])))
    except InfeasibleError:
        return False
    return forced.value == target


def component_sum(g: Graph, method: Method | str | None = None) -> int:
    """gamma_t,coi assembled per component: gamma_t on P2 parts, gamma_t,coi elsewhere."""
    _check_domination_input(g, Problem.GAMMA_TCOI)
    total = 0
    for comp in connected_components(g):
        sub, _ = g.remove_vertices(set(range(g.n)) - comp)
        if sub.n == 2:
            total += gamma_t(sub, method).value
        else:
            total += gamma_tcoi(sub, method).value
    return total
