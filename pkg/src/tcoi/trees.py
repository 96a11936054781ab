"""Tree machinery: canonical codes, the operations F1..F5 and the family they generate.

The family ``F`` is everything reachable from P4 by F1..F5. ``T_gamma_t`` is
the set of trees whose gamma_t,coi equals gamma_t. ``verify_characterization``
checks exhaustively that the two coincide.

The sets V23 and V6 depend on a chosen minimum TC-ID set D. We always take
the leaf-free optimum that the tree DP returns on the *canonically relabeled*
tree, so isomorphic inputs get corresponding sets.
"""

from __future__ import annotations

import enum
from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx

from .errors import InvalidInputError, ParseError, PreconditionError
from .graph import Graph, VertexSet, all_distances, path_graph, require_tree, tree_vertex_classes
from .solvers import in_some_min_tcid_set, tree_gamma_t, tree_gamma_tcoi

MAX_ENUMERATION_ORDER = 18


# --- canonical codes ---------------------------------------------------------------

def centroids(t: Graph) -> list[int]:
    n = t.n
    if n <= 2:
        return list(range(n))
    parent = [-1] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    for u in order:
        for w in t.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    size = [1] * n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    result = []
    for v in range(n):
        heaviest = n - size[v]
        for w in t.adj[v]:
            if w != parent[v]:
                heaviest = max(heaviest, size[w])
        if heaviest <= n // 2:
            result.append(v)
    return result


def _rooted(t: Graph, root: int) -> tuple[str, list[int]]:
    """AHU code of ``t`` rooted at ``root`` and the matching preorder."""
    n = t.n
    parent = [-1] * n
    order = [root]
    parent[root] = root
    for u in order:
        for w in t.adj[u]:
            if parent[w] == -1:
                parent[w] = u
                order.append(w)
    code = [""] * n
    kids: list[list[int]] = [[] for _ in range(n)]
    for u in reversed(order):
        kids[u] = sorted((w for w in t.adj[u] if parent[w] == u and w != root),
                         key=lambda w: code[w])
        code[u] = "(" + "".join(code[w] for w in kids[u]) + ")"
    pre = []
    stack = [root]
    while stack:
        u = stack.pop()
        pre.append(u)
        stack.extend(reversed(kids[u]))
    return code[root], pre


def canonical_labeling(t: Graph) -> tuple[str, list[int]]:
    """Canonical code and permutation ``perm`` with ``perm[old] = new``.

    Relabeling two isomorphic trees by their permutations yields identical
    ``Graph`` objects.
    """
    require_tree(t, 1)
    best = None
    for c in centroids(t):
        code, pre = _rooted(t, c)
        if best is None or code < best[0]:
            best = (code, pre)
    code, pre = best
    perm = [0] * t.n
    for new, old in enumerate(pre):
        perm[old] = new
    return code, perm


def canonical_tree_code(t: Graph) -> str:
    return canonical_labeling(t)[0]


def canonical_tree(t: Graph) -> Graph:
    return t.relabel(canonical_labeling(t)[1])


def is_star(t: Graph) -> bool:
    return t.n >= 2 and t.m == t.n - 1 and t.max_degree() == t.n - 1


# --- enumeration ---------------------------------------------------------------------

def enumerate_free_trees(n: int) -> Iterator[Graph]:
    """One canonically labeled representative per isomorphism class."""
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise InvalidInputError(f"tree order must lie in 1..{MAX_ENUMERATION_ORDER}, got {n}")
    if n <= 2:
        yield path_graph(n)
        return
    for tree in nx.nonisomorphic_trees(n):
        yield canonical_tree(Graph(n, tree.edges()))


# --- derived sets -----------------------------------------------------------------------

@lru_cache(maxsize=4096)
def canonical_min_tcid_set(t: Graph) -> VertexSet:
    """Leaf-free minimum TC-ID set, chosen on the canonical relabeling of ``t``."""
    _, perm = canonical_labeling(t)
    inverse = [0] * t.n
    for old, new in enumerate(perm):
        inverse[new] = old
    d = tree_gamma_tcoi(t.relabel(perm)).witness
    return frozenset(inverse[v] for v in d)


@dataclass(frozen=True)
class TcidContext:
    tree: Graph
    d_set: VertexSet
    l3: VertexSet
    v23: VertexSet
    v6: VertexSet


def _require_two_supports(t: Graph) -> None:
    require_tree(t, 3)
    if len(tree_vertex_classes(t).supports) < 2:
        raise PreconditionError("tree must have at least two support vertices (not a star)")


@lru_cache(maxsize=4096)
def build_context(t: Graph) -> TcidContext:
    _require_two_supports(t)
    d = canonical_min_tcid_set(t)
    leaves = t.leaves()
    if d & leaves:
        raise AssertionError("canonical minimum TC-ID set unexpectedly contains a leaf")
    dist = all_distances(t)
    l3 = frozenset(h for h in leaves if any(dist[h][x] == 3 for x in leaves))
    outside = [v for v in range(t.n) if v not in d]
    v23 = frozenset(v for v in outside if any(dist[v][h] in (2, 3) for h in leaves))
    v6 = frozenset(v for v in outside if any(dist[v][w] == 3 for w in v23))
    return TcidContext(t, d, l3, v23, v6)


# --- operations ----------------------------------------------------------------------------

class TreeOp(str, enum.Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"


ADDED_VERTICES = {TreeOp.F1: 1, TreeOp.F2: 1, TreeOp.F3: 2, TreeOp.F4: 3, TreeOp.F5: 3}


def op_allowed(t: Graph, op: TreeOp, anchor: int) -> bool:
    op = TreeOp(op)
    if not 0 <= anchor < t.n:
        return False
    if op is TreeOp.F1:
        return in_some_min_tcid_set(t, anchor)
    ctx = build_context(t)
    if op in (TreeOp.F2, TreeOp.F3):
        return anchor in ctx.l3
    if op is TreeOp.F4:
        return anchor in ctx.v23
    return anchor in ctx.v6


_REQUIREMENT = {
    TreeOp.F1: "in some minimum TC-ID set",
    TreeOp.F2: "in L3(T)",
    TreeOp.F3: "in L3(T)",
    TreeOp.F4: "in V23(T)",
    TreeOp.F5: "in V6(T)",
}


def apply_tree_op(t: Graph, op: TreeOp, anchor: int, check: bool = True) -> Graph:
    """Attach the path of ``op`` to ``anchor``; new ids are appended.

    F3 adds ``h1, h2`` with edges anchor-h1-h2. F4/F5 add ``h1, u1, h2`` with
    edges anchor-h1-u1-h2, so the path hangs from its end vertex.
    """
    op = TreeOp(op)
    _require_two_supports(t)
    if check and not op_allowed(t, op, anchor):
        raise PreconditionError(f"{op.value} needs vertex {anchor} {_REQUIREMENT[op]}")
    n = t.n
    k = ADDED_VERTICES[op]
    chain = [anchor] + list(range(n, n + k))
    return t.add(k, list(zip(chain, chain[1:])))


@dataclass(frozen=True)
class TreeOpSequence:
    steps: tuple[tuple[TreeOp, int], ...] = ()
    base: str = "P4"

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((TreeOp(op), int(a)) for op, a in self.steps))

    def replay(self) -> Graph:
        """Rebuild the tree, validating every precondition on the way."""
        t = path_graph(4)
        for op, anchor in self.steps:
            t = apply_tree_op(t, op, anchor)
        return t

    def then(self, op: TreeOp, anchor: int) -> TreeOpSequence:
        return TreeOpSequence(self.steps + ((TreeOp(op), anchor),), self.base)

    def dumps(self) -> str:
        lines = [f"base {self.base}"] + [f"{op.value} {a}" for op, a in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> TreeOpSequence:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines or lines[0] != "base P4":
            raise ParseError("tree script must start with 'base P4'", 1)
        steps = []
        for i, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 2 or parts[0] not in TreeOp.__members__:
                raise ParseError(f"bad step {line!r}", i)
            try:
                steps.append((TreeOp(parts[0]), int(parts[1])))
            except ValueError:
                raise ParseError(f"bad anchor in {line!r}", i) from None
        return cls(tuple(steps))


# --- membership in T_gamma_t ------------------------------------------------------------------

def is_in_t_gamma_t(t: Graph) -> bool:
    """gamma_t,coi(T) == gamma_t(T). Stars and trees under 4 vertices are rejected."""
    require_tree(t, 1)
    if t.n < 4 or is_star(t):
        raise PreconditionError("T_gamma_t membership is only considered for non-star trees, n >= 4")
    return tree_gamma_tcoi(t).value == tree_gamma_t(t).value


# --- generation -------------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyMember:
    tree: Graph
    script: TreeOpSequence
    code: str


def generate_family_f(max_n: int) -> Iterator[FamilyMember]:
    """Breadth-first closure of P4 under F1..F5, one member per isomorphism class."""
    if max_n < 4:
        raise InvalidInputError("max_n must be at least 4")
    start = path_graph(4)
    first = FamilyMember(start, TreeOpSequence(), canonical_tree_code(start))
    seen = {first.code}
    queue = [first]
    yield first
    for member in queue:
        t = member.tree
        for op in TreeOp:
            if t.n + ADDED_VERTICES[op] > max_n:
                continue
            for anchor in range(t.n):
                if not op_allowed(t, op, anchor):
                    continue
                child = apply_tree_op(t, op, anchor, check=False)
                code = canonical_tree_code(child)
                if code in seen:
                    continue
                seen.add(code)
                new = FamilyMember(child, member.script.then(op, anchor), code)
                queue.append(new)
                yield new


# --- recognition ------------------------------------------------------------------------------

def _reverse_candidates(t: Graph) -> list[tuple[int, TreeOp, frozenset[int], int]]:
    """Ways ``t`` could have come out of a single operation.

    Each entry is ``(case rank, op, removed vertices, anchor)``. Ranks follow
    the order: a leaf with a sibling leaf (F1), F2, F3, F4, F5, any other F1.
    """
    out = []
    leaves = sorted(t.leaves())
    leafset = set(leaves)
    deg = t.degrees()
    for h in leaves:
        (x,) = t.adj[h]
        siblings = sum(1 for w in t.adj[x] if w in leafset)
        out.append((0 if siblings >= 2 else 5, TreeOp.F1, frozenset([h]), x))
        if deg[x] != 2:
            continue
        (y,) = [w for w in t.adj[x] if w != h]
        out.append((1, TreeOp.F2, frozenset([h]), x))
        if deg[y] != 2:
            continue
        (z,) = [w for w in t.adj[y] if w != x]
        out.append((2, TreeOp.F3, frozenset([h, x]), y))
        out.append((3, TreeOp.F4, frozenset([h, x, y]), z))
        out.append((4, TreeOp.F5, frozenset([h, x, y]), z))
    out.sort(key=lambda c: (c[0], min(c[2]), c[3]))
    return out


def _predecessor(t: Graph, removed: frozenset[int], anchor: int) -> tuple[Graph, int] | None:
    smaller, new_id = t.remove_vertices(removed)
    if smaller.n < 4 or is_star(smaller):
        return None
    return smaller, new_id[anchor]


class Recognizer:
    """Reverse search from a tree down to P4, memoised per isomorphism class.

    A memo entry holds a script whose replay is isomorphic to the class, or
    ``None`` when the class is not in the family.
    """

    def __init__(self):
        self._p4 = canonical_tree_code(path_graph(4))
        self._memo: dict[str, TreeOpSequence | None] = {}

    def recognize(self, t: Graph) -> TreeOpSequence | None:
        require_tree(t, 1)
        if t.n < 4 or is_star(t):
            return None
        code, perm = canonical_labeling(t)
        if code in self._memo:
            return self._memo[code]
        if code == self._p4:
            self._memo[code] = TreeOpSequence()
            return self._memo[code]
        canon = t.relabel(perm)
        result = None
        for _, op, removed, anchor in _reverse_candidates(canon):
            pred = _predecessor(canon, removed, anchor)
            if pred is None:
                continue
            smaller, a = pred
            if not op_allowed(smaller, op, a):
                continue
            sub = self.recognize(smaller)
            if sub is None:
                continue
            # carry the anchor into the labels produced by replaying ``sub``
            built = sub.replay()
            _, p_built = canonical_labeling(built)
            _, p_small = canonical_labeling(smaller)
            inv_built = [0] * built.n
            for old, new in enumerate(p_built):
                inv_built[new] = old
            result = sub.then(op, inv_built[p_small[a]])
            break
        self._memo[code] = result
        return result

    def op_multisets(self, t: Graph, _memo: dict | None = None) -> set[tuple[str, ...]]:
        """All multisets of operations over every derivation of ``t`` from P4."""
        memo = {} if _memo is None else _memo
        if t.n < 4 or is_star(t):
            return set()
        code, perm = canonical_labeling(t)
        if code in memo:
            return memo[code]
        if code == self._p4:
            memo[code] = {()}
            return memo[code]
        canon = t.relabel(perm)
        found: set[tuple[str, ...]] = set()
        for _, op, removed, anchor in _reverse_candidates(canon):
            pred = _predecessor(canon, removed, anchor)
            if pred is None or not op_allowed(pred[0], op, pred[1]):
                continue
            for ms in self.op_multisets(pred[0], memo):
                found.add(tuple(sorted(ms + (op.value,))))
        memo[code] = found
        return found


def recognize_family_f(t: Graph, recognizer: Recognizer | None = None) -> TreeOpSequence | None:
    """A script building ``t`` from P4, or ``None`` when ``t`` is not in the family."""
    require_tree(t, 1)
    return (recognizer or Recognizer()).recognize(t)


# --- lemma checks -----------------------------------------------------------------------------

def check_leaf_distance_lemma(t: Graph) -> list[int]:
    """Vertices outside D and L(T) with no leaf within distance 3 (should be none)."""
    ctx = build_context(t)
    leaves = t.leaves()
    dist = all_distances(t)
    return [
        v for v in range(t.n)
        if v not in ctx.d_set and v not in leaves
        and not any(dist[v][h] is not None and dist[v][h] <= 3 for h in leaves)
    ]


def check_minimal_set_structure(t: Graph, d: VertexSet) -> list[int]:
    """Members of ``d`` with neither a private D-neighbor nor a private outside neighbor."""
    bad = []
    for v in sorted(d):
        private_in = any(set(t.adj[u]) & d == {v} for u in d)
        private_out = any(set(t.adj[w]) & d == {v} for w in range(t.n) if w not in d)
        if not (private_in or private_out):
            bad.append(v)
    return bad


# --- exhaustive verification ------------------------------------------------------------------

@dataclass
class CharacterizationReport:
    max_n: int
    trees_checked: dict[int, int] = field(default_factory=dict)
    stars_skipped: dict[int, int] = field(default_factory=dict)
    members: dict[int, int] = field(default_factory=dict)
    disagreements: list[dict] = field(default_factory=list)
    replay_failures: list[str] = field(default_factory=list)
    leaf_distance_violations: list[dict] = field(default_factory=list)
    private_neighbor_violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.replay_failures
                    or self.leaf_distance_violations or self.private_neighbor_violations)

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "trees_checked": self.trees_checked,
            "stars_skipped": self.stars_skipped,
            "members": self.members,
            "disagreements": self.disagreements,
            "replay_failures": self.replay_failures,
            "leaf_distance_violations": self.leaf_distance_violations,
            "private_neighbor_violations": self.private_neighbor_violations,
            "ok": self.ok,
        }


def verify_characterization(max_n: int) -> CharacterizationReport:
    """Compare T_gamma_t membership, recognition and generation on all trees up to ``max_n``."""
    if not 4 <= max_n <= 14:
        raise InvalidInputError("max_n must lie in 4..14")
    report = CharacterizationReport(max_n)
    generated = {m.code for m in generate_family_f(max_n)}
    recognizer = Recognizer()
    for n in range(4, max_n + 1):
        checked = skipped = members = 0
        for t in enumerate_free_trees(n):
            if is_star(t):
                skipped += 1
                continue
            checked += 1
            in_t = is_in_t_gamma_t(t)
            script = recognizer.recognize(t)
            in_gen = canonical_tree_code(t) in generated
            if not (in_t == (script is not None) == in_gen):
                report.disagreements.append({
                    "edges": [list(e) for e in t.edges],
                    "t_gamma_t": in_t, "recognized": script is not None, "generated": in_gen,
                })
            if script is not None:
                try:
                    rebuilt = script.replay()
                    if canonical_tree_code(rebuilt) != canonical_tree_code(t):
                        report.replay_failures.append(script.dumps())
                except PreconditionError as exc:
                    report.replay_failures.append(f"{script.dumps()}# {exc}")
            if in_t:
                members += 1
                bad = check_leaf_distance_lemma(t)
                if bad:
                    report.leaf_distance_violations.append({"edges": [list(e) for e in t.edges], "vertices": bad})
                d = build_context(t).d_set
                bad = check_minimal_set_structure(t, d)
                if bad:
                    report.private_neighbor_violations.append({"edges": [list(e) for e in t.edges], "vertices": bad})
        report.trees_checked[n] = checked
        report.stars_skipped[n] = skipped
        report.members[n] = members
    return report
