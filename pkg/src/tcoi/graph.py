"""Immutable simple graphs and the set predicates built on them.

Vertices are the contiguous integers ``0..n-1``. Vertex sets are passed around
as plain iterables of ints (usually ``frozenset``); internally the predicates
work on integer bitmasks, which is what the solvers use too.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from typing import NamedTuple

from .errors import InvalidInputError, NotATreeError

VertexSet = frozenset[int]


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Instances never change after construction; every "modifying" helper
    returns a new graph. Equality and hashing use ``(n, edges)``.
    """

    __slots__ = ("n", "edges", "adj", "masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInputError(f"vertex count must be non-negative, got {n}")
        canon = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise InvalidInputError(f"duplicate edge {e}")
            canon.add(e)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in canon:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self.masks: tuple[int, ...] = tuple(sum(1 << w for w in a) for a in self.adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.masks[u] >> v & 1)

    def vertices(self) -> range:
        return range(self.n)

    def is_connected(self) -> bool:
        return self.n == 0 or len(connected_components(self)) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def leaves(self) -> VertexSet:
        return frozenset(v for v in range(self.n) if len(self.adj[v]) == 1)

    def add(self, count: int = 0, edges: Iterable[tuple[int, int]] = ()) -> Graph:
        """Return a copy with ``count`` new vertices appended and extra edges."""
        return Graph(self.n + count, list(self.edges) + list(edges))

    def remove_edge(self, u: int, v: int) -> Graph:
        e = (min(u, v), max(u, v))
        if e not in set(self.edges):
            raise InvalidInputError(f"edge {e} not present")
        return Graph(self.n, [f for f in self.edges if f != e])

    def remove_vertices(self, drop: Iterable[int]) -> tuple[Graph, dict[int, int]]:
        """Delete vertices; survivors keep their relative order.

        Returns the new graph and the old-id -> new-id map.
        """
        drop = set(drop)
        keep = [v for v in range(self.n) if v not in drop]
        new_id = {v: i for i, v in enumerate(keep)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges if u in new_id and v in new_id]
        return Graph(len(keep), edges), new_id

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidInputError("relabeling must be a permutation of 0..n-1")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def mask_of(self, s: Iterable[int]) -> int:
        mask = 0
        for v in s:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise InvalidInputError(f"vertex {v!r} out of range for n={self.n}")
            mask |= 1 << v
        return mask

    def set_of(self, mask: int) -> VertexSet:
        return frozenset(v for v in range(self.n) if mask >> v & 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# --- constructors -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidInputError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and leaves ``1..leaves``."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def double_star(k: int, l: int | None = None) -> Graph:
    """Centers 0 and 1, with ``k`` leaves on 0 and ``l`` (default ``k``) on 1."""
    l = k if l is None else l
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(k)]
    edges += [(1, 2 + k + i) for i in range(l)]
    return Graph(2 + k + l, edges)


def spider(legs: int, length: int) -> Graph:
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.n
    return Graph(offset, edges)


# --- predicates --------------------------------------------------------------

def complement(g: Graph, s: Iterable[int]) -> VertexSet:
    return g.set_of(g.full_mask & ~g.mask_of(s))


def _independent_mask(g: Graph, mask: int) -> bool:
    masks = g.masks
    m = mask
    while m:
        low = m & -m
        if masks[low.bit_length() - 1] & mask:
            return False
        m ^= low
    return True


def _total_dominating_mask(g: Graph, mask: int) -> bool:
    return all(nb & mask for nb in g.masks)


def _tcid_mask(g: Graph, mask: int) -> bool:
    rest = g.full_mask & ~mask
    return rest != 0 and _total_dominating_mask(g, mask) and _independent_mask(g, rest)


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    return _independent_mask(g, g.mask_of(s))


def is_vertex_cover(g: Graph, s: Iterable[int]) -> bool:
    mask = g.mask_of(s)
    return all(mask >> u & 1 or mask >> v & 1 for u, v in g.edges)


def is_total_dominating(g: Graph, s: Iterable[int]) -> bool:
    """Every vertex, members of ``s`` included, needs a neighbor in ``s``."""
    return _total_dominating_mask(g, g.mask_of(s))


def is_tcid(g: Graph, s: Iterable[int]) -> bool:
    """Total dominating set whose complement is nonempty and independent."""
    return _tcid_mask(g, g.mask_of(s))


def connected_components(g: Graph) -> list[VertexSet]:
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def distances_from(g: Graph, v: int) -> list[int | None]:
    """BFS hop counts from ``v``; ``None`` marks unreachable vertices."""
    if not 0 <= v < g.n:
        raise InvalidInputError(f"vertex {v} out of range for n={g.n}")
    dist: list[int | None] = [None] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_distances(g: Graph) -> list[list[int | None]]:
    return [distances_from(g, v) for v in range(g.n)]


class TreeClasses(NamedTuple):
    leaves: VertexSet
    supports: VertexSet
    semi_supports: VertexSet
    isolated_supports: VertexSet


def require_tree(t: Graph, min_order: int = 1) -> None:
    if not t.is_tree():
        raise NotATreeError(f"{t!r} is not a tree")
    if t.n < min_order:
        raise NotATreeError(f"tree must have at least {min_order} vertices, got {t.n}")


def tree_vertex_classes(t: Graph) -> TreeClasses:
    """Leaves, supports, semi-supports and isolated supports of a tree.

    A semi-support is a non-leaf, non-support vertex adjacent to a support.
    """
    require_tree(t, 2)
    leaves = t.leaves()
    supports = frozenset(v for v in range(t.n) if any(w in leaves for w in t.adj[v]))
    semi = frozenset(
        v for v in range(t.n)
        if v not in leaves and v not in supports and any(w in supports for w in t.adj[v])
    )
    isolated = frozenset(s for s in supports if not any(w in supports for w in t.adj[s]))
    return TreeClasses(leaves, supports, semi, isolated)
