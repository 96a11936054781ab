"""Canonical forms for small graphs and the catalog of connected graphs.

``canonical_form`` is a plain individualisation-refinement search. It has no
automorphism pruning beyond collapsing twin vertices, which is plenty for
graphs of up to a dozen vertices.
"""

from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache

import networkx as nx

from .errors import InvalidInputError
from .graph import Graph

# connected graphs on n unlabeled vertices, n = 1..8
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
MAX_CATALOG_ORDER = 8


def _refine(g: Graph, colors: list[int]) -> list[int]:
    adj = g.adj
    while True:
        sig = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(g.n)]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Isomorphism-invariant key: the smallest relabeled edge list found."""
    n = g.n
    if n == 0:
        return (0, ())
    masks = g.masks
    best: list = [None]

    def search(colors: list[int]) -> None:
        colors = _refine(g, colors)
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = next((c for c in sorted(counts) if counts[c] > 1), None)
        if target is None:
            key = tuple(sorted(
                (min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in g.edges
            ))
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        cell = [v for v in range(n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            # twins are interchangeable by an automorphism
            if any((masks[v] & ~(1 << w)) == (masks[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            nxt = [2 * c + 1 for c in colors]
            nxt[v] = 2 * target
            search(nxt)

    search([0] * n)
    return (n, best[0])


def from_networkx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph(len(index), [(index[u], index[v]) for u, v in h.edges()])


@lru_cache(maxsize=None)
def _atlas() -> tuple[Graph, ...]:
    return tuple(from_networkx(h) for h in nx.graph_atlas_g())


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """All connected graphs on ``n`` vertices, one per isomorphism class."""
    if not 1 <= n <= MAX_CATALOG_ORDER:
        raise InvalidInputError(f"catalog covers 1..{MAX_CATALOG_ORDER} vertices, got {n}")
    if n <= 7:
        found = tuple(g for g in _atlas() if g.n == n and g.is_connected())
    else:
        # every connected graph has a vertex whose deletion leaves it connected
        seen = {}
        for base in connected_graphs(n - 1):
            for subset in range(1, 1 << (n - 1)):
                g = base.add(1, [(v, n - 1) for v in range(n - 1) if subset >> v & 1])
                key = canonical_form(g)
                if key not in seen:
                    seen[key] = g
        found = tuple(seen[k] for k in sorted(seen))
    if len(found) != CONNECTED_COUNTS[n]:
        raise AssertionError(f"catalog has {len(found)} graphs on {n} vertices")
    return found


def iter_connected_graphs(min_n: int, max_n: int) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from connected_graphs(n)
