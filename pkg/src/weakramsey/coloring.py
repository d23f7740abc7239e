"""Exhaustive search for hypergraph colorings with no monochromatic edge.

This is the single adversary-coloring engine behind both the (wR) bad-coloring
search and the micro-Milliken witness search.  Both reduce to: given vertices
and hyperedges, find a k-coloring of the vertices under which no hyperedge is
monochromatic, or certify that none exists.

The search is a complete depth-first backtracker over vertices in the given
order with colors tried in increasing order, so the first coloring found is
canonical and runs are deterministic.  Forward checking: once all but one
vertex of an edge share a color, that color is forbidden on the last vertex.

Edges with at most one vertex are monochromatic under every coloring, so
their presence immediately certifies that no avoiding coloring exists.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

FOUND = "found"
NONE = "none"
BUDGET = "budget"


@dataclass(frozen=True)
class ColoringOutcome:
    status: str  # found | none | budget
    colors: tuple[int, ...] | None
    nodes: int  # assignment nodes explored


def find_avoiding_coloring(
    n_vertices: int,
    hyperedges: list[tuple[int, ...]],
    k: int,
    max_nodes: int | None = None,
    workers: int = 1,
) -> ColoringOutcome:
    """Search for a k-coloring of 0..n-1 with every hyperedge non-monochromatic."""
    edges = sorted({tuple(sorted(set(e))) for e in hyperedges})
    if any(len(e) <= 1 for e in edges):
        return ColoringOutcome(NONE, None, 0)
    if k == 0:
        status = FOUND if n_vertices == 0 else NONE
        return ColoringOutcome(status, () if status == FOUND else None, 0)
    if n_vertices == 0:
        return ColoringOutcome(FOUND, (), 0)
    if k == 1 and edges:
        return ColoringOutcome(NONE, None, 0)

    if workers <= 1:
        return _dfs(n_vertices, edges, k, prefix=(), max_nodes=max_nodes)

    # Shard on the colors of a short vertex prefix; merge in lexicographic
    # shard order so the outcome is independent of scheduling.
    depth = 0
    while k**depth < workers and depth < n_vertices:
        depth += 1
    prefixes = _prefixes(k, depth)
    per_shard = None if max_nodes is None else max(1, max_nodes // len(prefixes))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(
            pool.map(
                lambda p: _dfs(n_vertices, edges, k, prefix=p, max_nodes=per_shard),
                prefixes,
            )
        )
    nodes = sum(r.nodes for r in results)
    for res in results:  # prefixes are in lexicographic order
        if res.status == FOUND:
            return ColoringOutcome(FOUND, res.colors, nodes)
    if any(r.status == BUDGET for r in results):
        return ColoringOutcome(BUDGET, None, nodes)
    return ColoringOutcome(NONE, None, nodes)


def _prefixes(k: int, depth: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for _ in range(depth):
        out = [p + (c,) for p in out for c in range(k)]
    return out


def _dfs(
    n: int,
    edges: list[tuple[int, ...]],
    k: int,
    prefix: tuple[int, ...],
    max_nodes: int | None,
) -> ColoringOutcome:
    edge_of_vertex: list[list[int]] = [[] for _ in range(n)]
    for idx, e in enumerate(edges):
        for v in e:
            edge_of_vertex[v].append(idx)

    colors = [-1] * n
    # Per edge: number of colored vertices and the common color while uniform
    # (-2 marks an edge already bichromatic, hence permanently satisfied).
    colored = [0] * len(edges)
    uniform = [-1] * len(edges)
    esize = [len(e) for e in edges]
    nodes = 0
    solution: tuple[int, ...] | None = None

    def place(v: int, c: int) -> tuple[list[tuple[int, int]], bool]:
        """Color v with c; return (undo trail, whether an edge went mono)."""
        colors[v] = c
        trail: list[tuple[int, int]] = []
        mono = False
        for ei in edge_of_vertex[v]:
            if uniform[ei] == -2:
                continue
            trail.append((ei, uniform[ei]))
            colored[ei] += 1
            if uniform[ei] == -1:
                uniform[ei] = c
            elif uniform[ei] != c:
                uniform[ei] = -2
                continue
            if colored[ei] == esize[ei]:
                mono = True
        return trail, mono

    def unplace(v: int, trail: list[tuple[int, int]]) -> None:
        colors[v] = -1
        for ei, old in trail:
            colored[ei] -= 1
            uniform[ei] = old

    def forbidden(v: int) -> set[int]:
        bad = set()
        for ei in edge_of_vertex[v]:
            if uniform[ei] >= 0 and colored[ei] == esize[ei] - 1:
                bad.add(uniform[ei])
        return bad

    def search(v: int) -> str:
        nonlocal nodes, solution
        if v == n:
            solution = tuple(colors)
            return FOUND
        bad = forbidden(v)
        for c in range(k):
            if c in bad:
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                return BUDGET
            trail, mono = place(v, c)
            if not mono:
                res = search(v + 1)
                if res != NONE:
                    unplace(v, trail)
                    return res
            unplace(v, trail)
        return NONE

    # Apply the shard prefix; a conflict inside the prefix kills the shard.
    for v, c in enumerate(prefix):
        if c in forbidden(v):
            return ColoringOutcome(NONE, None, 0)
        _, mono = place(v, c)
        if mono:
            return ColoringOutcome(NONE, None, 0)

    status = search(len(prefix))
    return ColoringOutcome(status, solution, nodes)
