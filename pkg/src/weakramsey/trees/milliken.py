"""Micro search for finite Milliken witnesses.

For the balanced m-branching tree of height N, color its balanced strong
subtrees of height a with k colors; N is a witness for (m, a, b, k) when
every such coloring leaves some balanced strong subtree of height b all of
whose height-a strong subtrees share a color.  The search enumerates the
height-a sites and the height-b hyperedges and asks the adversary engine for
a coloring avoiding monochromatic hyperedges; when none exists, N works.

For m = 1 this is the classical Ramsey number search: strong subtrees of a
chain are its subsets.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..coloring import BUDGET, FOUND, NONE, find_avoiding_coloring
from ..verdicts import InputError
from .core import LexTree, enumerate_embeddings
from .vtree import build_v


@dataclass(frozen=True)
class MillikenOutcome:
    witness: int | None  # least working N <= n_max, or None
    checked: dict[int, str]  # per N: "avoidable" | "forced" | "budget"
    nodes: int


def balanced_tree(m: int, height: int) -> LexTree:
    return build_v(m, height)


def strong_subtree_sites(t: LexTree, a: int, m: int | None = None) -> list[frozenset[int]]:
    """Images of balanced height-a strong lex subtrees of t (each exactly once)."""
    if m is None:
        m = _branching(t)
    pattern = balanced_tree(m, a)
    pattern = LexTree(t.m_set, pattern.parent, pattern.children, pattern.decided)
    embs = enumerate_embeddings(pattern, t, leveled=True, variant="tw")
    return [frozenset(e.mapping) for e in embs]


def _branching(t: LexTree) -> int:
    degrees = {t.spl(v) for v in t.nodes() if not t.is_terminal(v)}
    if not degrees and len(t.m_set) == 1:
        return next(iter(t.m_set))
    if len(degrees) != 1:
        raise InputError("tree is not uniformly branching")
    return degrees.pop()


def milliken_witness_search(
    m: int,
    a: int,
    b: int,
    k: int,
    n_max: int,
    max_nodes: int | None = 5_000_000,
    workers: int = 1,
) -> MillikenOutcome:
    """Least N <= n_max such that every k-coloring of height-a balanced strong
    subtrees of the height-N balanced m-ary tree admits a monochromatic
    height-b one; None when every N <= n_max still has an avoiding coloring.
    """
    if min(m, a, b, k) < 1 or a > b:
        raise InputError("need 1 <= a <= b and positive m, k")
    checked: dict[int, str] = {}
    total_nodes = 0
    for n in range(b, n_max + 1):
        tree = balanced_tree(m, n)
        sites = strong_subtree_sites(tree, a, m)
        index = {s: i for i, s in enumerate(sites)}
        big = enumerate_embeddings(balanced_tree(m, b), tree, leveled=True, variant="tw")
        small_in_big = enumerate_embeddings(
            balanced_tree(m, a), balanced_tree(m, b), leveled=True, variant="tw"
        )
        edges = []
        for e in big:
            edge = tuple(
                sorted(index[frozenset(e.mapping[v] for v in f.mapping)] for f in small_in_big)
            )
            edges.append(edge)
        out = find_avoiding_coloring(
            len(sites), edges, k, max_nodes=max_nodes, workers=workers
        )
        total_nodes += out.nodes
        if out.status == NONE:
            checked[n] = "forced"
            return MillikenOutcome(n, checked, total_nodes)
        checked[n] = "avoidable" if out.status == FOUND else "budget"
        if out.status == BUDGET:
            return MillikenOutcome(None, checked, total_nodes)
    return MillikenOutcome(None, checked, total_nodes)
