"""Enumeration and random generation of lexicographic trees and extensions."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from ..verdicts import InputError
from ._tokens import ColumnLayer, PointedColumn
from .core import TA, TC, TW, LexTree, TreeMorphism, empty_tree, tree_from_nested
from .build import terminal_plant, tree_surgery


@lru_cache(maxsize=None)
def _shapes(m_key: tuple[int, ...], n: int) -> tuple:
    """All tw shapes with exactly n nodes as nested tuples, sorted."""
    if n == 1:
        return ((None, ()),)
    out = []
    for m in m_key:
        if n - 1 < m:
            continue
        for sizes in _compositions(n - 1, m):
            for kids in itertools.product(
                *[_shapes(m_key, sz) for sz in sizes]
            ):
                out.append((None, tuple(kids)))
    return tuple(sorted(out))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _label_terminals(shape, options):
    """All ways to relabel the terminal nodes of a nested shape."""
    _label, kids = shape
    if not kids:
        return [(opt, ()) for opt in options]
    return [
        (None, tuple(ks))
        for ks in itertools.product(*[_label_terminals(k, options) for k in kids])
    ]


def enumerate_trees(m_set, max_nodes: int, variant: str = TW, include_empty: bool = True) -> list[LexTree]:
    """All trees with at most max_nodes nodes, canonical order (size, key)."""
    m_key = tuple(sorted(m_set))
    if variant == TW:
        options = [None]
    elif variant == TC:
        options = [None, *m_key]
    elif variant == TA:
        options = list(m_key)
    else:
        raise InputError(f"unknown variant {variant!r}")
    out: list[LexTree] = []
    if include_empty:
        out.append(empty_tree(m_set))
    for n in range(1, max_nodes + 1):
        batch = []
        for shape in _shapes(m_key, n):
            for labeled in _label_terminals(shape, options):
                batch.append(tree_from_nested(m_set, labeled))
        batch.sort(key=lambda t: t.canonical_key())
        out.extend(batch)
    return out


def random_tree(rng: random.Random, m_set, n_nodes: int, variant: str = TW) -> LexTree:
    """A random tree with at most n_nodes nodes (exact when sizes permit)."""
    m_key = sorted(m_set)
    tree = tree_from_nested(m_set, (None, ()))
    while tree.n_nodes < n_nodes:
        room = n_nodes - tree.n_nodes
        widths = [m for m in m_key if m <= room]
        if not widths:
            break
        at = rng.choice(tree.terminals())
        width = rng.choice(widths)
        bush = tree_from_nested(m_set, (None, tuple((None, ()) for _ in range(width))))
        tree = terminal_plant(tree, at, bush, TW).tree
    if variant == TW:
        return tree
    decided = list(tree.decided)
    for t in tree.terminals():
        if variant == TA:
            decided[t] = rng.choice(m_key)
        elif rng.random() < 0.5:
            decided[t] = rng.choice(m_key)
    return LexTree(tree.m_set, tree.parent, tree.children, tuple(decided))


def random_extension(
    rng: random.Random,
    s: LexTree,
    max_total: int,
    variant: str = TW,
    steps: int | None = None,
) -> TreeMorphism:
    """A random extension of s built from one-step plantings, surgeries and
    (for tc/ta) label decisions.  Returns the inclusion morphism s -> T."""
    m_key = sorted(s.m_set)
    cur = s
    base = TreeMorphism(s, s, tuple(range(s.n_nodes)))
    if steps is None:
        steps = rng.randrange(0, 4)
    for _ in range(steps):
        room = max_total - cur.n_nodes
        ops = []
        if cur.n_nodes and room >= 1:
            ops.append("plant")
        if cur.n_nodes and any(m <= room for m in m_key):
            ops.append("surgery")
        if variant in (TC, TA) and any(
            cur.decided[t] is None for t in cur.terminals()
        ):
            ops.append("decide")
        if not ops:
            break
        op = rng.choice(ops)
        if op == "plant":
            at = rng.choice(cur.terminals())
            want = cur.decided[at]
            widths = [m for m in m_key if m <= room and (want is None or m == want)]
            if not widths:
                continue
            width = rng.choice(widths)
            labels = tuple(
                rng.choice(m_key) if variant == TA else None for _ in range(width)
            )
            bush = tree_from_nested(
                s.m_set, (None, tuple((lab, ()) for lab in labels))
            )
            res = terminal_plant(cur, at, bush, variant)
            cur, base = res.tree, res.base.compose(base)
        elif op == "surgery":
            depth = rng.randrange(0, cur.height())
            level = [v for v in cur.nodes() if cur.depths()[v] == depth]
            cols = {}
            fits = True
            budget = room
            for v in level:
                widths = [m for m in m_key if m <= budget]
                if not widths:
                    fits = False
                    break
                width = rng.choice(widths)
                budget -= width  # root + (width-1) fresh tops
                labels = tuple(
                    rng.choice(m_key) if variant == TA else None
                    for _ in range(width)
                )
                cols[v] = PointedColumn(
                    (ColumnLayer(labels, rng.randrange(width)),)
                )
            if not fits or budget < 0:
                continue
            res2 = tree_surgery(cur, depth, cols)
            cur, base = res2.tree, res2.base.compose(base)
        else:  # decide
            undecided = [t for t in cur.terminals() if cur.decided[t] is None]
            t = rng.choice(undecided)
            decided = list(cur.decided)
            decided[t] = rng.choice(m_key)
            relabeled = LexTree(cur.m_set, cur.parent, cur.children, tuple(decided))
            base = TreeMorphism(cur, relabeled, tuple(range(cur.n_nodes))).compose(base)
            cur = relabeled
    if variant == TA:
        decided = list(cur.decided)
        for t in cur.terminals():
            if decided[t] is None:
                decided[t] = rng.choice(m_key)
        relabeled = LexTree(cur.m_set, cur.parent, cur.children, tuple(decided))
        base = TreeMorphism(cur, relabeled, tuple(range(cur.n_nodes))).compose(base)
        cur = relabeled
    return base
