"""Finite linear orders and finite almost linear orders as categories.

Chains: objects are sizes, arrows increasing injections (image tuples).
Almost linear orders: objects are the structured Linear(n)/LB(n) handles,
arrows one-to-one homomorphisms.  Both carry constructive equalizers built
from chain merges, and the almost-linear category knows the local
obstruction (the two maxima mapped comparably in opposite orders), which is
the only way a span can fail to equalize.
"""
from __future__ import annotations

import itertools

from ..orders import (
    LB,
    LINEAR,
    AlmostLinearOrder,
    OrderMap,
    enumerate_homomorphisms,
    lb,
    linear,
)
from .base import Arrow, EnumerableCategory


def _merge_chains(s: int, p: tuple[int, ...], x: int, q: tuple[int, ...], y: int):
    """Equalize two increasing injections p: s -> x, q: s -> y over s.

    Returns (w_size, f2, g2) with f2 . p == g2 . q, built by interleaving the
    complement segments between consecutive anchors (x-side first).
    """
    f2 = [0] * x
    g2 = [0] * y
    pos = 0
    anchors = list(range(s))
    bounds_x = [-1] + [p[i] for i in anchors] + [x]
    bounds_y = [-1] + [q[i] for i in anchors] + [y]
    merged_anchor = []
    for gap in range(s + 1):
        for v in range(bounds_x[gap] + 1, bounds_x[gap + 1]):
            f2[v] = pos
            pos += 1
        for v in range(bounds_y[gap] + 1, bounds_y[gap + 1]):
            g2[v] = pos
            pos += 1
        if gap < s:
            merged_anchor.append(pos)
            f2[p[gap]] = pos
            g2[q[gap]] = pos
            pos += 1
    return pos, tuple(f2), tuple(g2)


class FinLinearOrders(EnumerableCategory):
    """Finite chains; an object is its size, arrows are increasing injections."""

    name = "finlo"
    probe_margin = 0

    def __init__(self, max_size: int | None = None):
        super().__init__()
        self.size_bound = max_size

    def objects(self, max_size: int) -> list:
        cap = max_size if self.size_bound is None else min(max_size, self.size_bound)
        return list(range(cap + 1))

    def size(self, obj) -> int:
        return obj

    def sort_key(self, obj) -> tuple:
        return (obj,)

    def _hom(self, a, b) -> tuple[Arrow, ...]:
        return tuple(
            Arrow(a, b, images) for images in itertools.combinations(range(b), a)
        )

    def identity(self, a) -> Arrow:
        return Arrow(a, a, tuple(range(a)))

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return Arrow(f.dom, g.cod, tuple(g.data[v] for v in f.data))

    def span_signature(self, p: Arrow):
        return ()

    def equalize(self, p: Arrow, q: Arrow):
        w, f2, g2 = _merge_chains(p.dom, p.data, p.cod, q.data, q.cod)
        if self.size_bound is not None and w > self.size_bound:
            return None
        return w, Arrow(p.cod, w, f2), Arrow(q.cod, w, g2)

    def join(self, x, y):
        z = max(x, y)
        return z, Arrow(x, z, tuple(range(x))), Arrow(y, z, tuple(range(y)))

    def describe_object(self, x):
        return {"kind": "linear", "n": x}


class FinAlmostLinearOrders(EnumerableCategory):
    """Finite almost linear orders and one-to-one homomorphisms."""

    name = "finalo"

    def __init__(self, max_size: int | None = None):
        super().__init__()
        self.size_bound = max_size

    def objects(self, max_size: int) -> list:
        cap = max_size if self.size_bound is None else min(max_size, self.size_bound)
        out: list[AlmostLinearOrder] = []
        for n in range(cap + 1):
            out.append(linear(n))
            if n >= 2:
                out.append(lb(n - 2))
        return out

    def size(self, obj: AlmostLinearOrder) -> int:
        return obj.size

    def sort_key(self, obj: AlmostLinearOrder) -> tuple:
        return (obj.size, 0 if obj.kind == LINEAR else 1)

    def _hom(self, a, b) -> tuple[Arrow, ...]:
        return tuple(
            Arrow(a, b, m.images) for m in enumerate_homomorphisms(a, b)
        )

    def identity(self, a) -> Arrow:
        return Arrow(a, a, tuple(range(a.size)))

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return Arrow(f.dom, g.cod, tuple(g.data[v] for v in f.data))

    def cocone_obstruction(self, p: Arrow, q: Arrow):
        """The span cannot equalize iff the source's two maxima are mapped
        comparably in opposite orders by the two legs."""
        s: AlmostLinearOrder = p.dom
        if s.kind != LB:
            return None
        a, b = s.maxima  # type: ignore[misc]
        x, y = p.cod, q.cod
        pa, pb = p.data[a], p.data[b]
        qa, qb = q.data[a], q.data[b]
        if x.lt(pa, pb) and y.lt(qb, qa):
            return {"maxima": [a, b], "left_order": "a<b", "right_order": "b<a"}
        if x.lt(pb, pa) and y.lt(qa, qb):
            return {"maxima": [a, b], "left_order": "b<a", "right_order": "a<b"}
        return None

    def span_signature(self, p: Arrow):
        s: AlmostLinearOrder = p.dom
        if s.kind != LB:
            return ()
        a, b = s.maxima  # type: ignore[misc]
        t = p.cod
        pa, pb = p.data[a], p.data[b]
        if t.lt(pa, pb):
            return ("ab",)
        if t.lt(pb, pa):
            return ("ba",)
        return ("incomparable",)

    def equalize(self, p: Arrow, q: Arrow):
        """Refine both codomains into chains consistently, then merge."""
        if self.cocone_obstruction(p, q) is not None:
            return None
        s: AlmostLinearOrder = p.dom
        want = "ab"  # order imposed on the source maxima images, if any
        if s.kind == LB:
            a, b = s.maxima  # type: ignore[misc]
            for f in (p, q):
                t = f.cod
                fa, fb = f.data[a], f.data[b]
                if t.lt(fb, fa):
                    want = "ba"
        ref_p, chain_p = _refine_to_chain(p, want, s)
        ref_q, chain_q = _refine_to_chain(q, want, s)
        w, f2, g2 = _merge_chains(s.size, chain_p, p.cod.size, chain_q, q.cod.size)
        if self.size_bound is not None and w > self.size_bound:
            return None
        target = linear(w)
        return (
            target,
            Arrow(p.cod, target, tuple(f2[ref_p[v]] for v in range(p.cod.size))),
            Arrow(q.cod, target, tuple(g2[ref_q[v]] for v in range(q.cod.size))),
        )

    def join(self, x, y):
        z = linear(max(x.size, y.size))
        return (
            z,
            Arrow(x, z, tuple(range(x.size))),
            Arrow(y, z, tuple(range(y.size))),
        )

    def cofinal_candidates(self, x) -> list:
        out = []
        if x.kind == LINEAR:
            y = lb(x.n)  # the chain sits in the trunk below the two maxima
            out.append((y, Arrow(x, y, tuple(range(x.n)))))
        else:
            y = linear(x.size)  # a refinement
            out.append((y, Arrow(x, y, tuple(range(x.size)))))
        return out

    def describe_object(self, x: AlmostLinearOrder):
        return {"kind": x.kind, "n": x.n}


def _refine_to_chain(f: Arrow, want: str, s):
    """Chain positions of f's codomain under a refinement honoring `want`.

    Returns (positions: element -> chain position, anchor positions listed in
    a source sequence shared between the two legs: trunk ascending, then the
    source maxima in `want` order).  The anchor list is strictly increasing.
    """
    t: AlmostLinearOrder = f.cod
    positions = list(range(t.size))
    if t.kind == LB:
        lo, hi = t.maxima  # type: ignore[misc]
        if s.kind == LB:
            a, b = s.maxima  # type: ignore[misc]
            fa, fb = f.data[a], f.data[b]
            if {fa, fb} == set(t.maxima):  # type: ignore[arg-type]
                lo, hi = (fa, fb) if want == "ab" else (fb, fa)
        positions[lo] = t.n
        positions[hi] = t.n + 1
    if s.kind == LB:
        a, b = s.maxima  # type: ignore[misc]
        seq = list(range(s.n)) + ([a, b] if want == "ab" else [b, a])
    else:
        seq = list(range(s.size))
    anchors = tuple(positions[f.data[v]] for v in seq)
    if any(x >= y for x, y in zip(anchors, anchors[1:])):
        raise AssertionError("refinement did not order the anchors")
    return positions, anchors
