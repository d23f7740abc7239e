"""Finite linear and almost linear orders, and the ternary-relation view.

An almost linear order (every 3-element subset has a minimum) is either a
chain or a chain with two incomparable maxima on top, so the structured form
Linear(n) / LB(n) is canonical and every algorithm case-splits on it.

The two functors between almost linear orders and ternary structures:
  to_ternary   R(x,y,z) iff x is the minimum of the 3-set {x,y,z}
  from_ternary x < y iff some w witnesses R(x,y,w)
round-trip exactly on ternary structures, and on orders they forget the
comparability of the top two elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .verdicts import InputError

LINEAR = "linear"
LB = "lb"


@dataclass(frozen=True)
class AlmostLinearOrder:
    """Linear(n): chain 0<1<...<n-1.  LB(n): that chain with two
    incomparable maxima n, n+1 appended."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in (LINEAR, LB):
            raise InputError(f"unknown order kind {self.kind!r}")
        if self.n < 0:
            raise InputError("negative size")

    @property
    def size(self) -> int:
        return self.n + (2 if self.kind == LB else 0)

    @property
    def maxima(self) -> tuple[int, int] | None:
        if self.kind == LB:
            return (self.n, self.n + 1)
        return None

    def lt(self, x: int, y: int) -> bool:
        if self.kind == LINEAR:
            return x < y
        if x < self.n:
            return x < y  # trunk element: below everything later
        return False  # the two maxima are incomparable and maximal

    def leq(self, x: int, y: int) -> bool:
        return x == y or self.lt(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.lt(x, y) or self.lt(y, x) or x == y


def linear(n: int) -> AlmostLinearOrder:
    return AlmostLinearOrder(LINEAR, n)


def lb(n: int) -> AlmostLinearOrder:
    return AlmostLinearOrder(LB, n)


def alo_from_relation(size: int, lt_pairs: set[tuple[int, int]]) -> tuple[AlmostLinearOrder, tuple[int, ...]]:
    """Validate a strict-order relation as almost linear; return the
    structured form and the element order (old labels in canonical position).

    Rejects (InputError) when some 3-element subset has no minimum.
    """
    elems = list(range(size))
    for x, y in lt_pairs:
        if (y, x) in lt_pairs or x == y:
            raise InputError("relation is not a strict order")
    for x, y in lt_pairs:
        for z in elems:
            if (y, z) in lt_pairs and (x, z) not in lt_pairs:
                raise InputError("relation is not transitive")
    def less(a: int, b: int) -> bool:
        return (a, b) in lt_pairs
    for trio in itertools.combinations(elems, 3):
        if not any(all(less(m, o) for o in trio if o != m) for m in trio):
            raise InputError(f"3-set {trio} has no minimum: not almost linear")
    incomparable = [
        (x, y)
        for x, y in itertools.combinations(elems, 2)
        if not less(x, y) and not less(y, x)
    ]
    if not incomparable:
        order = sorted(elems, key=lambda e: sum(less(o, e) for o in elems))
        return linear(size), tuple(order)
    if len(incomparable) > 1:
        raise InputError("more than one incomparable pair: not almost linear")
    a, b = incomparable[0]
    trunk = sorted(
        (e for e in elems if e not in (a, b)),
        key=lambda e: sum(less(o, e) for o in elems),
    )
    if any(not (less(t, a) and less(t, b)) for t in trunk):
        raise InputError("incomparable pair is not above the rest")
    return lb(size - 2), tuple(trunk) + (min(a, b), max(a, b))


@dataclass(frozen=True)
class TernaryStructure:
    """Ground set 0..size-1 with a ternary relation R as a set of triples."""

    size: int
    triples: frozenset[tuple[int, int, int]]

    def holds(self, x: int, y: int, z: int) -> bool:
        return (x, y, z) in self.triples

    def sorted_triples(self) -> list[tuple[int, int, int]]:
        return sorted(self.triples)


def ternary_violations(t: TernaryStructure) -> list[str]:
    """The four axioms, each a closed formula over triples/quadruples."""
    out: list[str] = []
    for (x, y, z) in t.triples:
        if len({x, y, z}) != 3:
            out.append(f"antireflexivity fails at {(x, y, z)}")
        if (x, z, y) not in t.triples:
            out.append(f"symmetry fails at {(x, y, z)}")
    for (x, y, w) in t.triples:
        for (y2, z, w2) in t.triples:
            if y2 == y and (x, z, w2) not in t.triples:
                out.append(f"transitivity fails at {(x, y, w)}, {(y, z, w2)}")
    for trio in itertools.combinations(range(t.size), 3):
        x, y, z = trio
        if not (t.holds(x, y, z) or t.holds(y, z, x) or t.holds(z, x, y)):
            out.append(f"linearity fails at {trio}")
    return out


def to_ternary(x: AlmostLinearOrder) -> TernaryStructure:
    """Functor on objects: R(a,b,c) iff a is the minimum of the 3-set."""
    triples = set()
    for a in range(x.size):
        for b in range(x.size):
            for c in range(x.size):
                if b != c and x.lt(a, b) and x.lt(a, c):
                    triples.add((a, b, c))
    return TernaryStructure(x.size, frozenset(triples))


def from_ternary(t: TernaryStructure) -> tuple[AlmostLinearOrder, tuple[int, ...]]:
    """Functor on objects: a < b iff R(a,b,w) for some w.

    Returns the structured order plus the element order (original labels in
    canonical positions), so callers can transport maps.  Raises InputError
    with the offending tuple when an axiom fails.
    """
    bad = ternary_violations(t)
    if bad:
        raise InputError("not a ternary order structure: " + bad[0])
    lt_pairs = {
        (x, y)
        for (x, y, _w) in t.triples
    }
    return alo_from_relation(t.size, lt_pairs)


def roundtrip_ternary(t: TernaryStructure) -> TernaryStructure:
    """F(G(t)) transported back along the element order; equals t exactly."""
    alo, order = from_ternary(t)
    image = to_ternary(alo)
    relabel = {pos: old for pos, old in enumerate(order)}
    return TernaryStructure(
        t.size,
        frozenset((relabel[a], relabel[b], relabel[c]) for (a, b, c) in image.triples),
    )


def forget_top_pair(x: AlmostLinearOrder) -> AlmostLinearOrder:
    """G(F(x)): x with the comparability of its two largest elements erased."""
    if x.kind == LINEAR and x.n >= 2:
        return lb(x.n - 2)
    return x


# ---------------------------------------------------------------------------
# Arrows


@dataclass(frozen=True)
class OrderMap:
    dom: AlmostLinearOrder
    cod: AlmostLinearOrder
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.dom.size:
            raise InputError("map arity mismatch")
        if any(not (0 <= v < self.cod.size) for v in self.images):
            raise InputError("image out of range")

    def apply(self, x: int) -> int:
        return self.images[x]


def is_homomorphism(f: OrderMap) -> bool:
    """One-to-one homomorphism: injective and x<=y implies f(x)<=f(y)."""
    if len(set(f.images)) != len(f.images):
        return False
    for x in range(f.dom.size):
        for y in range(f.dom.size):
            if f.dom.lt(x, y) and not f.cod.lt(f.images[x], f.images[y]):
                return False
    return True


def is_embedding(f: OrderMap) -> bool:
    if not is_homomorphism(f):
        return False
    for x in range(f.dom.size):
        for y in range(f.dom.size):
            if f.cod.lt(f.images[x], f.images[y]) and not f.dom.lt(x, y):
                return False
    return True


def refinements(x: AlmostLinearOrder) -> tuple[OrderMap, OrderMap]:
    """The two linear refinements of an LB-shaped order."""
    if x.kind != LB:
        raise InputError("a linear order has no proper refinements")
    target = linear(x.size)
    ident = tuple(range(x.size))
    swapped = ident[: x.n] + (x.n + 1, x.n)
    # First map keeps maxima order (a below b), second swaps them.
    return (
        OrderMap(x, target, ident),
        OrderMap(x, target, swapped),
    )


@dataclass(frozen=True)
class ArrowClassification:
    kind: str  # "embedding" | "refinement-then-embedding"
    refinement: OrderMap | None
    embedding: OrderMap


def classify_arrow(f: OrderMap) -> ArrowClassification:
    """Unique decomposition of a one-to-one homomorphism (refinement + embedding)."""
    if not is_homomorphism(f):
        raise InputError("not a one-to-one homomorphism")
    if f.dom.kind == LINEAR:
        return ArrowClassification("embedding", None, f)
    a, b = f.dom.maxima  # type: ignore[misc]
    fa, fb = f.images[a], f.images[b]
    if not f.cod.comparable(fa, fb):
        return ArrowClassification("embedding", None, f)
    keep, swap = refinements(f.dom)
    refinement = keep if f.cod.lt(fa, fb) else swap
    # The embedding through the chosen refinement is f on the reordered set.
    inv = [0] * f.dom.size
    for src, mid in enumerate(refinement.images):
        inv[mid] = src
    emb = OrderMap(refinement.cod, f.cod, tuple(f.images[inv[i]] for i in range(f.dom.size)))
    if not is_embedding(emb):
        raise AssertionError("refinement decomposition failed to produce an embedding")
    return ArrowClassification("refinement-then-embedding", refinement, emb)


def is_amalgamable_alo_arrow(f: OrderMap) -> bool:
    """Closed form: amalgamable iff the arrow factorizes through a linear
    order, i.e. unless both ends are LB-shaped with maxima mapped to maxima."""
    if not is_homomorphism(f):
        raise InputError("not a one-to-one homomorphism")
    if f.dom.kind != LB or f.cod.kind != LB:
        return True
    a, b = f.dom.maxima  # type: ignore[misc]
    return {f.images[a], f.images[b]} != set(f.cod.maxima)  # type: ignore[arg-type]


def enumerate_homomorphisms(x: AlmostLinearOrder, y: AlmostLinearOrder) -> list[OrderMap]:
    """All one-to-one homomorphisms x -> y, ordered by image tuple."""
    out = []
    for images in itertools.permutations(range(y.size), x.size):
        f = OrderMap(x, y, images)
        if is_homomorphism(f):
            out.append(f)
    return sorted(out, key=lambda f: f.images)


def enumerate_alos(max_size: int) -> list[AlmostLinearOrder]:
    """All almost linear orders with at most max_size elements."""
    out = [linear(n) for n in range(max_size + 1)]
    out += [lb(n) for n in range(max_size - 1)]
    return sorted(out, key=lambda a: (a.size, a.kind))


def enumerate_ternary_bruteforce(size: int) -> list[TernaryStructure]:
    """All axiom-satisfying ternary structures on 0..size-1 by brute force.

    Uses the symmetry axiom to halve the sites: a structure is determined by
    its set of (x, {y,z}) incidences.
    """
    if size > 4:
        raise InputError("direct brute force supported up to size 4")
    sites = [
        (x, pair)
        for x in range(size)
        for pair in itertools.combinations(range(size), 2)
        if x not in pair
    ]
    out = []
    for mask in range(1 << len(sites)):
        triples = set()
        for bit, (x, (y, z)) in enumerate(sites):
            if mask >> bit & 1:
                triples.add((x, y, z))
                triples.add((x, z, y))
        t = TernaryStructure(size, frozenset(triples))
        if not ternary_violations(t):
            out.append(t)
    return out
