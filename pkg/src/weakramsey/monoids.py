"""Finite monoids and decidable word monoids as one-object categories.

A finite monoid is a multiplication table with a unit.  The checks here are
the closed-form Ramsey criteria: left equalization (LE), the single-collapse
test behind Ramsey arrows, the left absorption relation, and the structural
classification flags (semilattice, left-zero, right-zero, ...).

`satisfies_LE` and `is_ramsey_element` deliberately use different decision
procedures (pairwise equalization vs. single-collapse); for finite monoids
they provably agree, and the test suite cross-checks them rather than having
one delegate to the other.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .verdicts import InputError, Verdict


@dataclass(frozen=True)
class FiniteMonoid:
    """Multiplication table monoid; table[x][y] is the product x*y."""

    table: tuple[tuple[int, ...], ...]
    unit: int = 0

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0:
            raise InputError("monoid must be nonempty")
        for row in self.table:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise InputError("table entries out of range")
        if not (0 <= self.unit < n):
            raise InputError("unit index out of range")
        for x in range(n):
            if self.table[self.unit][x] != x or self.table[x][self.unit] != x:
                raise InputError(f"unit laws fail at element {x}")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise InputError(f"associativity fails at ({a},{b},{c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def elements(self) -> range:
        return range(self.order)

    def left_ideal(self, a: int) -> tuple[int, ...]:
        """M*a in increasing element order."""
        return tuple(sorted({self.mul(x, a) for x in self.elements()}))


def left_zeros(m: FiniteMonoid) -> frozenset[int]:
    return frozenset(
        z for z in m.elements() if all(m.mul(z, x) == z for x in m.elements())
    )


def right_zeros(m: FiniteMonoid) -> frozenset[int]:
    return frozenset(
        z for z in m.elements() if all(m.mul(x, z) == z for x in m.elements())
    )


def satisfies_LE(m: FiniteMonoid, alpha: int) -> bool:
    """Left equalization via the pairwise reformulation.

    True iff for every x, y in M*alpha some e has e*x == e*y.
    """
    if not (0 <= alpha < m.order):
        raise InputError("element out of range")
    ideal = m.left_ideal(alpha)
    for x, y in itertools.combinations(ideal, 2):
        if not any(m.mul(e, x) == m.mul(e, y) for e in m.elements()):
            return False
    return True


def right_action_components(m: FiniteMonoid, alpha: int) -> tuple[frozenset[int], ...]:
    """Undirected components of the right action of F = {f : M.alpha.f <= M.alpha}."""
    ideal = m.left_ideal(alpha)
    ideal_set = set(ideal)
    stabilizer = [
        f for f in m.elements() if all(m.mul(x, f) in ideal_set for x in ideal)
    ]
    parent = {x: x for x in ideal}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in ideal:
        for f in stabilizer:
            rx, ry = find(x), find(m.mul(x, f))
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, set[int]] = {}
    for x in ideal:
        groups.setdefault(find(x), set()).add(x)
    return tuple(frozenset(g) for _, g in sorted(groups.items()))


def is_ramsey_element(m: FiniteMonoid, alpha: int) -> Verdict:
    """Exact Ramsey-arrow verdict for an element of a finite monoid.

    Decided by the single-collapse criterion: alpha is a Ramsey arrow iff
    some e collapses the whole left ideal M*alpha to one point (for a finite
    monoid one collapser serves every finite F at once).  The component
    structure of the right-action graph is reported alongside.
    """
    if not (0 <= alpha < m.order):
        raise InputError("element out of range")
    ideal = m.left_ideal(alpha)
    components = right_action_components(m, alpha)
    for e in m.elements():
        image = {m.mul(e, x) for x in ideal}
        if len(image) == 1:
            return Verdict.yes(
                collapser=e,
                ideal=list(ideal),
                components=len(components),
                exhaustive=True,
            )
    # No collapser: exhibit an inseparable pair as the certificate.
    for x, y in itertools.combinations(ideal, 2):
        if not any(m.mul(e, x) == m.mul(e, y) for e in m.elements()):
            return Verdict.no(
                pair=(x, y),
                ideal=list(ideal),
                components=len(components),
                exhaustive=True,
            )
    # Pairwise equalizable but no single collapser cannot happen in a finite
    # monoid (compose equalizers); guard against table corruption anyway.
    raise AssertionError("pairwise-equalizable ideal without a collapser")


def has_ramsey_property(m: FiniteMonoid) -> bool:
    """True iff every pair is left-equalizable (identity is a Ramsey arrow)."""
    return satisfies_LE(m, m.unit)


def has_weak_ramsey_property(m: FiniteMonoid) -> Verdict:
    for alpha in m.elements():
        v = is_ramsey_element(m, alpha)
        if v.is_yes:
            return Verdict.yes(ramsey_element=alpha, exhaustive=True)
    return Verdict.no(
        reason="no element is a Ramsey arrow",
        elements_checked=m.order,
        exhaustive=True,
    )


@dataclass(frozen=True)
class AbsorptionRelation:
    """Pairs (x, y) with x == x*y, i.e. x absorbs y on the left."""

    order: int
    pairs: frozenset[tuple[int, int]]
    unit: int = 0

    def geq(self, x: int, y: int) -> bool:
        return (x, y) in self.pairs

    def violations(self) -> list[str]:
        out = []
        for (x, y) in self.pairs:
            for (y2, z) in self.pairs:
                if y2 == y and (x, z) not in self.pairs:
                    out.append(f"transitivity fails: {x}>={y}>={z}")
        if any((self.unit, y) in self.pairs and y != self.unit for y in range(self.order)):
            out.append("unit absorbs a non-unit")
        if not all((x, self.unit) in self.pairs for x in range(self.order)):
            out.append("unit is not a minimum")
        return out


def absorption_relation(m: FiniteMonoid) -> AbsorptionRelation:
    pairs = frozenset(
        (x, y)
        for x in m.elements()
        for y in m.elements()
        if m.mul(x, y) == x
    )
    return AbsorptionRelation(m.order, pairs, m.unit)


def classify_monoid(m: FiniteMonoid) -> dict[str, bool]:
    els = list(m.elements())
    idempotent = all(m.mul(x, x) == x for x in els)
    commutative = all(m.mul(x, y) == m.mul(y, x) for x in els for y in els)
    non_unit = [x for x in els if x != m.unit]
    left_zero = all(m.mul(x, y) == x for x in non_unit for y in non_unit)
    right_zero = all(m.mul(x, y) == y for x in non_unit for y in non_unit)
    left_cancellative = all(
        len({m.mul(x, y) for y in els}) == m.order for x in els
    )
    return {
        "idempotent": idempotent,
        "commutative": commutative,
        "semilattice": idempotent and commutative,
        "left_zero": left_zero and bool(non_unit),
        "right_zero": right_zero and bool(non_unit),
        "left_cancellative": left_cancellative,
    }


# ---------------------------------------------------------------------------
# Enumeration of finite monoids


def _unit_fixed_tables(n: int):
    """Yield all associative unit-at-0 tables of order n (labeled)."""
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    table: list[list[int | None]] = [[None] * n for _ in range(n)]
    for j in range(n):
        table[0][j] = j
    for i in range(n):
        table[i][0] = i

    def partial_assoc_ok() -> bool:
        # Check every triple whose four lookups touch only decided cells.
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                if ab is None:
                    continue
                for c in range(n):
                    bc = table[b][c]
                    if bc is None:
                        continue
                    left = table[ab][c]
                    right = table[a][bc]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def fill(idx: int):
        if idx == len(cells):
            yield tuple(tuple(row) for row in table)  # type: ignore[misc]
            return
        i, j = cells[idx]
        for v in range(n):
            table[i][j] = v
            if partial_assoc_ok():
                yield from fill(idx + 1)
        table[i][j] = None

    yield from fill(0)


def canonical_table(table: tuple[tuple[int, ...], ...], unit: int = 0) -> tuple[tuple[int, ...], ...]:
    """Minimal relabeling of the table over permutations fixing the unit."""
    n = len(table)
    others = [x for x in range(n) if x != unit]
    best = None
    for perm in itertools.permutations(others):
        relabel = {unit: unit}
        for old, new in zip(others, perm):
            relabel[old] = new
        inv = {v: k for k, v in relabel.items()}
        cand = tuple(
            tuple(relabel[table[inv[i]][inv[j]]] for j in range(n)) for i in range(n)
        )
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def enumerate_monoids(n: int):
    """All monoids of order n up to isomorphism, in canonical table order."""
    if not (1 <= n <= 4):
        raise InputError("monoid enumeration supported for 1 <= n <= 4")
    seen: set[tuple[tuple[int, ...], ...]] = set()
    for table in _unit_fixed_tables(n):
        canon = canonical_table(table)
        if canon not in seen:
            seen.add(canon)
    for canon in sorted(seen):
        yield FiniteMonoid(canon, 0)


def random_monoids(order: int, count: int, seed: int) -> list[FiniteMonoid]:
    """Sample `count` associative unit-fixed tables of the given order.

    Valid tables are enumerated once and sampled with replacement; this is
    equivalent to rejection sampling of uniform random tables conditioned on
    associativity, without the rejection cost.
    """
    if not (1 <= order <= 4):
        raise InputError("random monoid sampling supported for 1 <= order <= 4")
    pool = [t for t in _unit_fixed_tables(order)]
    rng = random.Random(seed)
    return [FiniteMonoid(pool[rng.randrange(len(pool))], 0) for _ in range(count)]


# ---------------------------------------------------------------------------
# Word monoids


@dataclass(frozen=True)
class Word:
    """An element of a free monoid, optionally behind a right zero.

    `tail` is the part of the word to the right of the last zero symbol
    (everything to its left is discarded by the multiplication rule).
    """

    has_zero: bool
    tail: tuple[int, ...]

    def __str__(self) -> str:
        body = "".join(f"x{i}" for i in self.tail)
        return ("0" + body) if self.has_zero else (body or "1")


@dataclass(frozen=True)
class WordMonoid:
    """Free monoid on `generators`, with a right zero freely added if asked.

    Multiplication is concatenation, discarding everything to the left of an
    occurrence of the zero symbol.  LE and Ramsey questions are decided by
    per-family structural arguments (length invariants, zero absorption),
    never by unbounded search.
    """

    generators: tuple[str, ...]
    right_zero: bool = False

    def unit(self) -> Word:
        return Word(False, ())

    def generator(self, i: int) -> Word:
        if not (0 <= i < len(self.generators)):
            raise InputError("generator index out of range")
        return Word(False, (i,))

    def zero(self) -> Word:
        if not self.right_zero:
            raise InputError("this word monoid has no right zero")
        return Word(True, ())

    def mul(self, u: Word, v: Word) -> Word:
        if v.has_zero:
            return v
        return Word(u.has_zero, u.tail + v.tail)

    def satisfies_LE(self, alpha: Word) -> bool:
        if alpha.has_zero:
            return True  # M*alpha == {alpha}
        if not self.generators:
            return True  # M is trivial or {1, 0}; a zero collapses everything
        # e*(x*alpha) and e*alpha differ in length for every e.
        return False

    def is_ramsey_element(self, alpha: Word) -> Verdict:
        if self.satisfies_LE(alpha):
            return Verdict.yes(reason="LE holds", exhaustive=True)
        return Verdict.no(
            certificate={
                "kind": "parity-coloring",
                "generator": self.generators[0],
                "note": "color by parity of generator occurrences; "
                "e*x*alpha and e*alpha always get different colors",
            },
            exhaustive=True,
        )

    def has_weak_ramsey_property(self) -> Verdict:
        if self.right_zero:
            return Verdict.yes(ramsey_element=str(self.zero()), exhaustive=True)
        if not self.generators:
            return Verdict.yes(ramsey_element=str(self.unit()), exhaustive=True)
        return self.is_ramsey_element(self.unit())

    def has_ramsey_property(self) -> Verdict:
        return self.is_ramsey_element(self.unit())
