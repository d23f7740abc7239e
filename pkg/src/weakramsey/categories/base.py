"""A uniform view of a (possibly infinite) category for bounded searches.

Objects are opaque hashable handles with an integer size grade; arrows are
frozen (dom, cod, data) records with data a tuple of ints, so listings sort
deterministically.  Hom listings are computed once per pair and cached, so
the same order is seen on every call.

Backends may supply three optional hooks the generic searches exploit:
  cocone_obstruction  a certificate, sound at any target size, that a span
                      admits no equalizing cocone;
  equalize            a constructive cocone for a span (re-validated by the
                      caller against the span);
  join                a joint-embedding target for two objects.
They may also supply a closed-form Ramsey verdict for arrows.
"""
from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Any

from ..verdicts import InputError, Verdict


@dataclass(frozen=True, eq=False)
class Arrow:
    dom: Any
    cod: Any
    data: tuple[int, ...]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Arrow):
            return NotImplemented
        return (
            self.data == other.data and self.dom == other.dom and self.cod == other.cod
        )

    def __hash__(self) -> int:
        try:
            return object.__getattribute__(self, "_hash")
        except AttributeError:
            h = hash((self.dom, self.cod, self.data))
            object.__setattr__(self, "_hash", h)
            return h


class EnumerableCategory(abc.ABC):
    size_bound: int | None = None  # no objects above this grade, if set
    name = "category"
    # extra object size beyond a fragment window at which local obstructions
    # to amalgamability become visible among spans
    probe_margin: int = 2

    def __init__(self) -> None:
        self._hom_cache: dict = {}

    # -- required surface ----------------------------------------------------

    @abc.abstractmethod
    def objects(self, max_size: int) -> list:
        """All objects of size <= max_size, in canonical order."""

    @abc.abstractmethod
    def size(self, obj) -> int:
        ...

    @abc.abstractmethod
    def sort_key(self, obj) -> tuple:
        ...

    @abc.abstractmethod
    def _hom(self, a, b) -> tuple[Arrow, ...]:
        ...

    @abc.abstractmethod
    def identity(self, a) -> Arrow:
        ...

    @abc.abstractmethod
    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        """g after f."""

    # -- optional hooks --------------------------------------------------------

    def cocone_obstruction(self, p: Arrow, q: Arrow):
        return None

    def span_signature(self, p: Arrow):
        """Optional: a key determining obstruction behavior; spans sharing a
        signature never obstruct each other, and whether two spans obstruct
        depends only on their signatures.  None disables the shortcut."""
        return None

    def equalize(self, p: Arrow, q: Arrow):
        return None

    def join(self, x, y):
        return None

    def cofinal_candidates(self, x) -> list:
        """Optional constructive targets [(y, arrow x->y)] used by
        cofinality checks when the bounded scan finds nothing."""
        return []

    def ramsey_closed_form(self, alpha: Arrow) -> Verdict | None:
        return None

    def describe_object(self, x) -> Any:
        return repr(x)

    def describe_arrow(self, f: Arrow) -> Any:
        return {
            "dom": self.describe_object(f.dom),
            "cod": self.describe_object(f.cod),
            "data": list(f.data),
        }

    # -- derived ----------------------------------------------------------------

    def hom(self, a, b) -> tuple[Arrow, ...]:
        key = (a, b)
        if key not in self._hom_cache:
            self._hom_cache[key] = tuple(
                sorted(self._hom(a, b), key=lambda f: f.data)
            )
        return self._hom_cache[key]

    def hom_through(self, alpha: Arrow, b) -> tuple[Arrow, ...]:
        """C(alpha, b): the distinct composites h . alpha for h out of cod(alpha)."""
        if alpha.dom == alpha.cod and alpha.data == self.identity(alpha.dom).data:
            return self.hom(alpha.dom, b)
        seen: dict[tuple, Arrow] = {}
        for h in self.hom(alpha.cod, b):
            p = self.compose(h, alpha)
            seen.setdefault(p.data, p)
        return tuple(seen[d] for d in sorted(seen))

    def spans_through(self, alpha: Arrow, objs) -> list[Arrow]:
        """All of C(alpha, x) for x in objs, concatenated in object order.

        Overridable: derived categories with large object universes can
        amortize the factorization work across objects.
        """
        out: list[Arrow] = []
        for x in objs:
            out.extend(self.hom_through(alpha, x))
        return out

    def check_arrow(self, f: Arrow) -> None:
        if f not in self.hom(f.dom, f.cod):
            raise InputError("invalid arrow handle for this category")


class FullSubcategory(EnumerableCategory):
    """The full subcategory on the objects satisfying a predicate.

    Obstruction certificates are inherited (no cocone in the big category
    means none here); constructive equalizers and joins are inherited only
    when their result lands inside the subcategory.
    """

    def __init__(self, base: EnumerableCategory, predicate, name: str | None = None):
        super().__init__()
        self.base = base
        self.predicate = predicate
        self.size_bound = base.size_bound
        self.probe_margin = base.probe_margin
        self.name = name or f"full-sub({base.name})"

    def objects(self, max_size: int) -> list:
        return [x for x in self.base.objects(max_size) if self.predicate(x)]

    def size(self, obj) -> int:
        return self.base.size(obj)

    def sort_key(self, obj) -> tuple:
        return self.base.sort_key(obj)

    def _hom(self, a, b) -> tuple[Arrow, ...]:
        return self.base.hom(a, b)

    def identity(self, a) -> Arrow:
        return self.base.identity(a)

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return self.base.compose(g, f)

    def cocone_obstruction(self, p: Arrow, q: Arrow):
        return self.base.cocone_obstruction(p, q)

    def span_signature(self, p: Arrow):
        return self.base.span_signature(p)

    def equalize(self, p: Arrow, q: Arrow):
        out = self.base.equalize(p, q)
        if out is not None and self.predicate(out[0]):
            return out
        return None

    def join(self, x, y):
        out = self.base.join(x, y)
        if out is not None and self.predicate(out[0]):
            return out
        return None

    def cofinal_candidates(self, x) -> list:
        return self.base.cofinal_candidates(x)

    def describe_object(self, x):
        return self.base.describe_object(x)

    def describe_arrow(self, f: Arrow):
        return self.base.describe_arrow(f)
