"""A finite monoid viewed as a one-object category.

Arrows are the monoid elements; composition is the multiplication (g after f
is g*f).  The category is finite, so every generic search is exact here; the
closed-form Ramsey criterion from the monoids module can optionally be wired
in as the backend verdict.
"""
from __future__ import annotations

from ..monoids import FiniteMonoid, is_ramsey_element
from ..verdicts import Verdict
from .base import Arrow, EnumerableCategory

POINT = 0  # the single object handle


class OneObjectCategory(EnumerableCategory):
    size_bound = 1
    probe_margin = 0

    def __init__(self, monoid: FiniteMonoid, closed_forms: bool = True):
        super().__init__()
        self.monoid = monoid
        self.closed_forms = closed_forms
        self.name = f"monoid({monoid.order})"

    def objects(self, max_size: int) -> list:
        return [POINT] if max_size >= 1 else []

    def size(self, obj) -> int:
        return 1

    def sort_key(self, obj) -> tuple:
        return (0,)

    def _hom(self, a, b) -> tuple[Arrow, ...]:
        return tuple(Arrow(POINT, POINT, (e,)) for e in self.monoid.elements())

    def identity(self, a) -> Arrow:
        return Arrow(POINT, POINT, (self.monoid.unit,))

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return Arrow(POINT, POINT, (self.monoid.mul(g.data[0], f.data[0]),))

    def span_signature(self, p: Arrow):
        return ()

    def element_arrow(self, e: int) -> Arrow:
        return Arrow(POINT, POINT, (e,))

    def ramsey_closed_form(self, alpha: Arrow) -> Verdict | None:
        if not self.closed_forms:
            return None
        return is_ramsey_element(self.monoid, alpha.data[0])

    def describe_object(self, x):
        return "*"

    def describe_arrow(self, f: Arrow):
        return {"element": f.data[0]}
