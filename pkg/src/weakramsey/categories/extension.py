"""The arrow extension of a category.

Objects are the base arrows alpha: a -> a'; an arrow alpha -> beta is a base
arrow dom(alpha) -> dom(beta) factorizing through alpha, plus identities.
The object grade is size(dom) + size(cod).  Amalgamable and Ramsey arrows of
the base become amalgamable and Ramsey objects here.

The cocone hooks reduce to the base: a span (p: alpha -> beta, q: alpha ->
gamma) equalizes through factorizing legs iff the base span (beta.p,
gamma.q) equalizes, and through an identity leg iff one composite already
reaches the other (a finite hom scan), so an obstruction is certified only
when all three routes are closed.
"""
from __future__ import annotations

from .base import Arrow, EnumerableCategory


class ArrowExtensionCategory(EnumerableCategory):
    def __init__(self, base: EnumerableCategory, max_part_size: int | None = None):
        super().__init__()
        self.base = base
        self.probe_margin = base.probe_margin
        self.max_part_size = max_part_size
        self.size_bound = None if base.size_bound is None else 2 * base.size_bound
        if max_part_size is not None:
            cap = 2 * max_part_size
            self.size_bound = cap if self.size_bound is None else min(cap, self.size_bound)
        self.name = f"arrows({base.name})"
        self._objects_cache: dict[int, list] = {}
        self._factor_cache: dict = {}

    # objects are base Arrows
    def objects(self, max_size: int) -> list:
        cap = max_size if self.size_bound is None else min(max_size, self.size_bound)
        if cap in self._objects_cache:
            return self._objects_cache[cap]
        part_cap = cap if self.max_part_size is None else min(cap, self.max_part_size)
        base_objs = self.base.objects(part_cap)
        out = []
        for a in base_objs:
            for a2 in base_objs:
                if self.base.size(a) + self.base.size(a2) > cap:
                    continue
                out.extend(self.base.hom(a, a2))
        out.sort(
            key=lambda f: (
                self.base.size(f.dom) + self.base.size(f.cod),
                self.base.sort_key(f.dom),
                self.base.sort_key(f.cod),
                f.data,
            )
        )
        self._objects_cache[cap] = out
        return out

    def size(self, obj: Arrow) -> int:
        return self.base.size(obj.dom) + self.base.size(obj.cod)

    def sort_key(self, obj: Arrow) -> tuple:
        return (
            self.base.sort_key(obj.dom),
            self.base.sort_key(obj.cod),
            obj.data,
        )

    def _factor_data(self, alpha: Arrow, b) -> tuple[tuple[int, ...], ...]:
        """Data tuples of the composites h . alpha for h out of cod(alpha)."""
        key = (alpha, b)
        cached = self._factor_cache.get(key)
        if cached is None:
            base = self.base
            seen = dict.fromkeys(
                base.compose(h, alpha).data for h in base.hom(alpha.cod, b)
            )
            cached = tuple(seen)
            self._factor_cache[key] = cached
        return cached

    def _hom_data(self, alpha: Arrow, beta: Arrow) -> tuple[tuple[int, ...], ...]:
        data = self._factor_data(alpha, beta.dom)
        if alpha == beta:
            ident = self.base.identity(alpha.dom).data
            if ident not in data:
                data = data + (ident,)
        return data

    def _hom(self, alpha: Arrow, beta: Arrow) -> tuple[Arrow, ...]:
        return tuple(Arrow(alpha, beta, d) for d in self._hom_data(alpha, beta))

    def hom_through(self, alpha: Arrow, b) -> tuple[Arrow, ...]:
        """Composites computed on raw data tuples; spans are built once.

        Bypasses the generic hom cache: span enumeration touches every
        object once per query, so caching would only burn memory.
        """
        if alpha.dom == alpha.cod and alpha.data == self.identity(alpha.dom).data:
            data = sorted(self._hom_data(alpha.dom, b))
        else:
            data = sorted(
                dict.fromkeys(
                    tuple(hd[v] for v in alpha.data)
                    for hd in self._hom_data(alpha.cod, b)
                )
            )
        return tuple(Arrow(alpha.dom, b, d) for d in data)

    def span_signature(self, p: Arrow):
        beta = p.cod
        through = tuple(beta.data[v] for v in p.data)
        return self.base.span_signature(Arrow(p.dom.dom, beta.cod, through))

    def spans_through(self, alpha: Arrow, objs) -> list[Arrow]:
        """Factorization data depends only on each object's domain, so it is
        computed once per distinct domain and fanned out over the objects."""
        a_obj = alpha.dom  # the source object, itself a base arrow
        ident = (
            alpha.dom == alpha.cod
            and alpha.data == self.base.identity(a_obj.dom).data
        )
        per_dom: dict = {}
        out: list[Arrow] = []
        for beta in objs:
            data = per_dom.get(beta.dom)
            if data is None:
                if ident:
                    data = self._factor_data(a_obj, beta.dom)
                else:
                    raw = self._factor_data(alpha.cod, beta.dom)
                    data = tuple(
                        sorted(
                            dict.fromkeys(
                                tuple(hd[v] for v in alpha.data) for hd in raw
                            )
                        )
                    )
                per_dom[beta.dom] = data
            if alpha.cod == beta:
                # the identity arrow of beta contributes the composite alpha
                extra = alpha.data
                if extra not in data:
                    out.extend(Arrow(a_obj, beta, d) for d in data)
                    out.append(Arrow(a_obj, beta, extra))
                    continue
            out.extend(Arrow(a_obj, beta, d) for d in data)
        return out

    def identity(self, alpha: Arrow) -> Arrow:
        return Arrow(alpha, alpha, self.base.identity(alpha.dom).data)

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        base_g = Arrow(f.cod.dom, g.cod.dom, g.data)
        base_f = Arrow(f.dom.dom, f.cod.dom, f.data)
        return Arrow(f.dom, g.cod, self.base.compose(base_g, base_f).data)

    # -- hooks reduced to the base ------------------------------------------

    def _base_leg(self, p: Arrow) -> Arrow:
        """p as the base arrow dom(alpha) -> dom(beta)."""
        return Arrow(p.dom.dom, p.cod.dom, p.data)

    def _through_cod(self, p: Arrow) -> Arrow:
        """beta . p as a base arrow dom(alpha) -> cod(beta)."""
        beta = p.cod
        return self.base.compose(beta, self._base_leg(p))

    def _identity_leg_reaches(self, p: Arrow, q: Arrow) -> bool:
        """Is there g': q.cod -> p.cod in this category with g'.q == p?"""
        for g2 in self.hom(q.cod, p.cod):
            if self.compose(g2, q).data == p.data:
                return True
        return False

    def cocone_obstruction(self, p: Arrow, q: Arrow):
        # A base obstruction between the through-codomain composites is a
        # clash of committed features preserved by every further arrow, so
        # no identity-leg cocone can rescue the pair either: sound as is.
        base_cert = self.base.cocone_obstruction(self._through_cod(p), self._through_cod(q))
        if base_cert is None:
            return None
        return {"base_span_obstruction": base_cert}


    def equalize(self, p: Arrow, q: Arrow):
        # identity-leg cocones first: w = cod(q) or cod(p)
        for g2 in self.hom(q.cod, p.cod):
            if self.compose(g2, q).data == p.data:
                return p.cod, self.identity(p.cod), g2
        for f2 in self.hom(p.cod, q.cod):
            if self.compose(f2, p).data == q.data:
                return q.cod, f2, self.identity(q.cod)
        got = self.base.equalize(self._through_cod(p), self._through_cod(q))
        if got is None:
            return None
        w, f2, g2 = got
        omega = self.base.identity(w)
        left = self.base.compose(f2, p.cod)  # factors through cod(p) by shape
        right = self.base.compose(g2, q.cod)
        return (
            omega,
            Arrow(p.cod, omega, left.data),
            Arrow(q.cod, omega, right.data),
        )

    def join(self, x: Arrow, y: Arrow):
        got = self.base.join(x.cod, y.cod)
        if got is None:
            return None
        z, e1, e2 = got
        omega = self.base.identity(z)
        return (
            omega,
            Arrow(x, omega, self.base.compose(e1, x).data),
            Arrow(y, omega, self.base.compose(e2, y).data),
        )

    def describe_object(self, x: Arrow):
        return {
            "dom": self.base.describe_object(x.dom),
            "cod": self.base.describe_object(x.cod),
            "arrow": list(x.data),
        }

    def describe_arrow(self, f: Arrow):
        return {
            "from": self.describe_object(f.dom),
            "to": self.describe_object(f.cod),
            "data": list(f.data),
        }
