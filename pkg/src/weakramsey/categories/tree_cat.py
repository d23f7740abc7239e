"""Categories of finite lexicographic strong trees.

Objects are canonical trees with splitting degrees in M; arrows are the
embeddings of the chosen variant (tw / tc / ta), leveled or leveless.  The
backend hooks implement the span dichotomy behind the amalgamation theorem:
a span is either locally obstructed (clashing committed degrees at a source
node, sound at any size) or constructively equalized by the amalgamation
construction, whose output is re-validated per pair.  The closed-form
amalgamability formula lives in `is_amalgamable_tree_arrow` and is never
consulted by these hooks, so closed-form-versus-search comparisons stay
two-route.
"""
from __future__ import annotations

from ..trees.amalgam import IncompatibleExtensions, amalgamate, nodes_of_incompatibility
from ..trees.build import join_trees
from ..trees.core import (
    TA,
    TC,
    TW,
    LexTree,
    TreeMorphism,
    enumerate_embeddings,
)
from ..trees.gen import enumerate_trees
from ..verdicts import InputError
from .base import Arrow, EnumerableCategory


class TreeCategory(EnumerableCategory):
    def __init__(
        self,
        m_set,
        variant: str = TW,
        leveled: bool = True,
        max_size: int | None = None,
        object_filter=None,
    ):
        super().__init__()
        self.m_set = frozenset(m_set)
        self.variant = variant
        self.leveled = leveled
        self.size_bound = max_size
        self.object_filter = object_filter
        self.probe_margin = max(self.m_set)
        lv = "" if leveled else "-leveless"
        self.name = f"trees-{variant}{lv}(M={sorted(self.m_set)})"
        self._objects_cache: dict[int, list] = {}

    def objects(self, max_size: int) -> list:
        cap = max_size if self.size_bound is None else min(max_size, self.size_bound)
        if cap not in self._objects_cache:
            objs = enumerate_trees(self.m_set, cap, self.variant, include_empty=True)
            if self.object_filter is not None:
                objs = [t for t in objs if self.object_filter(t)]
            self._objects_cache[cap] = objs
        return self._objects_cache[cap]

    def size(self, obj: LexTree) -> int:
        return obj.n_nodes

    def sort_key(self, obj: LexTree) -> tuple:
        return (obj.n_nodes, obj.canonical_key())

    def _hom(self, a: LexTree, b: LexTree) -> tuple[Arrow, ...]:
        embs = enumerate_embeddings(a, b, leveled=self.leveled, variant=self.variant)
        return tuple(Arrow(a, b, m.mapping) for m in embs)

    def identity(self, a: LexTree) -> Arrow:
        return Arrow(a, a, tuple(range(a.n_nodes)))

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return Arrow(f.dom, g.cod, tuple(g.data[v] for v in f.data))

    def _morph(self, f: Arrow) -> TreeMorphism:
        return TreeMorphism(f.dom, f.cod, f.data)

    def cocone_obstruction(self, p: Arrow, q: Arrow):
        """Clashing committed degrees at a shared source node block every
        cocone: embeddings preserve committed degrees."""
        bad = nodes_of_incompatibility(self._morph(p), self._morph(q))
        if bad:
            return {
                "nodes_of_incompatibility": list(bad),
                "degrees": [
                    [
                        p.cod.effective_decided(p.data[v]),
                        q.cod.effective_decided(q.data[v]),
                    ]
                    for v in bad
                ],
            }
        return None

    def span_signature(self, p: Arrow):
        return tuple(
            p.cod.effective_decided(p.data[v]) or 0 for v in p.dom.nodes()
        )

    def equalize(self, p: Arrow, q: Arrow):
        try:
            am = amalgamate(
                self._morph(p), self._morph(q), self.variant, leveled=self.leveled
            )
        except IncompatibleExtensions:
            return None
        w = am.tree
        if self.size_bound is not None and w.n_nodes > self.size_bound:
            return None
        if self.object_filter is not None and not self.object_filter(w):
            return None
        return w, Arrow(p.cod, w, am.leg1.mapping), Arrow(q.cod, w, am.leg2.mapping)

    def join(self, x: LexTree, y: LexTree):
        z, e1, e2 = join_trees(x, y, self.variant)
        if self.size_bound is not None and z.n_nodes > self.size_bound:
            return None
        if self.object_filter is not None and not self.object_filter(z):
            return None
        return z, Arrow(x, z, e1.mapping), Arrow(y, z, e2.mapping)

    def cofinal_candidates(self, x: LexTree) -> list:
        """Constructive cofinal moves: decide all undecided terminals, or
        plant a bush of the promised degree at every decided terminal."""
        out = []
        if x.n_nodes == 0:
            return out
        m0 = min(self.m_set)
        decided = list(x.decided)
        changed = False
        for v in x.terminals():
            if decided[v] is None:
                decided[v] = m0
                changed = True
        if changed and self.variant in (TC, TA):
            y = LexTree(x.m_set, x.parent, x.children, tuple(decided))
            out.append((y, Arrow(x, y, tuple(range(x.n_nodes)))))
        planted = [v for v in x.terminals() if x.decided[v] is not None]
        if planted:
            from ..trees.build import terminal_plant
            from ..trees.core import tree_from_nested

            cur = x
            mapping = list(range(x.n_nodes))
            for v in planted:
                bush = tree_from_nested(
                    x.m_set,
                    (None, tuple((None, ()) for _ in range(x.decided[v]))),
                )
                res = terminal_plant(cur, mapping[v], bush, TW)
                mapping = [res.base.mapping[i] for i in mapping]
                cur = res.tree
            out.append((cur, Arrow(x, cur, tuple(mapping))))
        return out

    def describe_object(self, x: LexTree):
        from ..jsonio import tree_to_json

        return tree_to_json(x)

    def describe_arrow(self, f: Arrow):
        return {"map": list(f.data), "dom_nodes": f.dom.n_nodes, "cod_nodes": f.cod.n_nodes}


def is_amalgamable_tree_arrow(f: TreeMorphism, variant: str = TW) -> bool:
    """Closed form for amalgamability of a tree-category arrow.

    With a single allowed degree every arrow is amalgamable (deciding is
    forced, so every pair of extensions is compatible).  Otherwise an arrow
    is amalgamable exactly when no source node's image is an undecided
    terminal: such an image could still be decided two different ways.
    """
    if variant not in (TW, TC, TA):
        raise InputError(f"unknown variant {variant!r}")
    m_set = f.source.m_set
    if len(m_set) == 1:
        return True
    if variant == TA:
        return True
    t = f.target
    for v in f.source.nodes():
        if t.effective_decided(f.mapping[v]) is None:
            return False
    return True
