"""Internal mutable token trees for the extension calculus.

Construction algorithms (planting, surgery, amalgamation) juggle nodes from
several input trees plus fresh nodes.  A TokenTree keys nodes by arbitrary
hashable tokens so that identity is preserved across the whole pipeline; the
final tree is materialized once at the end, and the embeddings of the input
trees are read off the token->id map.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import LexTree


class FreshTokens:
    """Deterministic fresh-token allocator shared across a construction."""

    def __init__(self) -> None:
        self._counter = itertools.count()

    def __call__(self) -> tuple:
        return ("f", next(self._counter))


@dataclass(frozen=True)
class ColumnLayer:
    """One bush of a column: top-node labels (width = len) and the index of
    the node carrying the next layer (for the top layer: the point)."""

    labels: tuple[int | None, ...]
    spine: int

    @property
    def width(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class PointedColumn:
    """Stacked bushes, bottom-up; the top layer's spine is the point slot."""

    layers: tuple[ColumnLayer, ...]

    @property
    def height(self) -> int:
        return len(self.layers)


class TokenTree:
    __slots__ = ("m_set", "parent", "children", "decided")

    def __init__(self, m_set) -> None:
        self.m_set = frozenset(m_set)
        self.parent: dict = {}
        self.children: dict = {}
        self.decided: dict = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_lextree(cls, t: LexTree, tag: str) -> tuple["TokenTree", dict[int, tuple]]:
        tt = cls(t.m_set)
        tok = {v: (tag, v) for v in t.nodes()}
        for v in t.nodes():
            p = t.parent[v]
            tt.parent[tok[v]] = None if p is None else tok[p]
            tt.children[tok[v]] = [tok[c] for c in t.children[v]]
            tt.decided[tok[v]] = t.decided[v]
        return tt, tok

    def clone(self) -> "TokenTree":
        out = TokenTree(self.m_set)
        out.parent = dict(self.parent)
        out.children = {k: list(v) for k, v in self.children.items()}
        out.decided = dict(self.decided)
        return out

    def add_node(self, tok, parent, decided=None, index: int | None = None) -> None:
        self.parent[tok] = parent
        self.children[tok] = []
        self.decided[tok] = decided
        if parent is not None:
            if index is None:
                self.children[parent].append(tok)
            else:
                self.children[parent].insert(index, tok)

    # -- queries ------------------------------------------------------------

    def root(self):
        for tok, p in self.parent.items():
            if p is None:
                return tok
        return None

    def n_nodes(self) -> int:
        return len(self.parent)

    def is_terminal(self, tok) -> bool:
        return not self.children[tok]

    def spl(self, tok) -> int:
        return len(self.children[tok])

    def effective_decided(self, tok):
        if self.children[tok]:
            return len(self.children[tok])
        return self.decided[tok]

    def preorder(self) -> list:
        r = self.root()
        if r is None:
            return []
        out, stack = [], [r]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return out

    def depths(self) -> dict:
        out = {}
        for v in self.preorder():
            p = self.parent[v]
            out[v] = 0 if p is None else out[p] + 1
        return out

    def depth(self, tok) -> int:
        d = 0
        p = self.parent[tok]
        while p is not None:
            d += 1
            p = self.parent[p]
        return d

    def nodes_at_depth(self, d: int) -> list:
        depths = self.depths()
        return [v for v in self.preorder() if depths[v] == d]

    def subtree_tokens(self, tok) -> list:
        out, stack = [], [tok]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return out

    def ancestors(self, tok) -> list:
        out = []
        p = self.parent[tok]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    # -- surgery primitives --------------------------------------------------

    def attach_tail(self, anchor, src: "TokenTree") -> list:
        """Copy src's subtree strictly above `anchor` into self.

        The anchor token must exist in both trees and be terminal in self.
        Returns the list of copied tokens.
        """
        assert not self.children[anchor], "anchor must be terminal"
        copied = []
        for tok in src.subtree_tokens(anchor):
            if tok == anchor:
                self.children[anchor] = list(src.children[anchor])
                if src.decided[anchor] is not None:
                    self.decided[anchor] = src.decided[anchor]
                continue
            self.parent[tok] = src.parent[tok]
            self.children[tok] = list(src.children[tok])
            self.decided[tok] = src.decided[tok]
            copied.append(tok)
        return copied

    def splice_column(self, x, root_tok, layers: list[tuple[list, int]]) -> None:
        """Insert a column below node x; x becomes the top layer's spine node.

        layers: bottom-up list of (ordered top list of (token, decided), spine
        index).  The top layer must have x at its spine index.  Tokens other
        than x are created; x keeps its children and label.
        """
        p = self.parent[x]
        if p is not None:
            idx = self.children[p].index(x)
            self.children[p][idx] = root_tok
        self.parent[root_tok] = p
        self.children[root_tok] = []
        self.decided[root_tok] = None
        carrier = root_tok
        for tops, spine in layers:
            self.children[carrier] = [t for t, _ in tops]
            for t, dec in tops:
                self.parent[t] = carrier
                if t != x:
                    self.children[t] = []
                    self.decided[t] = dec
            carrier = tops[spine][0]
        assert carrier == x, "column top layer must carry the spliced node"

    def splice_level(self, depth: int, plan) -> None:
        """Run plan(x) -> (root_token, layers) for every node at the depth and
        splice the returned column below it.  Column heights must agree."""
        xs = self.nodes_at_depth(depth)
        heights = set()
        specs = [(x, plan(x)) for x in xs]
        for x, (root_tok, layers) in specs:
            heights.add(len(layers))
            self.splice_column(x, root_tok, layers)
        assert len(heights) <= 1, "surgery columns must have uniform height"

    # -- extraction ----------------------------------------------------------

    def to_lextree(self) -> tuple[LexTree, dict]:
        order = self.preorder()
        ids = {tok: i for i, tok in enumerate(order)}
        parent = tuple(
            None if self.parent[tok] is None else ids[self.parent[tok]]
            for tok in order
        )
        children = tuple(
            tuple(ids[c] for c in self.children[tok]) for tok in order
        )
        decided = tuple(
            None if self.children[tok] else self.decided[tok] for tok in order
        )
        return LexTree(self.m_set, parent, children, decided), ids
