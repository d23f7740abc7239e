"""Finite lexicographic trees with splitting degrees in M.

A LexTree stores node ids 0..n-1, a parent map (single root unless empty),
per-node ordered child lists (the lexicographic order restricted to sibling
classes), and optional decided splitting labels on terminal nodes.  Levels
are never stored: a finite tree admits a unique level structure, namely
depth.  The global lexicographic order is the preorder induced by the child
lists (bottom-to-top, left-to-right).

Non-terminal nodes are implicitly decided by their actual splitting degree;
the `decided` field is normalized to None there and carries labels only on
terminal nodes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from ..verdicts import InputError

TW = "tw"  # plain trees, no decided terminals
TC = "tc"  # decided terminals allowed
TA = "ta"  # all terminals decided

VARIANTS = (TW, TC, TA)


@dataclass(frozen=True, eq=False)
class LexTree:
    m_set: frozenset[int]
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    decided: tuple[int | None, ...]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, LexTree):
            return NotImplemented
        return (
            hash(self) == hash(other)
            and self.parent == other.parent
            and self.children == other.children
            and self.decided == other.decided
            and self.m_set == other.m_set
        )

    def __hash__(self) -> int:
        # trees are hammered as cache keys; hash once
        try:
            return object.__getattribute__(self, "_hash")
        except AttributeError:
            h = hash((self.m_set, self.parent, self.children, self.decided))
            object.__setattr__(self, "_hash", h)
            return h

    @property
    def n_nodes(self) -> int:
        return len(self.parent)

    def nodes(self) -> range:
        return range(self.n_nodes)

    @property
    def root(self) -> int | None:
        for v in self.nodes():
            if self.parent[v] is None:
                return v
        return None

    def is_terminal(self, v: int) -> bool:
        return not self.children[v]

    def spl(self, v: int) -> int:
        return len(self.children[v])

    def effective_decided(self, v: int) -> int | None:
        """The splitting degree the node is committed to, if any."""
        if not self.is_terminal(v):
            return self.spl(v)
        return self.decided[v]

    def depth(self, v: int) -> int:
        d = 0
        p = self.parent[v]
        while p is not None:
            d += 1
            p = self.parent[p]
        return d

    def depths(self) -> tuple[int, ...]:
        out = [0] * self.n_nodes
        for v in self.preorder():
            p = self.parent[v]
            out[v] = 0 if p is None else out[p] + 1
        return tuple(out)

    def height(self) -> int:
        """Number of levels (0 for the empty tree)."""
        if self.n_nodes == 0:
            return 0
        return max(self.depths()) + 1

    def preorder(self) -> tuple[int, ...]:
        if self.n_nodes == 0:
            return ()
        out: list[int] = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)  # type: ignore[arg-type]
            stack.extend(reversed(self.children[v]))  # type: ignore[index]
        return tuple(out)

    def lex_position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.preorder())}

    def ancestors(self, v: int) -> list[int]:
        """Strict ancestors, nearest first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def leq(self, x: int, y: int) -> bool:
        return x == y or x in self.ancestors(y)

    def meet(self, x: int, y: int) -> int:
        up = {x, *self.ancestors(x)}
        if y in up:
            return y
        for a in self.ancestors(y):
            if a in up:
                return a
        raise InputError("nodes in different components")

    def terminals(self) -> tuple[int, ...]:
        return tuple(v for v in self.nodes() if self.is_terminal(v))

    def level_nodes(self) -> dict[int, tuple[int, ...]]:
        """Nodes grouped by depth, each group in lex order."""
        depths = self.depths()
        order = self.preorder()
        out: dict[int, list[int]] = {}
        for v in order:
            out.setdefault(depths[v], []).append(v)
        return {d: tuple(vs) for d, vs in out.items()}

    def is_balanced(self) -> bool:
        if self.n_nodes == 0:
            return True
        depths = self.depths()
        top = max(depths)
        return all(depths[t] == top for t in self.terminals())

    def canonical_key(self) -> tuple:
        """Recursive encoding; equal keys == isomorphic as labeled lex trees.

        Terminal labels encode as 0 for undecided, m for decided (m >= 1),
        so keys are totally ordered.
        """

        def key(v: int) -> tuple:
            if self.is_terminal(v):
                return (self.decided[v] or 0, ())
            return (self.spl(v), tuple(key(c) for c in self.children[v]))

        r = self.root
        return (tuple(sorted(self.m_set)), key(r) if r is not None else ())


def empty_tree(m_set) -> LexTree:
    return LexTree(frozenset(m_set), (), (), ())


def singleton_tree(m_set, decided: int | None = None) -> LexTree:
    return LexTree(frozenset(m_set), (None,), ((),), (decided,))


def tree_from_nested(m_set, nested) -> LexTree:
    """Build from (decided, [children...]) nests; ids in preorder."""
    parent: list[int | None] = []
    children: list[list[int]] = []
    decided: list[int | None] = []

    def walk(node, par: int | None) -> int:
        label, kids = node
        vid = len(parent)
        parent.append(par)
        children.append([])
        decided.append(label if not kids else None)
        for kid in kids:
            cid = walk(kid, vid)
            children[vid].append(cid)
        return vid

    if nested is not None:
        walk(nested, None)
    return LexTree(
        frozenset(m_set),
        tuple(parent),
        tuple(tuple(c) for c in children),
        tuple(decided),
    )


def tree_violations(t: LexTree, variant: str = TC) -> list[str]:
    """Every LexTree invariant, each violation naming the node and rule."""
    out: list[str] = []
    if variant not in VARIANTS:
        return [f"unknown variant {variant!r}"]
    if not all(isinstance(m, int) and m >= 1 for m in t.m_set):
        out.append("m_set must contain positive integers")
    n = t.n_nodes
    if len(t.children) != n or len(t.decided) != n:
        return out + ["field lengths disagree"]
    roots = [v for v in range(n) if t.parent[v] is None]
    if n > 0 and len(roots) != 1:
        out.append(f"expected one root, found {len(roots)}")
        return out
    seen_child: set[int] = set()
    for v in range(n):
        for c in t.children[v]:
            if not (0 <= c < n) or t.parent[c] != v:
                out.append(f"node {v}: child list inconsistent with parent map")
            if c in seen_child:
                out.append(f"node {c}: appears as a child twice")
            seen_child.add(c)
    for v in range(n):
        if t.parent[v] is not None and v not in seen_child:
            out.append(f"node {v}: parent set but not listed as a child")
    if out:
        return out
    # reachability / acyclicity
    if n > 0 and len(t.preorder()) != n:
        return out + ["parent map is not a rooted tree"]
    for v in range(n):
        if not t.is_terminal(v):
            if t.spl(v) not in t.m_set:
                out.append(f"node {v}: splitting degree {t.spl(v)} not in M")
            if t.decided[v] is not None and t.decided[v] != t.spl(v):
                out.append(f"node {v}: stored decided label contradicts splitting")
        else:
            d = t.decided[v]
            if d is not None and d not in t.m_set:
                out.append(f"node {v}: decided degree {d} not in M")
            if variant == TW and d is not None:
                out.append(f"node {v}: decided terminal not allowed in tw")
            if variant == TA and d is None:
                out.append(f"node {v}: undecided terminal not allowed in ta")
    return out


def validate(t: LexTree, variant: str = TC) -> None:
    bad = tree_violations(t, variant)
    if bad:
        raise InputError("; ".join(bad))


def canonicalize(t: LexTree) -> tuple[LexTree, dict[int, int]]:
    """Relabel ids to preorder positions; canonical trees have preorder 0..n-1."""
    order = t.preorder()
    relabel = {v: i for i, v in enumerate(order)}
    parent = tuple(
        None if t.parent[v] is None else relabel[t.parent[v]] for v in order
    )
    children = tuple(tuple(relabel[c] for c in t.children[v]) for v in order)
    decided = tuple(t.decided[v] for v in order)
    return LexTree(t.m_set, parent, children, decided), relabel


def is_canonical(t: LexTree) -> bool:
    return t.preorder() == tuple(range(t.n_nodes))


# ---------------------------------------------------------------------------
# Morphisms


@dataclass(frozen=True)
class TreeMorphism:
    source: LexTree
    target: LexTree
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != self.source.n_nodes:
            raise InputError("morphism arity mismatch")
        if any(not (0 <= v < self.target.n_nodes) for v in self.mapping):
            raise InputError("morphism image out of range")

    def apply(self, v: int) -> int:
        return self.mapping[v]

    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def compose(self, other: "TreeMorphism") -> "TreeMorphism":
        """self after other (other first)."""
        if other.target is not self.source and other.target != self.source:
            raise InputError("morphisms not composable")
        return TreeMorphism(
            other.source,
            self.target,
            tuple(self.mapping[v] for v in other.mapping),
        )


def identity_morphism(t: LexTree) -> TreeMorphism:
    return TreeMorphism(t, t, tuple(range(t.n_nodes)))


def morphism_violations(
    f: TreeMorphism, *, leveled: bool = True, variant: str = TW
) -> list[str]:
    """Check injectivity, meets, splitting, labels, lex, and (optionally) levels."""
    s, t = f.source, f.target
    out: list[str] = []
    if len(set(f.mapping)) != len(f.mapping):
        out.append("not injective")
        return out
    if s.n_nodes == 0:
        return out
    for x, y in itertools.combinations(range(s.n_nodes), 2):
        if f.mapping[s.meet(x, y)] != t.meet(f.mapping[x], f.mapping[y]):
            out.append(f"meet of ({x},{y}) not preserved")
    for v in s.nodes():
        if not s.is_terminal(v) and t.spl(f.mapping[v]) != s.spl(v):
            out.append(f"splitting degree at node {v} not preserved")
    if variant in (TC, TA):
        for v in s.nodes():
            d = s.effective_decided(v)
            if d is not None and t.effective_decided(f.mapping[v]) != d:
                out.append(f"decided degree at node {v} not preserved")
    # lexicographic order: mapping must be increasing on preorder positions
    spos = s.lex_position()
    tpos = t.lex_position()
    ordered = sorted(s.nodes(), key=lambda v: spos[v])
    for a, b in zip(ordered, ordered[1:]):
        if not tpos[f.mapping[a]] < tpos[f.mapping[b]]:
            out.append(f"lex order broken between nodes {a} and {b}")
    if leveled:
        sd, td = s.depths(), t.depths()
        level_map: dict[int, int] = {}
        for v in s.nodes():
            want = td[f.mapping[v]]
            if level_map.setdefault(sd[v], want) != want:
                out.append(f"level of node {v} inconsistent")
        lv = sorted(level_map.items())
        for (d1, e1), (d2, e2) in zip(lv, lv[1:]):
            if not e1 < e2:
                out.append(f"level order broken between source levels {d1} and {d2}")
    return out


def is_valid_morphism(f: TreeMorphism, *, leveled: bool = True, variant: str = TW) -> bool:
    return not morphism_violations(f, leveled=leveled, variant=variant)


# ---------------------------------------------------------------------------
# Embedding enumeration


def enumerate_embeddings(
    s: LexTree, t: LexTree, *, leveled: bool = True, variant: str = TW
) -> list[TreeMorphism]:
    """All morphisms s -> t under the given flags, in canonical order.

    Backtracks over s-nodes in preorder.  A child of an assigned node must
    land in the matching lexicographic class above its parent's image, which
    forces meet and lex preservation by construction; levels are maintained
    as a strictly increasing partial map of depths.
    """
    if s.n_nodes == 0:
        return [TreeMorphism(s, t, ())]
    if t.n_nodes == 0 or s.n_nodes > t.n_nodes:
        return []
    if leveled and s.height() > t.height():
        return []

    sorder = s.preorder()
    sdep, tdep = s.depths(), t.depths()
    tpre = t.preorder()

    # subtree node lists in preorder, for candidate generation
    @lru_cache(maxsize=None)
    def subtree_nodes(v: int) -> tuple[int, ...]:
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(t.children[u]))
        return tuple(out)

    def node_ok(sv: int, tv: int) -> bool:
        if not s.is_terminal(sv):
            if t.spl(tv) != s.spl(sv):
                return False
        if variant in (TC, TA):
            d = s.effective_decided(sv)
            if d is not None and t.effective_decided(tv) != d:
                return False
        return True

    child_index = {}
    for v in s.nodes():
        for j, c in enumerate(s.children[v]):
            child_index[c] = j

    mapping: dict[int, int] = {}
    level_map: dict[int, int] = {}
    results: list[TreeMorphism] = []

    def level_ok(sv: int, tv: int) -> bool:
        if not leveled:
            return True
        d, e = sdep[sv], tdep[tv]
        if d in level_map:
            return level_map[d] == e
        return all((d2 < d) == (e2 < e) for d2, e2 in level_map.items())

    def assign(pos: int) -> None:
        if pos == len(sorder):
            results.append(
                TreeMorphism(s, t, tuple(mapping[v] for v in s.nodes()))
            )
            return
        sv = sorder[pos]
        par = s.parent[sv]
        if par is None:
            candidates = tpre
        else:
            ip = mapping[par]
            j = child_index[sv]
            candidates = subtree_nodes(t.children[ip][j])
        for tv in candidates:
            if not node_ok(sv, tv) or not level_ok(sv, tv):
                continue
            mapping[sv] = tv
            added = leveled and sdep[sv] not in level_map
            if added:
                level_map[sdep[sv]] = tdep[tv]
            assign(pos + 1)
            del mapping[sv]
            if added:
                del level_map[sdep[sv]]

    assign(0)
    results.sort(key=lambda m: m.mapping)
    return results
