"""The extension calculus for lexicographic strong trees.

Terminal planting grafts a tree onto a terminal node; tree surgery splices
pointed bush-columns below a whole level.  Every extension decomposes
canonically into a non-terminal part (surgery data: levels and columns)
followed by a terminal part (planted trees at terminal nodes), and both
directions are implemented here together with level domination (padding a
leveless inclusion until it preserves levels) and joint embeddings.

All constructions return canonical trees plus the morphisms locating the
inputs inside the result.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..verdicts import InputError
from ._tokens import ColumnLayer, FreshTokens, PointedColumn, TokenTree
from .core import (
    TA,
    TC,
    TW,
    LexTree,
    TreeMorphism,
    empty_tree,
)


def fresh_terminal_label(m_set: frozenset[int], variant: str) -> int | None:
    """Label given to brand-new terminal nodes: decided min(M) in ta."""
    return min(m_set) if variant == TA else None


def pointed_bush(width: int, point: int, labels: tuple[int | None, ...] | None = None) -> PointedColumn:
    if labels is None:
        labels = (None,) * width
    if len(labels) != width or not (0 <= point < width):
        raise InputError("malformed pointed bush")
    return PointedColumn((ColumnLayer(labels, point),))


def trivial_column(height: int, width: int, label: int | None) -> PointedColumn:
    """A minimal fresh column: every bush has the given width, spine/point 0."""
    layer = ColumnLayer((None,) + (label,) * (width - 1), 0)
    return PointedColumn((layer,) * height)


# ---------------------------------------------------------------------------
# Induced subtrees and inclusions


def induced_subtree(t: LexTree, node_set, variant: str = TC) -> tuple[LexTree, TreeMorphism]:
    """The sub-LexTree on a node subset with the induced structure.

    Parent = nearest ancestor in the subset; child order inherited from lex.
    In tc/ta the substructure inherits committed degrees: a node that is
    non-terminal in t stays decided with its splitting degree even when it
    becomes terminal in the subset.  In tw no labels exist.

    Raises unless the subset (with induced order) has a single minimal node.
    The inclusion morphism is returned but NOT validated: whether it is a
    strong embedding is exactly what callers may want to test.
    """
    if any(not (0 <= v < t.n_nodes) for v in node_set):
        raise InputError("node subset contains ids outside the tree")
    chosen = sorted(set(node_set), key=t.lex_position().get)
    if not chosen:
        sub = empty_tree(t.m_set)
        return sub, TreeMorphism(sub, t, ())
    chosen_set = set(chosen)
    ids = {v: i for i, v in enumerate(chosen)}
    parent: list[int | None] = [None] * len(chosen)
    children: list[list[int]] = [[] for _ in chosen]
    roots = 0
    for v in chosen:
        anc = next((a for a in t.ancestors(v) if a in chosen_set), None)
        if anc is None:
            roots += 1
            parent[ids[v]] = None
        else:
            parent[ids[v]] = ids[anc]
            children[ids[anc]].append(ids[v])
    if roots != 1:
        raise InputError("subset induces a forest, not a tree")
    decided = tuple(
        (None if variant == TW else t.effective_decided(v))
        if not children[ids[v]]
        else None
        for v in chosen
    )
    sub = LexTree(
        t.m_set,
        tuple(parent),
        tuple(tuple(c) for c in children),
        decided,
    )
    return sub, TreeMorphism(sub, t, tuple(chosen))


def extension_kind(f: TreeMorphism) -> str:
    """terminal | nonterminal | mixed, per the canonical decomposition.

    A trivial extension (no new nodes) reports as terminal.
    """
    img = f.image()
    t = f.target
    new = [v for v in t.nodes() if v not in img]
    if not new:
        return "terminal"
    terminal = all(a in img for v in img for a in t.ancestors(v))
    if terminal:
        return "terminal"

    def under_img(v: int) -> bool:
        return any(v != x and t.leq(v, x) for x in img)

    for v in new:
        if under_img(v):
            continue
        p = t.parent[v]
        if p is not None and p not in img and under_img(p):
            continue
        return "mixed"
    return "nonterminal"


# ---------------------------------------------------------------------------
# Terminal planting


@dataclass(frozen=True)
class PlantResult:
    tree: LexTree
    base: TreeMorphism  # S -> tree
    planted: TreeMorphism  # P -> tree (root onto the planting node)


def terminal_plant(s: LexTree, at: int, p: LexTree, variant: str = TW) -> PlantResult:
    """S with P planted at the terminal node `at` (fresh ids for P's rest)."""
    if s.n_nodes == 0:
        raise InputError("cannot plant on the empty tree")
    if p.n_nodes == 0:
        raise InputError("cannot plant the empty tree")
    if not s.is_terminal(at):
        raise InputError(f"node {at} is not terminal")
    proot = p.root
    want = s.decided[at]
    proot_deg = p.effective_decided(proot)
    if want is not None and proot_deg is not None and proot_deg != want:
        raise InputError(
            f"label clash: node {at} decided {want}, planted root has degree {proot_deg}"
        )
    tt, stok = TokenTree.from_lextree(s, "s")
    ptt, ptok = TokenTree.from_lextree(p, "p")
    # identify P's root with the planting node
    rename = {ptok[proot]: stok[at]}
    ptt2 = TokenTree(p.m_set)
    for tok in ptt.preorder():
        tok2 = rename.get(tok, tok)
        par = ptt.parent[tok]
        ptt2.parent[tok2] = None if par is None else rename.get(par, par)
        ptt2.children[tok2] = [rename.get(c, c) for c in ptt.children[tok]]
        ptt2.decided[tok2] = ptt.decided[tok]
    tt.attach_tail(stok[at], ptt2)
    tree, ids = tt.to_lextree()
    base = TreeMorphism(s, tree, tuple(ids[stok[v]] for v in s.nodes()))
    pmap = []
    for v in p.nodes():
        tok = rename.get(ptok[v], ptok[v])
        pmap.append(ids[tok])
    return PlantResult(tree, base, TreeMorphism(p, tree, tuple(pmap)))


# ---------------------------------------------------------------------------
# Tree surgery


@dataclass(frozen=True)
class SurgeryResult:
    tree: LexTree
    base: TreeMorphism  # S -> tree


def _column_layers(col: PointedColumn, x, fresh: FreshTokens, m_set, point_label_ok=True):
    """Materialize a PointedColumn as splice layers carrying node x at the point."""
    layers = []
    for i, layer in enumerate(col.layers):
        if layer.width not in m_set:
            raise InputError(f"column bush width {layer.width} not in M")
        tops = []
        for j in range(layer.width):
            if i == len(col.layers) - 1 and j == layer.spine:
                tops.append((x, None))
            else:
                tops.append((fresh(), layer.labels[j]))
        layers.append((tops, layer.spine))
    return layers


def tree_surgery(
    s: LexTree, depth: int, columns: dict[int, PointedColumn]
) -> SurgeryResult:
    """Splice pointed columns below every node of the given level."""
    if s.n_nodes == 0:
        raise InputError("cannot perform surgery on the empty tree")
    level = [v for v in s.preorder() if s.depths()[v] == depth]
    if not level:
        raise InputError(f"tree has no level at depth {depth}")
    missing = [v for v in level if v not in columns]
    if missing:
        raise InputError(f"missing column assignment for nodes {missing}")
    heights = {columns[v].height for v in level}
    if len(heights) != 1:
        raise InputError("columns must have uniform height")
    tt, stok = TokenTree.from_lextree(s, "s")
    fresh = FreshTokens()
    tt.splice_level(depth, lambda x: _plan(x, columns, stok, fresh, s))
    tree, ids = tt.to_lextree()
    base = TreeMorphism(s, tree, tuple(ids[stok[v]] for v in s.nodes()))
    return SurgeryResult(tree, base)


def _plan(x, columns, stok, fresh, s):
    inv = {tok: v for v, tok in stok.items()}
    col = columns[inv[x]]
    return fresh(), _column_layers(col, x, fresh, s.m_set)


# ---------------------------------------------------------------------------
# Canonical decomposition


def decompose_extension(f: TreeMorphism, variant: str = TC) -> tuple[TreeMorphism, TreeMorphism]:
    """S <= T as S <= T' (non-terminal) <= T (terminal).

    T' = lower closure of the image plus the immediate successors of the
    closure's new nodes.  Returns (f1: S -> T', f2: T' -> T).
    """
    t = f.target
    img = set(f.mapping)
    lower = set(img)
    for v in img:
        lower.update(t.ancestors(v))
    witnesses = set()
    for v in lower - img:
        witnesses.update(t.children[v])
    tprime_nodes = lower | witnesses
    sub, incl = induced_subtree(t, tprime_nodes, variant)
    pos = {tv: i for i, tv in enumerate(incl.mapping)}
    # image terminals keep the source's labels: label decisions made by the
    # extension belong to the terminal part, not the middle object
    decided = list(sub.decided)
    for sv, tv in enumerate(f.mapping):
        if sub.is_terminal(pos[tv]):
            decided[pos[tv]] = f.source.decided[sv]
    sub = LexTree(sub.m_set, sub.parent, sub.children, tuple(decided))
    incl = TreeMorphism(sub, t, incl.mapping)
    f1 = TreeMorphism(f.source, sub, tuple(pos[v] for v in f.mapping))
    return f1, incl


def canonical_terminal_form(f: TreeMorphism, variant: str = TC) -> list[tuple[int, LexTree]]:
    """[(terminal node of S, planted tree)] recovering a terminal extension."""
    t, img = f.target, set(f.mapping)
    pre = {tv: sv for sv, tv in enumerate(f.mapping)}
    for v in img:
        if any(a not in img for a in t.ancestors(v)):
            raise InputError("not a terminal extension")
    anchors: dict[int, None] = {}
    for v in t.nodes():
        if v in img:
            continue
        anc = next((a for a in t.ancestors(v) if a in img), None)
        if anc is None:
            raise InputError("new node with no anchor below it")
        anchors[anc] = None
    out = []
    for a in sorted(anchors, key=t.lex_position().get):
        nodes = [v for v in t.nodes() if t.leq(a, v)]
        sub, _ = induced_subtree(t, nodes, variant)
        out.append((pre[a], sub))
    return out


def canonical_nonterminal_form(
    f: TreeMorphism,
) -> list[tuple[int, dict[int, PointedColumn]]]:
    """[(S-level depth, {S-node at that level: its pointed column})].

    Levels are reported in increasing depth; recomposition applies the
    surgeries in decreasing depth.
    """
    s, t, img = f.source, f.target, set(f.mapping)
    pre = {tv: sv for sv, tv in enumerate(f.mapping)}
    spine_of: dict[int, list[int]] = {}
    for v in t.nodes():
        if v in img:
            continue
        above = [x for x in img if t.leq(v, x) and v != x]
        if not above:
            # must be a terminal witness hanging off a spine node
            p = t.parent[v]
            if p is None or p in img or not t.is_terminal(v):
                raise InputError("not a non-terminal extension")
            continue
        anchor = min(above, key=t.depth)
        spine_of.setdefault(anchor, []).append(v)
    sdep = s.depths()
    by_level: dict[int, dict[int, PointedColumn]] = {}
    for anchor, chain in spine_of.items():
        chain.sort(key=t.depth)  # shallow..deep; deepest is nearest the root? no:
        # nodes below anchor ordered by depth: root of column = shallowest
        layers = []
        seq = chain + [anchor]
        for i, node in enumerate(chain):
            kids = t.children[node]
            nxt = seq[i + 1]
            if nxt not in kids:
                raise InputError("column spine is broken; not a surgery extension")
            labels = tuple(
                None if c == nxt else t.decided[c] for c in kids
            )
            for c in kids:
                if c != nxt and not t.is_terminal(c):
                    raise InputError("column side node is not terminal")
            layers.append(ColumnLayer(labels, kids.index(nxt)))
        col = PointedColumn(tuple(layers))
        by_level.setdefault(sdep[pre[anchor]], {})[pre[anchor]] = col
    out = []
    for depth in sorted(by_level):
        cols = by_level[depth]
        snodes = [v for v in s.nodes() if sdep[v] == depth]
        for v in snodes:
            if v not in cols:
                raise InputError(
                    f"level {depth} only partially affected; not a surgery extension"
                )
        heights = {c.height for c in cols.values()}
        if len(heights) != 1:
            raise InputError("non-uniform column heights at a level")
        out.append((depth, cols))
    return out


def label_decisions(f: TreeMorphism) -> dict[int, int]:
    """The second aspect of a tc-extension: terminal S-nodes whose image is a
    decided terminal with a label the source does not already carry."""
    s, t = f.source, f.target
    out = {}
    for v in s.nodes():
        tv = f.mapping[v]
        if s.is_terminal(v) and t.is_terminal(tv):
            if t.decided[tv] is not None and s.decided[v] != t.decided[tv]:
                out[v] = t.decided[tv]
    return out


def apply_decisions(
    tree: LexTree, base: TreeMorphism, decisions: dict[int, int]
) -> tuple[LexTree, TreeMorphism]:
    """Decide labels at the images of the given source nodes."""
    if not decisions:
        return tree, base
    decided = list(tree.decided)
    for v, label in decisions.items():
        tv = base.mapping[v]
        if not tree.is_terminal(tv):
            raise InputError(f"cannot decide non-terminal node {tv}")
        decided[tv] = label
    relabeled = LexTree(tree.m_set, tree.parent, tree.children, tuple(decided))
    return relabeled, TreeMorphism(base.source, relabeled, base.mapping)


def recompose_terminal(
    s: LexTree, parts, variant: str = TW, decisions: dict[int, int] | None = None
) -> tuple[LexTree, TreeMorphism]:
    cur, base = s, TreeMorphism(s, s, tuple(range(s.n_nodes)))
    for anchor, planted in parts:
        res = terminal_plant(cur, base.mapping[anchor], planted, variant)
        cur, base = res.tree, res.base.compose(base)
    return apply_decisions(cur, base, decisions or {})


def recompose_nonterminal(
    s: LexTree, steps, decisions: dict[int, int] | None = None
) -> tuple[LexTree, TreeMorphism]:
    cur, base = s, TreeMorphism(s, s, tuple(range(s.n_nodes)))
    for depth, cols in sorted(steps, key=lambda kv: -kv[0]):
        res = tree_surgery(cur, depth, {base.mapping[v]: c for v, c in cols.items()})
        cur, base = res.tree, res.base.compose(base)
    return apply_decisions(cur, base, decisions or {})


# ---------------------------------------------------------------------------
# Level domination


@dataclass(frozen=True)
class DominationResult:
    tree: LexTree
    pad: TreeMorphism  # T -> tree
    composite: TreeMorphism  # S -> tree (level preserving)


def level_dominate(f: TreeMorphism, variant: str = TW) -> DominationResult:
    """Pad T so that a leveless inclusion S <= T becomes level preserving.

    Every S-edge at a common S-level is stretched to that level's maximal
    gap by inserting chain nodes below the upper endpoint; each inserted
    node gets a decided degree m = min(M) and m-1 fresh successors.
    """
    s, t = f.source, f.target
    tt, ttok = TokenTree.from_lextree(t, "t")
    fresh = FreshTokens()
    m = min(t.m_set)
    label = fresh_terminal_label(t.m_set, variant)
    sdep = s.depths()
    img = {v: ttok[f.mapping[v]] for v in s.nodes()}
    max_level = max(sdep) if s.n_nodes else -1
    for level in range(1, max_level + 1):
        edges = [
            (s.parent[v], v)
            for v in s.nodes()
            if sdep[v] == level and s.parent[v] is not None
        ]
        if not edges:
            continue
        gaps = {
            v: tt.depth(img[v]) - tt.depth(img[p]) - 1 for p, v in edges
        }
        target = max(gaps.values())
        for p, v in edges:
            need = target - gaps[v]
            below = img[v]
            for _ in range(need):
                pad = fresh()
                q = tt.parent[below]
                idx = tt.children[q].index(below)
                tt.children[q][idx] = pad
                tt.parent[pad] = q
                tt.children[pad] = [below]
                tt.parent[below] = pad
                tt.decided[pad] = None
                for _j in range(m - 1):
                    extra = fresh()
                    tt.add_node(extra, pad, decided=label)
                below = pad
    tree, ids = tt.to_lextree()
    pad_m = TreeMorphism(t, tree, tuple(ids[ttok[v]] for v in t.nodes()))
    comp = TreeMorphism(s, tree, tuple(ids[img[v]] for v in s.nodes()))
    return DominationResult(tree, pad_m, comp)


# ---------------------------------------------------------------------------
# Joint embeddings


def join_trees(
    t1: LexTree, t2: LexTree, variant: str = TW
) -> tuple[LexTree, TreeMorphism, TreeMorphism]:
    """A tree receiving strong embeddings of both inputs (joint embedding)."""
    if t1.m_set != t2.m_set:
        raise InputError("joint embedding requires a common M")
    m_set = t1.m_set
    if t1.n_nodes == 0:
        return t2, TreeMorphism(t1, t2, ()), TreeMorphism(t2, t2, tuple(range(t2.n_nodes)))
    if t2.n_nodes == 0:
        return t1, TreeMorphism(t1, t1, tuple(range(t1.n_nodes))), TreeMorphism(t2, t1, ())
    wide = sorted(m for m in m_set if m >= 2)
    if not wide:
        # chains: the longer chain hosts both as prefixes
        n = max(t1.n_nodes, t2.n_nodes)
        big = _chain(n, m_set, variant)
        return (
            big,
            TreeMorphism(t1, big, tuple(range(t1.n_nodes))),
            TreeMorphism(t2, big, tuple(range(t2.n_nodes))),
        )
    m = wide[0]
    tt = TokenTree(m_set)
    fresh = FreshTokens()
    root = fresh()
    tt.add_node(root, None)
    a1, atok1 = TokenTree.from_lextree(t1, "a")
    a2, atok2 = TokenTree.from_lextree(t2, "b")
    for sub in (a1, a2):
        for tok in sub.preorder():
            tt.parent[tok] = sub.parent[tok]
            tt.children[tok] = list(sub.children[tok])
            tt.decided[tok] = sub.decided[tok]
    tt.parent[atok1[t1.root]] = root
    tt.parent[atok2[t2.root]] = root
    tt.children[root] = [atok1[t1.root], atok2[t2.root]]
    label = fresh_terminal_label(m_set, variant)
    for _ in range(m - 2):
        extra = fresh()
        tt.add_node(extra, root, decided=label)
    tree, ids = tt.to_lextree()
    return (
        tree,
        TreeMorphism(t1, tree, tuple(ids[atok1[v]] for v in t1.nodes())),
        TreeMorphism(t2, tree, tuple(ids[atok2[v]] for v in t2.nodes())),
    )


def _chain(n: int, m_set, variant: str) -> LexTree:
    parent = tuple([None] + list(range(n - 1)))
    children = tuple(tuple([i + 1]) if i + 1 < n else () for i in range(n))
    decided = tuple(
        fresh_terminal_label(m_set, variant) if i == n - 1 and variant == TA else None
        for i in range(n)
    )
    return LexTree(frozenset(m_set), parent, children, decided)
