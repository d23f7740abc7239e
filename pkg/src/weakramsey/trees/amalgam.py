"""Non-gluing amalgamation of compatible tree extensions.

Given a compatible span S -> T1, S -> T2 the construction produces T with
embeddings g1, g2 agreeing on S and overlapping exactly in S's image.  The
cases:

  terminal + terminal      pairing levels below the shared anchors' bushes,
                           side tails attached in place (cases i-iii);
  terminal + non-terminal  the surgery columns are pushed through the whole
                           host, fresh same-height columns under new nodes
                           (case iv);
  non-terminal pairs       the guest's columns are replanted below the
                           host's column roots, with fresh columns restoring
                           the host's structure above the guest's new tops
                           (cases v-vi);
  general                  canonical decomposition and the five-step pipeline
                           of immediate amalgamations (case vii).

Splitting degrees in M = {1} degenerate to linear orders and are merged as
chains.  Leveless inputs are first padded level-preserving (level
domination) and then amalgamated as leveled trees.

Node identity is tracked by tokens throughout, so "non-gluing" holds by
construction: the token sets of T1 and T2 intersect exactly in S.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..verdicts import InputError
from ._tokens import FreshTokens, TokenTree
from .core import LexTree, TreeMorphism, is_valid_morphism, TW
from .build import fresh_terminal_label, level_dominate


class IncompatibleExtensions(InputError):
    """The pair has a node of incompatibility; carries the certificate."""

    def __init__(self, nodes):
        super().__init__(f"incompatible extensions at source nodes {sorted(nodes)}")
        self.nodes = tuple(sorted(nodes))


@dataclass(frozen=True)
class Amalgam:
    tree: LexTree
    leg1: TreeMorphism  # T1 -> tree
    leg2: TreeMorphism  # T2 -> tree
    trace: tuple[str, ...]


def nodes_of_incompatibility(f1: TreeMorphism, f2: TreeMorphism) -> list[int]:
    """Source nodes whose two images carry clashing committed degrees."""
    if f1.source != f2.source:
        raise InputError("extensions must share their source")
    out = []
    for v in f1.source.nodes():
        d1 = f1.target.effective_decided(f1.mapping[v])
        d2 = f2.target.effective_decided(f2.mapping[v])
        if d1 is not None and d2 is not None and d1 != d2:
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# Token-level helpers


def _base_terminals(tt: TokenTree, base: frozenset) -> list:
    """Base tokens with no base token above them, in tt preorder."""
    return [
        v
        for v in tt.preorder()
        if v in base and not any(c in base for c in tt.children[v])
    ]


def _lower_mid(tt: TokenTree, base: frozenset) -> frozenset:
    """Lower closure of base plus immediate-successor witnesses."""
    lower = set(base)
    for v in base:
        lower.update(tt.ancestors(v))
    out = set(lower)
    for v in lower - set(base):
        out.update(tt.children[v])
    return frozenset(out)


def _restrict(tt: TokenTree, keep: frozenset) -> TokenTree:
    """Induced token subtree; terminal-in-subset nodes inherit committed degrees."""
    out = TokenTree(tt.m_set)
    order = [v for v in tt.preorder() if v in keep]
    for v in order:
        anc = next((a for a in tt.ancestors(v) if a in keep), None)
        out.parent[v] = anc
        out.children[v] = []
        out.decided[v] = None
        if anc is not None:
            out.children[anc].append(v)
    for v in order:
        if not out.children[v]:
            out.decided[v] = tt.effective_decided(v)
    return out


def _base_depths(tt: TokenTree, base: frozenset) -> dict:
    return {
        v: sum(1 for a in tt.ancestors(v) if a in base)
        for v in base
    }


def _surgery_data(tt: TokenTree, base: frozenset):
    """Canonical surgery form of a non-terminal extension base <= tt.

    Returns [(base_depth, [(anchor, root, layers)])] with levels ascending;
    layers are bottom-up (tops [(token, decided)], spine index), the top
    layer carrying the anchor at its spine slot.

    The anchor of a new node is the least base node ABOVE it (toward the
    leaves); side witnesses are terminal new nodes hanging off a spine.
    """
    chains: dict = {}
    for v in tt.preorder():
        if v in base:
            continue
        above = [x for x in _above(tt, v) if x in base]
        if not above:
            p = tt.parent[v]
            if p is None or p in base or not tt.is_terminal(v):
                raise InputError("not a non-terminal extension")
            continue  # side witness, collected via its bush
        anchor = min(above, key=tt.depth)
        if not all(x == anchor or anchor in tt.ancestors(x) for x in above):
            raise InputError("no least base node above; not a surgery extension")
        chains.setdefault(anchor, []).append(v)
    bdep = _base_depths(tt, base)
    by_level: dict[int, list] = {}
    for anchor, chain in chains.items():
        chain.sort(key=tt.depth)
        layers = []
        seq = chain + [anchor]
        for i, node in enumerate(chain):
            kids = tt.children[node]
            nxt = seq[i + 1]
            if nxt not in kids:
                raise InputError("broken column spine; not a surgery extension")
            tops = [(c, tt.decided[c]) for c in kids]
            for c in kids:
                if c != nxt and not tt.is_terminal(c):
                    raise InputError("column side node is not terminal")
            layers.append((tops, kids.index(nxt)))
        by_level.setdefault(bdep[anchor], []).append((anchor, chain[0], layers))
    out = []
    for depth in sorted(by_level):
        entries = by_level[depth]
        heights = {len(layers) for _, _, layers in entries}
        anchors_here = [v for v in base if bdep[v] == depth]
        if len(heights) != 1 or len(entries) != len(anchors_here):
            raise InputError("level only partially affected; not a surgery extension")
        out.append((depth, entries))
    return out


def _trivial_layers(height: int, point, m_set, variant: str, fresh: FreshTokens):
    """A fresh minimal column of the given height carrying `point` on top."""
    w = min(m_set)
    label = fresh_terminal_label(m_set, variant)
    layers = []
    for i in range(height):
        tops = []
        for j in range(w):
            if j == 0:
                tops.append((point if i == height - 1 else fresh(), None))
            else:
                tops.append((fresh(), label))
        layers.append((tops, 0))
    return layers


def _pair_width(m_set) -> int:
    wide = [m for m in m_set if m >= 2]
    if not wide:
        raise InputError("pairing requires a splitting degree >= 2 in M")
    return min(wide)


def _merge_base_labels(cur: TokenTree, other: TokenTree, base) -> None:
    """Carry label-only decisions of the other side onto shared terminals."""
    for v in base:
        if v in other.parent and not other.children[v]:
            lab = other.decided[v]
            if lab is not None and v in cur.parent and not cur.children[v]:
                if cur.decided[v] is None:
                    cur.decided[v] = lab


# ---------------------------------------------------------------------------
# The three immediate amalgamations


def _amalg_tt(base, host: TokenTree, guest: TokenTree, ctx) -> TokenTree:
    """Both extensions terminal over base; anchors' bushes get paired."""
    m_set, variant, fresh, trace = ctx
    cur = host.clone()
    host_anchors = {
        v for v in _base_terminals(host, base) if host.children[v]
    }
    guest_anchors = {
        v for v in _base_terminals(guest, base) if guest.children[v]
    }
    for a in [v for v in guest.preorder() if v in guest_anchors - host_anchors]:
        cur.attach_tail(a, guest)
        trace.append("plant-exclusive")
    shared = [v for v in cur.preorder() if v in host_anchors & guest_anchors]
    bdep = _base_depths(host, base)
    label = fresh_terminal_label(m_set, variant)
    for depth in sorted({bdep[a] for a in shared}):
        group = [a for a in shared if bdep[a] == depth]
        partners = {}
        for a in group:
            b1 = list(cur.children[a])
            b2 = list(guest.children[a])
            if len(b1) != len(b2):
                raise AssertionError("incompatible pair reached the pairing step")
            for x, y in zip(b1, b2):
                partners[x] = y
        alpha = cur.depth(group[0]) + 1
        if any(cur.depth(a) + 1 != alpha for a in group):
            raise AssertionError("shared anchors at unequal depths")
        w2 = _pair_width(m_set)
        w1 = min(m_set)

        def plan(x):
            if x in partners:
                y = partners[x]
                tops = [(x, None), (y, guest.decided[y])]
                tops += [(fresh(), label) for _ in range(w2 - 2)]
                return fresh(), [(tops, 0)]
            tops = [(x, None)] + [(fresh(), label) for _ in range(w1 - 1)]
            return fresh(), [(tops, 0)]

        cur.splice_level(alpha, plan)
        trace.append(f"pair-level@{depth}")
        for a in group:
            for y in guest.children[a]:
                if guest.children[y]:
                    cur.attach_tail(y, guest)
                    trace.append("plant-paired-tail")
    _merge_base_labels(cur, guest, base)
    return cur


def _amalg_tn(base, term: TokenTree, nt: TokenTree, ctx) -> TokenTree:
    """term terminal over base, nt non-terminal; nt's columns pushed through.

    Output: term-side non-terminal, nt-side terminal.
    """
    m_set, variant, fresh, trace = ctx
    cur = term.clone()
    for depth, entries in _surgery_data(nt, base):
        anchor0 = entries[0][0]
        d = cur.depth(anchor0)
        if any(cur.depth(a) != d for a, _, _ in entries):
            raise AssertionError("surgery anchors at unequal depths")
        height = len(entries[0][2])
        real = {a: (root, layers) for a, root, layers in entries}

        def plan(x):
            if x in real:
                return real[x]
            return fresh(), _trivial_layers(height, x, m_set, variant, fresh)

        cur.splice_level(d, plan)
        trace.append(f"push-columns@{depth}")
    _merge_base_labels(cur, nt, base)
    return cur


def _amalg_nn(base, host: TokenTree, guest: TokenTree, ctx) -> TokenTree:
    """Both non-terminal; guest's columns are planted below the host's roots.

    Output: guest-side non-terminal.
    """
    m_set, variant, fresh, trace = ctx
    cur = host.clone()
    host_data = {depth: entries for depth, entries in _surgery_data(host, base)}
    for depth, entries in _surgery_data(guest, base):
        if depth not in host_data:
            anchor0 = entries[0][0]
            d = cur.depth(anchor0)
            height = len(entries[0][2])
            real = {a: (root, layers) for a, root, layers in entries}

            def plan(x):
                if x in real:
                    return real[x]
                return fresh(), _trivial_layers(height, x, m_set, variant, fresh)

            cur.splice_level(d, plan)
            trace.append(f"adopt-columns@{depth}")
            continue
        # both sides operate on this level: push guest's columns below the
        # host's column roots and rebuild fresh host-side columns above the
        # guest's new top nodes
        host_entries = {a: (root, layers) for a, root, layers in host_data[depth]}
        host_height = len(next(iter(host_entries.values()))[1])
        pending = []  # (fresh root, guest top token)
        spec = {}
        for anchor, groot, glayers in entries:
            hroot = host_entries[anchor][0]
            top_tops, top_spine = glayers[-1]
            renamed_tops = []
            for j, (tok, dec) in enumerate(top_tops):
                if j == top_spine:
                    renamed_tops.append((hroot, None))
                else:
                    r = fresh()
                    renamed_tops.append((r, None))
                    pending.append((r, tok, dec))
            spec[hroot] = (groot, glayers[:-1] + [(renamed_tops, top_spine)])
        beta = cur.depth(next(iter(spec)))
        if any(cur.depth(r) != beta for r in spec):
            raise AssertionError("host column roots at unequal depths")

        def plan2(x):
            if x in spec:
                return spec[x]
            raise AssertionError("unexpected node at host column-root level")

        cur.splice_level(beta, plan2)
        trace.append(f"interleave-columns@{depth}")
        for r, tok, dec in pending:
            layers = _trivial_layers(host_height, tok, m_set, variant, fresh)
            carrier = r
            for tops, spine in layers:
                cur.children[carrier] = [t for t, _ in tops]
                for t, d2 in tops:
                    cur.parent[t] = carrier
                    if t != tok:
                        cur.children[t] = []
                        cur.decided[t] = d2
                carrier = tops[spine][0]
            cur.children[tok] = []
            cur.decided[tok] = dec
            trace.append("rebuild-host-column")
    _merge_base_labels(cur, guest, base)
    return cur


# ---------------------------------------------------------------------------
# Chain merge for M = {1}


def _chain_tokens(tt: TokenTree) -> list:
    out = []
    v = tt.root()
    while v is not None:
        out.append(v)
        kids = tt.children[v]
        v = kids[0] if kids else None
    return out


def _amalg_chains(base, t1: TokenTree, t2: TokenTree, ctx) -> TokenTree:
    _m_set, _variant, _fresh, trace = ctx
    c1, c2 = _chain_tokens(t1), _chain_tokens(t2)
    anchors = [v for v in c1 if v in base]
    if anchors != [v for v in c2 if v in base]:
        raise AssertionError("chain bases disagree")
    merged = []

    def segment(chain, lo, hi):
        i = 0 if lo is None else chain.index(lo) + 1
        j = len(chain) if hi is None else chain.index(hi)
        return chain[i:j]

    bounds = [None, *anchors, None]
    for lo, hi in zip(bounds, bounds[1:]):
        merged.extend(segment(c1, lo, hi))
        merged.extend(segment(c2, lo, hi))
        if hi is not None:
            merged.append(hi)
    out = TokenTree(t1.m_set)
    prev = None
    for v in merged:
        labs = [
            t.decided[v] for t in (t1, t2) if v in t.parent and t.decided[v] is not None
        ]
        out.parent[v] = prev
        out.children[v] = []
        out.decided[v] = labs[0] if labs else None
        if prev is not None:
            out.children[prev] = [v]
        prev = v
    trace.append("chain-merge")
    return out


# ---------------------------------------------------------------------------
# Entry point


def amalgamate(
    f1: TreeMorphism,
    f2: TreeMorphism,
    variant: str = TW,
    leveled: bool = True,
    _validate: bool = True,
) -> Amalgam:
    """Non-gluing amalgamation of a compatible span of extensions."""
    s = f1.source
    if f2.source != s:
        raise InputError("extensions must share their source")
    if _validate:
        for f in (f1, f2):
            if not is_valid_morphism(f, leveled=leveled, variant=variant):
                raise InputError("input is not a valid morphism for the variant")
    bad = nodes_of_incompatibility(f1, f2)
    if bad:
        raise IncompatibleExtensions(bad)

    if not leveled:
        d1 = level_dominate(f1, variant)
        d2 = level_dominate(f2, variant)
        inner = amalgamate(d1.composite, d2.composite, variant, leveled=True,
                           _validate=_validate)
        result = Amalgam(
            inner.tree,
            inner.leg1.compose(d1.pad),
            inner.leg2.compose(d2.pad),
            ("level-dominate",) + inner.trace,
        )
        if _validate:
            for leg in (result.leg1, result.leg2):
                if not is_valid_morphism(leg, leveled=False, variant=variant):
                    raise AssertionError("leveless amalgam leg invalid")
        return result

    m_set = s.m_set
    fresh = FreshTokens()
    trace: list[str] = []
    ctx = (m_set, variant, fresh, trace)

    t1, tok1 = _as_tokens(f1, "a")
    t2, tok2 = _as_tokens(f2, "b")
    base = frozenset(("s", v) for v in s.nodes())

    if s.n_nodes == 0:
        out = _join_empty_base(t1, t2, ctx)
        trace.insert(0, "empty-base-join")
    elif m_set == frozenset({1}):
        out = _amalg_chains(base, t1, t2, ctx)
    else:
        k1, k2 = _ext_kind(t1, base), _ext_kind(t2, base)
        if k1 == "terminal" and k2 == "terminal":
            trace.append("case:terminal+terminal")
            out = _amalg_tt(base, t1, t2, ctx)
        elif k1 == "nonterminal" and k2 == "nonterminal":
            trace.append("case:nonterminal+nonterminal")
            out = _amalg_nn(base, t1, t2, ctx)
        elif k1 == "terminal" and k2 == "nonterminal":
            trace.append("case:terminal+nonterminal")
            out = _amalg_tn(base, t1, t2, ctx)
        elif k1 == "nonterminal" and k2 == "terminal":
            trace.append("case:nonterminal+terminal")
            out = _amalg_tn(base, t2, t1, ctx)
        else:
            trace.append("case:general-pipeline")
            out = _pipeline(base, t1, t2, ctx)

    tree, ids = out.to_lextree()
    g1 = TreeMorphism(f1.target, tree, tuple(
        ids[_token_of(tok1, v)] for v in f1.target.nodes()
    ))
    g2 = TreeMorphism(f2.target, tree, tuple(
        ids[_token_of(tok2, v)] for v in f2.target.nodes()
    ))
    result = Amalgam(tree, g1, g2, tuple(trace))
    if _validate:
        _check_result(f1, f2, result, variant)
    return result


def _as_tokens(f: TreeMorphism, tag: str):
    """Token tree of the target with image nodes named by source tokens."""
    t = f.target
    name = {}
    for sv, tv in enumerate(f.mapping):
        name[tv] = ("s", sv)
    tt = TokenTree(t.m_set)
    tok = {}
    for v in t.nodes():
        tok[v] = name.get(v, (tag, v))
    for v in t.nodes():
        p = t.parent[v]
        tt.parent[tok[v]] = None if p is None else tok[p]
        tt.children[tok[v]] = [tok[c] for c in t.children[v]]
        tt.decided[tok[v]] = t.decided[v]
    return tt, tok


def _token_of(tok_map, v):
    return tok_map[v]


def _ext_kind(tt: TokenTree, base: frozenset) -> str:
    new = [v for v in tt.parent if v not in base]
    if not new:
        return "terminal"
    if all(all(a in base for a in tt.ancestors(v)) for v in base):
        return "terminal"

    def under(v):
        return any(a in base for a in _above(tt, v))

    for v in new:
        if under(v):
            continue
        p = tt.parent[v]
        if p is not None and p not in base and under(p):
            continue
        return "mixed"
    return "nonterminal"


def _above(tt: TokenTree, v) -> list:
    out = []
    stack = list(tt.children[v])
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(tt.children[u])
    return out


def _join_empty_base(t1: TokenTree, t2: TokenTree, ctx) -> TokenTree:
    m_set, variant, fresh, trace = ctx
    if t1.n_nodes() == 0:
        return t2.clone()
    if t2.n_nodes() == 0:
        return t1.clone()
    if m_set == frozenset({1}):
        return _amalg_chains(frozenset(), t1, t2, ctx)
    out = t1.clone()
    for tok in t2.preorder():
        out.parent[tok] = t2.parent[tok]
        out.children[tok] = list(t2.children[tok])
        out.decided[tok] = t2.decided[tok]
    root = fresh()
    out.parent[root] = None
    out.decided[root] = None
    kids = [t1.root(), t2.root()]
    label = fresh_terminal_label(m_set, variant)
    for _ in range(_pair_width(m_set) - 2):
        extra = fresh()
        out.parent[extra] = root
        out.children[extra] = []
        out.decided[extra] = label
        kids.append(extra)
    out.children[root] = kids
    for k in (t1.root(), t2.root()):
        out.parent[k] = root
    return out


def _pipeline(base, t1: TokenTree, t2: TokenTree, ctx) -> TokenTree:
    """Case (vii): decompose both sides and compose immediate amalgamations."""
    _m_set, _variant, _fresh, trace = ctx
    s1set = _lower_mid(t1, base)
    s2set = _lower_mid(t2, base)
    s1 = _restrict(t1, s1set)
    s2 = _restrict(t2, s2set)
    trace.append("decompose")
    sprime = _amalg_nn(base, s2, s1, ctx)  # S1-side stays non-terminal
    s2mid = _lower_mid(sprime, s2set)
    s2midtree = _restrict(sprime, s2mid)
    t1p = _amalg_tn(s1set, t1, sprime, ctx)
    t2p = _amalg_tn(s2set, t2, s2midtree, ctx)
    return _amalg_tt(s2mid, t1p, t2p, ctx)


def _check_result(f1, f2, result: Amalgam, variant: str) -> None:
    from .core import tree_violations, morphism_violations

    bad = tree_violations(result.tree, variant)
    if bad:
        raise AssertionError(f"amalgam tree invalid: {bad}")
    for leg, f in ((result.leg1, f1), (result.leg2, f2)):
        mv = morphism_violations(leg, leveled=True, variant=variant)
        if mv:
            raise AssertionError(f"amalgam leg invalid: {mv}")
    c1 = result.leg1.compose(f1)
    c2 = result.leg2.compose(f2)
    if c1.mapping != c2.mapping:
        raise AssertionError("legs do not agree on the base")
    overlap = result.leg1.image() & result.leg2.image()
    if overlap != frozenset(c1.mapping):
        raise AssertionError("amalgam glues beyond the base")
