"""Category-level bounded searches: amalgamability, directedness, bad
colorings, Ramsey arrows, and amalgamation-extension verification.

Verdict discipline: a No is issued only with a re-checkable certificate —
either a backend obstruction that is sound at any size, or exhaustion of a
finite category.  A Yes on an infinite category is explicitly scoped to the
budget (payload key "exhaustive" is False).  All searches iterate in
canonical order, so verdicts are deterministic for a fixed budget.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..coloring import find_avoiding_coloring
from ..verdicts import InputError, SearchBudget, Verdict
from .base import Arrow, EnumerableCategory, FullSubcategory


def _objects_in_budget(c: EnumerableCategory, budget: SearchBudget):
    """Objects within the size budget; exhaustive iff that covers the category.

    max_candidates does not truncate this list: it caps per-search candidate
    scans and the number of constructively certified pairs, never the span
    universe (a truncated universe would silently hide obstructions).
    """
    cap = budget.max_size
    if c.size_bound is not None:
        cap = min(cap, c.size_bound)
    objs = c.objects(cap)
    exhaustive = c.size_bound is not None and budget.max_size >= c.size_bound
    return objs, exhaustive


def _spans(c: EnumerableCategory, alpha: Arrow, objs) -> list[Arrow]:
    return c.spans_through(alpha, objs)


def _enumerative_cocone(c, p: Arrow, q: Arrow, objs, cap: int):
    """Scan candidate targets for f'.p == g'.q, smallest candidates first."""
    for w in objs[:cap]:
        left = {}
        for f2 in c.hom(p.cod, w):
            left.setdefault(c.compose(f2, p).data, f2)
        if not left:
            continue
        for g2 in c.hom(q.cod, w):
            d = c.compose(g2, q).data
            if d in left:
                return w, left[d], g2
    return None


def _resolve_pair(c, p, q, objs, budget):
    """(status, payload): equalized / obstructed / open."""
    if p.cod == q.cod and p.data == q.data:
        return "equalized", (p.cod, c.identity(p.cod), c.identity(q.cod))
    cert = c.cocone_obstruction(p, q)
    if cert is not None:
        return "obstructed", cert
    got = c.equalize(p, q)
    if got is not None:
        w, f2, g2 = got
        if c.compose(f2, p).data != c.compose(g2, q).data:
            raise AssertionError("backend equalizer returned a non-cocone")
        return "equalized", got
    got = _enumerative_cocone(c, p, q, objs, budget.max_candidates)
    if got is not None:
        return "equalized", got
    return "open", None


def is_amalgamable_arrow(
    c: EnumerableCategory, alpha: Arrow, budget: SearchBudget
) -> Verdict:
    """Can every pair of arrows out of cod(alpha) be equalized over alpha?

    Pairs are the composites C(alpha, x) for x within the size budget; the
    first max_candidates pairs (canonical order) get constructive cocones,
    the rest are swept for backend obstructions only.
    """
    c.check_arrow(alpha)
    objs, exhaustive = _objects_in_budget(c, budget)
    spans = _spans(c, alpha, objs)
    n_pairs = len(spans) * (len(spans) + 1) // 2

    # Obstruction sweep over every pair in the size budget (cheap, sound No).
    # When the backend declares obstruction behavior a function of a span
    # signature, one representative per signature suffices.
    reps = spans
    sig_of = [c.span_signature(p) for p in spans]
    if spans and all(s is not None for s in sig_of):
        by_sig: dict = {}
        for p, s in zip(spans, sig_of):
            by_sig.setdefault(s, p)
        reps = list(by_sig.values())
    for p, q in itertools.combinations_with_replacement(reps, 2):
        cert = c.cocone_obstruction(p, q)
        if cert is not None:
            return Verdict.no(
                pair=(c.describe_arrow(p), c.describe_arrow(q)),
                certificate=cert,
                exhaustive=True,
            )

    budgeted = itertools.islice(
        itertools.combinations_with_replacement(spans, 2), budget.max_candidates
    )
    checked = 0
    for p, q in budgeted:
        status, payload = _resolve_pair(c, p, q, objs, budget)
        checked += 1
        if status == "open":
            if exhaustive:
                return Verdict.no(
                    pair=(c.describe_arrow(p), c.describe_arrow(q)),
                    certificate="cocone search exhausted the finite category",
                    exhaustive=True,
                )
            return Verdict.unknown(
                pair=(c.describe_arrow(p), c.describe_arrow(q)),
                reason="no cocone within budget",
            )
    return Verdict.yes(
        pairs_checked=checked,
        pairs_total_in_size_budget=n_pairs,
        exhaustive=exhaustive and checked == n_pairs,
    )


def is_amalgamable_object(c: EnumerableCategory, x, budget: SearchBudget) -> Verdict:
    return is_amalgamable_arrow(c, c.identity(x), budget)


def is_directed(c: EnumerableCategory, budget: SearchBudget) -> Verdict:
    objs, exhaustive = _objects_in_budget(c, budget)
    for x, y in itertools.combinations_with_replacement(objs, 2):
        got = c.join(x, y)
        if got is not None:
            z, e1, e2 = got
            if e1 not in c.hom(x, z) or e2 not in c.hom(y, z):
                raise AssertionError("backend join returned invalid arrows")
            continue
        if not any(c.hom(x, z) and c.hom(y, z) for z in objs):
            if exhaustive:
                return Verdict.no(
                    pair=(c.describe_object(x), c.describe_object(y)),
                    exhaustive=True,
                )
            return Verdict.unknown(
                pair=(c.describe_object(x), c.describe_object(y)),
                reason="no joint target within budget",
            )
    return Verdict.yes(objects_checked=len(objs), exhaustive=exhaustive)


@dataclass(frozen=True)
class BadColoringSearch:
    status: str  # found | none | budget
    arrows: tuple[Arrow, ...]  # C(alpha, v) in canonical order
    colors: tuple[int, ...] | None
    nodes: int


def find_bad_coloring(
    c: EnumerableCategory,
    alpha: Arrow,
    v,
    b,
    f_set,
    k: int,
    budget: SearchBudget | None = None,
    workers: int = 1,
) -> BadColoringSearch:
    """A coloring of C(alpha, v) that no e in C(b, v) makes constant on e.F,
    or the report that none exists (then v witnesses (wR) for this b, F, k).
    """
    budget = budget or SearchBudget()
    allowed = {p.data for p in c.hom_through(alpha, b)}
    for f in f_set:
        if f.data not in allowed or f.cod != b:
            raise InputError("F is not contained in C(alpha, b)")
    arrows = c.hom_through(alpha, v)
    if k == 0:
        # no colorings exist (or the empty one is matched vacuously)
        return BadColoringSearch("none", arrows, None, 0)
    index = {p.data: i for i, p in enumerate(arrows)}
    edges = []
    for e in c.hom(b, v):
        edges.append(tuple(sorted({index[c.compose(e, f).data] for f in f_set})))
    out = find_avoiding_coloring(
        len(arrows), edges, k, max_nodes=budget.max_nodes, workers=workers
    )
    return BadColoringSearch(out.status, arrows, out.colors, out.nodes)


def is_ramsey_arrow(
    c: EnumerableCategory, alpha: Arrow, budget: SearchBudget
) -> Verdict:
    """(wR) for alpha: for every (b, F, k) in budget some v admits no bad
    coloring.  Exact on finite categories via the single-collapse criterion
    (one e with |e.F| = 1 serves every k at once); backends may supply closed
    forms; otherwise the bounded sweep returns Yes-within-budget or Unknown.
    """
    c.check_arrow(alpha)
    closed = c.ramsey_closed_form(alpha)
    if closed is not None:
        return closed
    objs, exhaustive = _objects_in_budget(c, budget)
    if exhaustive:
        witnesses = {}
        for b in objs:
            f_set = c.hom_through(alpha, b)
            if not f_set:
                witnesses[c.describe_object(b)] = "vacuous (no arrows over alpha)"
                continue
            found = None
            for v in objs:
                for e in c.hom(b, v):
                    if len({c.compose(e, f).data for f in f_set}) == 1:
                        found = (v, e)
                        break
                if found:
                    break
            if found is None:
                return _ramsey_no_certificate(c, alpha, b, f_set, objs)
            witnesses[str(c.describe_object(b))] = {
                "v": c.describe_object(found[0]),
                "collapser": c.describe_arrow(found[1]),
            }
        return Verdict.yes(exhaustive=True, witnesses=witnesses)
    # bounded sweep over (b, k) with F = all of C(alpha, b)
    checked = []
    for b in objs:
        f_set = c.hom_through(alpha, b)
        if not f_set:
            continue
        for k in range(2, budget.max_colors + 1):
            witness_v = None
            for v in objs:
                out = find_bad_coloring(c, alpha, v, b, f_set, k, budget)
                if out.status == "none":
                    witness_v = v
                    break
            if witness_v is None:
                return Verdict.unknown(
                    blocked_at={"b": c.describe_object(b), "k": k},
                    reason="no witness object within budget",
                )
            checked.append((c.describe_object(b), k, c.describe_object(witness_v)))
    return Verdict.yes(exhaustive=False, checked=checked)


def _ramsey_no_certificate(c, alpha, b, f_set, objs) -> Verdict:
    """Exact No: with no collapsing e anywhere, the injective coloring of
    C(alpha, v) defeats every candidate v at k* colors."""
    k_star = max(2, max(len(c.hom_through(alpha, v)) for v in objs))
    colorings = {}
    for v in objs:
        arrows = c.hom_through(alpha, v)
        colorings[str(c.describe_object(v))] = {
            "coloring": list(range(len(arrows))),
            "arrows": [c.describe_arrow(p) for p in arrows],
        }
    return Verdict.no(
        b=c.describe_object(b),
        f_size=len(f_set),
        k=k_star,
        bad_colorings=colorings,
        exhaustive=True,
    )


def ramsey_witness_search(
    c: EnumerableCategory,
    alpha: Arrow,
    b,
    k: int,
    budget: SearchBudget,
    workers: int = 1,
) -> Verdict:
    """Least candidate v (canonical order) with no bad coloring for (b, F=all, k)."""
    c.check_arrow(alpha)
    objs, exhaustive = _objects_in_budget(c, budget)
    f_set = c.hom_through(alpha, b)
    nodes = 0
    for v in objs:
        out = find_bad_coloring(c, alpha, v, b, f_set, k, budget, workers)
        nodes += out.nodes
        if out.status == "none":
            return Verdict.yes(
                witness=c.describe_object(v),
                witness_size=c.size(v),
                nodes=nodes,
                exhaustive=True,
            )
        if out.status == "budget":
            return Verdict.unknown(reason="coloring budget exhausted", nodes=nodes)
    if exhaustive:
        return Verdict.no(reason="no witness in the finite category", nodes=nodes)
    return Verdict.unknown(reason="no witness within budget", nodes=nodes)


def verify_amalgamation_extension(
    sub: FullSubcategory, budget: SearchBudget
) -> Verdict:
    """Is the ambient category an amalgamation extension of the subcategory?

    Checks, within budget: (1) the subcategory is cofinal, (2) every object
    outside it is amalgamable, (3) every amalgamable subcategory arrow
    factorizes through an amalgamable ambient object.
    """
    big = sub.base
    objs, exhaustive = _objects_in_budget(big, budget)
    sub_objs = [x for x in objs if sub.predicate(x)]
    # amalgamability probes get size headroom so fragment-local obstructions
    # (one decision-step above the window) stay visible
    from dataclasses import replace

    probe = replace(budget, max_size=budget.max_size + big.probe_margin)
    amal_cache: dict = {}

    def ambient_amalgamable(z) -> Verdict:
        if z not in amal_cache:
            amal_cache[z] = is_amalgamable_object(big, z, probe)
        return amal_cache[z]

    for x in objs:
        if any(big.hom(x, y) for y in sub_objs):
            continue
        witnessed = False
        for y, arr in big.cofinal_candidates(x):
            if sub.predicate(y) and arr in big.hom(x, y):
                witnessed = True
                break
        if not witnessed:
            return Verdict.no(
                check="cofinality",
                certificate=big.describe_object(x),
                exhaustive=exhaustive,
            )
    for z in objs:
        if sub.predicate(z):
            continue
        v = ambient_amalgamable(z)
        if v.is_no:
            return Verdict.no(
                check="outside objects amalgamable",
                certificate=big.describe_object(z),
                detail=v.payload,
                exhaustive=v.exhaustive,
            )
        if v.is_unknown:
            return Verdict.unknown(
                check="outside objects amalgamable", at=big.describe_object(z)
            )
    arrows_checked = 0
    for a in sub_objs:
        for b in sub_objs:
            for f in sub.hom(a, b):
                va = is_amalgamable_arrow(sub, f, probe)
                if not va.is_yes:
                    continue
                arrows_checked += 1
                if not _factors_through_amalgamable(
                    big, sub, f, objs, ambient_amalgamable
                ):
                    return Verdict.no(
                        check="amalgamable arrows factorize",
                        certificate=big.describe_arrow(f),
                        exhaustive=exhaustive,
                    )
    return Verdict.yes(
        cofinal_objects=len(objs),
        amalgamable_arrows_factored=arrows_checked,
        exhaustive=exhaustive,
    )


def _factors_through_amalgamable(big, sub, f: Arrow, objs, ambient_amalgamable):
    for z in objs:
        v = ambient_amalgamable(z)
        if not v.is_yes:
            continue
        for e in big.hom(f.dom, z):
            for g in big.hom(z, f.cod):
                if big.compose(g, e).data == f.data:
                    return True
    return False
