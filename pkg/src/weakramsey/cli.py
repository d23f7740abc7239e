"""Command-line workbench over the library.

Subcommands mirror the module map: monoid check/sweep, order
roundtrip/classify, tree amalgamate/decompose/embeddings/dominate/buildv,
ramsey search/verify, milliken search, fraisse build/verify/zigzag.

Reports are JSON on stdout with a versioned schema tag; every yes/no embeds
a re-checkable witness or certificate, and `ramsey verify` re-runs a
report's command and compares byte-for-byte.  Exit codes: 0 yes/ok, 1 no,
2 unknown, 3 input error.  Canonical reports omit wall-clock timing so that
identical inputs give byte-identical output; --trace prints human-readable
progress (including the amalgamation construction case fired at each step)
with timing to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import fraisse as fr
from . import jsonio
from . import monoids as mo
from . import orders as od
from .categories import search as cs
from .categories.base import FullSubcategory
from .categories.monoid_cat import OneObjectCategory
from .categories.order_cat import FinAlmostLinearOrders, FinLinearOrders
from .categories.tree_cat import TreeCategory, is_amalgamable_tree_arrow
from .trees import amalgam as ta
from .trees import build as tb
from .trees import core as tcore
from .trees import milliken as tmil
from .trees import vtree as tv
from .verdicts import NO, UNKNOWN, YES, InputError, SearchBudget, Verdict

SCHEMA = "weakramsey.report/1"


def _budget_from(args) -> SearchBudget:
    env = os.environ

    def pick(name: str, env_key: str, fallback: int) -> int:
        val = getattr(args, name, None)
        if val is not None:
            return val
        return int(env.get(env_key, fallback))

    return SearchBudget(
        max_size=pick("budget_size", "WEAKRAMSEY_BUDGET_SIZE", 6),
        max_candidates=pick("budget_candidates", "WEAKRAMSEY_BUDGET_CANDIDATES", 4000),
        max_nodes=pick("budget_nodes", "WEAKRAMSEY_BUDGET_NODES", 200_000),
        max_colors=getattr(args, "colors", None) or 3,
    )


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}") from exc
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _emit(args, report: dict, trace_lines=(), elapsed_ms: float | None = None) -> None:
    if getattr(args, "trace", False):
        for line in trace_lines:
            print(f"# {line}", file=sys.stderr)
        if elapsed_ms is not None:
            print(f"# elapsed: {elapsed_ms:.1f} ms", file=sys.stderr)
    print(json.dumps(jsonio.to_jsonable(report), sort_keys=True))


def _report(args, verdicts: dict, **extra) -> dict:
    return {
        "schema": SCHEMA,
        "command": args.echo,
        "verdicts": verdicts,
        "budget": {
            "max_size": _budget_from(args).max_size,
            "max_candidates": _budget_from(args).max_candidates,
            "max_nodes": _budget_from(args).max_nodes,
        },
        **extra,
    }


def _verdict_json(v: Verdict) -> dict:
    return {"status": v.status, "payload": v.payload}


def _exit_for(statuses) -> int:
    order = {NO: 1, UNKNOWN: 2, YES: 0, "ok": 0}
    worst = 0
    for s in statuses:
        worst = max(worst, order.get(s, 2))
    return worst


# ---------------------------------------------------------------------------
# monoid


def cmd_monoid_check(args) -> int:
    data = _load_json(args.file)
    if "generators" in data:
        wm = jsonio.word_monoid_from_json(data)
        weak = wm.has_weak_ramsey_property()
        report = _report(
            args,
            {"weak_ramsey": _verdict_json(weak), "ramsey": _verdict_json(wm.has_ramsey_property())},
            kind="word-monoid",
        )
        _emit(args, report)
        return weak.exit_code()
    m = jsonio.monoid_from_json(data)
    flags = mo.classify_monoid(m)
    rel = mo.absorption_relation(m)
    per_element = {}
    for a in m.elements():
        per_element[str(a)] = {
            "satisfies_LE": mo.satisfies_LE(m, a),
            "is_ramsey": _verdict_json(mo.is_ramsey_element(m, a)),
        }
    weak = mo.has_weak_ramsey_property(m)
    if args.element is not None:
        focus = mo.is_ramsey_element(m, args.element)
    else:
        focus = weak
    report = _report(
        args,
        {
            "has_ramsey_property": has_rp_status(m),
            "has_weak_ramsey_property": _verdict_json(weak),
        },
        flags=flags,
        left_zeros=sorted(mo.left_zeros(m)),
        right_zeros=sorted(mo.right_zeros(m)),
        absorption_pairs=sorted(rel.pairs),
        absorption_violations=rel.violations(),
        elements=per_element,
    )
    _emit(args, report)
    return focus.exit_code()


def has_rp_status(m) -> dict:
    ok = mo.has_ramsey_property(m)
    return {"status": YES if ok else NO, "payload": {}}


def cmd_monoid_sweep(args) -> int:
    t0 = time.monotonic()
    exceptions = []
    checked = 0
    le_disagreements = []
    for order in range(1, args.max_order + 1):
        for m in mo.enumerate_monoids(order):
            checked += 1
            if mo.has_ramsey_property(m) != bool(mo.left_zeros(m)):
                exceptions.append(jsonio.monoid_to_json(m))
            for a in m.elements():
                if mo.satisfies_LE(m, a) != mo.is_ramsey_element(m, a).is_yes:
                    le_disagreements.append({"monoid": jsonio.monoid_to_json(m), "element": a})
    sampled = 0
    if args.order4_samples:
        for m in mo.random_monoids(4, args.order4_samples, getattr(args, "seed", 0)):
            sampled += 1
            if mo.has_ramsey_property(m) != bool(mo.left_zeros(m)):
                exceptions.append(jsonio.monoid_to_json(m))
    status = YES if not exceptions else NO
    report = _report(
        args,
        {
            "ramsey_iff_left_zero": {
                "status": status,
                "payload": {"exceptions": exceptions, "exhaustive_to_order": args.max_order},
            }
        },
        monoids_checked=checked,
        order4_sampled=sampled,
        le_vs_ramsey_disagreements=le_disagreements,
        seed=getattr(args, "seed", 0),
    )
    _emit(args, report, elapsed_ms=(time.monotonic() - t0) * 1000)
    return 0 if status == YES and not le_disagreements else 1


# ---------------------------------------------------------------------------
# order


def cmd_order_roundtrip(args) -> int:
    data = _load_json(args.file)
    if "triples" in data:
        t = jsonio.ternary_from_json(data)
        bad = od.ternary_violations(t)
        if bad:
            raise InputError("axiom violations: " + "; ".join(bad[:3]))
        alo, order = od.from_ternary(t)
        back = od.roundtrip_ternary(t)
        ok = back.triples == t.triples
        report = _report(
            args,
            {"f_after_g_is_identity": {"status": YES if ok else NO, "payload": {}}},
            induced_order=jsonio.alo_to_json(alo),
            element_order=list(order),
            roundtrip=jsonio.ternary_to_json(back),
        )
        _emit(args, report)
        return 0 if ok else 1
    x = jsonio.alo_from_json(data)
    tern = od.to_ternary(x)
    got, _ = od.from_ternary(tern)
    want = od.forget_top_pair(x)
    ok = got == want
    report = _report(
        args,
        {"g_after_f_forgets_top_pair": {"status": YES if ok else NO, "payload": {}}},
        ternary=jsonio.ternary_to_json(tern),
        roundtrip=jsonio.alo_to_json(got),
    )
    _emit(args, report)
    return 0 if ok else 1


def cmd_order_classify(args) -> int:
    data = _load_json(args.file)
    try:
        dom = jsonio.alo_from_json(data["dom"])
        cod = jsonio.alo_from_json(data["cod"])
        f = od.OrderMap(dom, cod, tuple(int(v) for v in data["map"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad arrow JSON: {exc}") from exc
    cls = od.classify_arrow(f)
    amal = od.is_amalgamable_alo_arrow(f)
    report = _report(
        args,
        {"amalgamable_closed_form": {"status": YES if amal else NO, "payload": {}}},
        classification=cls.kind,
        refinement=list(cls.refinement.images) if cls.refinement else None,
        embedding=list(cls.embedding.images),
    )
    _emit(args, report)
    return 0


# ---------------------------------------------------------------------------
# tree


def _variant_flags(args) -> tuple[str, bool]:
    if args.variant == "leveless":
        return tcore.TW, False
    return args.variant, True


def cmd_tree_amalgamate(args) -> int:
    data = _load_json(args.file)
    try:
        s = jsonio.tree_from_json(data["s"])
        t1 = jsonio.tree_from_json(data["t1"])
        t2 = jsonio.tree_from_json(data["t2"])
        f1 = jsonio.morphism_from_json(s, t1, data["map1"])
        f2 = jsonio.morphism_from_json(s, t2, data["map2"])
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc
    variant, leveled = _variant_flags(args)
    try:
        am = ta.amalgamate(f1, f2, variant, leveled=leveled)
    except ta.IncompatibleExtensions as exc:
        report = _report(
            args,
            {"amalgamation": {"status": NO, "payload": {"nodes_of_incompatibility": list(exc.nodes)}}},
        )
        _emit(args, report)
        return 1
    report = _report(
        args,
        {"amalgamation": {"status": YES, "payload": {"non_gluing": True}}},
        tree=jsonio.tree_to_json(am.tree),
        leg1=jsonio.morphism_to_json(am.leg1),
        leg2=jsonio.morphism_to_json(am.leg2),
        trace=list(am.trace),
    )
    _emit(args, report, trace_lines=am.trace)
    return 0


def cmd_tree_decompose(args) -> int:
    data = _load_json(args.file)
    t = jsonio.tree_from_json(data["t"])
    if "s" in data:
        s = jsonio.tree_from_json(data["s"])
        f = jsonio.morphism_from_json(s, t, data["map"])
    else:
        _, f = tb.induced_subtree(t, [int(v) for v in data["s_nodes"]], args.variant)
    variant, _ = _variant_flags(args)
    f1, f2 = tb.decompose_extension(f, variant)
    steps = tb.canonical_nonterminal_form(f1)
    parts = tb.canonical_terminal_form(f2, variant)
    report = _report(
        args,
        {"decomposition": {"status": YES, "payload": {"kind": tb.extension_kind(f)}}},
        middle=jsonio.tree_to_json(f1.target),
        nonterminal_levels=[
            {
                "level": depth,
                "columns": {
                    str(v): [[list(layer.labels), layer.spine] for layer in col.layers]
                    for v, col in cols.items()
                },
            }
            for depth, cols in steps
        ],
        terminal_parts=[
            {"at": anchor, "planted": jsonio.tree_to_json(sub)} for anchor, sub in parts
        ],
        label_decisions={str(k): v for k, v in tb.label_decisions(f).items()},
    )
    _emit(args, report)
    return 0


def cmd_tree_embeddings(args) -> int:
    data = _load_json(args.file)
    s = jsonio.tree_from_json(data["s"])
    t = jsonio.tree_from_json(data["t"])
    variant, leveled = _variant_flags(args)
    embs = tcore.enumerate_embeddings(s, t, leveled=leveled, variant=variant)
    report = _report(
        args,
        {"embeddings": {"status": YES if embs else NO, "payload": {"count": len(embs)}}},
        maps=[list(m.mapping) for m in embs],
    )
    _emit(args, report)
    return 0 if embs else 1


def cmd_tree_dominate(args) -> int:
    data = _load_json(args.file)
    t = jsonio.tree_from_json(data["t"])
    if "s" in data:
        s = jsonio.tree_from_json(data["s"])
        f = jsonio.morphism_from_json(s, t, data["map"])
    else:
        _, f = tb.induced_subtree(t, [int(v) for v in data["s_nodes"]], args.variant)
    variant, _ = _variant_flags(args)
    dom = tb.level_dominate(f, variant)
    ok = tcore.is_valid_morphism(dom.composite, leveled=True, variant=variant)
    report = _report(
        args,
        {"level_preserving_after_padding": {"status": YES if ok else NO, "payload": {}}},
        padded_tree=jsonio.tree_to_json(dom.tree),
        pad_map=jsonio.morphism_to_json(dom.pad),
        composite=jsonio.morphism_to_json(dom.composite),
    )
    _emit(args, report)
    return 0 if ok else 1


def cmd_tree_buildv(args) -> int:
    tree = tv.build_v(args.s, args.y)
    report = _report(
        args,
        {"build_v": {"status": YES, "payload": {"nodes": tree.n_nodes,
                                                "formula": tv.v_size_formula(args.s, args.y)}}},
        tree=jsonio.tree_to_json(tree),
    )
    _emit(args, report)
    return 0


# ---------------------------------------------------------------------------
# ramsey / milliken


def _backend(args):
    if args.backend == "lo":
        return FinLinearOrders()
    if args.backend == "alo":
        return FinAlmostLinearOrders()
    if args.backend == "tree":
        m_set = frozenset(args.m_set or [1, 2])
        variant, leveled = _variant_flags(args)
        return TreeCategory(m_set, variant, leveled)
    raise InputError(f"unknown backend {args.backend!r}")


def cmd_ramsey_search(args) -> int:
    budget = _budget_from(args)
    c = _backend(args)
    if args.backend == "lo":
        alpha = c.identity(args.a)
        b_obj = args.b
    else:
        raise InputError("ramsey search currently supports --backend lo")
    v = cs.ramsey_witness_search(c, alpha, b_obj, args.colors, budget)
    report = _report(args, {"ramsey_witness": _verdict_json(v)}, a=args.a, b=args.b, colors=args.colors)
    _emit(args, report)
    return v.exit_code()


def cmd_ramsey_verify(args) -> int:
    stored = _load_json(args.report)
    command = stored.get("command")
    if not isinstance(command, list) or not command:
        raise InputError("report carries no command echo")
    from io import StringIO

    buf = StringIO()
    old = sys.stdout
    try:
        sys.stdout = buf
        code = main(command)
    finally:
        sys.stdout = old
    fresh = buf.getvalue().strip()
    same = json.loads(fresh) == stored
    report = _report(
        args,
        {"report_reproducible": {"status": YES if same else NO, "payload": {"rerun_exit": code}}},
    )
    _emit(args, report)
    return 0 if same else 1


def cmd_milliken_search(args) -> int:
    out = tmil.milliken_witness_search(
        args.m, args.a, args.b, args.colors, args.n_max, workers=args.workers
    )
    status = YES if out.witness is not None else UNKNOWN
    report = _report(
        args,
        {
            "milliken_witness": {
                "status": status,
                "payload": {"witness": out.witness, "checked": out.checked},
            }
        },
        note="exploratory search over leveled balanced trees; whether the "
        "leveled tree categories have the weak Ramsey property is open",
    )
    _emit(args, report)
    return 0 if out.witness is not None else 2


# ---------------------------------------------------------------------------
# fraisse


def _fraisse_backend(args):
    if args.backend == "lo":
        return FinLinearOrders()
    if args.backend == "ta":
        return TreeCategory(frozenset(args.m_set or [1, 2]), tcore.TA)
    if args.backend == "tc-single":
        return TreeCategory(frozenset(args.m_set or [2]), tcore.TC)
    raise InputError("fraisse backends: lo | ta | tc-single")


def _prefix_json(c, prefix: fr.SequencePrefix) -> dict:
    return {
        "objects": [c.describe_object(o) for o in prefix.objects],
        "steps": [list(s.data) for s in prefix.steps],
        "log": list(prefix.log),
    }


def _prefix_from_json(c, args, data) -> fr.SequencePrefix:
    objs = []
    for obj in data["objects"]:
        if args.backend == "lo":
            objs.append(int(obj["n"]))
        else:
            objs.append(jsonio.tree_from_json(obj))
    steps = []
    from .categories.base import Arrow

    for i, raw in enumerate(data["steps"]):
        steps.append(Arrow(objs[i], objs[i + 1], tuple(int(v) for v in raw)))
    return fr.SequencePrefix(c, tuple(objs), tuple(steps))


def cmd_fraisse_build(args) -> int:
    budget = _budget_from(args)
    c = _fraisse_backend(args)
    prefix = fr.build_weak_fraisse_prefix(c, args.length, budget)
    report = _report(
        args,
        {"prefix_built": {"status": YES, "payload": {"length": len(prefix)}}},
        prefix=_prefix_json(c, prefix),
    )
    _emit(args, report, trace_lines=prefix.log)
    return 0


def cmd_fraisse_verify(args) -> int:
    budget = _budget_from(args)
    c = _fraisse_backend(args)
    if args.prefix:
        prefix = _prefix_from_json(c, args, _load_json(args.prefix))
    else:
        prefix = fr.build_weak_fraisse_prefix(c, args.length, budget)
    bad = prefix.functoriality_violations()
    if bad:
        raise InputError("prefix is not functorial: " + bad[0])
    w0 = fr.verify_W0(prefix, args.w0_bound)
    w1 = {}
    for n in range(len(prefix)):
        w1[str(n)] = _verdict_json(fr.verify_W1_step(prefix, n, budget))
    statuses = [w0.status] + [v["status"] for v in w1.values()]
    report = _report(
        args,
        {"W0": _verdict_json(w0), "W1": w1},
        length=len(prefix),
    )
    _emit(args, report)
    return _exit_for(statuses)


def cmd_fraisse_zigzag(args) -> int:
    budget = _budget_from(args)
    c = _fraisse_backend(args)
    left = fr.build_weak_fraisse_prefix(c, args.length, budget)
    other_budget = SearchBudget(
        max_size=budget.max_size + 1,
        max_candidates=max(2, budget.max_candidates // 2),
        max_nodes=budget.max_nodes,
    )
    right = fr.build_weak_fraisse_prefix(c, args.length + 1, other_budget)
    zz = fr.back_and_forth(left, right, args.steps, budget)
    bad = zz.identity_violations()
    report = _report(
        args,
        {"zigzag": {"status": YES if not bad else NO, "payload": {"violations": bad}}},
        k_indices=list(zz.k_indices),
        l_indices=list(zz.l_indices),
        forward=[list(f.data) for f in zz.forward],
        backward=[list(g.data) for g in zz.backward],
    )
    _emit(args, report)
    return 0 if not bad else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS  # so leaf parsers never clobber top-level values
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--json", action="store_true", default=S,
                        help="canonical JSON report (default)")
    common.add_argument("--trace", action="store_true", default=S,
                        help="human-readable trace on stderr")
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--budget-size", type=int, default=S)
    common.add_argument("--budget-candidates", type=int, default=S)
    common.add_argument("--budget-nodes", type=int, default=S)

    p = argparse.ArgumentParser(
        prog="weakramsey", description=__doc__, allow_abbrev=False, parents=[common]
    )
    sub = p.add_subparsers(dest="group", required=True)

    def leaf(group, name, fn):
        c = group.add_parser(name, parents=[common], allow_abbrev=False)
        c.set_defaults(fn=fn)
        return c

    g = sub.add_parser("monoid").add_subparsers(dest="cmd", required=True)
    c = leaf(g, "check", cmd_monoid_check)
    c.add_argument("file")
    c.add_argument("--element", type=int, default=None)
    c = leaf(g, "sweep", cmd_monoid_sweep)
    c.add_argument("--max-order", type=int, default=3)
    c.add_argument("--order4-samples", type=int, default=0)

    g = sub.add_parser("order").add_subparsers(dest="cmd", required=True)
    leaf(g, "roundtrip", cmd_order_roundtrip).add_argument("file")
    leaf(g, "classify", cmd_order_classify).add_argument("file")

    g = sub.add_parser("tree").add_subparsers(dest="cmd", required=True)
    for name, fn in (
        ("amalgamate", cmd_tree_amalgamate),
        ("decompose", cmd_tree_decompose),
        ("embeddings", cmd_tree_embeddings),
        ("dominate", cmd_tree_dominate),
    ):
        c = leaf(g, name, fn)
        c.add_argument("file")
        c.add_argument("--variant", choices=["tw", "tc", "ta", "leveless"], default="tw")
    c = leaf(g, "buildv", cmd_tree_buildv)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--y", type=int, required=True)

    g = sub.add_parser("ramsey").add_subparsers(dest="cmd", required=True)
    c = leaf(g, "search", cmd_ramsey_search)
    c.add_argument("--backend", default="lo")
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--colors", type=int, default=2)
    c.add_argument("--m-set", type=int, nargs="*", default=None)
    c.add_argument("--variant", choices=["tw", "tc", "ta", "leveless"], default="tw")
    c = leaf(g, "verify", cmd_ramsey_verify)
    c.add_argument("--report", required=True)

    g = sub.add_parser("milliken").add_subparsers(dest="cmd", required=True)
    c = leaf(g, "search", cmd_milliken_search)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--colors", type=int, default=2)
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--workers", type=int, default=1)

    g = sub.add_parser("fraisse").add_subparsers(dest="cmd", required=True)
    c = leaf(g, "build", cmd_fraisse_build)
    c.add_argument("--backend", default="lo")
    c.add_argument("--length", type=int, default=6)
    c.add_argument("--m-set", type=int, nargs="*", default=None)
    c = leaf(g, "verify", cmd_fraisse_verify)
    c.add_argument("--backend", default="lo")
    c.add_argument("--length", type=int, default=6)
    c.add_argument("--prefix", default=None)
    c.add_argument("--w0-bound", type=int, default=3)
    c.add_argument("--m-set", type=int, nargs="*", default=None)
    c = leaf(g, "zigzag", cmd_fraisse_zigzag)
    c.add_argument("--backend", default="lo")
    c.add_argument("--length", type=int, default=5)
    c.add_argument("--steps", type=int, default=2)
    c.add_argument("--m-set", type=int, nargs="*", default=None)

    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.echo = argv
        return args.fn(args)
    except InputError as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}), file=sys.stdout)
        return 3


if __name__ == "__main__":
    sys.exit(main())
