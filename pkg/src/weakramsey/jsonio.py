"""JSON forms for the exchange formats: monoids, orders, trees, morphisms."""
from __future__ import annotations

from .monoids import FiniteMonoid, WordMonoid
from .orders import AlmostLinearOrder, TernaryStructure
from .trees.core import LexTree, TreeMorphism
from .verdicts import InputError


def monoid_to_json(m: FiniteMonoid) -> dict:
    return {"order": m.order, "unit": m.unit, "table": [list(r) for r in m.table]}


def monoid_from_json(data: dict) -> FiniteMonoid:
    try:
        table = tuple(tuple(int(v) for v in row) for row in data["table"])
        return FiniteMonoid(table, int(data.get("unit", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad monoid JSON: {exc}") from exc


def word_monoid_from_json(data: dict) -> WordMonoid:
    try:
        return WordMonoid(
            tuple(str(g) for g in data["generators"]),
            bool(data.get("right_zero", False)),
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad word monoid JSON: {exc}") from exc


def alo_to_json(x: AlmostLinearOrder) -> dict:
    return {"kind": x.kind, "n": x.n}


def alo_from_json(data: dict) -> AlmostLinearOrder:
    try:
        return AlmostLinearOrder(str(data["kind"]), int(data["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad order JSON: {exc}") from exc


def ternary_to_json(t: TernaryStructure) -> dict:
    return {"size": t.size, "triples": [list(tr) for tr in t.sorted_triples()]}


def ternary_from_json(data: dict) -> TernaryStructure:
    try:
        return TernaryStructure(
            int(data["size"]),
            frozenset(tuple(int(v) for v in tr) for tr in data["triples"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad ternary-structure JSON: {exc}") from exc


def tree_to_json(t: LexTree) -> dict:
    nodes = []
    for v in t.nodes():
        node = {
            "id": v,
            "parent": t.parent[v],
            "children": list(t.children[v]),
        }
        if t.decided[v] is not None:
            node["dspl"] = t.decided[v]
        nodes.append(node)
    return {"M": sorted(t.m_set), "nodes": nodes}


def tree_from_json(data: dict) -> LexTree:
    try:
        m_set = frozenset(int(m) for m in data["M"])
        raw = data["nodes"]
        ids = [int(n["id"]) for n in raw]
        if sorted(ids) != list(range(len(ids))):
            raise InputError("node ids must be 0..n-1")
        parent: list[int | None] = [None] * len(ids)
        children: list[tuple[int, ...]] = [()] * len(ids)
        decided: list[int | None] = [None] * len(ids)
        for n in raw:
            v = int(n["id"])
            parent[v] = None if n.get("parent") is None else int(n["parent"])
            children[v] = tuple(int(c) for c in n.get("children", []))
            if "dspl" in n and n["dspl"] is not None:
                decided[v] = int(n["dspl"])
        return LexTree(m_set, tuple(parent), tuple(children), tuple(decided))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad tree JSON: {exc}") from exc


def morphism_to_json(f: TreeMorphism) -> dict:
    return {"map": list(f.mapping)}


def morphism_from_json(source: LexTree, target: LexTree, data) -> TreeMorphism:
    try:
        if isinstance(data, dict):
            data = data["map"]
        return TreeMorphism(source, target, tuple(int(v) for v in data))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad morphism JSON: {exc}") from exc


def to_jsonable(value):
    """Best-effort canonical JSON form for report payloads."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, LexTree):
        return tree_to_json(value)
    if isinstance(value, AlmostLinearOrder):
        return alo_to_json(value)
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)
