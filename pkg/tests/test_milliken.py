import itertools

import pytest

from weakramsey.coloring import find_avoiding_coloring
from weakramsey.trees import milliken as tm
from weakramsey.trees import vtree as tv


def test_engine_edge_cases():
    assert find_avoiding_coloring(0, [], 2).status == "found"
    assert find_avoiding_coloring(3, [(0,)], 2).status == "none"  # singleton edge
    assert find_avoiding_coloring(3, [(0, 1, 2)], 1).status == "none"
    assert find_avoiding_coloring(2, [], 0).status == "none"
    out = find_avoiding_coloring(3, [(0, 1), (1, 2)], 2)
    assert out.status == "found"
    c = out.colors
    assert c[0] != c[1] and c[1] != c[2]


def test_engine_deterministic_across_workers():
    edges = [
        tuple(t)
        for t in itertools.combinations(range(9), 3)
        if sum(t) % 3 == 0
    ]
    base = find_avoiding_coloring(9, edges, 2)
    for workers in (2, 4):
        again = find_avoiding_coloring(9, edges, 2, workers=workers)
        assert again.status == base.status
        assert again.colors == base.colors


def test_milliken_chain_case_is_classical_ramsey():
    out = tm.milliken_witness_search(1, 2, 3, 2, 7)
    assert out.witness == 6
    assert out.checked == {3: "avoidable", 4: "avoidable", 5: "avoidable", 6: "forced"}


def test_milliken_trivial_b_equals_a():
    assert tm.milliken_witness_search(2, 2, 2, 1, 4).witness == 2
    assert tm.milliken_witness_search(3, 1, 1, 2, 3).witness == 1


def test_milliken_binary_node_coloring_regression():
    """Frozen value 4, cross-checked by raw enumeration for heights <= 4."""
    out = tm.milliken_witness_search(2, 1, 2, 2, 5)
    assert out.witness == 4

    def triples(height):
        t = tv.build_v(2, height)
        depths = t.depths()
        out = []
        for r in t.nodes():
            if t.is_terminal(r):
                continue
            left, right = t.children[r]

            def below(v):
                stack, acc = [v], []
                while stack:
                    u = stack.pop()
                    acc.append(u)
                    stack.extend(t.children[u])
                return acc

            for x in below(left):
                for y in below(right):
                    if depths[x] == depths[y]:
                        out.append((r, x, y))
        return t.n_nodes, out

    for height, expect_avoidable in ((3, True), (4, False)):
        n, tri = triples(height)
        avoidable = any(
            all((bits >> r & 1, bits >> x & 1, bits >> y & 1) != (c, c, c)
                for r, x, y in tri for c in (0, 1))
            for bits in range(1 << n)
        )
        assert avoidable == expect_avoidable


def test_milliken_stable_across_runs_and_workers():
    runs = [tm.milliken_witness_search(2, 1, 2, 2, 5, workers=w) for w in (1, 1, 4)]
    assert len({r.witness for r in runs}) == 1
    assert len({tuple(sorted(r.checked.items())) for r in runs}) == 1


def test_strong_subtree_sites():
    t3 = tv.build_v(2, 3)
    assert len(tm.strong_subtree_sites(t3, 1)) == 7
    assert len(tm.strong_subtree_sites(t3, 2)) == 7
    assert len(tm.strong_subtree_sites(t3, 3)) == 1
