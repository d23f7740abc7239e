import random

import pytest

from weakramsey.trees import build as tb
from weakramsey.trees import core as tc
from weakramsey.trees import gen as tg
from weakramsey.trees import vtree as tv
from weakramsey.verdicts import InputError

nest = tc.tree_from_nested
M12 = frozenset({1, 2})
SINGLE = tc.singleton_tree({2})
BUSH2 = nest({2}, (None, [(None, []), (None, [])]))


def test_plant_basics():
    r = tb.terminal_plant(SINGLE, 0, BUSH2)
    assert r.tree.n_nodes == 3
    assert tc.is_valid_morphism(r.base)
    assert r.tree.n_nodes == SINGLE.n_nodes + BUSH2.n_nodes - 1


def test_plant_rejects_nonterminal_and_label_clash():
    with pytest.raises(InputError):
        tb.terminal_plant(BUSH2, 0, BUSH2)  # root is not terminal
    s = nest({1, 2}, (1, []))
    with pytest.raises(InputError):
        tb.terminal_plant(s, 0, nest({1, 2}, (None, [(None, []), (None, [])])))


def test_plant_commutes_at_distinct_terminals():
    s = nest(M12, (None, [(None, []), (None, [])]))
    p1 = nest(M12, (None, [(None, [])]))
    p2 = nest(M12, (None, [(None, []), (None, [])]))
    a = tb.terminal_plant(s, 1, p1)
    ab = tb.terminal_plant(a.tree, a.base.mapping[2], p2)
    b = tb.terminal_plant(s, 2, p2)
    ba = tb.terminal_plant(b.tree, b.base.mapping[1], p1)
    assert ab.tree.canonical_key() == ba.tree.canonical_key()


def test_root_surgery_equals_terminal_planting():
    sur = tb.tree_surgery(SINGLE, 0, {0: tb.pointed_bush(2, 0)})
    alt = tb.terminal_plant(BUSH2, 1, SINGLE)
    assert sur.tree.canonical_key() == alt.tree.canonical_key()


def test_surgery_level_bookkeeping():
    col2 = tb.PointedColumn(
        (tb.ColumnLayer((None, None), 0), tb.ColumnLayer((None, None), 1))
    )
    t3 = nest(M12, (None, [(None, []), (None, [])]))
    out = tb.tree_surgery(t3, 1, {1: col2, 2: col2})
    assert out.tree.height() == t3.height() + 2
    assert tc.is_valid_morphism(out.base)


def test_surgery_requires_full_level_and_uniform_height():
    t3 = nest(M12, (None, [(None, []), (None, [])]))
    with pytest.raises(InputError):
        tb.tree_surgery(t3, 1, {1: tb.pointed_bush(2, 0)})
    col1 = tb.pointed_bush(1, 0)
    col2 = tb.PointedColumn((tb.ColumnLayer((None,), 0),) * 2)
    with pytest.raises(InputError):
        tb.tree_surgery(t3, 1, {1: col1, 2: col2})


def test_decomposition_trivial_cases():
    planted = tb.terminal_plant(SINGLE, 0, BUSH2).base
    f1, f2 = tb.decompose_extension(planted)
    assert f1.target.canonical_key() == SINGLE.canonical_key()
    sur = tb.tree_surgery(SINGLE, 0, {0: tb.pointed_bush(2, 0)}).base
    g1, g2 = tb.decompose_extension(sur)
    assert g1.target.canonical_key() == sur.target.canonical_key()


def test_lower_closure_example():
    two = nest(M12, (None, [(None, [])]))
    _, incl = tb.induced_subtree(two, [1])
    d1, d2 = tb.decompose_extension(incl)
    assert d1.target.canonical_key() == two.canonical_key()


@pytest.mark.parametrize("seed", range(6))
def test_decomposition_roundtrip_random(seed):
    rng = random.Random(seed)
    for _ in range(60):
        variant = rng.choice(["tw", "tc", "ta"])
        mset = rng.choice([{1}, {2}, {1, 2}, {1, 2, 3}, {2, 3}])
        s = tg.random_tree(rng, mset, rng.randrange(1, 6), variant)
        f = tg.random_extension(rng, s, 12, variant)
        f1, f2 = tb.decompose_extension(f, variant)
        assert tc.is_valid_morphism(f1, leveled=True, variant=variant)
        assert tc.is_valid_morphism(f2, leveled=True, variant=variant)
        assert tb.extension_kind(f2) == "terminal"
        mid, _ = tb.recompose_nonterminal(
            f1.source, tb.canonical_nonterminal_form(f1), tb.label_decisions(f1)
        )
        assert mid.canonical_key() == f1.target.canonical_key()
        top, _ = tb.recompose_terminal(
            f2.source, tb.canonical_terminal_form(f2, variant), variant,
            tb.label_decisions(f2),
        )
        assert top.canonical_key() == f2.target.canonical_key()


def test_level_domination_figure_instance():
    t = nest({2}, (None, [(None, [(None, []), (None, [])]), (None, [])]))
    s, incl = tb.induced_subtree(t, [0, 2, 4], "tw")
    assert not tc.is_valid_morphism(incl, leveled=True, variant="tw")
    dom = tb.level_dominate(incl, "tw")
    assert dom.tree.n_nodes == 7  # one pad node plus its splitting witness
    assert tc.is_valid_morphism(dom.composite, leveled=True, variant="tw")
    assert tc.is_valid_morphism(dom.pad, leveled=False, variant="tw")


def test_level_domination_noop_when_already_leveled():
    t = nest({2}, (None, [(None, [(None, []), (None, [])]), (None, [])]))
    _, incl = tb.induced_subtree(t, [0, 1, 4], "tw")
    dom = tb.level_dominate(incl, "tw")
    assert dom.tree.canonical_key() == tc.canonicalize(t)[0].canonical_key()


def test_level_domination_equalizes_across_branches():
    t = nest(M12, (None, [(None, [(None, [(None, [])])]), (None, [(None, [])])]))
    _, incl = tb.induced_subtree(t, [0, 1, 3, 4, 5], "tw")
    assert not tc.is_valid_morphism(incl, leveled=True, variant="tw")
    dom = tb.level_dominate(incl, "tw")
    assert tc.is_valid_morphism(dom.composite, leveled=True, variant="tw")


@pytest.mark.parametrize("seed", range(4))
def test_level_domination_random(seed):
    rng = random.Random(seed)
    count = 0
    while count < 40:
        mset = rng.choice([{1}, {1, 2}, {2, 3}])
        t = tg.random_tree(rng, mset, rng.randrange(2, 9), "tw")
        s = tg.random_tree(rng, mset, rng.randrange(1, 4), "tw")
        embs = tc.enumerate_embeddings(s, t, leveled=False, variant="tw")
        if not embs:
            continue
        f = embs[rng.randrange(len(embs))]
        dom = tb.level_dominate(f, "tw")
        assert tc.is_valid_morphism(dom.composite, leveled=True, variant="tw")
        assert tc.is_valid_morphism(dom.pad, leveled=False, variant="tw")
        assert tc.tree_violations(dom.tree, "tw") == []
        count += 1


def test_join_trees():
    rng = random.Random(3)
    t1 = tg.random_tree(rng, M12, 4, "tw")
    t2 = tg.random_tree(rng, M12, 5, "tw")
    z, e1, e2 = tb.join_trees(t1, t2, "tw")
    assert tc.is_valid_morphism(e1) and tc.is_valid_morphism(e2)
    c1 = tg.random_tree(rng, frozenset({1}), 3, "ta")
    c2 = tg.random_tree(rng, frozenset({1}), 5, "ta")
    z2, g1, g2 = tb.join_trees(c1, c2, "ta")
    assert tc.is_valid_morphism(g1, variant="ta") and tc.is_valid_morphism(g2, variant="ta")


def test_build_v_values():
    v23 = tv.build_v(2, 3)
    assert v23.n_nodes == 7
    full = nest({2}, (None, [(None, [(None, []), (None, [])]), (None, [(None, []), (None, [])])]))
    assert v23.canonical_key() == full.canonical_key()
    for s in range(1, 4):
        for y in range(5):
            assert tv.build_v(s, y).n_nodes == tv.v_size_formula(s, y)
    chain4 = tv.build_v(1, 4)
    assert chain4.n_nodes == 4 and all(chain4.spl(v) <= 1 for v in chain4.nodes())


def test_prune_v():
    pruned = tv.prune_v(
        3, 3, lambda p: frozenset({0, 2}) if len(p) == 0 else frozenset({0}), {1, 2}
    )
    assert pruned.n_nodes == 5  # root, two children, one grandchild each
    assert tc.tree_violations(pruned, "tw") == []
    with pytest.raises(InputError):
        tv.prune_v(2, 3, lambda p: frozenset({1}))  # 0 missing from a color
    with pytest.raises(InputError):
        tv.prune_v(3, 3, lambda p: frozenset({0, 1}), m_set={1})  # degree 2 not in M


def test_every_tree_builds_from_one_step_extensions():
    # reconstructibility: decompose to canonical data, rebuild from the root
    rng = random.Random(9)
    for _ in range(40):
        t = tg.random_tree(rng, M12, rng.randrange(1, 9), "tw")
        root_only, incl = tb.induced_subtree(t, [t.root], "tw")
        parts = tb.canonical_terminal_form(incl, "tw")
        rebuilt, _ = tb.recompose_terminal(root_only, parts, "tw")
        assert rebuilt.canonical_key() == tc.canonicalize(t)[0].canonical_key()
