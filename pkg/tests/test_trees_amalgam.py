import random
from collections import Counter

import pytest

from weakramsey.trees import amalgam as ta
from weakramsey.trees import build as tb
from weakramsey.trees import core as tc
from weakramsey.trees import gen as tg

nest = tc.tree_from_nested


def test_case_i_hand_oracle():
    """Two binary bushes over a single shared node: 7 nodes, paired leaves."""
    single = tc.singleton_tree({2})
    bush = nest({2}, (None, [(None, []), (None, [])]))
    f1 = tb.terminal_plant(single, 0, bush).base
    f2 = tb.terminal_plant(single, 0, bush).base
    am = ta.amalgamate(f1, f2, "tw")
    assert am.tree.n_nodes == 7
    assert Counter(am.tree.depths()) == {0: 1, 1: 2, 2: 4}
    # leaves pair up: each column root holds one leg-1 and one leg-2 leaf
    img1 = set(am.leg1.mapping) - {am.leg1.mapping[0]}
    img2 = set(am.leg2.mapping) - {am.leg2.mapping[0]}
    for col_root in am.tree.children[am.tree.root]:
        kids = set(am.tree.children[col_root])
        assert len(kids & img1) == 1 and len(kids & img2) == 1


def test_disjoint_plantings_are_free():
    s = nest({1, 2}, (None, [(None, []), (None, [])]))
    p1 = tb.terminal_plant(s, 1, nest({1, 2}, (None, [(None, [])]))).base
    p2 = tb.terminal_plant(s, 2, nest({1, 2}, (None, [(None, []), (None, [])]))).base
    am = ta.amalgamate(p1, p2, "tw")
    assert am.tree.n_nodes == p1.target.n_nodes + p2.target.n_nodes - s.n_nodes


def test_trivial_amalgamation():
    s = nest({1, 2}, (None, [(None, []), (None, [])]))
    idm = tc.identity_morphism(s)
    am = ta.amalgamate(idm, idm, "tw")
    assert am.tree.canonical_key() == s.canonical_key()


def test_incompatible_pair_certificate():
    s = tc.singleton_tree({1, 2})
    d1 = tc.TreeMorphism(s, nest({1, 2}, (1, [])), (0,))
    d2 = tc.TreeMorphism(s, nest({1, 2}, (2, [])), (0,))
    with pytest.raises(ta.IncompatibleExtensions) as exc:
        ta.amalgamate(d1, d2, "tc")
    assert exc.value.nodes == (0,)
    assert ta.nodes_of_incompatibility(d1, d2) == [0]


def test_decided_source_is_always_compatible():
    rng = random.Random(17)
    for _ in range(80):
        mset = rng.choice([{1, 2}, {2, 3}])
        s = tg.random_tree(rng, mset, rng.randrange(1, 5), "ta")
        f1 = tg.random_extension(rng, s, 9, "ta")
        f2 = tg.random_extension(rng, s, 9, "ta")
        assert ta.nodes_of_incompatibility(f1, f2) == []


def test_chain_merge():
    c2 = nest({1}, (None, [(None, [])]))
    c4 = nest({1}, (None, [(None, [(None, [(None, [])])])]))
    inc = tc.enumerate_embeddings(c2, c4)[0]
    am = ta.amalgamate(inc, inc, "tw")
    assert am.tree.n_nodes == 6
    assert am.trace == ("chain-merge",)


def test_empty_base_join():
    e = tc.empty_tree({1, 2})
    t1 = nest({1, 2}, (None, [(None, [])]))
    t2 = nest({1, 2}, (None, [(None, []), (None, [])]))
    am = ta.amalgamate(tc.TreeMorphism(e, t1, ()), tc.TreeMorphism(e, t2, ()), "tw")
    assert am.leg1.image().isdisjoint(am.leg2.image())


CASES = Counter()


@pytest.mark.parametrize("seed", range(10))
def test_random_compatible_pairs_all_variants(seed):
    """Legs validate, commute on the base, and glue exactly on the base."""
    rng = random.Random(1000 + seed)
    done = 0
    while done < 60:
        variant = rng.choice(["tw", "tc", "ta"])
        mset = rng.choice([{1}, {2}, {3}, {1, 2}, {2, 3}, {1, 2, 3}])
        s = tg.random_tree(rng, mset, rng.randrange(1, 6), variant)
        f1 = tg.random_extension(rng, s, 10, variant)
        f2 = tg.random_extension(rng, s, 10, variant)
        try:
            am = ta.amalgamate(f1, f2, variant)  # validates internally
        except ta.IncompatibleExtensions:
            continue
        CASES[am.trace[0] if am.trace else "?"] += 1
        # independent re-checks beyond the construction's own validation
        assert tc.is_valid_morphism(am.leg1, leveled=True, variant=variant)
        assert tc.is_valid_morphism(am.leg2, leveled=True, variant=variant)
        assert am.leg1.compose(f1).mapping == am.leg2.compose(f2).mapping
        assert am.leg1.image() & am.leg2.image() == frozenset(
            am.leg1.compose(f1).mapping
        )
        done += 1


def test_all_dispatch_cases_exercised():
    # runs after the parametrized suite above filled CASES
    assert {
        "case:terminal+terminal",
        "case:terminal+nonterminal",
        "case:nonterminal+terminal",
        "case:nonterminal+nonterminal",
        "case:general-pipeline",
        "chain-merge",
    } <= set(CASES)


def test_case_iv_orientation():
    """Terminal input embeds non-terminally in the amalgam and vice versa."""
    rng = random.Random(99)
    checked = 0
    while checked < 40:
        variant = rng.choice(["tw", "tc", "ta"])
        mset = rng.choice([{2}, {1, 2}, {2, 3}])
        s = tg.random_tree(rng, mset, rng.randrange(1, 5), variant)
        f1 = tg.random_extension(rng, s, 9, variant)
        f2 = tg.random_extension(rng, s, 9, variant)
        k1, k2 = tb.extension_kind(f1), tb.extension_kind(f2)
        if {k1, k2} != {"terminal", "nonterminal"}:
            continue
        if f1.target.n_nodes == s.n_nodes or f2.target.n_nodes == s.n_nodes:
            continue
        try:
            am = ta.amalgamate(f1, f2, variant)
        except ta.IncompatibleExtensions:
            continue
        term_leg = am.leg1 if k1 == "terminal" else am.leg2
        nt_leg = am.leg2 if k1 == "terminal" else am.leg1
        assert tb.extension_kind(nt_leg) == "terminal"
        assert tb.extension_kind(term_leg) == "nonterminal"
        checked += 1


def test_leveless_amalgamation():
    rng = random.Random(7)
    done = 0
    while done < 40:
        variant = rng.choice(["tw", "tc"])
        mset = rng.choice([{1, 2}, {2}])
        s = tg.random_tree(rng, mset, rng.randrange(1, 4), variant)
        legs = []
        ok = True
        for _ in range(2):
            t = tg.random_extension(rng, s, 8, variant).target
            embs = tc.enumerate_embeddings(s, t, leveled=False, variant=variant)
            if not embs:
                ok = False
                break
            legs.append(embs[rng.randrange(len(embs))])
        if not ok:
            continue
        try:
            am = ta.amalgamate(legs[0], legs[1], variant, leveled=False)
        except ta.IncompatibleExtensions:
            continue
        assert am.trace[0] == "level-dominate"
        for leg in (am.leg1, am.leg2):
            assert tc.is_valid_morphism(leg, leveled=False, variant=variant)
        done += 1
