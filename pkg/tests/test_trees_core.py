import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakramsey.trees import core as tc
from weakramsey.trees import gen as tg
from weakramsey.trees.build import induced_subtree
from weakramsey.verdicts import InputError

nest = tc.tree_from_nested


def full_binary(height):
    def go(d):
        return (None, [] if d == height - 1 else [go(d + 1), go(d + 1)])

    return nest({2}, go(0))


def chain(n, m_set=frozenset({1})):
    nested = None
    for _ in range(n):
        nested = (None, [nested] if nested else [])
    return nest(m_set, nested) if n else tc.empty_tree(m_set)


def test_validation_basics():
    assert tc.tree_violations(tc.empty_tree({1, 2}), "tw") == []
    bad = tc.LexTree(frozenset({1, 2}), (None, 0, 0, 0), ((1, 2, 3), (), (), ()), (None,) * 4)
    assert any("splitting degree" in v for v in tc.tree_violations(bad, "tw"))
    decided_terminal = nest({1, 2}, (2, []))
    assert tc.tree_violations(decided_terminal, "tc") == []
    assert tc.tree_violations(decided_terminal, "tw") != []
    assert tc.tree_violations(tc.singleton_tree({1, 2}), "ta") != []


def test_unique_level_structure_is_depth():
    t = full_binary(3)
    assert t.depths() == (0, 1, 2, 2, 1, 2, 2)
    assert t.is_balanced()


def test_embedding_counts_against_subset_oracle():
    t3 = full_binary(3)
    bush = full_binary(2)
    embs = tc.enumerate_embeddings(bush, t3, leveled=True, variant="tw")
    # independent oracle: count 3-subsets that form balanced strong subtrees
    count = 0
    for sub in itertools.combinations(range(7), 3):
        try:
            s, incl = induced_subtree(t3, sub, "tw")
        except InputError:
            continue
        if s.canonical_key() == bush.canonical_key() and tc.is_valid_morphism(incl):
            count += 1
    assert len(embs) == count == 7


def test_chain_embeddings_are_increasing_injections():
    for n in range(2, 7):
        embs = tc.enumerate_embeddings(chain(2), chain(n))
        assert len(embs) == n * (n - 1) // 2


def test_single_node_embeds_everywhere():
    t = full_binary(3)
    embs = tc.enumerate_embeddings(tc.singleton_tree({2}), t, leveled=True, variant="tw")
    assert len(embs) == t.n_nodes


def test_rigidity_random_trees():
    rng = random.Random(11)
    for _ in range(200):
        mset = rng.choice([frozenset({1}), frozenset({2}), frozenset({1, 2}), frozenset({1, 2, 3})])
        t = tg.random_tree(rng, mset, rng.randrange(1, 9), "tw")
        autos = tc.enumerate_embeddings(t, t, leveled=True, variant="tw")
        assert [m.mapping for m in autos] == [tuple(range(t.n_nodes))]


def test_morphism_validator_catches_level_breaks():
    t = nest({2}, (None, [(None, [(None, []), (None, [])]), (None, [])]))
    s, incl = induced_subtree(t, [0, 2, 4], "tw")
    assert tc.is_valid_morphism(incl, leveled=False, variant="tw")
    assert not tc.is_valid_morphism(incl, leveled=True, variant="tw")


def test_label_preservation_in_tc():
    s = nest({1, 2}, (2, []))
    t_good = nest({1, 2}, (None, [(None, []), (None, [])]))
    t_bad = nest({1, 2}, (1, []))
    good = tc.TreeMorphism(s, t_good, (0,))
    assert tc.is_valid_morphism(good, variant="tc")
    bad = tc.TreeMorphism(s, t_bad, (0,))
    assert not tc.is_valid_morphism(bad, variant="tc")
    # undecided sources may gain labels
    undec = tc.TreeMorphism(tc.singleton_tree({1, 2}), t_bad, (0,))
    assert tc.is_valid_morphism(undec, variant="tc")


def test_canonicalize_idempotent():
    rng = random.Random(5)
    for _ in range(50):
        t = tg.random_tree(rng, frozenset({1, 2}), rng.randrange(1, 8), "tc")
        canon, relabel = tc.canonicalize(t)
        assert tc.is_canonical(canon)
        assert canon.canonical_key() == t.canonical_key()


def test_lex_order_is_preorder():
    t = full_binary(3)
    pos = t.lex_position()
    for x in t.nodes():
        for y in t.nodes():
            if t.leq(x, y) and x != y:
                assert pos[x] < pos[y]


@given(st.integers(0, 10**9))
@settings(max_examples=50, deadline=None)
def test_composition_of_random_embeddings_is_embedding(seed):
    rng = random.Random(seed)
    mset = frozenset({1, 2})
    a = tg.random_tree(rng, mset, rng.randrange(1, 4), "tw")
    b = tg.random_extension(rng, a, 7, "tw").target
    f_opts = tc.enumerate_embeddings(a, b, leveled=True, variant="tw")
    if not f_opts:
        return
    f = f_opts[rng.randrange(len(f_opts))]
    c = tg.random_extension(rng, b, 11, "tw").target
    g_opts = tc.enumerate_embeddings(b, c, leveled=True, variant="tw")
    if not g_opts:
        return
    g = g_opts[rng.randrange(len(g_opts))]
    assert tc.is_valid_morphism(g.compose(f), leveled=True, variant="tw")


def test_enumeration_counts_m12():
    from collections import Counter

    trees = tg.enumerate_trees({1, 2}, 6, "tw")
    counts = Counter(t.n_nodes for t in trees)
    assert [counts[n] for n in range(7)] == [1, 1, 1, 2, 4, 9, 21]
    for t in trees:
        assert tc.tree_violations(t, "tw") == []
        assert tc.is_canonical(t)
