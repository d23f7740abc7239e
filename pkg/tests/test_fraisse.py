import pytest

from weakramsey import fraisse as fr
from weakramsey.categories.order_cat import FinLinearOrders
from weakramsey.categories.tree_cat import TreeCategory
from weakramsey.verdicts import InputError, SearchBudget

LO = FinLinearOrders()
BUILD = SearchBudget(max_size=3, max_candidates=30)
CHECK = SearchBudget(max_size=4, max_candidates=25)


@pytest.fixture(scope="module")
def lo_prefix():
    return fr.build_weak_fraisse_prefix(LO, 6, BUILD)


def test_prefix_functoriality(lo_prefix):
    assert lo_prefix.functoriality_violations() == []
    assert lo_prefix.arrow(2, 2).data == LO.identity(lo_prefix.objects[2]).data


def test_w0_examples(lo_prefix):
    assert fr.verify_W0(lo_prefix, 3).is_yes
    constant = fr.SequencePrefix(LO, (1, 1), (LO.identity(1),))
    v = fr.verify_W0(constant, 2)
    assert v.is_no and v.payload["certificate"] == {"kind": "linear", "n": 2}


def test_w1_linear_orders_m_equals_n(lo_prefix):
    for n in range(len(lo_prefix)):
        v = fr.verify_W1_step(lo_prefix, n, CHECK)
        assert v.is_yes and v.payload["m"] == n


def test_w1_constant_amalgamable_sequence():
    constant = fr.SequencePrefix(LO, (2, 2), (LO.identity(2),))
    v = fr.verify_W1_step(constant, 0, CHECK)
    assert v.is_yes and v.payload["m"] == 0


def test_decided_tree_prefix():
    ta = TreeCategory({1, 2}, "ta")
    prefix = fr.build_weak_fraisse_prefix(ta, 5, SearchBudget(max_size=3, max_candidates=30))
    assert len(prefix) == 5
    assert prefix.functoriality_violations() == []
    assert fr.verify_W0(prefix, 3).is_yes
    for n in range(len(prefix)):
        v = fr.verify_W1_step(prefix, n, SearchBudget(max_size=3, max_candidates=10))
        assert v.is_yes and v.payload["m"] == n


def test_length_one_prefix():
    prefix = fr.build_weak_fraisse_prefix(LO, 1, BUILD)
    assert len(prefix) == 1 and prefix.functoriality_violations() == []


def test_zigzag_between_independent_chain_prefixes(lo_prefix):
    other = fr.build_weak_fraisse_prefix(LO, 8, SearchBudget(max_size=5, max_candidates=12))
    zz = fr.back_and_forth(lo_prefix, other, 2, CHECK)
    assert zz.identity_violations() == []
    assert list(zz.k_indices) == sorted(set(zz.k_indices))  # strictly increasing


def test_zigzag_self(lo_prefix):
    zz = fr.back_and_forth(lo_prefix, lo_prefix, 2, CHECK)
    assert zz.identity_violations() == []


def test_zigzag_tree_prefixes():
    ta = TreeCategory({2}, "ta")
    left = fr.build_weak_fraisse_prefix(ta, 4, SearchBudget(max_size=3, max_candidates=10))
    right = fr.build_weak_fraisse_prefix(ta, 5, SearchBudget(max_size=4, max_candidates=6))
    zz = fr.back_and_forth(left, right, 2, CHECK)
    assert zz.identity_violations() == []


def test_zigzag_budget_exhaustion():
    tiny = fr.SequencePrefix(LO, (0,), ())
    with pytest.raises(InputError):
        fr.back_and_forth(tiny, tiny, 1, CHECK)


def test_generic_coloring_prefix():
    cc = fr.generic_coloring_prefix(("a", "b"), 2)
    assert cc.rounds == 2
    pos = {pid: i for i, pid in enumerate(cc.point_ids)}
    stage1 = [pid for pid in cc.point_ids if pid in set(cc.stages[1])]
    for u, w in zip(stage1, stage1[1:]):
        between = {cc.sequence[i] for i in range(pos[u] + 1, pos[w])}
        assert between == {0, 1}
    # stages nest and order is preserved (each stage embeds into the next)
    for r in range(cc.rounds):
        sub = [pid for pid in cc.point_ids if pid in set(cc.stages[r])]
        assert sub == list(cc.stages[r])


def test_generic_coloring_single_color():
    cc = fr.generic_coloring_prefix(("only",), 3)
    assert set(cc.sequence) == {0}


def test_generic_coloring_rejects_empty_palette():
    with pytest.raises(InputError):
        fr.generic_coloring_prefix((), 1)
