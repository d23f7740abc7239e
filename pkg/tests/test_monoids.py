import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakramsey import monoids as mo
from weakramsey.verdicts import InputError


def table(*rows):
    return mo.FiniteMonoid(tuple(tuple(r) for r in rows))


Z2 = table((0, 1), (1, 0))
LEFT_ZERO = table((0, 1), (1, 1))  # {1, z} with z*x = z
MAX3 = table((0, 1, 2), (1, 1, 2), (2, 2, 2))  # truncated max monoid
RIGHT_ZERO = table((0, 1, 2), (1, 1, 2), (2, 1, 2))  # {1, z1, z2}, zi*zj = zj
TRIVIAL = table((0,))


def test_validation_rejects_bad_tables():
    with pytest.raises(InputError):
        mo.FiniteMonoid(((1, 0), (0, 1)))  # no unit at index 0
    with pytest.raises(InputError):
        mo.FiniteMonoid(((0, 1), (1, 2)))  # entry out of range


def test_left_right_zeros():
    assert mo.left_zeros(LEFT_ZERO) == {1}
    assert mo.left_zeros(MAX3) == {2} == mo.right_zeros(MAX3)
    assert mo.left_zeros(Z2) == frozenset() == mo.right_zeros(Z2)
    assert mo.right_zeros(RIGHT_ZERO) == {1, 2}


def test_satisfies_le_examples():
    assert mo.satisfies_LE(RIGHT_ZERO, 1)  # right zero: M*z singleton
    assert mo.satisfies_LE(MAX3, 0)  # e = 2 equalizes everything
    assert not mo.satisfies_LE(Z2, 0)  # cancellative
    assert mo.satisfies_LE(TRIVIAL, 0)


def test_ramsey_element_examples():
    assert mo.is_ramsey_element(RIGHT_ZERO, 1).is_yes
    v = mo.is_ramsey_element(RIGHT_ZERO, 0)
    assert v.is_no and "pair" in v.payload
    assert mo.is_ramsey_element(TRIVIAL, 0).is_yes


def test_ramsey_no_certificate_rechecks():
    v = mo.is_ramsey_element(RIGHT_ZERO, 0)
    x, y = v.payload["pair"]
    assert not any(
        RIGHT_ZERO.mul(e, x) == RIGHT_ZERO.mul(e, y) for e in RIGHT_ZERO.elements()
    )


def test_has_ramsey_property():
    assert mo.has_ramsey_property(MAX3)
    assert not mo.has_ramsey_property(Z2)
    assert mo.has_ramsey_property(LEFT_ZERO)
    assert not mo.has_ramsey_property(RIGHT_ZERO)


def test_weak_ramsey_property():
    assert mo.has_weak_ramsey_property(RIGHT_ZERO).is_yes
    assert mo.has_weak_ramsey_property(TRIVIAL).is_yes
    assert mo.has_weak_ramsey_property(Z2).is_no


def test_classification_flags():
    assert mo.classify_monoid(MAX3) == {
        "idempotent": True,
        "commutative": True,
        "semilattice": True,
        "left_zero": False,
        "right_zero": False,
        "left_cancellative": False,
    }
    rz = mo.classify_monoid(RIGHT_ZERO)
    assert rz["idempotent"] and rz["right_zero"] and not rz["semilattice"]
    z2 = mo.classify_monoid(Z2)
    assert z2["commutative"] and z2["left_cancellative"] and not z2["idempotent"]


def test_enumeration_counts():
    assert len(list(mo.enumerate_monoids(1))) == 1
    assert len(list(mo.enumerate_monoids(2))) == 2
    # frozen regression from the brute-force oracle
    assert len(list(mo.enumerate_monoids(3))) == 7


@pytest.mark.slow
def test_enumeration_count_order4():
    assert len(list(mo.enumerate_monoids(4))) == 35


def test_enumeration_range_guard():
    with pytest.raises(InputError):
        list(mo.enumerate_monoids(5))


all_small_monoids = [m for n in (1, 2, 3) for m in mo.enumerate_monoids(n)]


@pytest.mark.parametrize("m", all_small_monoids)
def test_absorption_relation_invariants(m):
    rel = mo.absorption_relation(m)
    assert rel.violations() == []


@pytest.mark.parametrize("m", all_small_monoids)
def test_semilattice_monoids_are_ramsey(m):
    if mo.classify_monoid(m)["semilattice"]:
        assert mo.has_ramsey_property(m)


@given(st.integers(0, 10**9))
@settings(max_examples=60, deadline=None)
def test_random_order4_monoids_are_associative_with_unit(seed):
    (m,) = mo.random_monoids(4, 1, seed)
    assert m.order == 4  # construction validates associativity and unit laws


@given(st.sampled_from(all_small_monoids))
def test_le_implies_ramsey(m):
    for a in m.elements():
        if mo.satisfies_LE(m, a):
            assert mo.is_ramsey_element(m, a).is_yes


def test_word_monoid_families():
    free = mo.WordMonoid(("x",))
    assert free.has_weak_ramsey_property().is_no
    assert not free.satisfies_LE(free.generator(0))
    wz = mo.WordMonoid(("x",), right_zero=True)
    assert wz.is_ramsey_element(wz.zero()).is_yes
    assert wz.is_ramsey_element(wz.unit()).is_no
    assert wz.has_weak_ramsey_property().is_yes
    assert wz.has_ramsey_property().is_no
    # words containing the zero absorb everything to their left
    w = wz.mul(wz.generator(0), wz.zero())
    assert w == wz.zero()
    assert wz.satisfies_LE(wz.mul(wz.zero(), wz.generator(0)))


def test_word_monoid_parity_certificate_shape():
    free = mo.WordMonoid(("x", "y"))
    v = free.is_ramsey_element(free.unit())
    assert v.is_no and v.payload["certificate"]["kind"] == "parity-coloring"
