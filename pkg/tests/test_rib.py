"""Arithmetic and divisibility in rib coefficient groups."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oagkit.rib import (OMEGA_UNIT, RIB_ONE, RIB_ZERO, RibElement, RibSpec,
                        q_rib, r_proxy_rib, rib_contains, rib_divisible,
                        rib_elem_equiv, rib_min_positive, rib_pair_stably_embedded,
                        rib_residue, rib_stably_embedded, script_z_rib,
                        window_rib, z_local_rib, z_rib)

rib_elems = st.builds(
    RibElement,
    st.fractions(min_value=-30, max_value=30, max_denominator=6),
    st.integers(min_value=-4, max_value=4))


@given(rib_elems, rib_elems, rib_elems)
def test_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + RIB_ZERO == a
    assert a + (-a) == RIB_ZERO


@given(rib_elems, rib_elems)
def test_order_respects_addition(a, b):
    if a.sign > 0 and b.sign > 0:
        assert (a + b).sign > 0
    assert (a - b).sign == -((b - a).sign)


def test_window_order_is_lexicographic_in_w():
    small = RibElement(Fraction(10**6), 0)
    assert (OMEGA_UNIT - small).sign > 0
    assert (-OMEGA_UNIT + small).sign < 0


@given(rib_elems, st.integers(min_value=-5, max_value=5))
def test_scaling(a, k):
    assert a.scale(k) == a * k
    total = RIB_ZERO
    for _ in range(abs(k)):
        total = total + a
    if k < 0:
        total = -total
    assert a.scale(k) == total


def test_membership_per_domain():
    assert rib_contains(z_rib(), RIB_ONE)
    assert not rib_contains(z_rib(), RibElement(Fraction(1, 2)))
    assert rib_contains(q_rib(), RibElement(Fraction(22, 7)))
    assert rib_contains(z_local_rib(2), RibElement(Fraction(5, 3)))
    assert not rib_contains(z_local_rib(2), RibElement(Fraction(3, 2)))
    assert rib_contains(window_rib(), OMEGA_UNIT + RIB_ONE)
    assert not rib_contains(window_rib(), RibElement(Fraction(1, 2)))


def test_divisibility_and_witnesses():
    ok, w = rib_divisible(z_rib(), RibElement(Fraction(6)), 3)
    assert ok and w == RibElement(Fraction(2))
    ok, w = rib_divisible(z_rib(), RibElement(Fraction(5)), 3)
    assert not ok
    ok, w = rib_divisible(q_rib(), RibElement(Fraction(5)), 3)
    assert ok and w == RibElement(Fraction(5, 3))
    ok, w = rib_divisible(z_local_rib(3), RibElement(Fraction(5)), 2)
    assert ok and w == RibElement(Fraction(5, 2))
    ok, w = rib_divisible(z_local_rib(3), RibElement(Fraction(5)), 3)
    assert not ok


def test_residue_ranges_over_modulus():
    seen = {rib_residue(z_rib(), RibElement(Fraction(n)), 4)
            for n in range(-8, 9)}
    assert seen == {0, 1, 2, 3}
    with pytest.raises(Exception):
        rib_residue(q_rib(), RibElement(Fraction(7, 2)), 5)


def test_min_positive():
    assert rib_min_positive(z_rib()) == RIB_ONE
    assert rib_min_positive(q_rib()) is None
    assert rib_min_positive(window_rib()) == RIB_ONE


def test_nondivisible_primes():
    assert z_rib().nondivisible_primes is None
    assert q_rib().nondivisible_primes == ()
    assert z_local_rib(5).nondivisible_primes == (5,)
    assert script_z_rib(7).nondivisible_primes == (7,)


def test_discreteness():
    assert z_rib().discrete
    assert not q_rib().discrete
    assert window_rib().discrete


def test_single_rib_verdicts():
    assert rib_stably_embedded(z_rib())[0]
    assert rib_stably_embedded(r_proxy_rib())[0]
    assert rib_stably_embedded(script_z_rib(2))[0]
    verdict, reason = rib_stably_embedded(q_rib())
    assert not verdict
    assert reason
    assert not rib_stably_embedded(z_local_rib(2))[0]


def test_rib_pair_verdicts():
    assert rib_pair_stably_embedded(z_rib(), z_rib())[0] is True
    assert rib_pair_stably_embedded(z_rib(), window_rib())[0] is True
    verdict, _ = rib_pair_stably_embedded(z_local_rib(2), q_rib())
    assert verdict is not True


def test_elementary_equivalence_of_ribs():
    assert rib_elem_equiv(z_rib(), window_rib())
    assert not rib_elem_equiv(z_rib(), q_rib())
    assert rib_elem_equiv(q_rib(), r_proxy_rib())
    assert not rib_elem_equiv(z_local_rib(2), z_local_rib(3))


def test_domain_validation():
    with pytest.raises(Exception):
        RibSpec("bad", domain="reals")
