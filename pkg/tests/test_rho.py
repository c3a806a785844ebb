"""The radius schedule: exact values, the bit guard, and symbolic indices."""

import pytest

from pairmodel.rho import (
    MAX_RHO_BITS,
    RhoInt,
    RhoOverflowError,
    cmp_to_rho,
    rho,
    rho_plus,
    rho_value,
)


def rho_reference(n, k):
    """Independent recurrence evaluation with plain integers; written before
    the implementation values were trusted."""
    v = 0
    for _ in range(k):
        v = 2 * (n + 2) * (v + 1) * 2 ** (v + 2)
    return v


# Frozen from the reference recurrence by hand:
#   rho_0(1) = 2*2*1*2^2   = 16
#   rho_1(1) = 2*3*1*2^2   = 24
#   rho_1(2) = 2*3*25*2^26 = 10066329600
def test_frozen_values():
    assert rho_reference(0, 1) == 16
    assert rho_reference(1, 1) == 24
    assert rho_reference(1, 2) == 10066329600
    assert rho(0, 1) == 16
    assert rho(1, 1) == 24
    assert rho(1, 2) == 10066329600
    assert rho(5, 0) == 0


def test_matches_reference_on_grid():
    for n in range(0, 7):
        for k in range(0, 3):
            assert rho_value(n, k) == rho_reference(n, k)


def test_unrepresentable_values_guarded():
    # rho_n(3) has about rho_n(2) bits, far past the guard for every n.
    for n in range(0, 3):
        assert rho_value(n, 3) is None
        with pytest.raises(RhoOverflowError):
            rho(n, 3)
    # rho_0(3) is still computable with plain ints; check the guard reason.
    v = rho_reference(0, 3)
    assert v.bit_length() > MAX_RHO_BITS


def test_negative_arguments_rejected():
    with pytest.raises(ValueError):
        rho(-1, 1)
    with pytest.raises(ValueError):
        rho(1, -1)


def test_cmp_to_rho_is_exact_sign():
    for n, k in [(0, 1), (1, 1), (2, 1), (1, 2), (0, 2)]:
        v = rho_reference(n, k)
        assert cmp_to_rho(v - 1, n, k) == -1
        assert cmp_to_rho(v, n, k) == 0
        assert cmp_to_rho(v + 1, n, k) == 1
        assert cmp_to_rho(0, n, k) == -1
        assert cmp_to_rho(2 * v + 3, n, k) == 1


def test_cmp_against_unrepresentable_rho():
    # Any plain integer under the bit guard is below rho_2(3).
    assert cmp_to_rho(10**9, 2, 3) == -1
    assert cmp_to_rho(2**999_000, 2, 3) == -1
    assert cmp_to_rho(0, 2, 3) == -1


def test_rho_plus_normalizes_when_representable():
    assert rho_plus(0, 1, 0) == 16
    assert isinstance(rho_plus(0, 1, 0), int)
    assert rho_plus(1, 2, 5) == 10066329605
    assert isinstance(rho_plus(2, 3, 0), RhoInt)


def test_rhoint_ordering_ladder():
    r = rho_plus(2, 3, 0)
    below = rho_plus(2, 3, -1)
    above = rho_plus(2, 3, 1)
    assert below < r < above
    assert r > 10**9
    assert 10**9 < r
    assert not (r < 10**9)
    assert r <= r and r >= r
    assert rho_plus(2, 3, 0) < rho_plus(2, 4, 0)
    assert rho_plus(2, 3, 0) < rho_plus(3, 3, 0)
    # Crossed parameters: rho_3(3) has about rho_3(2) ~ 2^92 bits while
    # rho_2(4) has about rho_2(3) ~ 2^(4.5e12) bits.
    assert rho_plus(3, 3, 0) < rho_plus(2, 4, 0)
    assert not rho_plus(3, 3, 0) > rho_plus(2, 4, 0)


def test_rhoint_equality_and_hash():
    a = rho_plus(2, 3, 5)
    b = rho_plus(2, 3, 5)
    assert a == b
    assert hash(a) == hash(b)
    assert a != rho_plus(2, 4, 5)
    assert a != rho_plus(2, 3, 4)
    # Never value-equal to a plain int: plain leaf indices are capped well
    # below the rho guard, so the two representations cannot collide.
    assert a != 10**9
    assert {a, b} == {a}


def test_rhoint_arithmetic_and_repr():
    r = rho_plus(2, 3, 0)
    assert repr(r) == "rho(2,3)"
    assert repr(r + 1) == "rho(2,3)+1"
    assert repr(r - 2) == "rho(2,3)-2"
    assert (r + 1) - 1 == r
    assert 1 + r == r + 1
    with pytest.raises(Exception):
        int(r)


def test_rhoint_sign_versus_reference_samples():
    # Representable thresholds expressed as RhoInt offsets collapse to ints,
    # so crossing comparisons stay consistent with the reference values.
    v12 = rho_reference(1, 2)
    assert rho_plus(1, 2, 1) == v12 + 1
    assert rho_plus(1, 2, -1) == v12 - 1
    big = rho_plus(1, 3, 0)
    assert isinstance(big, RhoInt)
    assert big > v12
