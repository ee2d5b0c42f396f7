"""Exact arithmetic in K = Q(sqrt p): valuations, inverses, rounding."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padicglue import FieldConfig, KElement, ValExp, is_prime, reduce_mod, uniformizer_power

K3 = FieldConfig(3)


def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1)
    assert not is_prime(-3)


def test_field_config_rejects_composite():
    with pytest.raises(ValueError):
        FieldConfig(6)


class TestValExp:
    def test_half_integer_grid_only(self):
        assert ValExp(Fraction(7, 2)).exp == Fraction(7, 2)
        with pytest.raises(ValueError):
            ValExp(Fraction(1, 3))

    def test_ordering_with_infinity(self):
        fin = ValExp(2)
        inf = ValExp.infinite()
        assert fin < inf
        assert inf > fin
        assert inf == ValExp(None)
        assert sorted([inf, ValExp(0), fin]) == [ValExp(0), fin, inf]

    def test_comparisons_against_plain_numbers(self):
        assert ValExp(Fraction(3, 2)) > 1
        assert ValExp(2) == 2
        assert ValExp.infinite() > 10**9

    def test_addition_absorbs_infinity(self):
        assert (ValExp(1) + ValExp(2)).exp == 3
        assert (ValExp(1) + ValExp.infinite()).is_infinite

    def test_negative_multiples_of_infinity_rejected(self):
        with pytest.raises(ValueError):
            ValExp.infinite() * 0

    def test_immutable(self):
        v = ValExp(1)
        with pytest.raises(AttributeError):
            v.exp = 2


class TestValuationOracles:
    def test_rational_powers(self):
        assert K3(9).valuation() == 2
        assert K3(Fraction(1, 3)).valuation() == -1
        assert K3(0).valuation().is_infinite

    def test_sqrt_p_has_valuation_one_half(self):
        assert K3(0, 1).valuation() == Fraction(1, 2)

    def test_mixed_term_takes_minimum(self):
        # v(1/3) = -1 beats v(sqrt 3) = 1/2; the two parts can never tie
        assert K3(Fraction(1, 3), 1).valuation() == -1
        assert K3(3, 1).valuation() == Fraction(1, 2)

    @given(st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4),
           st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4))
    def test_parts_never_share_a_valuation(self, a, b):
        x = K3(a, b)
        if a and b:
            va = K3(a).valuation().exp
            vb = K3(0, b).valuation().exp
            assert va != vb
            assert x.valuation().exp == min(va, vb)


class TestFieldArithmetic:
    def test_inverse_oracle(self):
        x = K3(1, 1)
        assert x.inverse() == K3(Fraction(-1, 2), Fraction(1, 2))
        assert x * x.inverse() == K3(1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            K3(0).inverse()

    def test_integer_coercion_and_cross_prime_guard(self):
        assert K3(2) + 1 == K3(3)
        with pytest.raises(ValueError):
            K3(1) + FieldConfig(5)(1)

    def test_cross_prime_rational_equality(self):
        assert K3(7) == FieldConfig(5)(7)
        assert K3(0, 1) != FieldConfig(5)(0, 1)

    def test_pow_negative_exponent(self):
        x = K3(1, 1)
        assert x**-2 == (x.inverse()) ** 2
        assert x**0 == K3(1)

    def test_conjugate_norm_is_rational(self):
        x = K3(Fraction(2, 3), Fraction(5, 7))
        n = x * x.conjugate()
        assert n.is_rational
        assert n.rational_value == Fraction(2, 3) ** 2 - 3 * Fraction(5, 7) ** 2

    def test_hash_matches_rational_equality(self):
        assert hash(K3(Fraction(5, 2))) == hash(Fraction(5, 2))
        assert K3(Fraction(5, 2)) == Fraction(5, 2)


def test_uniformizer_power_oracle():
    assert uniformizer_power(3, 1) == K3(3)
    assert uniformizer_power(3, Fraction(3, 2)) == K3(0, 3)
    assert uniformizer_power(3, Fraction(-1, 2)) == K3(0, Fraction(1, 3))
    with pytest.raises(ValueError):
        uniformizer_power(3, Fraction(1, 3))


@given(
    st.fractions(min_value=-10**8, max_value=10**8, max_denominator=10**6),
    st.fractions(min_value=-10**8, max_value=10**8, max_denominator=10**6),
    st.integers(min_value=1, max_value=12),
)
def test_reduce_mod_property(a, b, m):
    """The canonical representative differs from x by valuation >= m and
    has small coordinates."""
    x = K3(a, b)
    r = reduce_mod(x, m)
    assert (x - r).valuation() >= m


def test_reduce_mod_fixes_small_integers():
    assert reduce_mod(K3(7, 2), 4) == K3(7, 2)
    assert reduce_mod(K3(3**9), 4) == K3(0)


@given(
    st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4),
    st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4),
    st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4),
    st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4),
)
def test_ultrametric_and_multiplicativity(a, b, c, d):
    x, y = K3(a, b), K3(c, d)
    vx, vy = x.valuation(), y.valuation()
    assert (x * y).valuation() == vx + vy
    vsum = (x + y).valuation()
    assert vsum >= min(vx, vy)
    if vx != vy:
        assert vsum == min(vx, vy)
