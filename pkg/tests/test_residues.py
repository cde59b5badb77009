import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zsindex import (
    GroupOrder,
    InvalidModulus,
    NotAUnit,
    factorize,
    mod_inverse,
    reduce_mod,
    units,
)


class TestReduceMod:
    def test_negative_input(self):
        assert reduce_mod(-3, factorize(10)).value == 7

    def test_zero_element_maps_to_n(self):
        assert reduce_mod(70, factorize(35)).value == 35

    def test_long_division(self):
        # 744 - 21 * 35 = 9
        assert reduce_mod(744, factorize(35)).value == 9

    def test_exhaustive_window_and_congruence(self):
        for n in range(2, 101):
            group = factorize(n)
            for x in range(-10 * n, 10 * n + 1):
                r = reduce_mod(x, group).value
                assert 1 <= r <= n
                assert (r - x) % n == 0

    @given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), st.integers(2, 500))
    def test_additivity(self, x, y, n):
        group = factorize(n)
        lhs = reduce_mod(x + y, group).value
        rhs = reduce_mod(reduce_mod(x, group).value + reduce_mod(y, group).value, group)
        assert lhs == rhs.value


class TestUnits:
    def test_units_of_10(self):
        assert list(units(factorize(10))) == [1, 3, 7, 9]

    def test_units_of_2(self):
        assert list(units(factorize(2))) == [1]

    def test_unit_count_is_totient(self):
        group = factorize(35)
        stream = list(units(group))
        assert len(stream) == 24
        assert stream == sorted(stream)
        assert group.totient() == 24

    def test_totient_matches_gcd_count(self):
        for n in range(2, 200):
            group = factorize(n)
            assert group.totient() == sum(
                1 for m in range(1, n + 1) if math.gcd(m, n) == 1
            )

    def test_closure_under_inverse_and_product(self):
        for n in (9, 10, 24, 35):
            group = factorize(n)
            members = set(units(group))
            for m in members:
                assert mod_inverse(m, group) in members
                for other in members:
                    assert reduce_mod(m * other, group).value in members


class TestModInverse:
    def test_identity(self):
        assert mod_inverse(1, factorize(10)) == 1

    def test_known_inverses(self):
        group = factorize(35)
        assert mod_inverse(24, group) == 19  # 24 * 19 = 456 = 13 * 35 + 1
        assert mod_inverse(9, group) == 4

    def test_not_a_unit(self):
        with pytest.raises(NotAUnit):
            mod_inverse(10, factorize(35))

    @given(st.integers(2, 2000))
    def test_inverse_round_trip(self, n):
        group = factorize(n)
        for m in list(units(group))[:20]:
            v = mod_inverse(m, group)
            assert (m * v) % n == 1 % n


class TestFactorize:
    def test_two_primes(self):
        assert factorize(35).factors == ((5, 1), (7, 1))

    def test_prime_squares(self):
        assert factorize(1225).factors == ((5, 2), (7, 2))

    def test_prime(self):
        assert factorize(7).factors == ((7, 1),)

    @pytest.mark.parametrize("bad", [1, 0, -5])
    def test_invalid_modulus(self, bad):
        with pytest.raises(InvalidModulus):
            factorize(bad)

    def test_round_trip_small_exhaustive(self):
        for n in range(2, 5001):
            group = factorize(n)
            product = 1
            for p, alpha in group.factors:
                product *= p**alpha
            assert product == n

    @given(st.integers(2, 10**6))
    def test_round_trip_sampled(self, n):
        group = factorize(n)
        product = 1
        previous = 1
        for p, alpha in group.factors:
            assert p > previous and alpha >= 1
            previous = p
            product *= p**alpha
        assert product == n


class TestGroupOrderValidation:
    def test_rejects_wrong_product(self):
        with pytest.raises(InvalidModulus):
            GroupOrder(10, ((2, 1), (3, 1)))

    def test_rejects_unordered_primes(self):
        with pytest.raises(InvalidModulus):
            GroupOrder(35, ((7, 1), (5, 1)))

    def test_rejects_small_modulus(self):
        with pytest.raises(InvalidModulus):
            GroupOrder(1, ())
