"""Exact phase arithmetic and cyclotomic-integer sums."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dwcat.phases import HALF, ZERO_PHASE, CycloSum, Phase

nums = st.integers(min_value=-400, max_value=400)
dens = st.integers(min_value=1, max_value=60)


class TestPhase:
    def test_canonical_form(self):
        assert Phase(5, 10) == Phase(1, 2)
        assert Phase(-1, 3) == Phase(2, 3)
        assert Phase(7, 7) == ZERO_PHASE
        assert Phase(0, 12) == Phase(0, 1)
        assert HALF == Phase(3, 6)

    def test_den_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            Phase(1, 0)

    def test_negative_den_normalizes(self):
        assert Phase(1, -3) == Phase(-1, 3) == Phase(2, 3)

    @given(nums, dens)
    def test_reduced(self, n, d):
        p = Phase(n, d)
        assert 0 <= p.num < p.den
        assert math.gcd(p.num, p.den) == 1

    @given(nums, dens, nums, dens)
    def test_group_laws(self, a, b, c, d):
        p, q = Phase(a, b), Phase(c, d)
        assert p + q == q + p
        assert (p + q) - q == p
        assert p + ZERO_PHASE == p
        assert p + (-p) == ZERO_PHASE

    @given(nums, dens)
    def test_parse_roundtrip(self, n, d):
        p = Phase(n, d)
        assert Phase.parse(p.as_fraction_str()) == p

    def test_parse_rejects_junk(self):
        for bad in ("", "1/", "/2", "x/y", "1.5"):
            with pytest.raises(ValueError):
                Phase.parse(bad)
        with pytest.raises(ZeroDivisionError):
            Phase.parse("1/0")

    @given(nums, dens)
    def test_scaled_num(self, n, d):
        p = Phase(n, d)
        M = p.den * 7
        assert Phase(p.scaled_num(M), M) == p

    def test_scaled_num_needs_divisibility(self):
        with pytest.raises(ValueError):
            Phase(1, 3).scaled_num(4)

    def test_order(self):
        assert Phase(1, 6).order == 6
        assert Phase(2, 6).order == 3
        assert Phase(0, 1).order == 1
        assert Phase(3, 4).order == 4


class TestCycloSum:
    def test_unit_laws(self):
        one, zero = CycloSum.one(), CycloSum.zero()
        assert (one + zero) == one
        assert zero.is_zero()
        assert not one.is_zero()
        assert one.as_integer() == 1

    @given(nums, dens, nums, dens)
    def test_root_multiplication_is_phase_addition(self, a, b, c, d):
        p, q = Phase(a, b), Phase(c, d)
        lhs = CycloSum.from_phase(p) * CycloSum.from_phase(q)
        rhs = CycloSum.from_phase(p + q)
        assert (lhs - rhs).is_zero()

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 9, 12])
    def test_full_orbit_vanishes(self, n):
        # 1 + zeta + ... + zeta^{n-1} = 0 for every primitive n-th root
        s = CycloSum.from_phases(Phase(k, n) for k in range(n))
        assert s.is_zero()

    @pytest.mark.parametrize("n", [3, 4, 5, 7, 9])
    def test_partial_orbit_does_not_vanish(self, n):
        s = CycloSum.from_phases(Phase(k, n) for k in range(n - 1))
        assert not s.is_zero()

    def test_minus_one_relation(self):
        assert (CycloSum.from_phase(HALF) + CycloSum.one()).is_zero()

    def test_as_integer_is_none_off_the_integers(self):
        assert CycloSum.from_phase(Phase(1, 3)).as_integer() is None
        assert CycloSum.from_phase(Phase(1, 2)).as_integer() == -1

    def test_scalar_multiplication(self):
        s = CycloSum.one() * 3
        assert s.as_integer() == 3
        assert (s * 0).is_zero()

    @given(
        st.lists(
            st.tuples(st.integers(0, 11), st.integers(-3, 3)),
            max_size=6,
        )
    )
    def test_is_zero_matches_complex_evaluation(self, terms):
        # independent oracle: evaluate the sum numerically
        s = CycloSum.zero()
        z = 0j
        for k, c in terms:
            s = s + CycloSum.from_phase(Phase(k, 12)) * c
            z += c * complex(
                math.cos(2 * math.pi * k / 12), math.sin(2 * math.pi * k / 12)
            )
        assert s.is_zero() == (abs(z) < 1e-9)
