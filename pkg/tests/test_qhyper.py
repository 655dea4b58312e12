import math
from fractions import Fraction

import pytest
import sympy as sp

from supercong.arith import DensePoly
from supercong.local_ring import RationalFunction
from supercong.padic import h_classical
from supercong.qhyper import (
    HALF,
    HalfInteger,
    HypCase,
    c_term,
    case_registry,
    h_sum,
    harmonic_s,
    q_quotient,
    sigma_sums,
    term_ratio,
)

from . import oracle
from .oracle import rf_to_sympy

CASES = case_registry()
ids = [c.label for c in CASES]


def P(*c):
    return DensePoly(c)


class TestRegistry:
    def test_fourteen(self):
        assert len(CASES) == 14
        assert all(c.member for c in CASES)

    def test_denominators_and_mu(self):
        assert (HALF.d, HALF.mu) == (2, Fraction(1, 2))
        assert HypCase(Fraction(1, 12), Fraction(5, 12)).d == 12
        for c in CASES:
            assert c.mu == c.r1 * (1 - c.r1) + c.r2 * (1 - c.r2)
            assert (c.d * c.r1).denominator == 1 and (c.d * c.r2).denominator == 1
            assert not any((e * c.r1).denominator == 1 and (e * c.r2).denominator == 1 for e in range(1, c.d))

    def test_non_member(self):
        c = HypCase(Fraction(1, 5), Fraction(1, 5))
        assert not c.member and c.d == 5

    def test_only_cm_case(self):
        assert [c.label for c in CASES if c.is_cm] == ["1/4,1/3"]

    def test_parse(self):
        assert HypCase.parse("1/3,1/6") == HypCase(Fraction(1, 6), Fraction(1, 3))
        assert HypCase.parse("1/2") == HALF
        with pytest.raises(ValueError):
            HypCase.parse("3/2,1/2")


class TestTerms:
    def test_k0(self):
        for c in CASES:
            assert c_term(c, 0) == RationalFunction.one()

    def test_half_k1(self):
        assert c_term(HALF, 1) == RationalFunction(P(0, 0, 1), P(1, 1) ** 4)

    @pytest.mark.parametrize("case", CASES, ids=ids)
    def test_against_sympy_oracle(self, case):
        for k in range(4):
            ref = oracle.c_term(case.r1, case.r2, k)
            assert sp.cancel(rf_to_sympy(c_term(case, k)) - ref) == 0

    @pytest.mark.parametrize("case", CASES, ids=ids)
    def test_reciprocity(self, case):
        for k in range(7):
            c = c_term(case, k)
            assert c == c.invert_q()

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_half_vanishing(self, n):
        m = (n - 1) // 2
        for k in range(3 * n):
            v = c_term(HALF, k).phi_valuation(n)
            if k % n > m:
                assert v >= 4


class TestSums:
    def test_examples(self):
        for c in CASES:
            assert h_sum(c, 1, 3) == RationalFunction.one()
        assert h_sum(HALF, 2) == RationalFunction(P(1, 1) ** 4 + P(0, 0, 1), P(1, 1) ** 4)
        assert h_sum(HALF, 2, 2) == RationalFunction(P(1, 0, 1) ** 4 + P(0, 0, 0, 0, 1), P(1, 0, 1) ** 4)

    @pytest.mark.parametrize("case", CASES, ids=ids)
    def test_q_to_one(self, case):
        for N in range(1, 6):
            for e in (1, 2):
                assert h_sum(case, N, e)(1) == h_classical(case, N)

    def test_against_sympy_stretched(self):
        c = HypCase(Fraction(1, 3), Fraction(1, 3))
        ref = oracle.h_sum(c.r1, c.r2, 3, e=2)
        assert sp.cancel(rf_to_sympy(h_sum(c, 3, 2)) - ref) == 0


class TestTermRatio:
    def test_identity_cases(self):
        for c in (HALF, CASES[5]):
            for k in range(4):
                assert term_ratio(c, 0, 5, k) == c_term(c, k)
            assert term_ratio(c, 1, 5, 0) == RationalFunction.one()

    def test_minus_half_example(self):
        q = RationalFunction.poly(P(0, 1))
        expect = ((1 - q ** -2) / (1 - q ** -1)) ** 4 * q ** 2
        assert term_ratio(HALF, Fraction(-1, 2), 3, 1) == expect

    def test_inadmissible(self):
        with pytest.raises(ValueError, match="half-integer not admissible"):
            term_ratio(HypCase(Fraction(1, 3), Fraction(1, 3)), Fraction(1, 2), 5, 1)

    @pytest.mark.parametrize("case", [HALF, CASES[0], CASES[8]], ids=lambda c: c.label)
    def test_consistency(self, case):
        for n in range(2, 8):
            if math.gcd(n, case.d) != 1:
                continue
            for l in (1, 2):
                for k in range(n + 1):
                    assert term_ratio(case, l, n, k) * c_term(case, l * n) == c_term(case, l * n + k)


class TestHalfCaseObjects:
    def test_harmonic_zero(self):
        assert harmonic_s(0, 1).is_zero() and harmonic_s(0, 2).is_zero()

    def test_harmonic_one(self):
        q = RationalFunction.poly(P(0, 1))
        assert harmonic_s(1, 1) == q / (1 + q) + q**2 / (1 - q**2)

    def test_harmonic_against_definition(self):
        q = RationalFunction.poly(P(0, 1))
        for k in range(4):
            s2 = sum((q ** (2 * j) / (1 - q**j) ** 2 for j in range(1, 2 * k + 1)), RationalFunction.zero())
            s2 = s2 - 2 * sum((q ** (4 * j) / (1 - q ** (2 * j)) ** 2 for j in range(1, k + 1)), RationalFunction.zero())
            assert harmonic_s(k, 2) == s2

    def test_sigma_n3(self):
        s1, _ = sigma_sums(3)
        expect = c_term(HALF, 1) * harmonic_s(1, 1) / (c_term(HALF, 0) + c_term(HALF, 1))
        assert s1 == expect

    def test_sigma_degenerate(self):
        s1, s2 = sigma_sums(1)
        assert s1.is_zero() and s2.is_zero()

    def test_head_sum_unit(self):
        denom = c_term(HALF, 0) + c_term(HALF, 1) + c_term(HALF, 2)
        assert denom.phi_valuation(5) == 0

    def test_q_quotient(self):
        assert q_quotient(0, 5) == RationalFunction.one()
        # at q = 1 the ratios become classical: (1 + (7/8)^4) / (1 + 1/16)
        assert q_quotient(1, 3)(1) == (1 + Fraction(7, 8) ** 4) / Fraction(17, 16)
        for n in (3, 5):
            assert q_quotient(Fraction(-1, 2), n) == 1 / c_term(HALF, (n - 1) // 2)

    def test_half_integer(self):
        h = HalfInteger.of("-1/2")
        assert h.twice == -1 and h.value == Fraction(-1, 2) and not h.is_integer
        with pytest.raises(ValueError):
            HalfInteger.of(Fraction(1, 3))
