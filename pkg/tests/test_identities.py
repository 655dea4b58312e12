import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from supercong.arith import DensePoly, cyclotomic
from supercong.identities import (
    APoly,
    CycloFieldElement,
    FieldRationalFunction,
    beau_taylor,
    check_beau,
    check_beau2,
    f_of_a,
    g_of_a,
    ratio_taylor,
)
from supercong.qhyper import HALF, HypCase, c_term

F = Fraction


def Z(c, n):
    return CycloFieldElement(DensePoly(c), n)


class TestCycloField:
    def test_canonical_residue(self):
        # q^3 = 1 in Q(zeta_3)
        assert CycloFieldElement(DensePoly.monomial(3), 3) == 1
        assert CycloFieldElement.zeta_power(4, 3) == Z([0, 1], 3)

    def test_zeta_relation(self):
        z = CycloFieldElement.zeta_power(1, 5)
        assert 1 + z + z**2 + z**3 + z**4 == 0

    @given(st.integers(1, 12), st.lists(st.integers(-5, 5), min_size=1, max_size=6))
    def test_inverse(self, n, c):
        x = Z(c, n)
        if x.is_zero():
            return
        assert x * x.inverse() == 1

    def test_zero_inverse(self):
        with pytest.raises(ZeroDivisionError):
            Z([1, 1], 2).inverse()

    def test_mixed_fields(self):
        with pytest.raises(ValueError):
            Z([1], 3) + Z([1], 5)


class TestAPoly:
    def test_reversal(self):
        p = APoly([1, 2], 3)
        assert p.reversed_to(3) == APoly([0, 0, 2, 1], 3)

    def test_taylor_shift(self):
        # (1 + t)^2 = 1 + 2t + t^2
        assert APoly([0, 0, 1], 1).taylor_shift() == APoly([1, 2, 1], 1)

    def test_reduced(self):
        n = 5
        lin = APoly.linear(1, -CycloFieldElement.zeta_power(2, n), n)
        f = FieldRationalFunction(lin * APoly([3, 1], n), lin * lin)
        assert f.den.degree == 1 and f.den.lc() == 1


def _sympy_check_beau(r1, r2, n):
    """Independent check in Q[z]/Phi_n(z) with sympy."""
    a, z = sp.symbols("a z")
    d = sp.ilcm(r1.denominator, r2.denominator)
    shifts = [d * r1, d * (1 - r1), d * r2, d * (1 - r2)]

    def Fa(x):
        total = 0
        for k in range(n):
            t = z ** (d * k)
            for j in range(k):
                for s in shifts:
                    t *= 1 - x * z ** (int(s) + d * j)
                t /= (1 - x * z ** (d + d * j)) ** 4
            total += t
        return total

    lhs = Fa(a) * Fa(1 / a)
    rhs = (n * a ** sp.Rational(n - 1, 2) / sum(a**j for j in range(n))) ** 4 * Fa(1) ** 2
    num, _ = sp.fraction(sp.together(lhs - rhs))
    poly = sp.Poly(sp.expand(num), a)
    phi = sp.cyclotomic_poly(n, z)
    return all(sp.rem(sp.expand(c), phi, z) == 0 for c in poly.all_coeffs())


class TestBeau:
    def test_n1(self):
        assert check_beau(F(1, 2), F(1, 2), 1).passed

    def test_half_n3(self):
        r = check_beau(F(1, 2), F(1, 2), 3)
        assert r.passed and r.achieved_valuation == math.inf
        assert r.check_id == "beau" and r.d == 2

    def test_non_member_pair(self):
        r = check_beau(F(1, 3), F(1, 5), 2)
        assert r.passed and r.d == 15

    def test_sympy_oracle(self):
        assert _sympy_check_beau(F(1, 2), F(1, 2), 3)

    @pytest.mark.parametrize("pair", [(F(1, 2), F(1, 2)), (F(1, 3), F(1, 3)), (F(1, 4), F(1, 3)), (F(1, 3), F(1, 5))])
    def test_grid(self, pair):
        d = math.lcm(pair[0].denominator, pair[1].denominator)
        for n in (2, 3, 5):
            if math.gcd(n, d) == 1:
                assert check_beau(*pair, n).passed

    def test_arbitrary_rationals(self):
        assert check_beau(F(2, 7), F(3, 7), 3).passed

    def test_errors(self):
        with pytest.raises(ValueError):
            f_of_a(F(1, 2), F(1, 2), 4)
        with pytest.raises(ValueError):
            f_of_a(F(3, 2), F(1, 2), 3)


class TestBeau2:
    def test_n1(self):
        assert g_of_a(F(1, 2), 1).num == APoly([1], 1)
        assert check_beau2(F(1, 2), 1).passed

    @pytest.mark.parametrize("r,n", [(F(1, 2), 3), (F(1, 3), 5), (F(1, 2), 5), (F(1, 4), 3)])
    def test_holds(self, r, n):
        assert check_beau2(r, n).passed

    def test_precondition(self):
        with pytest.raises(ValueError):
            g_of_a(F(1, 2), 4)
        with pytest.raises(ValueError):
            g_of_a(F(1, 3), 3)


class TestFOfA:
    def test_n1(self):
        f = f_of_a(F(1, 2), F(1, 2), 1)
        assert f.num == APoly([1], 1) and f.den == APoly([1], 1)

    @pytest.mark.parametrize("n", [3, 5])
    def test_at_one_matches_sum(self, n):
        # F(1; zeta) is the truncated sum reduced mod Phi_n
        f1 = f_of_a(F(1, 2), F(1, 2), n)(1)
        s = sum((c_term(HALF, k) for k in range(n)), c_term(HALF, 0) * 0)
        direct = CycloFieldElement(s.num, n) / CycloFieldElement(s.den, n)
        assert f1 == direct

    def test_denominator_degree(self):
        assert f_of_a(F(1, 2), F(1, 2), 3).den.degree <= 4 * 2

    @pytest.mark.parametrize("n", [3, 5])
    def test_symmetry(self, n):
        from supercong.identities import _symmetric_ratio

        num, den = _symmetric_ratio(f_of_a(F(1, 2), F(1, 2), n))
        lhs = FieldRationalFunction(num, den)
        assert lhs.invert_a() == lhs


class TestTaylor:
    def test_n1(self):
        assert ratio_taylor(1, 3) == [1, 0, 0, 0]

    def test_against_sympy(self):
        a = sp.Symbol("a")
        for n in (3, 5, 7, 9, 11):
            e = n * a ** ((n - 1) // 2) / sum(a**j for j in range(n))
            t = sp.Symbol("t")
            ser = sp.series(e.subs(a, 1 + t), t, 0, 5).removeO()
            ref = [F(str(ser.coeff(t, i))) for i in range(5)]
            assert ratio_taylor(n, 4) == ref

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
    def test_linear_term_vanishes(self, n):
        assert ratio_taylor(n, 1) == [1, 0]

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
    def test_quadratic(self, n):
        assert ratio_taylor(n, 2)[2] == -F(n * n - 1, 24)

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
    def test_cubic_is_minus_quadratic(self, n):
        # symmetry under a -> 1/a forces c3 = -c2
        c = ratio_taylor(n, 3)
        assert c[3] == -c[2] == F(n * n - 1, 24)

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            ratio_taylor(4, 2)

    @pytest.mark.parametrize("n", [3, 5])
    def test_f_of_zeta(self, n):
        coeffs = beau_taylor(F(1, 2), F(1, 2), n, 2)
        assert coeffs[0] == 1 and coeffs[1] == 0
        assert coeffs[2] == -F(n * n - 1, 6)
