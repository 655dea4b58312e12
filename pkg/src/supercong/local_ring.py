"""Rational functions in q and congruences modulo powers of Phi_n(q).

Every q-object in this package is, up to a few general polynomials, a
product of cyclotomic polynomials.  `CycloMonomial` holds such products in
factored form (``scalar * prod Phi_m ** e_m``, with ``m = 0`` standing for
the factor ``q``), and `RationalFunction` keeps the cyclotomic part of its
denominator factored as well.  Reduction to lowest terms then only needs
cheap divisibility tests by individual ``Phi_m``; a general gcd is taken
only against the leftover non-cyclotomic cofactor.

Congruences follow the usual convention for rational functions: ``A = B
(mod Phi_n**k)`` means the Phi_n-adic valuation of ``A - B`` is at least k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .arith import (
    DensePoly,
    binomial_exponents,
    cyclotomic,
    divisors,
    expand_cyclotomic_product,
    mobius,
    phi_div,
    phi_divides,
    phi_valuation,
    poly_gcd,
)

Valuation = Union[int, float]  # float only for math.inf


def _clean(exps: Mapping[int, int]) -> dict[int, int]:
    return {m: e for m, e in sorted(exps.items()) if e}


def _merge(a: Mapping[int, int], b: Mapping[int, int], sign: int = 1) -> dict[int, int]:
    out = dict(a)
    for m, e in b.items():
        out[m] = out.get(m, 0) + sign * e
    return _clean(out)


def stretch_exponents(exps: Mapping[int, int], e: int) -> dict[int, int]:
    """Factorization of ``prod Phi_m(q**e) ** x_m`` in terms of Phi_g(q)."""
    if e == 1:
        return dict(exps)
    out: dict[int, int] = {}
    for m, x in exps.items():
        if m == 0:
            out[0] = out.get(0, 0) + e * x
            continue
        # Phi_m(q^e) = prod_{t | m} (q^{te} - 1)^{mu(m/t)}
        for t in divisors(m):
            mu = mobius(m // t)
            if mu:
                for g in divisors(t * e):
                    out[g] = out.get(g, 0) + mu * x
    return _clean(out)


@dataclass(frozen=True)
class CycloMonomial:
    """``scalar * prod_m Phi_m(q) ** exps[m]`` with integer (possibly negative) exponents."""

    scalar: Fraction = Fraction(1)
    exps: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        object.__setattr__(self, "exps", _clean(self.exps))

    @classmethod
    def binomial(cls, a: int) -> "CycloMonomial":
        """The factor ``1 - q**a`` for any nonzero integer a."""
        if a == 0:
            raise ZeroDivisionError("factor 1 - q**0 vanishes")
        if a > 0:
            return cls(Fraction(-1), {g: 1 for g in divisors(a)})
        # 1 - q^{-b} = q^{-b} (q^b - 1)
        b = -a
        exps = {g: 1 for g in divisors(b)}
        exps[0] = -b
        return cls(Fraction(1), exps)

    @classmethod
    def q_power(cls, s: int) -> "CycloMonomial":
        return cls(Fraction(1), {0: s})

    def __mul__(self, other: "CycloMonomial") -> "CycloMonomial":
        if isinstance(other, (int, Fraction)):
            return CycloMonomial(self.scalar * other, self.exps)
        return CycloMonomial(self.scalar * other.scalar, _merge(self.exps, other.exps))

    __rmul__ = __mul__

    def __truediv__(self, other: "CycloMonomial") -> "CycloMonomial":
        return self * other.inverse()

    def inverse(self) -> "CycloMonomial":
        if self.scalar == 0:
            raise ZeroDivisionError("inverse of zero monomial")
        return CycloMonomial(1 / self.scalar, {m: -e for m, e in self.exps.items()})

    def __pow__(self, k: int) -> "CycloMonomial":
        if k < 0:
            return self.inverse() ** (-k)
        return CycloMonomial(self.scalar**k, {m: e * k for m, e in self.exps.items()})

    def stretch(self, e: int) -> "CycloMonomial":
        return CycloMonomial(self.scalar, stretch_exponents(self.exps, e))

    def phi_valuation(self, n: int) -> Valuation:
        if self.scalar == 0:
            return math.inf
        return self.exps.get(n, 0)

    def to_rf(self) -> "RationalFunction":
        if self.scalar == 0:
            return RationalFunction.zero()
        pos = {m: e for m, e in self.exps.items() if e > 0}
        neg = {m: -e for m, e in self.exps.items() if e < 0}
        return RationalFunction._make(expand_cyclotomic_product(pos, self.scalar), neg, DensePoly.const(1), mono=self)


Coercible = Union["RationalFunction", CycloMonomial, DensePoly, int, Fraction]


class RationalFunction:
    """Reduced quotient ``num / den`` with ``den`` monic.

    The denominator is stored as ``prod Phi_m ** cyc[m] * gen`` where
    ``gen`` is a monic cofactor (1 in the common case).
    """

    __slots__ = ("num", "_cyc", "_gen", "_mono", "_den")

    def __init__(self, num: DensePoly | int | Fraction = 0, den: DensePoly | int | Fraction = 1):
        num = num if isinstance(num, DensePoly) else DensePoly.const(num)
        den = den if isinstance(den, DensePoly) else DensePoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        other = RationalFunction._normalize(num, {}, den)
        self.num, self._cyc, self._gen = other.num, other._cyc, other._gen
        self._mono, self._den = None, None

    @classmethod
    def _make(cls, num: DensePoly, cyc: Mapping[int, int], gen: DensePoly, mono: CycloMonomial | None = None):
        obj = cls.__new__(cls)
        obj.num = num
        obj._cyc = _clean(cyc)
        obj._gen = gen
        obj._mono = mono
        obj._den = None
        return obj

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls._make(DensePoly(), {}, DensePoly.const(1))

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls._make(DensePoly.const(1), {}, DensePoly.const(1), CycloMonomial())

    @classmethod
    def const(cls, value) -> "RationalFunction":
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        return cls._make(DensePoly.const(value), {}, DensePoly.const(1), CycloMonomial(value))

    @classmethod
    def poly(cls, p: DensePoly) -> "RationalFunction":
        return cls._make(p, {}, DensePoly.const(1))

    @staticmethod
    def _normalize(num: DensePoly, cyc: Mapping[int, int], gen: DensePoly) -> "RationalFunction":
        if num.is_zero():
            return RationalFunction.zero()
        c = list(num.numerators)
        nd = num.denominator
        cyc = dict(cyc)
        for m, e in list(cyc.items()):
            while e > 0 and phi_divides(c, m):
                c = phi_div(c, m)
                e -= 1
            cyc[m] = e
        top = DensePoly._raw(c, nd)
        if not gen.is_constant():
            g = poly_gcd(top, gen)
            if not g.is_one():
                top = top.exact_div(g)
                gen = gen.exact_div(g)
        lead = gen.lc
        if lead != 1:
            top = top.scale(1 / lead)
            gen = gen.monic()
        return RationalFunction._make(top, cyc, gen)

    @staticmethod
    def coerce(x: Coercible) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, CycloMonomial):
            return x.to_rf()
        if isinstance(x, DensePoly):
            return RationalFunction.poly(x)
        return RationalFunction.const(x)

    # -- accessors ----------------------------------------------------------

    @property
    def den(self) -> DensePoly:
        if self._den is None:
            d = expand_cyclotomic_product(self._cyc) if self._cyc else DensePoly.const(1)
            self._den = d if self._gen.is_one() else d * self._gen
        return self._den

    @property
    def den_factors(self) -> dict[int, int]:
        """Known cyclotomic factorization of the denominator (cofactor excluded)."""
        return dict(self._cyc)

    @property
    def cofactor(self) -> DensePoly:
        return self._gen

    @property
    def monomial(self) -> CycloMonomial | None:
        return self._mono

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (RationalFunction, CycloMonomial, DensePoly, int, Fraction)):
            return NotImplemented
        other = RationalFunction.coerce(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den.is_one():
            return f"RationalFunction({self.num})"
        return f"RationalFunction(({self.num}) / ({self.den}))"

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "RationalFunction":
        mono = None if self._mono is None else self._mono * Fraction(-1)
        return RationalFunction._make(-self.num, self._cyc, self._gen, mono)

    def _addsub(self, other: "RationalFunction", sign: int) -> "RationalFunction":
        if other.is_zero():
            return self
        if self.is_zero():
            return other if sign > 0 else -other
        cyc = {m: max(self._cyc.get(m, 0), other._cyc.get(m, 0)) for m in set(self._cyc) | set(other._cyc)}
        one = DensePoly.const(1)
        if self._gen == other._gen:
            gen, ga, gb = self._gen, one, one
        elif self._gen.is_one():
            gen, ga, gb = other._gen, other._gen, one
        elif other._gen.is_one():
            gen, ga, gb = self._gen, one, self._gen
        else:
            gen, ga, gb = self._gen * other._gen, other._gen, self._gen

        def lift(x: "RationalFunction", g: DensePoly) -> DensePoly:
            diff = {m: e - x._cyc.get(m, 0) for m, e in cyc.items() if e - x._cyc.get(m, 0)}
            p = x.num
            if diff:
                p = p * expand_cyclotomic_product(diff)
            return p if g.is_one() else p * g

        a = lift(self, ga)
        b = lift(other, gb)
        total = a + b if sign > 0 else a - b
        return RationalFunction._normalize(total, cyc, gen)

    def __add__(self, other):
        return self._addsub(RationalFunction.coerce(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._addsub(RationalFunction.coerce(other), -1)

    def __rsub__(self, other):
        return RationalFunction.coerce(other)._addsub(self, -1)

    @staticmethod
    def _cancel(num: DensePoly, cyc: Mapping[int, int], gen: DensePoly):
        """Cancel common factors of num against a (cyc, gen) denominator."""
        c = list(num.numerators)
        cyc = dict(cyc)
        for m, e in list(cyc.items()):
            while e > 0 and phi_divides(c, m):
                c = phi_div(c, m)
                e -= 1
            cyc[m] = e
        num = DensePoly._raw(c, num.denominator)
        if not gen.is_constant() and not num.is_constant():
            g = poly_gcd(num, gen)
            if not g.is_one():
                num, gen = num.exact_div(g), gen.exact_div(g)
        return num, cyc, gen

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFunction.zero()
        if self._mono is not None and other._mono is not None:
            return (self._mono * other._mono).to_rf()
        a_num, b_cyc, b_gen = self._cancel(self.num, other._cyc, other._gen)
        b_num, a_cyc, a_gen = self._cancel(other.num, self._cyc, self._gen)
        gen = a_gen * b_gen
        num = a_num * b_num
        lead = gen.lc
        if lead != 1:
            num, gen = num.scale(1 / lead), gen.monic()
        return RationalFunction._make(num, _merge(a_cyc, b_cyc), gen)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if self._mono is not None:
            return self._mono.inverse().to_rf()
        lead = self.num.lc
        return RationalFunction._make(self.den.scale(1 / lead), {}, self.num.monic())

    def __truediv__(self, other):
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        if self._mono is not None:
            return (self._mono**k).to_rf()
        result, base = RationalFunction.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- substitutions ------------------------------------------------------

    def stretch(self, e: int) -> "RationalFunction":
        """Substitute ``q -> q**e``."""
        if e == 1:
            return self
        if self._mono is not None:
            return self._mono.stretch(e).to_rf()
        return RationalFunction._make(self.num.stretch(e), stretch_exponents(self._cyc, e), self._gen.stretch(e))

    def invert_q(self) -> "RationalFunction":
        """Substitute ``q -> 1/q``, working on the expanded numerator and denominator."""
        if self.is_zero():
            return self
        num, den = self.num, self.den
        shift = den.degree - num.degree
        rn = DensePoly(reversed(num.coeffs))
        rd = DensePoly(reversed(den.coeffs))
        if shift >= 0:
            rn = rn.shift(shift)
        else:
            rd = rd.shift(-shift)
        return RationalFunction(rn, rd)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        d = self._gen(x)
        for m, e in self._cyc.items():
            d *= (x if m == 0 else cyclotomic(m)(x)) ** e
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num(x) / d

    # -- valuation ----------------------------------------------------------

    def phi_valuation(self, n: int) -> Valuation:
        if self.is_zero():
            return math.inf
        if self._mono is not None:
            return self._mono.phi_valuation(n)
        v = phi_valuation(self.num, n) - self._cyc.get(n, 0)
        if not self._gen.is_constant():
            v -= phi_valuation(self._gen, n)
        return v


def rf_arith(a: Coercible, b: Coercible, op: str) -> RationalFunction:
    a, b = RationalFunction.coerce(a), RationalFunction.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_phi_valuation(f: Coercible, n: int) -> Valuation:
    return RationalFunction.coerce(f).phi_valuation(n)


@dataclass(frozen=True)
class Modulus:
    """The ideal generated by ``Phi_n(q) ** k``."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("modulus needs n >= 1 and k >= 1")

    @property
    def phi_pow(self) -> DensePoly:
        return cyclotomic(self.n) ** self.k


def congruent(a: Coercible, b: Coercible, m: Modulus) -> tuple[bool, Valuation]:
    v = rf_phi_valuation(rf_arith(a, b, "sub"), m.n)
    return v >= m.k, v
