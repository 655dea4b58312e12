"""Root-of-unity identities in an auxiliary variable ``a``.

Coefficients live in Q(zeta_n), realised as residues modulo ``Phi_n(q)``.
Identities are checked by cross-multiplying to a polynomial identity in
``a``, never by sampling.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import DensePoly, cyclotomic, poly_xgcd
from .results import CheckResult

Number = int | Fraction


class CycloFieldElement:
    """An element of Q(zeta_n) as a canonical residue mod ``Phi_n(q)``."""

    __slots__ = ("n", "rep")

    def __init__(self, rep: DensePoly | Number, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        if not isinstance(rep, DensePoly):
            rep = DensePoly.const(rep)
        self.n = n
        self.rep = rep % cyclotomic(n)

    @classmethod
    def zeta_power(cls, k: int, n: int) -> "CycloFieldElement":
        return cls(DensePoly.monomial(k % n), n)

    def _lift(self, other) -> "CycloFieldElement":
        if isinstance(other, CycloFieldElement):
            if other.n != self.n:
                raise ValueError("elements of different cyclotomic fields")
            return other
        return CycloFieldElement(other, self.n)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __add__(self, other):
        return CycloFieldElement(self.rep + self._lift(other).rep, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        return CycloFieldElement(self.rep - self._lift(other).rep, self.n)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return CycloFieldElement(-self.rep, self.n)

    def __mul__(self, other):
        return CycloFieldElement(self.rep * self._lift(other).rep, self.n)

    __rmul__ = __mul__

    def inverse(self) -> "CycloFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero in Q(zeta_n)")
        g, s, _ = poly_xgcd(self.rep, cyclotomic(self.n))
        if not g.is_one():
            raise ZeroDivisionError("non-invertible residue")
        return CycloFieldElement(s, self.n)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloFieldElement(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloFieldElement(other, self.n)
        if not isinstance(other, CycloFieldElement):
            return NotImplemented
        return self.n == other.n and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.n, self.rep))

    def rational(self) -> Fraction:
        """The value when the element lies in Q."""
        if self.rep.degree > 0:
            raise ValueError("element is not rational")
        return self.rep[0]

    def __repr__(self) -> str:
        return f"CycloFieldElement({self.rep}, n={self.n})"


# ---------------------------------------------------------------------------
# polynomials in a over Q(zeta_n)


class APoly:
    """Dense polynomial in ``a``; coefficients low degree first."""

    __slots__ = ("n", "c")

    def __init__(self, coeffs: Iterable[CycloFieldElement | Number], n: int):
        c = [x if isinstance(x, CycloFieldElement) else CycloFieldElement(x, n) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.n = n
        self.c = c

    @classmethod
    def const(cls, x, n: int) -> "APoly":
        return cls([x], n)

    @classmethod
    def linear(cls, c0, c1, n: int) -> "APoly":
        return cls([c0, c1], n)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> CycloFieldElement:
        return self.c[-1]

    def _zero(self) -> CycloFieldElement:
        return CycloFieldElement(0, self.n)

    def __add__(self, other: "APoly") -> "APoly":
        m = max(len(self.c), len(other.c))
        z = self._zero()
        return APoly(
            [(self.c[i] if i < len(self.c) else z) + (other.c[i] if i < len(other.c) else z) for i in range(m)],
            self.n,
        )

    def __neg__(self) -> "APoly":
        return APoly([-x for x in self.c], self.n)

    def __sub__(self, other: "APoly") -> "APoly":
        return self + (-other)

    def __mul__(self, other) -> "APoly":
        if not isinstance(other, APoly):
            return APoly([x * other for x in self.c], self.n)
        if self.is_zero() or other.is_zero():
            return APoly([], self.n)
        out = [self._zero() for _ in range(len(self.c) + len(other.c) - 1)]
        for i, x in enumerate(self.c):
            if x.is_zero():
                continue
            for j, y in enumerate(other.c):
                out[i + j] = out[i + j] + x * y
        return APoly(out, self.n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "APoly":
        out = APoly.const(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, APoly) and self.n == other.n and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.c)))

    def __call__(self, x) -> CycloFieldElement:
        acc = self._zero()
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def shift_a(self, s: int) -> "APoly":
        """Multiply by ``a^s``."""
        return APoly([self._zero()] * s + self.c, self.n)

    def reversed_to(self, m: int) -> "APoly":
        """``a^m p(1/a)``; requires ``m >= degree``."""
        if m < self.degree:
            raise ValueError("reversal degree too small")
        return APoly(list(reversed(self.c + [self._zero()] * (m - len(self.c) + 1))), self.n)

    def taylor_shift(self) -> "APoly":
        """``p(1 + t)`` as a polynomial in ``t``."""
        c = list(self.c)
        size = len(c)
        for i in range(size):
            for j in range(size - 2, i - 1, -1):
                c[j] = c[j] + c[j + 1]
        return APoly(c, self.n)

    def monic(self) -> "APoly":
        return self * self.lc().inverse()

    def divrem(self, other: "APoly") -> tuple["APoly", "APoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.c)
        inv = other.lc().inverse()
        dq = len(r) - len(other.c)
        if dq < 0:
            return APoly([], self.n), self
        q = [self._zero() for _ in range(dq + 1)]
        for i in range(dq, -1, -1):
            t = r[i + len(other.c) - 1] * inv
            q[i] = t
            if t.is_zero():
                continue
            for j, y in enumerate(other.c):
                r[i + j] = r[i + j] - t * y
        return APoly(q, self.n), APoly(r, self.n)


def apoly_gcd(a: APoly, b: APoly) -> APoly:
    while not b.is_zero():
        a, b = b, a.divrem(b)[1]
    return a if a.is_zero() else a.monic()


class FieldRationalFunction:
    """num/den over Q(zeta_n)(a), reduced, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: APoly, den: APoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = apoly_gcd(num, den)
        if g.degree > 0:
            num, den = num.divrem(g)[0], den.divrem(g)[0]
        inv = den.lc().inverse()
        self.num = num * inv
        self.den = den * inv

    @property
    def n(self) -> int:
        return self.den.n

    def __call__(self, x) -> CycloFieldElement:
        d = self.den(x)
        if d.is_zero():
            raise ZeroDivisionError("pole")
        return self.num(x) / d

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldRationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def invert_a(self) -> "FieldRationalFunction":
        m = max(self.num.degree, self.den.degree)
        return FieldRationalFunction(self.num.reversed_to(m), self.den.reversed_to(m))

    def __repr__(self) -> str:
        return f"FieldRationalFunction(deg num={self.num.degree}, deg den={self.den.degree}, n={self.n})"


# ---------------------------------------------------------------------------
# the sums


def _lcd(*rs: Fraction) -> int:
    d = 1
    for r in rs:
        d = math.lcm(d, r.denominator)
    return d


def _check_unit_interval(*rs: Fraction) -> None:
    if any(not 0 < r < 1 for r in rs):
        raise ValueError("parameters must lie in (0, 1)")


def _one_minus_a_zeta(k: int, n: int) -> APoly:
    return APoly.linear(1, -CycloFieldElement.zeta_power(k, n), n)


def _poch_sum(
    shifts: Sequence[int], power: int, d: int, n: int, weight
) -> FieldRationalFunction:
    """``sum_k weight(k) prod_{j<k} prod_s (1 - a z^{s+dj}) / (1 - a z^{d+dj})^power``."""
    den_f = [_one_minus_a_zeta(d * (j + 1), n) ** power for j in range(n - 1)]
    num_f = []
    for j in range(n - 1):
        t = APoly.const(1, n)
        for s in shifts:
            t = t * _one_minus_a_zeta(s + d * j, n)
        num_f.append(t)
    total = APoly([], n)
    for k in range(n):
        t = APoly.const(weight(k), n)
        for j in range(k):
            t = t * num_f[j]
        for j in range(k, n - 1):
            t = t * den_f[j]
        total = total + t
    den = APoly.const(1, n)
    for f in den_f:
        den = den * f
    return FieldRationalFunction(total, den)


def f_of_a(r1: Number, r2: Number, n: int) -> FieldRationalFunction:
    r1, r2 = Fraction(r1), Fraction(r2)
    _check_unit_interval(r1, r2)
    d = _lcd(r1, r2)
    if math.gcd(n, d) != 1:
        raise ValueError("n not coprime to d")
    shifts = [int(d * r1), int(d * (1 - r1)), int(d * r2), int(d * (1 - r2))]
    return _poch_sum(shifts, 4, d, n, lambda k: CycloFieldElement.zeta_power(d * k, n))


def g_of_a(r: Number, n: int) -> FieldRationalFunction:
    r = Fraction(r)
    _check_unit_interval(r)
    d = r.denominator
    if math.gcd(n, 2 * d) != 1:
        raise ValueError("n not coprime to 2d")

    def weight(k):
        z = CycloFieldElement.zeta_power(d * k, n)
        return 2 * z / (z + 1)

    return _poch_sum([int(d * r), int(d * (1 - r))], 2, d, n, weight)


# ---------------------------------------------------------------------------
# identity checks


def _symmetric_ratio(F: FieldRationalFunction) -> tuple[APoly, APoly]:
    """num and den of ``F(a) F(1/a) / F(1)^2``, negative a-powers cleared."""
    f1 = F(1)
    if f1.is_zero():
        raise ValueError("degenerate normalization")
    Fi = F.invert_a()
    return F.num * Fi.num, F.den * Fi.den * (f1 * f1)


def _geometric(n: int, sign: int = 1) -> APoly:
    return APoly([sign**j for j in range(n)], n)


def _identity_result(check_id, lhs_num, lhs_den, rhs_num, rhs_den, params, r_over, n, t0):
    ok = lhs_num * rhs_den == rhs_num * lhs_den
    return CheckResult.make(
        check_id,
        None,
        params,
        ("exact", n, math.inf),
        math.inf,
        math.inf if ok else 0,
        started=t0,
        r_override=r_over,
    )


def check_beau(r1: Number, r2: Number, n: int) -> CheckResult:
    """``F(a)F(1/a)/F(1)^2 = (n a^{(n-1)/2} / (1+a+...+a^{n-1}))^4``."""
    t0 = time.perf_counter()
    r1, r2 = Fraction(r1), Fraction(r2)
    F = f_of_a(r1, r2, n)
    num, den = _symmetric_ratio(F)
    # the fourth power makes a^{2(n-1)} integral for every n
    rhs_num = APoly.const(n**4, n).shift_a(2 * (n - 1))
    rhs_den = _geometric(n) ** 4
    lo, hi = sorted((r1, r2))
    return _identity_result(
        "beau", num, den, rhs_num, rhs_den, {"n": n}, (lo, hi, _lcd(r1, r2)), n, t0
    )


def check_beau2(r: Number, n: int) -> CheckResult:
    """``G(a)G(1/a)/G(1)^2 = (n (1-a+...+a^{n-1}) / (1+a+...+a^{n-1}))^2``."""
    t0 = time.perf_counter()
    r = Fraction(r)
    G = g_of_a(r, n)
    num, den = _symmetric_ratio(G)
    rhs_num = APoly.const(n * n, n) * _geometric(n, -1) ** 2
    rhs_den = _geometric(n) ** 2
    return _identity_result(
        "beau2", num, den, rhs_num, rhs_den, {"n": n}, (r, 1 - r, r.denominator), n, t0
    )


# ---------------------------------------------------------------------------
# expansions around a = 1


def _series_div(num: Sequence, den: Sequence, order: int, zero) -> list:
    out = []
    inv = 1 / den[0]
    for i in range(order + 1):
        acc = num[i] if i < len(num) else zero
        for j in range(1, min(i, len(den) - 1) + 1):
            acc = acc - den[j] * out[i - j]
        out.append(acc * inv)
    return out


def ratio_taylor(n: int, order: int) -> list[Fraction]:
    """Coefficients of ``n a^{(n-1)/2} / (1+a+...+a^{n-1})`` in powers of ``a - 1``."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd")
    if order < 0:
        raise ValueError("order must be non-negative")
    m = (n - 1) // 2
    num = [Fraction(n * math.comb(m, i)) for i in range(m + 1)]
    den = [Fraction(math.comb(n, i + 1)) for i in range(n)]  # sum_j (1+t)^j
    return _series_div(num, den, order, Fraction(0))


def beau_taylor(r1: Number, r2: Number, n: int, order: int) -> list[CycloFieldElement]:
    """Taylor coefficients of ``F(a)F(1/a)/F(1)^2`` in powers of ``a - 1``."""
    num, den = _symmetric_ratio(f_of_a(r1, r2, n))
    zero = CycloFieldElement(0, n)
    return _series_div(num.taylor_shift().c, den.taylor_shift().c, order, zero)
