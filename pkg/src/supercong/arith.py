"""Exact dense univariate polynomials over the rationals.

A `DensePoly` stores integer numerators plus one positive common
denominator, so the coefficient of ``q**i`` is ``_c[i] / _d``.  All hot
loops therefore run on Python ints, and large products go through
Kronecker substitution with GMP integers.

Cyclotomic polynomials get special treatment: multiplying or dividing by
``Phi_m`` is done with the Moebius identity

    Phi_m(q) = prod_{e | m} (q**e - 1) ** mu(m / e)

which reduces everything to sparse binomial passes of linear cost.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2

Number = int | Fraction

# schoolbook below this length, Kronecker above
_KRONECKER_CUTOFF = 48


# ---------------------------------------------------------------------------
# small number theory helpers


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(n, k) == 1)


@lru_cache(maxsize=None)
def binomial_exponents(m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split ``Phi_m`` into binomials: (e with mu=+1, e with mu=-1)."""
    plus, minus = [], []
    for e in divisors(m):
        mu = mobius(m // e)
        if mu == 1:
            plus.append(e)
        elif mu == -1:
            minus.append(e)
    return tuple(plus), tuple(minus)


# ---------------------------------------------------------------------------
# raw integer-list kernels


def _strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _mul_binom(c: Sequence[int], e: int) -> list[int]:
    """Coefficients of c(q) * (q**e - 1)."""
    if not c:
        return []
    n = len(c)
    out = [-x for x in c] + [0] * e
    for i in range(n):
        out[i + e] += c[i]
    return out


def _div_binom(c: Sequence[int], e: int) -> list[int] | None:
    """Exact quotient c(q) / (q**e - 1), or None if it does not divide."""
    n = len(c)
    if n == 0:
        return []
    if n <= e:
        return None
    g = [0] * (n - e)
    for j in range(n - 1, e - 1, -1):
        g[j - e] = c[j] + (g[j] if j < n - e else 0)
    for j in range(e):
        if c[j] + (g[j] if j < n - e else 0) != 0:
            return None
    return g


def _mul_school(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(c: Sequence[int], nbytes: int) -> int:
    pos = b"".join(x.to_bytes(nbytes, "little") if x > 0 else bytes(nbytes) for x in c)
    neg = b"".join((-x).to_bytes(nbytes, "little") if x < 0 else bytes(nbytes) for x in c)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    bound = max(abs(x) for x in a) * max(abs(y) for y in b) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    prod = gmpy2.mpz(_pack(a, nbytes)) * gmpy2.mpz(_pack(b, nbytes))
    length = len(a) + len(b) - 1
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((bytes(nbytes - 1) + b"\x80") * length, "little")
    raw = int(prod + offset).to_bytes(length * nbytes, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, length * nbytes, nbytes)
    ]


def _mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        return _mul_school(a, b)
    return _mul_kronecker(a, b)


def _divrem_monic_int(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer list a by an integer list b whose leading coefficient is +-1."""
    lead = b[-1]
    db = len(b) - 1
    r = list(a)
    if len(r) <= db:
        return [], r
    terms = [(j, y) for j, y in enumerate(b[:-1]) if y]
    qt = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        x = r[i]
        if x:
            x = x * lead  # lead is +-1
            qt[i - db] = x
            base = i - db
            for j, y in terms:
                r[base + j] -= x * y
    return qt, _strip(r[:db])


def _fold_mod(c: Sequence[int], m: int) -> list[int]:
    """Residue of c(q) modulo q**m - 1."""
    out = [0] * m
    for start in range(0, len(c), m):
        block = c[start : start + m]
        for i, x in enumerate(block):
            out[i] += x
    return out


def _content(c: Iterable[int]) -> int:
    g = 0
    for x in c:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


# ---------------------------------------------------------------------------
# DensePoly


class DensePoly:
    """Immutable polynomial in ``q`` with exact rational coefficients.

    Index ``i`` of :attr:`coeffs` holds the coefficient of ``q**i``; the zero
    polynomial has no coefficients and degree -1.
    """

    __slots__ = ("_c", "_d", "_hash")

    def __init__(self, coeffs: Iterable[Number | str] = ()):
        fr = [Fraction(x) for x in coeffs]
        den = 1
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
        self._set([int(x * den) for x in fr], den)

    def _set(self, c: list[int], d: int) -> None:
        _strip(c)
        if not c:
            d = 1
        elif d != 1:
            g = math.gcd(_content(c), d)
            if g != 1:
                c = [x // g for x in c]
                d //= g
        self._c = tuple(c)
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, c: list[int], d: int = 1) -> "DensePoly":
        obj = cls.__new__(cls)
        obj._set(c, d)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, value: Number) -> "DensePoly":
        v = Fraction(value)
        return cls._raw([v.numerator], v.denominator)

    @classmethod
    def monomial(cls, k: int, value: Number = 1) -> "DensePoly":
        v = Fraction(value)
        return cls._raw([0] * k + [v.numerator], v.denominator)

    @classmethod
    def binomial(cls, e: int) -> "DensePoly":
        """The polynomial ``q**e - 1``."""
        return cls._raw([-1] + [0] * (e - 1) + [1])

    # -- basic accessors --------------------------------------------------

    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(x, self._d) for x in self._c]

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._c

    @property
    def denominator(self) -> int:
        return self._d

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == (1,) and self._d == 1

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    @property
    def lc(self) -> Fraction:
        return Fraction(self._c[-1], self._d) if self._c else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._d)
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DensePoly.const(other)
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self._d == other._d and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._c, self._d))
        return self._hash

    def __repr__(self) -> str:
        return f"DensePoly({[str(x) for x in self.coeffs]})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            c = Fraction(self._c[i], self._d)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "q" if i == 1 else f"q^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x: "DensePoly | Number") -> "DensePoly":
        return x if isinstance(x, DensePoly) else DensePoly.const(x)

    def __neg__(self) -> "DensePoly":
        return DensePoly._raw([-x for x in self._c], self._d)

    def _addsub(self, other: "DensePoly", sign: int) -> "DensePoly":
        a, b = self._c, other._c
        da, db = self._d, other._d
        if da == db:
            d, sa, sb = da, 1, sign
        else:
            d = da * db // math.gcd(da, db)
            sa, sb = d // da, sign * (d // db)
        n = max(len(a), len(b))
        out = [0] * n
        for i, x in enumerate(a):
            out[i] = x * sa if sa != 1 else x
        for i, y in enumerate(b):
            out[i] += y * sb
        return DensePoly._raw(out, d)

    def __add__(self, other):
        return self._addsub(self._coerce(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._addsub(self._coerce(other), -1)

    def __rsub__(self, other):
        return self._coerce(other)._addsub(self, -1)

    def __mul__(self, other):
        other = self._coerce(other)
        return DensePoly._raw(_mul_int(self._c, other._c), self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DensePoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = DensePoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, value: Number) -> "DensePoly":
        v = Fraction(value)
        return DensePoly._raw([x * v.numerator for x in self._c], self._d * v.denominator)

    def shift(self, s: int) -> "DensePoly":
        """Multiply by ``q**s`` (s >= 0)."""
        if s < 0:
            raise ValueError("negative shift")
        return DensePoly._raw([0] * s + list(self._c), self._d) if self._c else self

    def stretch(self, e: int) -> "DensePoly":
        """Substitute ``q -> q**e``."""
        if e == 1 or len(self._c) <= 1:
            return self
        out = [0] * (e * (len(self._c) - 1) + 1)
        out[::e] = self._c
        return DensePoly._raw(out, self._d)

    def monic(self) -> "DensePoly":
        if not self._c:
            return self
        lead = self._c[-1]
        return DensePoly._raw(list(self._c), lead) if lead > 0 else DensePoly._raw([-x for x in self._c], -lead)

    def primitive(self) -> tuple[Fraction, "DensePoly"]:
        """Split into (content, primitive integer polynomial with positive lc)."""
        if not self._c:
            return Fraction(0), self
        g = _content(self._c)
        if self._c[-1] < 0:
            g = -g
        return Fraction(g, self._d), DensePoly._raw([x // g for x in self._c])

    def __call__(self, x: Number) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc / self._d

    def mul_binomial(self, e: int) -> "DensePoly":
        return DensePoly._raw(_mul_binom(self._c, e), self._d)

    def div_binomial(self, e: int) -> "DensePoly | None":
        g = _div_binom(self._c, e)
        return None if g is None else DensePoly._raw(g, self._d)

    def mod_binomial(self, m: int) -> "DensePoly":
        """Remainder modulo ``q**m - 1``."""
        return DensePoly._raw(_fold_mod(self._c, m), self._d)

    def divrem(self, other: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        if other.is_zero():
            raise ZeroDivisionError("zero divisor")
        if other._d == 1 and abs(other._c[-1]) == 1:
            qt, r = _divrem_monic_int(self._c, other._c)
            return DensePoly._raw(qt, self._d), DensePoly._raw(r, self._d)
        return self._divrem_fraction(other)

    def _divrem_fraction(self, other: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        r = self.coeffs
        b = other.coeffs
        db = len(b) - 1
        inv = 1 / b[-1]
        if len(r) <= db:
            return DensePoly(), self
        qt = [Fraction(0)] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            x = r[i]
            if x:
                x *= inv
                qt[i - db] = x
                for j in range(db):
                    if b[j]:
                        r[i - db + j] -= x * b[j]
        return DensePoly(qt), DensePoly(r[:db])

    def __divmod__(self, other):
        return self.divrem(self._coerce(other))

    def __floordiv__(self, other):
        return self.divrem(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divrem(self._coerce(other))[1]

    def exact_div(self, other: "DensePoly") -> "DensePoly":
        qt, r = self.divrem(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return qt


# ---------------------------------------------------------------------------
# gcd and friends

_GCD_PRIME = (1 << 61) - 1


def _gcd_degree_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p); both inputs must keep their degree mod p."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    _strip(a)
    _strip(b)
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            f = a[-1] * inv % p
            shift = len(a) - 1 - db
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - f * b[j]) % p
            _strip(a)
        a, b = b, a
    return len(a) - 1


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(r) - 1 >= db and r:
        f = r[-1]
        shift = len(r) - 1 - db
        r = [x * lead for x in r]
        for j in range(db + 1):
            r[shift + j] -= f * b[j]
        _strip(r)
    return r


def poly_gcd(a: DensePoly, b: DensePoly) -> DensePoly:
    """Monic gcd over Q (zero only when both inputs vanish)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return DensePoly.const(1)
    pa = list(a.primitive()[1].numerators)
    pb = list(b.primitive()[1].numerators)
    if pa[-1] % _GCD_PRIME and pb[-1] % _GCD_PRIME:
        if _gcd_degree_mod_p(pa, pb, _GCD_PRIME) == 0:
            return DensePoly.const(1)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb)
        if r:
            g = _content(r)
            r = [x // g for x in r]
        pa, pb = pb, r
    return DensePoly._raw(pa).monic()


def poly_xgcd(a: DensePoly, b: DensePoly) -> tuple[DensePoly, DensePoly, DensePoly]:
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = DensePoly.const(1), DensePoly()
    t0, t1 = DensePoly(), DensePoly.const(1)
    while not r1.is_zero():
        qt, r = r0.divrem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_arith(a: DensePoly, b: DensePoly, op: str):
    """Dispatch one of add/sub/mul/divrem/gcd."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divrem(b)
    if op == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# cyclotomic polynomials


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> DensePoly:
    """The n-th cyclotomic polynomial, by dividing q**n - 1 by the smaller ones."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    result = DensePoly.binomial(n)
    for d in divisors(n)[:-1]:
        result = result.exact_div(cyclotomic(d))
    return result


def phi_div(c: Sequence[int], m: int) -> list[int] | None:
    """Exact quotient of an integer list by Phi_m, or None if Phi_m does not divide it."""
    if m == 0:
        # the factor q itself
        if not c:
            return []
        return list(c[1:]) if c[0] == 0 else None
    if not c:
        return []
    plus, minus = binomial_exponents(m)
    work: list[int] | None = list(c)
    for e in minus:
        work = _mul_binom(work, e)
    for e in plus:
        work = _div_binom(work, e)
        if work is None:
            return None
    return work


def phi_mul(c: Sequence[int], m: int, times: int = 1) -> list[int]:
    """Multiply an integer list by Phi_m ** times."""
    if m == 0:
        return [0] * times + list(c) if c else []
    plus, minus = binomial_exponents(m)
    work = list(c)
    for _ in range(times):
        for e in plus:
            work = _mul_binom(work, e)
    for _ in range(times):
        for e in minus:
            work = _div_binom(work, e)
    return work


def phi_divides(c: Sequence[int], m: int) -> bool:
    """Cheap divisibility test: reduce mod q**m - 1 first."""
    if m == 0:
        return not c or c[0] == 0
    if len(c) > 2 * m:
        c = _strip(_fold_mod(c, m))
        if not c:
            return True
    return phi_div(c, m) is not None


def phi_valuation(p: DensePoly, n: int) -> int | float:
    """Largest k with Phi_n(q)**k dividing p; infinity for the zero polynomial."""
    if p.is_zero():
        return math.inf
    c = list(p.numerators)
    k = 0
    while True:
        nxt = phi_div(c, n)
        if nxt is None:
            return k
        c = nxt
        k += 1


def expand_cyclotomic_product(exps: dict[int, int], scalar: Number = 1) -> DensePoly:
    """Expand ``scalar * prod Phi_m ** e`` for non-negative exponents (m = 0 means q)."""
    # collect binomial exponents y_e = sum_m e_m * mu(m/e) so cancellations happen first
    binoms: dict[int, int] = {}
    shift = 0
    for m, e in exps.items():
        if e < 0:
            raise ValueError("negative exponent in polynomial expansion")
        if m == 0:
            shift += e
            continue
        plus, minus = binomial_exponents(m)
        for t in plus:
            binoms[t] = binoms.get(t, 0) + e
        for t in minus:
            binoms[t] = binoms.get(t, 0) - e
    v = Fraction(scalar)
    work = [v.numerator]
    for t, y in sorted(binoms.items()):
        for _ in range(y):
            work = _mul_binom(work, t)
    for t, y in sorted(binoms.items()):
        for _ in range(-y):
            work = _div_binom(work, t)
            if work is None:
                raise ArithmeticError("cyclotomic expansion failed to divide")
    return DensePoly._raw([0] * shift + work, v.denominator)


def field_inverse(e: DensePoly, n: int, k: int) -> DensePoly:
    """Inverse of e modulo Phi_n(q)**k."""
    modulus = cyclotomic(n) ** k
    if phi_valuation(e, n) != 0:
        raise ZeroDivisionError("non-invertible residue")
    g, s, _ = poly_xgcd(e % modulus, modulus)
    if not g.is_one():
        raise ZeroDivisionError("non-invertible residue")
    return s % modulus
