"""Truncated balanced q-hypergeometric sums and their building blocks.

For parameters ``(r1, r2)`` with common denominator ``d`` the k-th term is

    c(k; q) = (q^{d r1}, q^{d(1-r1)}, q^{d r2}, q^{d(1-r2)}; q^d)_k
              / (q^d; q^d)_k^4 * q^{d k}

and ``H(N; q) = sum_{k < N} c(k; q)``.  Every term is a product of
binomials ``1 - q^a``, so terms are kept as `CycloMonomial` values and sums
are accumulated over a single factored common denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .arith import DensePoly, _div_binom, _mul_binom, expand_cyclotomic_product
from .local_ring import CycloMonomial, RationalFunction

_QUARTER_SET = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 6))
_PAIRS = (
    (Fraction(1, 5), Fraction(2, 5)),
    (Fraction(1, 8), Fraction(3, 8)),
    (Fraction(1, 10), Fraction(3, 10)),
    (Fraction(1, 12), Fraction(5, 12)),
)


def _member_pairs() -> list[tuple[Fraction, Fraction]]:
    out = []
    for i, a in enumerate(sorted(_QUARTER_SET)):
        for b in sorted(_QUARTER_SET)[i:]:
            out.append((a, b))
    out.extend(_PAIRS)
    return out


_MEMBERS = frozenset(_member_pairs())


@dataclass(frozen=True, order=True)
class HypCase:
    """A parameter pair ``(r1, r2)`` with ``r1 <= r2`` in the open unit interval."""

    r1: Fraction
    r2: Fraction

    def __post_init__(self):
        r1, r2 = sorted((Fraction(self.r1), Fraction(self.r2)))
        if not (0 < r1 < 1 and 0 < r2 < 1):
            raise ValueError("parameters must lie strictly between 0 and 1")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)

    @classmethod
    def parse(cls, text: str) -> "HypCase":
        """Parse ``"1/2,1/2"`` (also accepts a single ``"1/2"`` for r1 = r2)."""
        parts = [p for p in text.replace(";", ",").replace(" ", "").split(",") if p]
        if len(parts) == 1:
            parts = parts * 2
        if len(parts) != 2:
            raise ValueError(f"cannot parse case {text!r}")
        return cls(Fraction(parts[0]), Fraction(parts[1]))

    @property
    def d(self) -> int:
        a, b = self.r1.denominator, self.r2.denominator
        return a * b // math.gcd(a, b)

    @property
    def mu(self) -> Fraction:
        return self.r1 * (1 - self.r1) + self.r2 * (1 - self.r2)

    @property
    def member(self) -> bool:
        return (self.r1, self.r2) in _MEMBERS

    @property
    def is_cm(self) -> bool:
        return (self.r1, self.r2) == (Fraction(1, 4), Fraction(1, 3))

    @property
    def label(self) -> str:
        return f"{self.r1},{self.r2}"

    @property
    def shifts(self) -> tuple[int, int, int, int]:
        """Integer exponents ``d r1, d(1-r1), d r2, d(1-r2)``."""
        d = self.d
        return (
            int(d * self.r1),
            int(d * (1 - self.r1)),
            int(d * self.r2),
            int(d * (1 - self.r2)),
        )

    def __str__(self) -> str:
        return f"({self.label})"


HALF = HypCase(Fraction(1, 2), Fraction(1, 2))


def case_registry() -> list[HypCase]:
    """The fourteen admissible parameter pairs, sorted."""
    return sorted(HypCase(a, b) for a, b in _MEMBERS)


@dataclass(frozen=True)
class HalfInteger:
    """An element of (1/2)Z stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, x: Union["HalfInteger", int, Fraction, str]) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        v = Fraction(x)
        if (2 * v).denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(2 * v))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self) -> str:
        return str(self.value)


LLike = Union[HalfInteger, int, Fraction, str]


# ---------------------------------------------------------------------------
# binomial chains


@dataclass(frozen=True)
class _Step:
    """Multiplier ``scalar * q^shift * prod(1 - q^a) / prod(1 - q^b)``."""

    scalar: Fraction
    shift: int
    up: tuple[int, ...]
    down: tuple[int, ...]

    def monomial(self) -> CycloMonomial:
        mono = CycloMonomial(self.scalar, {0: self.shift})
        for a in self.up:
            mono = mono * CycloMonomial.binomial(a)
        for b in self.down:
            mono = mono / CycloMonomial.binomial(b)
        return mono


def _apply_step(c: list[int], den: int, step: _Step, q_exp: int) -> tuple[list[int], int, int]:
    """Multiply an integer list by a step, working in binomials ``q^e - 1``.

    ``q_exp`` tracks a pending power of q.  Returns (coeffs, denominator, q_exp).
    """
    sign = 1
    for a in step.up:
        if a > 0:
            c = _mul_binom(c, a)
            sign = -sign
        else:
            c = _mul_binom(c, -a)
            q_exp += a
    for b in step.down:
        if b > 0:
            nxt = _div_binom(c, b)
            sign = -sign
        else:
            nxt = _div_binom(c, -b)
            q_exp -= b
        if nxt is None:
            raise ArithmeticError("chain step does not divide exactly")
        c = nxt
    s = step.scalar * sign
    if s.numerator != 1:
        c = [x * s.numerator for x in c]
    return c, den * s.denominator, q_exp + step.shift


def chain_sum(first: CycloMonomial, steps: Sequence[_Step]) -> RationalFunction:
    """``T_0 + T_1 + ...`` where ``T_{k+1} = T_k * steps[k]``; no step may vanish."""
    if first.scalar == 0:
        raise ValueError("chain must start from a nonzero term")
    monos = [first]
    for st in steps:
        monos.append(monos[-1] * st.monomial())
    # common denominator: most negative exponent per factor (q included)
    lcm: dict[int, int] = {}
    for m in monos:
        for f, e in m.exps.items():
            if e < 0:
                lcm[f] = max(lcm.get(f, 0), -e)
    # each T_k * L is a polynomial, carried as (binomial product, pending q-power)
    start = dict((first * CycloMonomial(1, lcm)).exps)
    q_exp = start.pop(0, 0)
    s = first.scalar
    c = [x * s.numerator for x in expand_cyclotomic_product(start).numerators]
    den = s.denominator
    out = _accumulate(DensePoly(), c, den, q_exp)
    for st in steps:
        c, den, q_exp = _apply_step(c, den, st, q_exp)
        out = _accumulate(out, c, den, q_exp)
    return RationalFunction._normalize(out, lcm, DensePoly.const(1))


def _accumulate(acc: DensePoly, c: list[int], den: int, q_exp: int) -> DensePoly:
    if q_exp < 0:
        raise ArithmeticError("negative q-power in chain term")
    return acc + DensePoly._raw([0] * q_exp + c, den)


def sum_monomials(monos: Iterable[CycloMonomial]) -> RationalFunction:
    """Sum arbitrary cyclotomic monomials over one common denominator."""
    monos = [m for m in monos if m.scalar != 0]
    if not monos:
        return RationalFunction.zero()
    lcm: dict[int, int] = {}
    for m in monos:
        for f, e in m.exps.items():
            if e < 0:
                lcm[f] = max(lcm.get(f, 0), -e)
    total = DensePoly()
    for m in monos:
        lifted = m * CycloMonomial(1, lcm)
        total = total + expand_cyclotomic_product(dict(lifted.exps), lifted.scalar)
    return RationalFunction._normalize(total, lcm, DensePoly.const(1))


# ---------------------------------------------------------------------------
# terms and sums


def _term_steps(case: HypCase, base: int, count: int, e: int) -> list[_Step]:
    """Steps from c(base + j) to c(base + j + 1) relative to c(base), j < count.

    ``base`` is an exponent offset d*l*n (integer, possibly negative).
    """
    d = case.d
    steps = []
    for j in range(count):
        up = tuple(e * (s + base + d * j) for s in case.shifts)
        down = (e * (base + d * (j + 1)),) * 4
        if any(b == 0 for b in down):
            raise ZeroDivisionError("pole in shifted term ratio")
        steps.append(_Step(Fraction(1), e * d, up, down))
    return steps


def _step_monomial(st: _Step) -> CycloMonomial:
    if any(a == 0 for a in st.up):
        return CycloMonomial(0)
    return st.monomial()


@lru_cache(maxsize=4096)
def c_monomial(case: HypCase, k: int, e: int = 1) -> CycloMonomial:
    """c(k; q^e) in factored form."""
    if k < 0:
        raise ValueError("term index must be non-negative")
    if k == 0:
        return CycloMonomial()
    prev = c_monomial(case, k - 1, e)
    return prev * _term_steps(case, 0, k, e)[k - 1].monomial()


def c_term(case: HypCase, k: int, e: int = 1) -> RationalFunction:
    """The k-th summand c(k; q^e) as a reduced rational function."""
    return c_monomial(case, k, e).to_rf()


@lru_cache(maxsize=512)
def h_sum(case: HypCase, N: int, e: int = 1) -> RationalFunction:
    """Truncated sum H(N; q^e)."""
    if N < 1 or e < 1:
        raise ValueError("h_sum needs N >= 1 and e >= 1")
    return chain_sum(CycloMonomial(), _term_steps(case, 0, N - 1, e))


def _offset(case: HypCase, l: HalfInteger, n: int) -> int:
    val = case.d * l.value * n
    if val.denominator != 1:
        raise ValueError("half-integer not admissible for this case/n")
    return int(val)


def term_ratio_monomial(case: HypCase, l: LLike, n: int, k: int) -> CycloMonomial:
    """c(l n + k; q) / c(l n; q) in Pochhammer-product form, l in (1/2)Z."""
    l = HalfInteger.of(l)
    base = _offset(case, l, n)
    mono = CycloMonomial()
    for st in _term_steps(case, base, k, 1):
        mono = mono * _step_monomial(st)
        if mono.scalar == 0:
            return mono
    return mono


def term_ratio(case: HypCase, l: LLike, n: int, k: int) -> RationalFunction:
    return term_ratio_monomial(case, l, n, k).to_rf()


def term_ratio_sum(case: HypCase, l: LLike, n: int, count: int) -> RationalFunction:
    """``sum_{k < count} c(l n + k) / c(l n)``."""
    l = HalfInteger.of(l)
    base = _offset(case, l, n)
    steps = _term_steps(case, base, count - 1, 1)
    cut = next((i for i, st in enumerate(steps) if any(a == 0 for a in st.up)), None)
    if cut is not None:
        steps = steps[:cut]
    return chain_sum(CycloMonomial(), steps)


# ---------------------------------------------------------------------------
# the r1 = r2 = 1/2 toolkit


def _frac_mono(j: int, power: int, *, numerator_exp: int) -> CycloMonomial:
    """``q^{numerator_exp} / (1 - q^j)^power``."""
    return CycloMonomial.q_power(numerator_exp) / CycloMonomial.binomial(j) ** power


@lru_cache(maxsize=256)
def harmonic_s(k: int, which: int) -> RationalFunction:
    """S_1(k;q) or S_2(k;q) of the half case."""
    if which == 1:
        terms = [_frac_mono(j, 1, numerator_exp=j) for j in range(1, 2 * k + 1)]
        terms += [_frac_mono(2 * j, 1, numerator_exp=2 * j) * -2 for j in range(1, k + 1)]
    elif which == 2:
        terms = [_frac_mono(j, 2, numerator_exp=2 * j) for j in range(1, 2 * k + 1)]
        terms += [_frac_mono(2 * j, 2, numerator_exp=4 * j) * -2 for j in range(1, k + 1)]
    else:
        raise ValueError("which must be 1 or 2")
    return sum_monomials(terms)


def _half_m(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd")
    return (n - 1) // 2


def head_sum(n: int) -> RationalFunction:
    """``sum_{k <= (n-1)/2} c(k; q)`` for the half case."""
    return h_sum(HALF, _half_m(n) + 1, 1)


@lru_cache(maxsize=64)
def sigma_numerators(n: int) -> tuple[RationalFunction, RationalFunction]:
    """``sum c(k) S_1(k)`` and ``sum c(k) (4 S_1(k)^2 - S_2(k))`` over k <= (n-1)/2."""
    m = _half_m(n)
    s1 = RationalFunction.zero()
    s2 = RationalFunction.zero()
    for k in range(m + 1):
        c = c_term(HALF, k)
        a, b = harmonic_s(k, 1), harmonic_s(k, 2)
        s1 = s1 + c * a
        s2 = s2 + c * (a * a * 4 - b)
    return s1, s2


def sigma_sums(n: int) -> tuple[RationalFunction, RationalFunction]:
    """(Sigma_1(q), Sigma_2(q)) for odd n."""
    total = head_sum(n)
    x1, x2 = sigma_numerators(n)
    return x1 / total, x2 / total


def q_quotient(l: LLike, n: int) -> RationalFunction:
    """Q(l; q) for the half case."""
    top = term_ratio_sum(HALF, l, n, _half_m(n) + 1)
    return top / head_sum(n)
