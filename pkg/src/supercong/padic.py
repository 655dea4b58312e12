"""The q -> 1 side: classical truncated sums and p-adic checks.

Classical sums are exact `Fraction` values.  p-adic statements are made
through `v_p` on exact rationals, so a congruence modulo ``p**k`` is just
``v_p(x - y) >= k``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from .qhyper import HypCase
from .results import CheckResult

CM_CASE = HypCase(Fraction(1, 4), Fraction(1, 3))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# classical sums


@lru_cache(maxsize=64)
def _classical_terms(case: HypCase, count: int) -> tuple[Fraction, ...]:
    params = (case.r1, 1 - case.r1, case.r2, 1 - case.r2)
    out = [Fraction(1)]
    for k in range(1, count):
        t = out[-1]
        for a in params:
            t *= a + k - 1
        out.append(t / Fraction(k) ** 4)
    return tuple(out)


def classical_term(case: HypCase, k: int) -> Fraction:
    """``(r1)_k (1-r1)_k (r2)_k (1-r2)_k / k!^4``."""
    return _classical_terms(case, k + 1)[k]


def h_classical(case: HypCase, N: int) -> Fraction:
    if N < 1:
        raise ValueError("N must be positive")
    return sum(_classical_terms(case, N), Fraction(0))


# ---------------------------------------------------------------------------
# p-adic reduction


@dataclass(frozen=True)
class PadicResidue:
    p: int
    precision: int
    residue: int

    def __post_init__(self):
        if not 0 <= self.residue < self.p**self.precision:
            raise ValueError("residue out of range")

    @property
    def signed(self) -> int:
        """Representative in the symmetric range around 0."""
        m = self.p**self.precision
        return self.residue - m if 2 * self.residue > m else self.residue

    def __int__(self) -> int:
        return self.residue


def v_p(x: Fraction | int, p: int) -> int | float:
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_reduce(x: Fraction | int, p: int, k: int) -> PadicResidue:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError("not p-integral")
    m = p**k
    return PadicResidue(p, k, x.numerator * pow(x.denominator, -1, m) % m)


# ---------------------------------------------------------------------------
# Dwork quotients


def _require_prime_coprime(case: HypCase, p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if case.d % p == 0:
        raise ValueError("p must be coprime to d")


def _check_unit_root(case: HypCase, p: int) -> None:
    if v_p(h_classical(case, p), p) != 0:
        raise ValueError("non-unit-root case")


def dwork_valuation(case: HypCase, p: int, s: int) -> int | float:
    """``v_p`` of ``H(p^{s+1})/H(p^s) - H(p^s)/H(p^{s-1})``."""
    a = h_classical(case, p ** (s + 1))
    b = h_classical(case, p**s)
    c = h_classical(case, p ** (s - 1))
    return v_p(a * c - b * b, p) - v_p(b, p) - v_p(c, p)


def dwork_check(case: HypCase, p: int, s: int) -> CheckResult:
    _require_prime_coprime(case, p)
    if s < 1:
        raise ValueError("s must be positive")
    _check_unit_root(case, p)
    t0 = time.perf_counter()
    v = dwork_valuation(case, p, s)
    return CheckResult.make(
        "dwork", case, {"p": p, "s": s}, ("p", p, 3), 3, v, started=t0
    )


def dwork_strong_probe(case: HypCase, p: int, s: int) -> CheckResult:
    """Observation only: does the Dwork quotient hold modulo ``p^{3s}``?"""
    _require_prime_coprime(case, p)
    _check_unit_root(case, p)
    t0 = time.perf_counter()
    v = dwork_valuation(case, p, s)
    return CheckResult.make(
        "dwork_3s", case, {"p": p, "s": s}, ("p", p, 3 * s), 3 * s, v, started=t0, probe=True
    )


def unit_root_estimate(case: HypCase, p: int, s: int, k: int) -> PadicResidue:
    """``H(p^{s+1}) / H(p^s)`` modulo ``p^k``."""
    _require_prime_coprime(case, p)
    if k > 3:
        raise ValueError("the estimate is only meaningful modulo p^3")
    _check_unit_root(case, p)
    return padic_reduce(h_classical(case, p ** (s + 1)) / h_classical(case, p**s), p, k)


# ---------------------------------------------------------------------------
# modular form coefficients


@dataclass(frozen=True)
class CoeffTable:
    label: str
    entries: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if any(i < 1 for i in self.entries):
            raise ValueError("coefficient indices must be positive")
        if 1 in self.entries and self.entries[1] != 1:
            raise ValueError("table is not normalized: a(1) != 1")

    def __getitem__(self, n: int) -> int:
        return self.entries[n]

    def __contains__(self, n: int) -> bool:
        return n in self.entries


def parse_coeff_text(text: str, label: str = "table") -> CoeffTable:
    """Parse lines ``p,a_p``; blank lines and ``#`` comments are skipped."""
    entries: dict[int, int] = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [x.strip() for x in line.split(",")]
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'p,a_p'")
        idx, val = int(parts[0]), int(parts[1])
        if idx <= last:
            raise ValueError(f"line {lineno}: indices must be strictly increasing")
        entries[idx] = val
        last = idx
    return CoeffTable(label, entries)


def read_coeff_file(path: str | Path) -> CoeffTable:
    path = Path(path)
    return parse_coeff_text(path.read_text(encoding="utf-8"), label=path.stem)


def format_coeff_table(table: CoeffTable) -> str:
    lines = [f"# {table.label}"]
    lines += [f"{n},{a}" for n, a in sorted(table.entries.items())]
    return "\n".join(lines) + "\n"


def eta_product_coeffs(factors: Mapping[int, int], M: int, label: str = "eta") -> CoeffTable:
    """Coefficients a(1..M) of ``q * prod_m prod_n (1 - q^{m n})^{e_m}``.

    Only products with leading power exactly ``q^1`` are supported.
    """
    size = M  # series in q up to q^{M-1}, then shifted by one
    series = [0] * size
    series[0] = 1
    for m, e in factors.items():
        for n in range(1, (size - 1) // m + 1):
            step = m * n
            for _ in range(e):
                for i in range(size - 1, step - 1, -1):
                    series[i] -= series[i - step]
    return CoeffTable(label, {i + 1: series[i] for i in range(size)})


def eta_cm_coeffs(M: int) -> CoeffTable:
    """The CM form ``q prod (1 - q^{3n})^8``."""
    if M < 1:
        raise ValueError("M must be positive")
    return eta_product_coeffs({3: 8}, M, label="eta3^8")


# ---------------------------------------------------------------------------
# p-adic gamma


def gamma_p(x: Fraction | int, p: int, k: int) -> PadicResidue:
    """Morita's p-adic gamma function modulo ``p^k`` at a p-integral rational."""
    if p == 2:
        raise ValueError("p must be odd")
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError("not p-integral")
    mod = p**k
    m = padic_reduce(x, p, k).residue or mod
    acc = 1
    for j in range(1, m):
        if j % p:
            acc = acc * j % mod
    if m % 2:
        acc = -acc % mod
    return PadicResidue(p, k, acc)


_GAMMA_GUARD = 5


def cm_check(p: int) -> CheckResult:
    """``H_{1/4,1/3}(p) = -Gamma_p(1/3)^9 (mod p^4)`` for p = 1 (mod 3)."""
    if not is_prime(p) or p % 3 != 1:
        raise ValueError("CM congruence requires p = 1 (mod 3)")
    if p < 7:
        raise ValueError("CM congruence requires p >= 7")
    t0 = time.perf_counter()
    g = gamma_p(Fraction(1, 3), p, _GAMMA_GUARD).residue
    target = -pow(g, 9, p**_GAMMA_GUARD)
    # the gamma value is only known to p^GUARD, so the valuation is capped there
    v = min(v_p(h_classical(CM_CASE, p) - target, p), _GAMMA_GUARD)
    return CheckResult.make("cm", CM_CASE, {"p": p}, ("p", p, 4), 4, v, started=t0)


def cm_ap_check(p: int, M: int | None = None) -> CheckResult:
    """Cross-check ``H_{1/4,1/3}(p) = a(p) (mod p^3)`` with the built-in eta product."""
    return rv_check(CM_CASE, p, eta_cm_coeffs(M or p), check_id="cm_ap")


def cm_vanishing_check(p: int) -> CheckResult:
    """``a(p) = 0`` for the CM form when p = 2 (mod 3)."""
    if not is_prime(p) or p % 3 != 2:
        raise ValueError("vanishing check requires p = 2 (mod 3)")
    t0 = time.perf_counter()
    a = eta_cm_coeffs(p)[p]
    v = math.inf if a == 0 else v_p(a, p)
    return CheckResult.make(
        "cm_vanish", CM_CASE, {"p": p}, ("exact", p, math.inf), math.inf, v, started=t0
    )


def rv_check(case: HypCase, p: int, table: CoeffTable, check_id: str = "rv") -> CheckResult:
    """``H(p) = a(p) (mod p^3)``."""
    _require_prime_coprime(case, p)
    if p not in table:
        raise KeyError("a(p) unavailable")
    t0 = time.perf_counter()
    v = v_p(h_classical(case, p) - table[p], p)
    return CheckResult.make(check_id, case, {"p": p}, ("p", p, 3), 3, v, started=t0)
