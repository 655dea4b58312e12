"""Congruence checks for truncated q-hypergeometric sums modulo Phi_n(q)^k.

Quotient congruences ``X/Y = Z/W`` are tested after cross-multiplication,
``v(X W - Z Y) - v(Y) - v(W) >= k``, with ``Y`` and ``W`` required to be
Phi_n-adic units.  Every check returns its achieved valuation so sharpness
observations use the same code path as the assertions.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Iterable

from .arith import DensePoly
from .local_ring import CycloMonomial, RationalFunction, Valuation
from .padic import classical_term, h_classical
from .qhyper import (
    HALF,
    HalfInteger,
    HypCase,
    LLike,
    c_monomial,
    harmonic_s,
    head_sum,
    h_sum,
    q_quotient,
    sigma_sums,
    term_ratio_sum,
)
from .results import CheckResult

LEMMA_IDS = ("n2", "minus_half", "Q", "eval", "spec", "more", "half_square", "ver")
NEGATIVE_WINDOW = range(2, 8)


def _require_coprime(case: HypCase, n: int) -> None:
    if n < 2:
        raise ValueError("n must exceed 1")
    if math.gcd(n, case.d) != 1:
        raise ValueError("n not coprime to d")


def _x_power(n: int, power: int) -> RationalFunction:
    """``(q^n - 1)^power``."""
    return RationalFunction.poly(DensePoly.binomial(n) ** power)


def quotient_valuation(
    x: RationalFunction, y: RationalFunction, z: RationalFunction, w: RationalFunction, n: int
) -> Valuation:
    """Phi_n-adic valuation of ``x/y - z/w`` for unit y, w."""
    if y.phi_valuation(n) != 0 or w.phi_valuation(n) != 0:
        raise ArithmeticError("non-unit denominator")
    return (x * w - z * y).phi_valuation(n)


# ---------------------------------------------------------------------------
# main theorem and companions


def main_valuation(case: HypCase, A: int, B: int, n: int) -> Valuation:
    _require_coprime(case, n)
    if A < 1 or B < 1:
        raise ValueError("A and B must be positive")
    x = h_sum(case, A * n)
    y = h_sum(case, B * n)
    z = h_sum(case, A, n * n)
    w = h_sum(case, B, n * n)
    return quotient_valuation(x, y, z, w, n)


def check_main(case: HypCase, A: int, B: int, n: int) -> CheckResult:
    t0 = time.perf_counter()
    v = main_valuation(case, A, B, n)
    return CheckResult.make("main", case, {"A": A, "B": B, "n": n}, ("phi", n, 3), 3, v, started=t0)


def sharpness_probe(case: HypCase, A: int, B: int, n: int) -> CheckResult:
    """Record whether the main congruence happens to hold one power further."""
    t0 = time.perf_counter()
    v = main_valuation(case, A, B, n)
    return CheckResult.make(
        "sharpness", case, {"A": A, "B": B, "n": n}, ("phi", n, 4), 4, v, started=t0, probe=True
    )


def compute_CAB(case: HypCase, A: int, B: int) -> Fraction:
    """The correction constant C(A, B) built from classical values at q = 1."""
    if A < 1 or B < 1:
        raise ValueError("A and B must be positive")
    mu = case.mu

    def weighted(upto: int) -> Fraction:
        return sum((l * (l + mu) * classical_term(case, l) for l in range(upto)), Fraction(0))

    ha, hb = h_classical(case, A), h_classical(case, B)
    return case.d**2 * (ha * weighted(B) - hb * weighted(A)) / (12 * hb * hb)


def companion_valuations(
    case: HypCase, A: int, B: int, n: int, *, with_correction: bool = True
) -> tuple[Valuation, Valuation]:
    """Valuations for the weak companion and for the corrected one."""
    _require_coprime(case, n)
    x = h_sum(case, A * n)
    y = h_sum(case, B * n)
    z = h_sum(case, A, n)
    w = h_sum(case, B, n)
    if y.phi_valuation(n) != 0 or w.phi_valuation(n) != 0:
        raise ArithmeticError("non-unit denominator")
    base = x * w - z * y
    weak = base.phi_valuation(n)
    if not with_correction:
        return weak, weak
    corr = compute_CAB(case, A, B) * (n * n - 1)
    strong = (base - _x_power(n, 2) * y * w * corr).phi_valuation(n)
    return weak, strong


def check_companion(
    case: HypCase, A: int, B: int, n: int, *, with_correction: bool = True
) -> tuple[CheckResult, CheckResult]:
    t0 = time.perf_counter()
    weak, strong = companion_valuations(case, A, B, n, with_correction=with_correction)
    params = {"A": A, "B": B, "n": n}
    first = CheckResult.make("companion_weak", case, params, ("phi", n, 2), 2, weak, started=t0)
    cid = "companion_strong" if with_correction else "companion_uncorrected"
    second = CheckResult.make(cid, case, params, ("phi", n, 3), 3, strong, started=t0)
    return first, second


# ---------------------------------------------------------------------------
# termwise reduction


def _half_mono(n: int) -> CycloMonomial:
    return c_monomial(HALF, (n - 1) // 2)


def _cc_rhs(l: HalfInteger, n: int) -> RationalFunction:
    """``c((n-1)/2)^{2l} - l(2l+1)(n^2-1)/6 (q^n-1)^2``."""
    lv = l.value
    coef = lv * (2 * lv + 1) * (n * n - 1) / 6
    return (_half_mono(n) ** l.twice).to_rf() - _x_power(n, 2) * coef


def termwise_valuation(case: HypCase, l: LLike, n: int) -> Valuation:
    l = HalfInteger.of(l)
    _require_coprime(case, n)
    if l.is_integer:
        lv = l.twice // 2
        if lv < 0:
            raise ValueError("integer l must be non-negative")
        lhs = term_ratio_sum(case, l, n, n)
        pref = c_monomial(case, lv, n * n) / c_monomial(case, lv * n)
        rhs = pref.to_rf() * h_sum(case, n)
        return (lhs - rhs).phi_valuation(n)
    if case != HALF:
        raise ValueError("half-integer l is only supported for r1 = r2 = 1/2")
    m = (n - 1) // 2
    top = term_ratio_sum(HALF, l, n, m + 1)
    return quotient_valuation(top, head_sum(n), _cc_rhs(l, n), RationalFunction.one(), n)


def check_termwise(case: HypCase, l: LLike, n: int) -> CheckResult:
    t0 = time.perf_counter()
    l = HalfInteger.of(l)
    v = termwise_valuation(case, l, n)
    return CheckResult.make("termwise", case, {"l": str(l), "n": n}, ("phi", n, 3), 3, v, started=t0)


# ---------------------------------------------------------------------------
# the lemma chain for r1 = r2 = 1/2


def _pochhammer_odd_even(m: int) -> CycloMonomial:
    """``(q; q^2)_m / (q^2; q^2)_m``."""
    mono = CycloMonomial()
    for j in range(m):
        mono = mono * CycloMonomial.binomial(2 * j + 1)
    for j in range(1, m + 1):
        mono = mono / CycloMonomial.binomial(2 * j)
    return mono


def _one_plus(j: int) -> CycloMonomial:
    """``1 + q^j`` as ``(1 - q^{2j}) / (1 - q^j)``."""
    return CycloMonomial.binomial(2 * j) / CycloMonomial.binomial(j)


def _lemma_n2(n: int, l: HalfInteger) -> tuple[Valuation, int]:
    if not l.is_integer or l.twice < 0:
        raise ValueError("lemma n2 needs a non-negative integer l")
    lv = l.twice // 2
    lhs = (c_monomial(HALF, lv, n * n) / c_monomial(HALF, lv * n)).to_rf()
    return (lhs - _cc_rhs(l, n)).phi_valuation(n), 3


def _lemma_minus_half(n: int) -> tuple[Valuation, Valuation]:
    m = (n - 1) // 2
    lhs = term_ratio_sum(HALF, HalfInteger(-1), n, m + 1)
    rhs = _half_mono(n).inverse().to_rf() * head_sum(n)
    return (lhs - rhs).phi_valuation(n), math.inf


def _lemma_Q(n: int, l: HalfInteger) -> tuple[Valuation, int]:
    lv = l.value
    s1, s2 = sigma_sums(n)
    x1, x2 = _x_power(n, 1), _x_power(n, 2)
    rhs = (
        RationalFunction.one()
        - s1 * x1 * (8 * lv)
        - s1 * x2 * (4 * lv * (2 * lv - 1))
        + s2 * x2 * (8 * lv * lv)
    )
    return (q_quotient(l, n) - rhs).phi_valuation(n), 3


def _lemma_eval(n: int) -> tuple[Valuation, int]:
    m = (n - 1) // 2
    return (harmonic_s(m, 1) + harmonic_s(m, 2)).phi_valuation(n), 1


def _lemma_spec(n: int) -> tuple[Valuation, int]:
    m = (n - 1) // 2
    s1 = harmonic_s(m, 1)
    rhs = RationalFunction.one() - s1 * _x_power(n, 1) * 2 + (s1 + s1 * s1 * 2) * _x_power(n, 2)
    return (_half_mono(n).to_rf() - rhs).phi_valuation(n), 3


def _lemma_more(n: int) -> tuple[Valuation, int]:
    s1, s2 = sigma_sums(n)
    lhs = s1 + s1 * s1 * 4 - s2
    return (lhs - Fraction(n * n - 1, 24)).phi_valuation(n), 1


def _lemma_half_square(n: int) -> tuple[Valuation, int]:
    m = (n - 1) // 2
    lhs = (_pochhammer_odd_even(m) ** 2 * CycloMonomial.q_power(m)).to_rf()
    prod = CycloMonomial()
    for j in range(1, n + 1):
        prod = prod * _one_plus(j)
    prod = prod / _one_plus(n * n)
    main = (CycloMonomial.q_power(n * (n - 1) // 2) * prod**2).to_rf()
    rhs = main + _x_power(n, 2) * Fraction(n * n - 1, 6)
    return (lhs - rhs).phi_valuation(n), 3


def _lemma_ver(n: int, l: HalfInteger) -> tuple[Valuation, int]:
    neg = HalfInteger(-l.twice)
    lhs = q_quotient(neg, n) * q_quotient(l, n)
    shift = l.twice * n  # exponent 2 l n
    bump = RationalFunction.poly(DensePoly.binomial(abs(shift)) ** 2) if shift else RationalFunction.zero()
    if shift < 0:
        # (q^{-a} - 1)^2 = q^{-2a} (q^a - 1)^2
        bump = bump * CycloMonomial.q_power(2 * shift)
    rhs = RationalFunction.one() - bump * Fraction(n * n - 1, 6)
    return (lhs - rhs).phi_valuation(n), 3


def verify_lemma(lemma_id: str, n: int, l: LLike | None = None) -> CheckResult:
    if lemma_id not in LEMMA_IDS:
        raise ValueError(f"invalid lemma id {lemma_id!r}")
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    needs_l = lemma_id in ("n2", "Q", "ver")
    if needs_l and l is None:
        raise ValueError(f"lemma {lemma_id} needs l")
    t0 = time.perf_counter()
    params: dict = {"n": n}
    if needs_l:
        l = HalfInteger.of(l)
        params["l"] = str(l)
    if lemma_id == "n2":
        v, k = _lemma_n2(n, l)
    elif lemma_id == "minus_half":
        v, k = _lemma_minus_half(n)
    elif lemma_id == "Q":
        v, k = _lemma_Q(n, l)
    elif lemma_id == "eval":
        v, k = _lemma_eval(n)
    elif lemma_id == "spec":
        v, k = _lemma_spec(n)
    elif lemma_id == "more":
        v, k = _lemma_more(n)
    elif lemma_id == "half_square":
        v, k = _lemma_half_square(n)
    else:
        v, k = _lemma_ver(n, l)
    modulus = ("exact", n, math.inf) if k == math.inf else ("phi", n, k)
    return CheckResult.make(f"lemma_{lemma_id}", HALF, params, modulus, k, v, started=t0)


# ---------------------------------------------------------------------------
# negative controls


def negative_control_scan(
    case: HypCase, A: int = 2, B: int = 1, window: Iterable[int] = NEGATIVE_WINDOW
) -> tuple[list[CheckResult], str]:
    """Run the main check over a window of n; verdict is "refuted" or "inconclusive"."""
    results = [check_main(case, A, B, n) for n in window if math.gcd(n, case.d) == 1 and n > 1]
    verdict = "refuted" if any(not r.passed for r in results) else "inconclusive"
    return results, verdict
