"""Outcome records shared by every check."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional

Valuation = int | float  # float only for math.inf


def _order(v) -> tuple:
    # numbers sort numerically, everything else by text
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return (0, Fraction(v), "")
    try:
        return (0, Fraction(str(v)), "")
    except (ValueError, ZeroDivisionError):
        return (1, Fraction(0), str(v))


@dataclass(frozen=True)
class CheckResult:
    """One congruence or identity check.

    ``modulus`` is ``(kind, base, k)``: kind ``"phi"`` means ``Phi_base(q)^k``,
    ``"p"`` means ``base**k``, ``"exact"`` means an identity (k infinite).
    Probe records are observations and never count as failures.
    """

    check_id: str
    case: Optional[Any]
    params: Mapping[str, Any]
    modulus: tuple[str, int, Valuation]
    required_valuation: Valuation
    achieved_valuation: Valuation
    passed: bool
    probe: bool = False
    elapsed_ms: float = 0.0
    r_override: Optional[tuple[Any, Any, int]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.passed != (self.achieved_valuation >= self.required_valuation):
            raise ValueError("pass flag inconsistent with valuations")

    @classmethod
    def make(
        cls,
        check_id: str,
        case,
        params: Mapping[str, Any],
        modulus: tuple[str, int, Valuation],
        required: Valuation,
        achieved: Valuation,
        *,
        started: float | None = None,
        probe: bool = False,
        r_override: tuple[Any, Any, int] | None = None,
    ) -> "CheckResult":
        elapsed = 0.0 if started is None else (time.perf_counter() - started) * 1000.0
        return cls(
            check_id,
            case,
            dict(params),
            modulus,
            required,
            achieved,
            achieved >= required,
            probe,
            elapsed,
            r_override,
        )

    @property
    def is_exact(self) -> bool:
        return self.achieved_valuation == math.inf

    @property
    def r1(self):
        if self.r_override is not None:
            return self.r_override[0]
        return None if self.case is None else self.case.r1

    @property
    def r2(self):
        if self.r_override is not None:
            return self.r_override[1]
        return None if self.case is None else self.case.r2

    @property
    def d(self):
        if self.r_override is not None:
            return self.r_override[2]
        return None if self.case is None else self.case.d

    def sort_key(self) -> tuple:
        return (
            self.check_id,
            str(self.r1),
            str(self.r2),
            tuple(sorted((k, _order(v)) for k, v in self.params.items())),
            self.modulus[1],
            str(self.modulus[2]),
        )
