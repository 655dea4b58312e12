"""Exact verification of q-supercongruences for truncated hypergeometric sums."""

from .arith import DensePoly, cyclotomic, phi_valuation, poly_gcd
from .congruences import (
    check_companion,
    check_main,
    check_termwise,
    negative_control_scan,
    sharpness_probe,
    verify_lemma,
)
from .identities import check_beau, check_beau2, f_of_a, g_of_a, ratio_taylor
from .local_ring import CycloMonomial, Modulus, RationalFunction, congruent
from .padic import (
    cm_check,
    dwork_check,
    eta_cm_coeffs,
    gamma_p,
    h_classical,
    padic_reduce,
    rv_check,
    unit_root_estimate,
)
from .qhyper import HALF, HypCase, c_term, case_registry, h_sum
from .results import CheckResult

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "CycloMonomial",
    "DensePoly",
    "HALF",
    "HypCase",
    "Modulus",
    "RationalFunction",
    "c_term",
    "case_registry",
    "check_beau",
    "check_beau2",
    "check_companion",
    "check_main",
    "check_termwise",
    "cm_check",
    "congruent",
    "cyclotomic",
    "dwork_check",
    "eta_cm_coeffs",
    "f_of_a",
    "g_of_a",
    "gamma_p",
    "h_classical",
    "h_sum",
    "negative_control_scan",
    "padic_reduce",
    "phi_valuation",
    "poly_gcd",
    "ratio_taylor",
    "rv_check",
    "sharpness_probe",
    "unit_root_estimate",
    "verify_lemma",
]
