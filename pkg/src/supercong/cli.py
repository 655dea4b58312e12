"""Command-line driver: plan, dispatch, report."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import congruences, identities, padic
from .padic import CoeffTable, is_prime, read_coeff_file, v_p
from .qhyper import HALF, HalfInteger, HypCase, case_registry
from .results import CheckResult

JOBS_ENV = "SUPERCONG_JOBS"
FIELDS = (
    "check_id",
    "r1",
    "r2",
    "d",
    "params",
    "modulus",
    "required_valuation",
    "achieved_valuation",
    "pass",
    "elapsed_ms",
    "probe",
)


class UsageError(Exception):
    """Bad arguments or unreadable input; maps to exit status 2."""


# ---------------------------------------------------------------------------
# tasks

# name -> callable; tasks are (name, args) so they pickle cleanly
_DISPATCH = {
    "main": congruences.check_main,
    "sharpness": congruences.sharpness_probe,
    "companion": lambda case, A, B, n: congruences.check_companion(case, A, B, n),
    "companion_uncorrected": lambda case, A, B, n: congruences.check_companion(
        case, A, B, n, with_correction=False
    ),
    "termwise": congruences.check_termwise,
    "lemma": congruences.verify_lemma,
    "beau": identities.check_beau,
    "beau2": identities.check_beau2,
    "dwork": padic.dwork_check,
    "dwork_3s": padic.dwork_strong_probe,
    "rv": padic.rv_check,
    "cm": padic.cm_check,
    "cm_ap": padic.cm_ap_check,
    "cm_vanish": padic.cm_vanishing_check,
}

Task = tuple[str, tuple]


def _run_task(task: Task) -> list[CheckResult]:
    name, args = task
    out = _DISPATCH[name](*args)
    return list(out) if isinstance(out, tuple) else [out]


@dataclass
class CheckPlan:
    checks: list[Task] = field(default_factory=list)
    parallelism: int = 1
    output: str = "json-lines"
    coeff_files: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.parallelism < 1:
            raise UsageError("parallelism must be positive")
        if self.output not in ("json-lines", "csv"):
            raise UsageError(f"unknown output format {self.output!r}")
        for name, _ in self.checks:
            if name not in _DISPATCH:
                raise UsageError(f"unknown check {name!r}")


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if raw:
        try:
            jobs = int(raw)
        except ValueError:
            raise UsageError(f"{JOBS_ENV} must be an integer") from None
        if jobs < 1:
            raise UsageError(f"{JOBS_ENV} must be positive")
        return jobs
    return os.cpu_count() or 1


def run_plan(plan: CheckPlan) -> list[CheckResult]:
    """Run every task; the result order does not depend on parallelism."""
    for path in plan.coeff_files:
        if not os.access(path, os.R_OK):
            raise UsageError(f"cannot read {path}")
    try:
        if plan.parallelism == 1 or len(plan.checks) < 2:
            chunks = [_run_task(t) for t in plan.checks]
        else:
            with ProcessPoolExecutor(max_workers=plan.parallelism) as pool:
                chunks = list(pool.map(_run_task, plan.checks))
    except (ValueError, KeyError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from exc
    results = [r for chunk in chunks for r in chunk]
    return sorted(results, key=CheckResult.sort_key)


def exit_status(results: Iterable[CheckResult]) -> int:
    return 0 if all(r.passed for r in results if not r.probe) else 1


# ---------------------------------------------------------------------------
# serialization


def _val(x) -> Any:
    if x == math.inf:
        return "inf"
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x


def _modulus(mod: tuple, params) -> dict:
    kind, base, k = mod
    key = "p" if kind == "p" or (kind == "exact" and "p" in params) else "n"
    return {"kind": kind, key: base, "k": _val(k)}


def result_record(r: CheckResult) -> dict:
    return {
        "check_id": r.check_id,
        "r1": None if r.r1 is None else str(r.r1),
        "r2": None if r.r2 is None else str(r.r2),
        "d": r.d,
        "params": {k: _val(v) for k, v in sorted(r.params.items())},
        "modulus": _modulus(r.modulus, r.params),
        "required_valuation": _val(r.required_valuation),
        "achieved_valuation": _val(r.achieved_valuation),
        "pass": r.passed,
        "elapsed_ms": round(r.elapsed_ms, 3),
        "probe": r.probe,
    }


def emit_report(results: Sequence[CheckResult], fmt: str = "json-lines") -> bytes:
    records = [result_record(r) for r in results]
    if not records:
        return b""
    if fmt == "json-lines":
        text = "".join(json.dumps(rec, separators=(",", ":")) + "\n" for rec in records)
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(FIELDS)
        for rec in records:
            row = []
            for key in FIELDS:
                v = rec[key]
                if isinstance(v, dict):
                    v = json.dumps(v, separators=(",", ":"))
                elif isinstance(v, bool):
                    v = "true" if v else "false"
                elif v is None:
                    v = ""
                row.append(v)
            writer.writerow(row)
        text = buf.getvalue()
    else:
        raise UsageError(f"unknown output format {fmt!r}")
    return text.encode("utf-8")


# ---------------------------------------------------------------------------
# argument parsing


_RANGE = re.compile(r"(-?\d+)(?:-(-?\d+))?")


def parse_range(specs: Sequence[str] | None, default: Sequence[int] = ()) -> list[int]:
    """``["2-7"]``, ``["3,5"]`` or repeated values; sorted, deduplicated."""
    if not specs:
        return list(default)
    out: set[int] = set()
    for text in specs:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            m = _RANGE.fullmatch(part)
            if m is None:
                raise UsageError(f"bad integer range {part!r}")
            lo = int(m.group(1))
            hi = lo if m.group(2) is None else int(m.group(2))
            if lo > hi:
                raise UsageError(f"empty range {part!r}")
            out.update(range(lo, hi + 1))
    if not out:
        raise UsageError("empty range")
    return sorted(out)


def parse_case(text: str) -> HypCase:
    """``1/4,1/3``, ``1/4:1/3`` or one fraction for ``r1 = r2``."""
    try:
        return HypCase.parse(text.replace(":", ","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


def parse_cases(specs: Sequence[str] | None, default: Sequence[HypCase] | None = None) -> list[HypCase]:
    if not specs:
        return list(case_registry() if default is None else default)
    out: list[HypCase] = []
    for s in specs:
        cases = case_registry() if s.strip() == "all" else [parse_case(s)]
        out += [c for c in cases if c not in out]
    return out


def parse_halves(specs: Sequence[str] | None, default: Sequence[str]) -> list[HalfInteger]:
    out = []
    for s in specs or default:
        for part in s.split(","):
            try:
                out.append(HalfInteger.of(part.strip()))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad half-integer {part!r}") from None
    return sorted(set(out), key=lambda h: h.twice)


def _note(msg: str) -> None:
    print(f"note: {msg}", file=sys.stderr)


def _admissible_n(case: HypCase, ns: Iterable[int]) -> list[int]:
    return [n for n in ns if n > 1 and math.gcd(n, case.d) == 1]


def _dwork_obstruction(case: HypCase, p: int) -> str | None:
    if not is_prime(p):
        return "p is not prime"
    if case.d % p == 0:
        return "p divides d"
    if v_p(padic.h_classical(case, p), p) != 0:
        return "H(p) = 0 mod p"
    return None


# ---------------------------------------------------------------------------
# plan builders


def plan_main(cases, ns, As, Bs, sharpness=False) -> list[Task]:
    tasks: list[Task] = []
    for case in cases:
        for n in _admissible_n(case, ns):
            for A in As:
                for B in Bs:
                    tasks.append(("main", (case, A, B, n)))
                    if sharpness:
                        tasks.append(("sharpness", (case, A, B, n)))
    return tasks


def plan_companion(cases, ns, As, Bs, uncorrected=False) -> list[Task]:
    name = "companion_uncorrected" if uncorrected else "companion"
    return [
        (name, (case, A, B, n))
        for case in cases
        for n in _admissible_n(case, ns)
        for A in As
        for B in Bs
    ]


def plan_termwise(cases, ls, ns) -> list[Task]:
    tasks: list[Task] = []
    for case in cases:
        for l in ls:
            for n in _admissible_n(case, ns):
                if not l.is_integer and (case != HALF or n % 2 == 0):
                    continue
                if l.is_integer and l.twice < 0:
                    continue
                tasks.append(("termwise", (case, l, n)))
    return tasks


_LEMMA_L = {"n2": ("1", "2"), "Q": ("1", "2"), "ver": ("1/2", "1")}


def plan_lemmas(ids, ns, ls=None) -> list[Task]:
    tasks: list[Task] = []
    for lid in ids:
        for n in ns:
            if n < 3 or n % 2 == 0:
                continue
            if lid in _LEMMA_L:
                for l in parse_halves(ls, _LEMMA_L[lid]):
                    tasks.append(("lemma", (lid, n, l)))
            else:
                tasks.append(("lemma", (lid, n)))
    return tasks


def plan_identities(pairs, rs, ns) -> list[Task]:
    tasks: list[Task] = []
    for r1, r2 in pairs:
        d = math.lcm(r1.denominator, r2.denominator)
        tasks += [("beau", (r1, r2, n)) for n in ns if math.gcd(n, d) == 1]
    for r in rs:
        tasks += [("beau2", (r, n)) for n in ns if math.gcd(n, 2 * r.denominator) == 1]
    return tasks


def plan_dwork(cases, ps, ss, probe=True) -> list[Task]:
    tasks: list[Task] = []
    for case in cases:
        for p in ps:
            why = _dwork_obstruction(case, p)
            if why:
                _note(f"skipping dwork {case} p={p}: {why}")
                continue
            for s in ss:
                tasks.append(("dwork", (case, p, s)))
                if probe:
                    tasks.append(("dwork_3s", (case, p, s)))
    return tasks


def plan_rv(cases, ps, table: CoeffTable) -> list[Task]:
    tasks: list[Task] = []
    for case in cases:
        for p in ps:
            if not is_prime(p) or case.d % p == 0:
                _note(f"skipping rv {case} p={p}: needs p prime and coprime to d")
            elif p not in table:
                _note(f"skipping rv {case} p={p}: a(p) unavailable in {table.label}")
            else:
                tasks.append(("rv", (case, p, table)))
    return tasks


def plan_cm(ps) -> list[Task]:
    tasks: list[Task] = []
    for p in ps:
        if not is_prime(p) or p == 3:
            _note(f"skipping cm p={p}")
        elif p % 3 == 1:
            if p >= 7:
                tasks.append(("cm", (p,)))
            tasks.append(("cm_ap", (p,)))
        else:
            tasks.append(("cm_vanish", (p,)))
    return tasks


def standard_plan(with_controls: bool = False) -> list[Task]:
    """The full suite run by ``report``."""
    all_cases = case_registry()
    tasks = plan_main(all_cases, range(2, 8), [2], [1], sharpness=True)
    tasks += plan_main([HALF], [3, 5], [3], [1, 2])
    tasks += plan_companion(all_cases, range(2, 6), [2], [1])
    tasks += plan_lemmas(congruences.LEMMA_IDS, [3, 5, 7])
    tasks += plan_termwise([HALF], parse_halves(["-1/2,1,2"], ()), [3, 5, 7])
    tasks += plan_identities(
        [(Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 3), Fraction(1, 3)),
         (Fraction(1, 4), Fraction(1, 3)), (Fraction(1, 3), Fraction(1, 5))],
        [Fraction(1, 2), Fraction(1, 3)],
        [2, 3, 5],
    )
    tasks += plan_dwork(all_cases, [5, 7], [1])
    tasks += plan_dwork([HALF], [3], [1, 2])
    tasks += plan_cm([5, 7, 11, 13])
    if with_controls:
        tasks += plan_companion([HALF], [5], [2], [1], uncorrected=True)
        tasks += plan_main([HypCase(Fraction(1, 5), Fraction(1, 5))], range(2, 8), [2], [1])
    return tasks


# ---------------------------------------------------------------------------
# entry point


def _fractions(specs: Sequence[str] | None, default: Sequence[Fraction] = ()) -> list[Fraction]:
    if not specs:
        return list(default)
    out = []
    for s in specs:
        for part in s.split(","):
            try:
                out.append(Fraction(part.strip()))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad fraction {part!r}") from None
    return out


def _pairs(specs: Sequence[str] | None) -> list[tuple[Fraction, Fraction]]:
    if not specs:
        return [(Fraction(1, 2), Fraction(1, 2))]
    out = []
    for s in specs:
        parts = _fractions([s.replace(":", ",")])
        if len(parts) == 1:
            parts *= 2
        if len(parts) != 2 or not all(0 < x < 1 for x in parts):
            raise UsageError(f"bad pair {s!r}")
        out.append(tuple(sorted(parts)))
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="supercong", description="Exact verification of q-supercongruences and their classical shadows."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json-lines", "csv"), default="json-lines")
    common.add_argument("--jobs", type=int, default=None, help=f"worker count (default ${JOBS_ENV} or CPU count)")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("verify-main", "main congruence modulo Phi_n^3")
    p.add_argument("--case", action="append", help="r1,r2 or 'all' (repeatable)")
    p.add_argument("--n", action="append")
    p.add_argument("--A", action="append")
    p.add_argument("--B", action="append")
    p.add_argument("--sharpness", action="store_true", help="also record the Phi_n^4 probe")

    p = add("verify-companion", "companion congruences")
    p.add_argument("--case", action="append")
    p.add_argument("--n", action="append")
    p.add_argument("--A", action="append")
    p.add_argument("--B", action="append")
    p.add_argument("--uncorrected", action="store_true", help="drop the C(A,B) term")

    p = add("verify-termwise", "termwise reduction")
    p.add_argument("--case", action="append")
    p.add_argument("--l", action="append")
    p.add_argument("--n", action="append")

    p = add("verify-lemmas", "lemma chain for r1 = r2 = 1/2")
    p.add_argument("--lemma", action="append", choices=congruences.LEMMA_IDS)
    p.add_argument("--n", action="append")
    p.add_argument("--l", action="append")

    p = add("verify-identities", "root-of-unity identities")
    p.add_argument("--case", action="append", help="pair for the F-identity (any rationals in (0,1))")
    p.add_argument("--r", action="append", help="parameter for the G-identity")
    p.add_argument("--n", action="append")

    p = add("dwork", "Dwork quotient congruences")
    p.add_argument("--case", action="append")
    p.add_argument("--p", action="append")
    p.add_argument("--s", action="append")

    p = add("rv", "H(p) = a(p) mod p^3 against a coefficient file")
    p.add_argument("--case", action="append")
    p.add_argument("--p", action="append")
    p.add_argument("--coeff-file", required=True)

    p = add("cm", "CM case (1/4,1/3)")
    p.add_argument("--p", action="append")

    p = add("report", "run the standard suite")
    p.add_argument("--with-controls", action="store_true", help="include the expected failures")
    return ap


def plan_from_args(args: argparse.Namespace) -> CheckPlan:
    cmd = args.command
    coeff_files: list[str] = []
    if cmd == "verify-main":
        tasks = plan_main(
            parse_cases(args.case),
            parse_range(args.n, range(2, 8)),
            parse_range(args.A, [2]),
            parse_range(args.B, [1]),
            sharpness=args.sharpness,
        )
    elif cmd == "verify-companion":
        tasks = plan_companion(
            parse_cases(args.case),
            parse_range(args.n, range(2, 6)),
            parse_range(args.A, [2]),
            parse_range(args.B, [1]),
            uncorrected=args.uncorrected,
        )
    elif cmd == "verify-termwise":
        tasks = plan_termwise(
            parse_cases(args.case, [HALF]),
            parse_halves(args.l, ["1"]),
            parse_range(args.n, [3, 5, 7]),
        )
    elif cmd == "verify-lemmas":
        tasks = plan_lemmas(args.lemma or congruences.LEMMA_IDS, parse_range(args.n, [3, 5, 7]), args.l)
    elif cmd == "verify-identities":
        tasks = plan_identities(
            _pairs(args.case), _fractions(args.r, [Fraction(1, 2)]), parse_range(args.n, [3, 5])
        )
    elif cmd == "dwork":
        tasks = plan_dwork(parse_cases(args.case), parse_range(args.p, [5, 7]), parse_range(args.s, [1]))
    elif cmd == "rv":
        try:
            table = read_coeff_file(args.coeff_file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.coeff_file}: {exc.strerror}") from None
        except ValueError as exc:
            raise UsageError(f"{args.coeff_file}: {exc}") from None
        coeff_files.append(args.coeff_file)
        tasks = plan_rv(parse_cases(args.case, [HALF]), parse_range(args.p, [3]), table)
    elif cmd == "cm":
        tasks = plan_cm(parse_range(args.p, [5, 7, 13]))
    else:
        tasks = standard_plan(with_controls=args.with_controls)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    return CheckPlan(tasks, jobs, args.format, coeff_files)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        plan = plan_from_args(args)
        results = run_plan(plan)
        data = emit_report(results, plan.output)
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return exit_status(results)


if __name__ == "__main__":
    sys.exit(main())
