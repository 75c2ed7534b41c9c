"""Command-line front end: build and export objects, run verification
suites, and compare the weight-system limit against the descendant family.

Machine-readable JSON lines go to stdout, human-readable tables to stderr.
Exit codes: 0 all expectations met, 1 unexpected verdict or failed
comparison, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Callable

from .builders import (
    descendant_even_family,
    descendant_family,
    descendant_odd,
    descendant_even,
    descendant_pm,
    l_ansatz,
    l_operator,
    l_operator_family,
    six_vertex_family,
    six_vertex_r,
    two_param_R,
)
from .checks import (
    VerificationReport,
    check_adjoint_symmetry,
    check_f_constraints,
    check_g_identity,
    check_LLR,
    check_projectors,
    check_properties,
    check_rLL,
    check_str,
    check_two_param,
    check_ybe,
    find_equivalence,
    fz_pole_positions,
    perturbed_family,
)
from .coeffs import CoeffTable, SixVertexParams
from .export import ExportRecord
from .fz import ConvergenceError, FZWeights, fz_limit_closed_form, fz_limit_iterates, fz_limit_R
from .irreps import canonical_element
from .operators import Operator, SpectralOperator, spectral_from_constant
from .projectors import AlphaPair, default_carrier, projector_closed, projector_root
from .sampling import SamplePlan
from .scalars import DEFAULT_PRECISION, QUICK_PRECISION, ExactScalar, Scalar, as_scalar

PRECISION_ENV = "DIHEDRAL_YBE_PRECISION"

BUILD_OBJECTS = ("r6v", "L", "Rodd", "Reven", "Rplus", "Rminus", "Rmu",
                 "projector", "canonical", "fz")
VERIFY_SUITES = ("ybe", "g-identity", "rll", "llr", "properties",
                 "projectors", "str", "two-param", "f-constraints", "all")


class InputError(ValueError):
    """Invalid request parameters; maps to exit code 2."""


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if value < 24:
        raise InputError(f"{PRECISION_ENV} must be at least 24, got {value}")
    return value


def parse_spectral(text: str, precision: int) -> Scalar:
    """Spectral argument: integers and fractions stay exact, anything else
    is parsed as a Python complex literal at the working precision."""
    try:
        return ExactScalar.rational(Fraction(text))
    except ValueError:
        pass
    try:
        return as_scalar(complex(text.replace(" ", "")), precision)
    except ValueError as exc:
        raise InputError(f"cannot parse spectral value {text!r}") from exc


def z_metadata(text: str) -> Any:
    if text.strip() in ("0", "1"):
        return f"symbolic-limit-{text.strip()}"
    return None


# ---------------------------------------------------------------------------
# build

def _root_meta(order: int, power: int) -> dict[str, int]:
    return {"order": order, "power": power}


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def _coprime_params(n: int, k: int, l: int) -> SixVertexParams:
    import math
    if math.gcd(k, n) != 1 or math.gcd(l, n) != 1:
        raise InputError(
            f"twists k={k}, l={l} violate the gcd requirement: "
            f"gcd(k, n) = {math.gcd(k, n)}, gcd(l, n) = {math.gcd(l, n)}, "
            "both must be 1")
    return SixVertexParams(n, k, l)


def build_object(args: argparse.Namespace, precision: int,
                 ) -> tuple[Operator, dict[str, Any]]:
    name = args.object
    k, l = args.k, args.l
    ztext = args.z
    z = parse_spectral(ztext, precision)
    convention = "braided" if args.braided else "plain"

    if name == "r6v":
        p = _coprime_params(args.n, k, l)
        _require(not args.braided, "the seed matrix has no braided form here")
        M = six_vertex_r(p, z)
        meta = {"n": p.n, "parity": "odd" if p.n % 2 else "even",
                "convention": "plain",
                "root": _root_meta(p.w.order, p.w.power)}
    elif name == "L":
        p = _coprime_params(args.n, k, l)
        _require(not args.braided, "the ladder operator has no braided form")
        M = l_operator(p, z)
        meta = {"n": p.n, "parity": "odd" if p.n % 2 else "even",
                "convention": "plain",
                "root": _root_meta(p.w.order, p.w.power)}
    elif name == "Rodd":
        _require(args.n % 2 == 1, f"odd builder requires odd n, got {args.n}")
        p = _coprime_params(args.n, k, l)
        M = descendant_odd(p, z, braided=args.braided)
        meta = {"n": p.n, "parity": "odd", "convention": convention,
                "root": _root_meta(p.w.order, p.w.power)}
    elif name == "Reven":
        m = args.m
        _require(m >= 2, f"even builder requires m >= 2, got {m}")
        import math
        _require(math.gcd(k, m) == 1 and math.gcd(l, m) == 1,
                 f"twists k={k}, l={l} violate the gcd requirement: both "
                 f"gcd(k, m) and gcd(l, m) must be 1 for m={m}")
        M = descendant_even(m, z, k=k, l=l, braided=args.braided)
        meta = {"n": m, "parity": "even", "convention": convention,
                "root": _root_meta(2 * m, 1)}
    elif name in ("Rplus", "Rminus"):
        m = args.m
        _require(m >= 2 and m % 2 == 0,
                 f"signed builder requires even m >= 2, got {m}")
        sign = 1 if name == "Rplus" else -1
        M = descendant_pm(m, sign, z)
        meta = {"n": m, "parity": "even", "convention": "plain",
                "root": _root_meta(2 * m, 1), "sign": sign}
    elif name == "Rmu":
        m = args.m
        _require(m >= 2 and m % 2 == 0,
                 f"two-parameter builder requires even m >= 2, got {m}")
        _require(args.mu is not None, "Rmu requires --mu")
        mu = parse_spectral(args.mu, precision)
        M = two_param_R(m, z, mu)
        meta = {"n": m, "parity": "even", "convention": "braided",
                "root": _root_meta(2 * m, 1), "mu": str(args.mu)}
    elif name == "projector":
        _require(args.alpha is not None, "projector requires --alpha a,b")
        try:
            a, b = (int(part) for part in args.alpha.split(","))
        except ValueError as exc:
            raise InputError(f"--alpha must be 'a,b', got {args.alpha!r}") from exc
        n = args.n
        d = n if n % 2 else n // 2
        pr = projector_closed(AlphaPair(a, b, d), group_n=n)
        M = pr.matrix
        meta = {"n": n, "parity": "odd" if n % 2 else "even",
                "convention": "plain",
                "root": _root_meta(*(lambda r: (r.order, r.power))(projector_root(d, n))),
                "alpha": [pr.alpha.a, pr.alpha.b],
                "trace": str(M.trace().as_rational())}
        return M, meta
    elif name == "canonical":
        n = args.n
        M = canonical_element(default_carrier(n))
        meta = {"n": n, "parity": "odd" if n % 2 else "even",
                "convention": "plain", "z": "symbolic-limit-0"}
        return M, meta
    elif name == "fz":
        N = args.N
        _require(N % 2 == 1, f"the weight-system limit requires odd N, got {N}")
        wts = FZWeights(N)
        M = fz_limit_closed_form(wts, z)
        meta = {"n": N, "parity": "odd", "convention": "braided",
                "root": _root_meta(wts.lam.order, wts.lam.power)}
    else:
        raise InputError(f"unknown object {name!r}")

    meta["z"] = z_metadata(ztext) or ztext
    return M, meta


def cmd_build(args: argparse.Namespace) -> int:
    precision = args.precision or default_precision()
    M, meta = build_object(args, precision)
    record = ExportRecord.from_operator(M, meta, precision)
    text = record.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(record.entries)} entries)",
              file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# verify

class SuiteRun:
    """One claims-grid row: a report plus the verdict it should produce."""

    def __init__(self, suite: str, report: VerificationReport,
                 expected: str = "pass") -> None:
        self.suite = suite
        self.report = report
        self.expected = expected

    @property
    def met(self) -> bool:
        return self.report.verdict == self.expected

    def record(self) -> dict:
        rec = self.report.as_record()
        rec["suite"] = self.suite
        rec["expected"] = self.expected
        rec["met"] = self.met
        return rec


def _odd_descendant(n: int, braided: bool = False,
                    boundary=None) -> SpectralOperator:
    return descendant_family(SixVertexParams(n), braided=braided,
                             boundary=boundary)


def run_ybe_suite(n: int, plan: SamplePlan, perturb: float | None,
                  allow_large: bool) -> list[SuiteRun]:
    """Seed-matrix and full-matrix exchange checks at one index."""
    runs = []
    p = SixVertexParams(n if n % 2 else 2 * n)
    runs.append(SuiteRun("ybe", check_ybe(six_vertex_family(p), plan)))
    if n % 2:
        fams = [_odd_descendant(n), _odd_descendant(n, braided=True)]
    else:
        fams = [descendant_even_family(n),
                descendant_even_family(n, braided=True)]
    for fam in fams:
        if perturb is not None:
            fam = perturbed_family(fam, as_scalar(perturb, plan.precision))
        form = "braided" if fam.braided else "plain"
        runs.append(SuiteRun("ybe", check_ybe(fam, plan, form=form,
                                              allow_large=allow_large)))
    return runs


def run_g_identity_suite(index: int, parity: str,
                         plan: SamplePlan) -> list[SuiteRun]:
    return [SuiteRun("g-identity", check_g_identity(index, parity, plan))]


def run_rll_suite(n: int, plan: SamplePlan) -> list[SuiteRun]:
    p = SixVertexParams(n)
    return [SuiteRun("rll", check_rLL(six_vertex_family(p),
                                      l_operator_family(p), plan))]


def run_llr_suite(n: int, plan: SamplePlan) -> list[SuiteRun]:
    p = SixVertexParams(n)
    L = l_operator_family(p)
    if n % 2:
        plain = _odd_descendant(n)
        braided = _odd_descendant(n, braided=True)
    else:
        plain = descendant_even_family(n // 2)
        braided = descendant_even_family(n // 2, braided=True)
    return [SuiteRun("llr", check_LLR(L, plain, plan)),
            SuiteRun("llr", check_LLR(L, braided, plan, form="braided"))]


ODD_PROPERTIES = ("conj-symmetry", "transpose", "involution", "unitarity",
                  "limit0", "limit1")
EVEN_PROPERTIES = ("conj-symmetry", "transpose", "involution", "unitarity",
                   "limit0")


def _i_boundary(precision: int):
    head = as_scalar(1j, precision)
    return lambda b: head if b == 1 else 1


def run_properties_suite(index: int, parity: str,
                         plan: SamplePlan) -> list[SuiteRun]:
    """Structure properties plus the dual adjoint-symmetry behavior."""
    runs = []
    if parity == "odd":
        fam = _odd_descendant(index)
        braided = _odd_descendant(index, braided=True)
        runs.append(SuiteRun("properties",
                             check_properties(fam, ODD_PROPERTIES, plan)))
    else:
        fam = descendant_even_family(index)
        braided = descendant_even_family(index, braided=True)
        runs.append(SuiteRun("properties",
                             check_properties(fam, EVEN_PROPERTIES, plan)))
        runs.append(SuiteRun("properties",
                             check_properties(fam, ["limit1"], plan),
                             expected="fail"))
    adjoint_plan = plan.with_count(10)
    runs.append(SuiteRun("properties",
                         check_adjoint_symmetry(braided, adjoint_plan)))
    if parity == "odd":
        broken = _odd_descendant(index, braided=True,
                                 boundary=_i_boundary(plan.precision))
    else:
        broken = descendant_even_family(index, braided=True,
                                        boundary=_i_boundary(plan.precision))
    runs.append(SuiteRun("properties",
                         check_adjoint_symmetry(broken, adjoint_plan),
                         expected="fail"))
    return runs


def run_projector_suite(group_n: int) -> list[SuiteRun]:
    return [SuiteRun("projectors", check_projectors(group_n))]


def run_str_suite(N: int, plan: SamplePlan) -> list[SuiteRun]:
    return [SuiteRun("str", check_str(FZWeights(N), plan))]


def run_two_param_suite(m: int, plan: SamplePlan) -> list[SuiteRun]:
    return [SuiteRun("two-param", check_two_param(m, plan))]


def run_f_constraints_suite(index: int, parity: str,
                            plan: SamplePlan) -> list[SuiteRun]:
    if parity == "odd":
        p = SixVertexParams(index)
    else:
        p = SixVertexParams(2 * index)
    return [SuiteRun("f-constraints", check_f_constraints(p, p.table(), plan))]


def run_negative_controls(plan: SamplePlan) -> list[SuiteRun]:
    """Injected faults that the checkers must reject."""
    runs = []
    p = SixVertexParams(3)
    runs.append(SuiteRun(
        "negative-controls",
        check_ybe(perturbed_family(_odd_descendant(3), Fraction(1, 100),
                                   entry=(0, 1)), plan),
        expected="fail"))
    bad_L = SpectralOperator(2 * p.parent_dim,
                             lambda z: l_ansatz(p, z, h=lambda v: v * v),
                             name="L-squared-weight")
    runs.append(SuiteRun(
        "negative-controls",
        check_rLL(six_vertex_family(p), bad_L, plan),
        expected="fail"))
    p5 = SixVertexParams(5)
    asym = CoeffTable(p5.omega, boundary=lambda b: 2 if b == 1 else 1)
    runs.append(SuiteRun(
        "negative-controls",
        check_f_constraints(p5, asym, plan),
        expected="fail"))
    return runs


def run_fz_compare(N: int, z_samples: int, schedule: tuple[int, ...],
                   seed: int, precision: int) -> tuple[list[dict], int]:
    """Limit construction and equivalence search; returns records and an
    exit code. N = 3 must produce an explicit transform; larger N may
    settle for per-sample spectral agreement, with the zero-argument
    comparison checked on top."""
    if N % 2 == 0 or N < 1:
        raise InputError(f"the limit comparison requires odd N, got {N}")
    wts = FZWeights(N)
    plan = SamplePlan(count=z_samples, seed=seed, precision=precision)
    records: list[dict] = []

    probe = plan.points(fz_pole_positions(wts))[0]
    iterates = fz_limit_iterates(wts, probe, schedule, precision)
    gaps = [float(iterates[i + 1].max_abs_diff(iterates[i], precision))
            for i in range(len(iterates) - 1)]
    converged = bool(gaps) and gaps[-1] <= 1e-6
    records.append({
        "suite": "fz-compare", "identity": "fz-limit-convergence",
        "params": {"states": N, "schedule": list(schedule), "seed": seed,
                   "precision": precision},
        "residuals": gaps, "tolerance": 1e-6,
        "verdict": "pass" if converged else "fail",
        "expected": "pass", "met": converged, "notes": [],
    })
    if not converged:
        return records, 1

    limit_fam = SpectralOperator(
        N * N,
        lambda z: fz_limit_R(wts, z, schedule, precision=precision),
        name="fz-limit", poles=fz_pole_positions(wts))
    desc = _odd_descendant(N)
    try:
        res = find_equivalence(limit_fam, desc, plan)
    except ConvergenceError as exc:
        records.append({
            "suite": "fz-compare", "identity": "fz-limit-convergence",
            "params": {"states": N}, "residuals": [exc.gap],
            "tolerance": 1e-6, "verdict": "fail", "expected": "pass",
            "met": False, "notes": [str(exc)],
        })
        return records, 1
    need_transform = N == 3
    ok = res.matched and (res.transform is not None or not need_transform)
    rec = res.as_record()
    rec.update({"suite": "fz-compare", "identity": "fz-equivalence",
                "params": {"states": N, "z_samples": z_samples,
                           "seed": seed, "root": {"order": wts.lam.order,
                                                  "power": wts.lam.power}},
                "verdict": "pass" if ok else "fail",
                "expected": "pass", "met": ok})
    records.append(rec)
    exit_code = 0 if ok else 1

    zero_a = spectral_from_constant(fz_limit_closed_form(wts, 0), name="fz-0")
    zero_b = spectral_from_constant(desc(ExactScalar.rational(0)), name="R-0")
    res0 = find_equivalence(zero_a, zero_b, plan)
    rec0 = res0.as_record()
    rec0.update({"suite": "fz-compare", "identity": "fz-zero-equivalence",
                 "params": {"states": N, "seed": seed},
                 "verdict": "pass" if res0.matched else "fail",
                 "expected": "pass", "met": res0.matched})
    records.append(rec0)
    if not res0.matched:
        exit_code = 1
    return records, exit_code


def paper_claims_grid(seed: int, precision: int,
                      ) -> list[tuple[str, Callable[[], list[SuiteRun]]]]:
    """The acceptance parameter grid, one thunk per claims row."""
    plan = SamplePlan(count=25, seed=seed, precision=precision)
    small = plan
    grid: list[tuple[str, Callable[[], list[SuiteRun]]]] = []

    for n, k, l in ((3, 1, 1), (5, 2, 3), (8, 3, 5)):
        p = SixVertexParams(n, k, l)
        grid.append((f"six-vertex ybe n={n} k={k} l={l}",
                     lambda p=p: [SuiteRun("ybe",
                                           check_ybe(six_vertex_family(p),
                                                     plan))]))
    for n in (3, 5, 7, 9, 17):
        grid.append((f"g-identity odd n={n}",
                     lambda n=n: run_g_identity_suite(n, "odd", plan)))
    for n in (3, 5):
        grid.append((f"full-matrix ybe odd n={n}",
                     lambda n=n: [
                         SuiteRun("ybe", check_ybe(_odd_descendant(n), plan)),
                         SuiteRun("ybe", check_ybe(
                             _odd_descendant(n, braided=True), plan,
                             form="braided"))]))
    for m in (2, 4, 6, 16):
        grid.append((f"g-identity even m={m}",
                     lambda m=m: run_g_identity_suite(m, "even", plan)))
    for m in (2, 4, 6):
        grid.append((f"two-param m={m}",
                     lambda m=m: run_two_param_suite(m, small)))
    for n in (3, 5, 7):
        grid.append((f"rll odd n={n}", lambda n=n: run_rll_suite(n, plan)))
        grid.append((f"llr odd n={n}", lambda n=n: run_llr_suite(n, plan)))
    for m in (2, 4):
        grid.append((f"rll even m={m}",
                     lambda m=m: run_rll_suite(2 * m, plan)))
        grid.append((f"llr even m={m}",
                     lambda m=m: run_llr_suite(2 * m, plan)))
    for g in (3, 5, 7, 9, 4, 6, 8):
        grid.append((f"projectors group {g}",
                     lambda g=g: run_projector_suite(g)))
    for n in (3, 5, 7, 9):
        grid.append((f"limits odd n={n}",
                     lambda n=n: [SuiteRun("properties", check_properties(
                         _odd_descendant(n), ["limit0", "limit1"], plan))]))
    grid.append(("limits even m=2", lambda: [
        SuiteRun("properties", check_properties(
            descendant_even_family(2), ["limit0"], plan)),
        SuiteRun("properties", check_properties(
            descendant_even_family(2), ["limit1"], plan), expected="fail")]))
    grid.append(("adjoint-symmetry dual n=5", lambda: [
        SuiteRun("properties", check_adjoint_symmetry(
            _odd_descendant(5, braided=True), plan.with_count(10))),
        SuiteRun("properties", check_adjoint_symmetry(
            _odd_descendant(5, braided=True,
                            boundary=_i_boundary(precision)),
            plan.with_count(10)), expected="fail")]))
    for N in (3, 5, 7):
        grid.append((f"str N={N}", lambda N=N: run_str_suite(N, plan)))
    grid.append(("negative controls", lambda: run_negative_controls(plan)))
    return grid


def emit(runs: list[SuiteRun]) -> bool:
    """Write JSON lines to stdout and a summary table to stderr."""
    all_met = True
    for run in runs:
        print(json.dumps(run.record(), sort_keys=True))
        rep = run.report
        status = "ok" if run.met else "UNEXPECTED"
        print(f"{run.suite:<18} {rep.identity:<18} "
              f"{json.dumps(rep.params, sort_keys=True):<60} "
              f"verdict={rep.verdict:<5} expected={run.expected:<5} "
              f"max_residual={rep.max_residual:.3e} [{status}]",
              file=sys.stderr)
        all_met = all_met and run.met
    return all_met


def cmd_verify(args: argparse.Namespace) -> int:
    precision = args.precision or default_precision()
    if args.quick:
        precision = QUICK_PRECISION
    plan = SamplePlan(count=args.samples, seed=args.seed, precision=precision)
    suite = args.suite
    runs: list[SuiteRun] = []
    fz_records: list[dict] = []
    fz_exit = 0

    if suite == "all" and args.paper_claims:
        for label, thunk in paper_claims_grid(args.seed, precision):
            print(f"-- {label}", file=sys.stderr)
            runs.extend(thunk())
        fz_records, fz_exit = run_fz_compare(3, 5, args.schedule, args.seed,
                                             precision)
        more, code5 = run_fz_compare(5, 5, args.schedule, args.seed,
                                     precision)
        fz_records.extend(more)
        fz_exit = fz_exit or code5
    else:
        parity = "even" if args.m is not None else "odd"
        index = args.m if args.m is not None else args.n
        suites = [s for s in VERIFY_SUITES if s != "all"] if suite == "all" \
            else [suite]
        for s in suites:
            if s == "ybe":
                runs.extend(run_ybe_suite(index, plan, args.perturb,
                                          args.allow_large))
            elif s == "g-identity":
                runs.extend(run_g_identity_suite(index, parity, plan))
            elif s == "rll":
                runs.extend(run_rll_suite(
                    index if parity == "odd" else 2 * index, plan))
            elif s == "llr":
                runs.extend(run_llr_suite(
                    index if parity == "odd" else 2 * index, plan))
            elif s == "properties":
                runs.extend(run_properties_suite(index, parity, plan))
            elif s == "projectors":
                runs.extend(run_projector_suite(
                    index if parity == "odd" else 2 * index))
            elif s == "str":
                runs.extend(run_str_suite(args.N, plan))
            elif s == "two-param":
                if parity == "even":
                    runs.extend(run_two_param_suite(index, plan))
                elif suite == "two-param":
                    raise InputError("two-param requires --m (even parent)")
            elif s == "f-constraints":
                runs.extend(run_f_constraints_suite(index, parity, plan))

    ok = emit(runs)
    for rec in fz_records:
        print(json.dumps(rec, sort_keys=True))
        print(f"{rec['suite']:<18} {rec['identity']:<18} "
              f"verdict={rec['verdict']:<5} expected=pass  "
              f"[{'ok' if rec['met'] else 'UNEXPECTED'}]", file=sys.stderr)
    total = len(runs) + len(fz_records)
    failed = sum(not r.met for r in runs) + sum(
        not rec["met"] for rec in fz_records)
    print(f"{total - failed}/{total} expectations met", file=sys.stderr)
    return 0 if ok and fz_exit == 0 else 1


def cmd_fz_compare(args: argparse.Namespace) -> int:
    precision = args.precision or default_precision()
    records, exit_code = run_fz_compare(args.N, args.z_samples, args.schedule,
                                        args.seed, precision)
    for rec in records:
        print(json.dumps(rec, sort_keys=True))
        detail = ""
        if rec["identity"] == "fz-equivalence":
            detail = f" kind={rec.get('kind')}"
        print(f"{rec['identity']:<24} verdict={rec['verdict']}{detail}",
              file=sys.stderr)
    return exit_code


# ---------------------------------------------------------------------------
# argument parsing

def _schedule(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"schedule must be comma-separated integers, got {text!r}") from exc
    if len(parts) < 2:
        raise argparse.ArgumentTypeError("schedule needs at least two points")
    return parts


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-ybe",
        description="Build, export, and verify the doubled dihedral "
                    "exchange matrices and their limits.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for every sampled quantity (default 0)")
    common.add_argument("--precision", type=int, default=None,
                        help=f"working precision in bits (default "
                             f"${PRECISION_ENV} or {DEFAULT_PRECISION})")

    b = sub.add_parser("build", parents=[common],
                       help="construct one object and export it")
    b.add_argument("object", choices=BUILD_OBJECTS)
    b.add_argument("--n", type=int, default=3,
                   help="group index (odd families, seed matrix, projectors)")
    b.add_argument("--m", type=int, default=2,
                   help="parent dimension for even-parity families")
    b.add_argument("--N", type=int, default=3,
                   help="state count for the weight-system limit")
    b.add_argument("--k", type=int, default=1, help="first twist")
    b.add_argument("--l", type=int, default=1, help="second twist")
    b.add_argument("--z", default="1", help="spectral argument (default 1)")
    b.add_argument("--mu", default=None,
                   help="second weight for the two-parameter family")
    b.add_argument("--alpha", default=None, help="projector label 'a,b'")
    b.add_argument("--braided", action="store_true",
                   help="export the braid-form matrix")
    b.add_argument("--out", default=None, help="output path (default stdout)")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common],
                       help="run a verification suite")
    v.add_argument("suite", choices=VERIFY_SUITES)
    v.add_argument("--n", type=int, default=3, help="odd-parity index")
    v.add_argument("--m", type=int, default=None,
                   help="even-parity parent dimension (switches parity)")
    v.add_argument("--N", type=int, default=3,
                   help="state count for the star-triangle suite")
    v.add_argument("--samples", type=int, default=25,
                   help="sample count per identity (default 25)")
    v.add_argument("--perturb", type=float, default=None,
                   help="entry perturbation for negative-control runs")
    v.add_argument("--quick", action="store_true",
                   help="53-bit mode with tolerance 1e-9")
    v.add_argument("--allow-large", action="store_true",
                   help="lift the full-matrix leg-dimension cap")
    v.add_argument("--paper-claims", action="store_true",
                   help="run the full acceptance grid (suite must be 'all')")
    v.add_argument("--schedule", type=_schedule,
                   default=(10_000, 1_000_000, 100_000_000),
                   help="rapidity growth schedule for the limit comparison")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fz-compare", parents=[common],
                       help="compare the weight-system limit with the "
                            "odd descendant family")
    f.add_argument("--N", type=int, required=True, help="state count (odd)")
    f.add_argument("--z-samples", type=int, default=5,
                   help="spectral sample count (default 5)")
    f.add_argument("--schedule", type=_schedule,
                   default=(10_000, 1_000_000, 100_000_000),
                   help="rapidity growth schedule, comma-separated")
    f.set_defaults(func=cmd_fz_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
