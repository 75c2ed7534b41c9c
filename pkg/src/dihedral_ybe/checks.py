"""Residual checkers for the exchange identities and their property suites.

Every checker samples the spectral parameter from a SamplePlan, measures
max-entry residuals, and folds them into a VerificationReport whose verdict
is pass exactly when every residual clears the tolerance. Equivalence
between two spectral families is searched in three stages: the monomial
transform family, a general linear intertwiner fit, and eigenvalue-multiset
comparison as the weakest verdict.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Callable, Iterable, Sequence

import gmpy2
import numpy as np

from .builders import (
    descendant_pm_family,
    diagonal_power_transform,
    index_scale_transform,
    two_param_R,
)
from .coeffs import CoeffTable, SixVertexParams
from .fz import FZWeights, star_triangle_sides
from .irreps import CLASS_EVEN_AXES, IrrepLabel, canonical_element
from .operators import Operator, SpectralOperator, embed, kron, permutation_swap
from .projectors import catalog, parent_irrep, projector_algebraic, projector_closed
from .sampling import SamplePlan
from .scalars import (
    DEFAULT_PRECISION,
    QUICK_PRECISION,
    ExactScalar,
    FloatScalar,
    Scalar,
    as_scalar,
    root_of_unity,
)

ScalarLike = Scalar | int | Fraction

PASS = "pass"
FAIL = "fail"

FULL_MATRIX_CAP = 7
# verdicts that must hold identically, not merely within float noise
EXACT_TOLERANCE = 5e-324

YBE_FORMS = ("plain", "braided", "constant")
PROPERTY_NAMES = ("conj-symmetry", "transpose", "involution", "unitarity",
                  "limit0", "limit1")


def default_tolerance(precision: int) -> float:
    """1e-30 at the reference 256-bit precision, 1e-9 in quick 53-bit mode."""
    return 1e-30 if precision >= DEFAULT_PRECISION else 1e-9


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check over a sample plan."""

    identity: str
    params: dict
    residuals: tuple[float, ...]
    tolerance: float
    verdict: str
    wall_time: float
    notes: tuple[str, ...] = ()

    @classmethod
    def build(cls, identity: str, params: dict, residuals: Iterable,
              tolerance: float, started: float,
              notes: Iterable[str] = ()) -> "VerificationReport":
        res = tuple(float(r) for r in residuals)
        verdict = PASS if all(r < tolerance for r in res) else FAIL
        return cls(identity, dict(params), res, tolerance, verdict,
                   time.monotonic() - started, tuple(notes))

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    def as_record(self) -> dict:
        """Serializable view; wall time is excluded so reports are stable."""
        return {
            "identity": self.identity,
            "params": self.params,
            "residuals": list(self.residuals),
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def _scalar(z: ScalarLike) -> Scalar:
    return z if isinstance(z, (ExactScalar, FloatScalar)) else as_scalar(z)


def _residual(op: Operator, precision: int) -> float:
    return float(op.max_abs(precision))


def _merged_poles(*fams: SpectralOperator) -> tuple[complex, ...]:
    return tuple(dict.fromkeys(p for fam in fams for p in fam.poles))


def swapped_form(R: SpectralOperator) -> SpectralOperator:
    """Leg-swap composition, converting between plain and braided forms."""
    d = math.isqrt(R.dim)
    if d * d != R.dim:
        raise ValueError(f"dimension {R.dim} is not a tensor square")
    P = permutation_swap(d)
    return SpectralOperator(R.dim, lambda z: P @ R.fn(z),
                            name=f"{R.name}-swapped", poles=R.poles,
                            braided=not R.braided)


def perturbed_family(R: SpectralOperator, epsilon: ScalarLike = Fraction(1, 100),
                     entry: tuple[int, int] = (0, 0)) -> SpectralOperator:
    """Copy of a family with one entry shifted; feeds the negative controls."""
    bump = Operator(R.dim, {entry: _scalar(epsilon)})
    return SpectralOperator(R.dim, lambda z: R.fn(z) + bump,
                            name=f"{R.name}-perturbed", poles=R.poles,
                            braided=R.braided)


# ---------------------------------------------------------------------------
# Yang-Baxter equation, full matrix form

def ybe_residual(R: SpectralOperator, x: Scalar, y: Scalar, form: str = "plain",
                 precision: int = DEFAULT_PRECISION) -> float:
    """Max-entry residual of one Yang-Baxter sample in the given form."""
    d = math.isqrt(R.dim)
    dims = (d, d, d)
    xy = x * y
    if form == "plain":
        lhs = (embed(R(x), "12", dims) @ embed(R(xy), "13", dims)
               @ embed(R(y), "23", dims))
        rhs = (embed(R(y), "23", dims) @ embed(R(xy), "13", dims)
               @ embed(R(x), "12", dims))
    elif form == "braided":
        lhs = (embed(R(x), "12", dims) @ embed(R(xy), "23", dims)
               @ embed(R(y), "12", dims))
        rhs = (embed(R(y), "23", dims) @ embed(R(xy), "12", dims)
               @ embed(R(x), "23", dims))
    else:
        raise ValueError(f"form must be plain or braided here, got {form!r}")
    return _residual(lhs - rhs, precision)


def check_ybe(R: SpectralOperator, plan: SamplePlan, form: str = "plain", *,
              tolerance: float | None = None,
              allow_large: bool = False) -> VerificationReport:
    """Yang-Baxter residuals of a spectral family over the sample plan.

    The constant form evaluates the family once and ignores the spectral
    parameter. Full-matrix work grows as the cube of the leg dimension, so
    legs above FULL_MATRIX_CAP are refused unless allow_large is set; the
    scalar route in check_g_identity covers those sizes.
    """
    started = time.monotonic()
    if form not in YBE_FORMS:
        raise ValueError(f"form must be one of {YBE_FORMS}, got {form!r}")
    d = math.isqrt(R.dim)
    if d * d != R.dim:
        raise ValueError(f"dimension {R.dim} is not a tensor square")
    if d > FULL_MATRIX_CAP and not allow_large:
        raise ValueError(
            f"full-matrix check capped at leg dimension {FULL_MATRIX_CAP}; "
            "pass allow_large=True or use check_g_identity")
    if form in ("plain", "braided") and R.braided != (form == "braided"):
        raise ValueError(
            f"family {R.name!r} carries braided={R.braided}; "
            "convert with swapped_form before checking the other form")
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    if form == "constant":
        M = R(ExactScalar.one())
        dims = (d, d, d)
        lhs = (embed(M, "12", dims) @ embed(M, "13", dims)
               @ embed(M, "23", dims))
        rhs = (embed(M, "23", dims) @ embed(M, "13", dims)
               @ embed(M, "12", dims))
        residuals = [_residual(lhs - rhs, plan.precision)]
    else:
        residuals = [ybe_residual(R, x, y, form, plan.precision)
                     for x, y in plan.point_pairs(R.poles, products=(1,))]
    params = {"dim": R.dim, "form": form, "operator": R.name,
              "samples": len(residuals), "seed": plan.seed,
              "precision": plan.precision}
    return VerificationReport.build("ybe", params, residuals, tol, started)


# ---------------------------------------------------------------------------
# mixed-dimension exchange relations

def check_rLL(r: SpectralOperator, L: SpectralOperator, plan: SamplePlan, *,
              tolerance: float | None = None) -> VerificationReport:
    """Seed relation r12(x/y) L13(x) L23(y) = L23(y) L13(x) r12(x/y)."""
    started = time.monotonic()
    if r.dim != 4:
        raise ValueError(f"seed matrix must act on dimension 4, got {r.dim}")
    d = L.dim // 2
    if L.dim != 2 * d:
        raise ValueError(f"ladder operator dimension {L.dim} must be even")
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    dims = (2, 2, d)
    poles = _merged_poles(r, L)
    residuals = []
    for x, y in plan.point_pairs(poles, products=(-1,)):
        ratio = x / y
        lhs = (embed(r(ratio), "12", dims) @ embed(L(x), "13", dims)
               @ embed(L(y), "23", dims))
        rhs = (embed(L(y), "23", dims) @ embed(L(x), "13", dims)
               @ embed(r(ratio), "12", dims))
        residuals.append(_residual(lhs - rhs, plan.precision))
    params = {"seed_dim": 2, "leg_dim": d, "operator": L.name,
              "samples": len(residuals), "seed": plan.seed,
              "precision": plan.precision}
    return VerificationReport.build("rll", params, residuals, tol, started)


def check_LLR(L: SpectralOperator, R: SpectralOperator, plan: SamplePlan,
              form: str = "plain", *,
              tolerance: float | None = None) -> VerificationReport:
    """Descent relation between the ladder operator and an exchange family.

    plain: L12(x) L13(y) R23(x^-1 y) = R23(x^-1 y) L13(y) L12(x).
    braided: R23(x y^-1) L13(x) L12(y) = L13(y) L12(x) R23(x y^-1).
    """
    started = time.monotonic()
    if form not in ("plain", "braided"):
        raise ValueError(f"form must be plain or braided, got {form!r}")
    if R.braided != (form == "braided"):
        raise ValueError(
            f"family {R.name!r} carries braided={R.braided}; "
            "convert with swapped_form before checking the other form")
    d = math.isqrt(R.dim)
    if d * d != R.dim:
        raise ValueError(f"dimension {R.dim} is not a tensor square")
    if L.dim != 2 * d:
        raise ValueError(
            f"ladder dimension {L.dim} does not match leg dimension {d}")
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    dims = (2, d, d)
    poles = _merged_poles(L, R)
    residuals = []
    for x, y in plan.point_pairs(poles, products=(-1,)):
        if form == "plain":
            arg = y / x
            lhs = (embed(L(x), "12", dims) @ embed(L(y), "13", dims)
                   @ embed(R(arg), "23", dims))
            rhs = (embed(R(arg), "23", dims) @ embed(L(y), "13", dims)
                   @ embed(L(x), "12", dims))
        else:
            arg = x / y
            lhs = (embed(R(arg), "23", dims) @ embed(L(x), "13", dims)
                   @ embed(L(y), "12", dims))
            rhs = (embed(L(y), "13", dims) @ embed(L(x), "12", dims)
                   @ embed(R(arg), "23", dims))
        residuals.append(_residual(lhs - rhs, plan.precision))
    params = {"form": form, "leg_dim": d, "operator": R.name,
              "samples": len(residuals), "seed": plan.seed,
              "precision": plan.precision}
    return VerificationReport.build("llr", params, residuals, tol, started)


# ---------------------------------------------------------------------------
# scalar four-index relation, the scalable substitute for the matrix check

def _numeric_g_table(d: int, wpow: Sequence, z) -> list[list]:
    """Fourier-transformed coefficient table at one numeric point.

    Mirrors CoeffTable.g_table for the default twists on raw mpc values;
    the caller owns the active gmpy2 context precision.
    """
    F = [[None] * d for _ in range(d)]
    for c in range(d):
        cur = gmpy2.mpc(1)
        F[0][c] = cur
        for a in range(1, d):
            wt = wpow[(2 * a - 1 + c) % d]
            cur = cur * ((z + wt) / (1 + z * wt))
            F[a][(a + c) % d] = cur
    inv = 1 / gmpy2.mpfr(d)
    out = []
    for a in range(d):
        fa = F[a]
        out.append([sum(map(mul, (wpow[(b * j) % d] for b in range(d)), fa)) * inv
                    for j in range(d)])
    return out


def _g_relation_tensor(d: int, gx, gxy, gy) -> list[list[list]]:
    """T[a][b] flattened over (dd, c): the cyclic triple sum over k."""
    gx2 = [row + row for row in gx]
    gyrev2 = []
    for row in gy:
        rev = [row[-k % d] for k in range(d)]
        gyrev2.append(rev + rev)
    T = [[None] * d for _ in range(d)]
    for a in range(d):
        xa2 = gx2[a]
        for b in range(d):
            col = (a - b) % d
            u = [gxy[k][col] for k in range(d)]
            yb2 = gyrev2[b]
            flat = []
            for dd in range(d):
                xs = xa2[d - dd: 2 * d - dd]
                v = list(map(mul, u, xs))
                for c in range(d):
                    flat.append(sum(map(mul, v, yb2[d - c: 2 * d - c])))
            T[a][b] = flat
    return T


def _g_relation_residual(d: int, T) -> float:
    """Worst gap between T at (a,b,dd,c) and at the reversed quadruple.

    The right side of the relation is the left side with its label pairs
    swapped, which in this layout reads entries at (c,dd,b,a); palindromic
    quadruples agree identically and are skipped.
    """
    worst = gmpy2.mpfr(0)
    for a in range(d):
        for b in range(d):
            Tab = T[a][b]
            col = b * d + a
            for dd in range(d):
                base = dd * d
                for c in range(d):
                    if (c, dd, b, a) <= (a, b, dd, c):
                        continue
                    m = gmpy2.norm(Tab[base + c] - T[c][dd][col])
                    if m > worst:
                        worst = m
    return float(gmpy2.sqrt(worst))


def _g_parity_root(index: int, parity: str):
    if parity == "odd":
        if index < 3 or index % 2 == 0:
            raise ValueError(f"odd parity needs an odd index >= 3, got {index}")
        return root_of_unity(index, 1).squared()
    if parity == "even":
        if index < 2:
            raise ValueError(f"even parity needs an index >= 2, got {index}")
        return root_of_unity(2 * index, 1).squared()
    raise ValueError(f"parity must be odd or even, got {parity!r}")


def check_g_identity(index: int, parity: str, plan: SamplePlan, *,
                     tolerance: float | None = None) -> VerificationReport:
    """Scalar four-index relation equivalent to the full exchange equation.

    Enumerates every quadruple in [0, d)^4 with an O(d) cyclic sum each;
    the swapped-pair symmetry of the two sides lets one tensor serve both.
    Runs on raw mpc values at the plan precision plus guard bits.
    """
    started = time.monotonic()
    omega = _g_parity_root(index, parity)
    d = omega.order
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    table = CoeffTable(omega)
    samples = plan.point_pairs(table.pole_positions(), products=(1,))
    prec = plan.precision + 16
    residuals = []
    saved = gmpy2.get_context()
    try:
        gmpy2.set_context(gmpy2.context(precision=prec))
        wpow = [omega.pow_float(t, prec).value for t in range(d)]
        for x, y in samples:
            zx = gmpy2.mpc(x.value, precision=prec)
            zy = gmpy2.mpc(y.value, precision=prec)
            gx = _numeric_g_table(d, wpow, zx)
            gxy = _numeric_g_table(d, wpow, zx * zy)
            gy = _numeric_g_table(d, wpow, zy)
            T = _g_relation_tensor(d, gx, gxy, gy)
            residuals.append(_g_relation_residual(d, T))
    finally:
        gmpy2.set_context(saved)
    params = {"index": index, "parity": parity, "samples": len(residuals),
              "seed": plan.seed, "precision": plan.precision}
    return VerificationReport.build("g-identity", params, residuals, tol,
                                    started)


# ---------------------------------------------------------------------------
# coefficient constraints along the tensor-product graph

def check_f_constraints(p: SixVertexParams, t: CoeffTable, plan: SamplePlan, *,
                        tolerance: float | None = None) -> VerificationReport:
    """Four delta-gated bracket constraints over all catalog label pairs.

    Each active gate demands f at one label to continue f at another up to
    an explicit phase bracket; a boundary that breaks the head symmetry
    violates at least one gate.
    """
    started = time.monotonic()
    if p.parent_dim != t.d:
        raise ValueError(
            f"parameter set (parent {p.parent_dim}) and table (dimension "
            f"{t.d}) disagree")
    d = t.d
    k = t.k % d
    l = t.l % d
    pairs = catalog(p.n)
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    omega = t.omega
    residuals = []
    for z in plan.points(t.pole_positions()):
        ftab = t.f_table(z)
        worst = 0.0
        for alpha in pairs:
            a, b = alpha.a, alpha.b
            fa = ftab[(a, b)]
            e1 = omega.pow(((-l - a) * k - b * l) % d)
            e2 = omega.pow(((-l + a) * k + b * l) % d)
            for beta in pairs:
                cc, dd = beta.a, beta.b
                gates = (
                    ((k + b - dd) % d == 0 and (a + l - cc) % d == 0, e1),
                    ((k - b - dd) % d == 0 and (cc - l + a) % d == 0, e2),
                    ((k + b + dd) % d == 0 and (cc + l + a) % d == 0, e1),
                    ((k - b + dd) % d == 0 and (cc - a + l) % d == 0, e2),
                )
                if not any(active for active, _ in gates):
                    continue
                fb = ftab[(cc, dd)]
                for active, wte in gates:
                    if not active:
                        continue
                    bracket = fa * (z * wte + 1) - fb * (wte + z)
                    mag = float(bracket.abs_mpfr()) if isinstance(
                        bracket, FloatScalar) else float(
                        bracket.abs_mpfr(plan.precision))
                    if mag > worst:
                        worst = mag
        residuals.append(worst)
    params = {"group_index": p.n, "dim": d, "k": t.k, "l": t.l,
              "labels": len(pairs), "samples": len(residuals),
              "seed": plan.seed, "precision": plan.precision}
    return VerificationReport.build("f-constraints", params, residuals, tol,
                                    started)


# ---------------------------------------------------------------------------
# property suite for one spectral family

def _parent_label(group_n: int) -> IrrepLabel:
    if group_n % 2:
        return IrrepLabel.n_dim_odd(group_n, 1)
    return IrrepLabel.m_dim_even(group_n, CLASS_EVEN_AXES, 0, 0)


def six_vertex_unitarity_scalar(p: SixVertexParams) -> Callable[[Scalar], Scalar]:
    """Proportionality factor in the seed matrix inverse relation."""
    plus = p.w.pow(2 * p.k * p.l)
    minus = p.w.pow(-2 * p.k * p.l)
    one = ExactScalar.one()

    def scalar(z: Scalar) -> Scalar:
        zinv = one / z
        return (plus * zinv - minus * z) * (plus * z - minus * zinv)

    return scalar


def check_properties(R: SpectralOperator, which: Iterable[str],
                     plan: SamplePlan, *, group_n: int | None = None,
                     tolerance: float | None = None,
                     unitarity_scalar: Callable[[Scalar], Scalar] | None = None,
                     ) -> VerificationReport:
    """Named structure properties of one exchange family.

    limit0 compares the plain form at z = 0 against the canonical central
    element of the parent carrier, limit1 against the leg swap; both are
    evaluated exactly. conj-symmetry samples the real axis. unitarity
    accepts a proportionality factor for families that invert up to one.
    """
    started = time.monotonic()
    names = list(which)
    for name in names:
        if name not in PROPERTY_NAMES:
            raise ValueError(f"unknown property {name!r}; "
                             f"choose from {PROPERTY_NAMES}")
    d = math.isqrt(R.dim)
    if d * d != R.dim:
        raise ValueError(f"dimension {R.dim} is not a tensor square")
    if group_n is None:
        group_n = d if d % 2 else 2 * d
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    P = permutation_swap(d)
    eye = Operator.identity(R.dim)
    one = ExactScalar.one()

    def plain_at(z: Scalar) -> Operator:
        M = R(z)
        return P @ M if R.braided else M

    residuals: list[float] = []
    for name in names:
        if name == "conj-symmetry":
            for z in plan.real_points():
                M = R(z)
                residuals.append(_residual(M - M.conjugate(), plan.precision))
        elif name == "transpose":
            for z in plan.points(R.poles):
                M = R(z)
                residuals.append(_residual(M - M.transpose(), plan.precision))
        elif name == "involution":
            for z in plan.points(R.poles):
                M = plain_at(z)
                residuals.append(_residual(M @ M - eye, plan.precision))
        elif name == "unitarity":
            for z in plan.points(R.poles):
                M = plain_at(z)
                M21 = P @ plain_at(one / z) @ P
                target = eye if unitarity_scalar is None else (
                    eye * unitarity_scalar(z))
                residuals.append(_residual(M @ M21 - target, plan.precision))
        elif name == "limit0":
            target = canonical_element(_parent_label(group_n))
            M0 = plain_at(ExactScalar.rational(0))
            residuals.append(0.0 if M0.equals(target, strict=True)
                             else _residual(M0 - target, plan.precision))
        elif name == "limit1":
            M1 = plain_at(one)
            residuals.append(0.0 if M1.equals(P, strict=True)
                             else _residual(M1 - P, plan.precision))
    params = {"which": "+".join(names), "dim": R.dim, "group_index": group_n,
              "operator": R.name, "seed": plan.seed,
              "precision": plan.precision}
    return VerificationReport.build("properties", params, residuals, tol,
                                    started)


def check_adjoint_symmetry(R: SpectralOperator, plan: SamplePlan, *,
                           tolerance: float | None = None) -> VerificationReport:
    """Braid-form self-adjointness on the real axis.

    At real spectral parameter the matrix must equal its leg-swapped
    conjugate transpose; equivalently every head coefficient is real and
    symmetric in its second label. Feeding a boundary with a complex head
    value is the designated way to break this.
    """
    started = time.monotonic()
    if not R.braided:
        raise ValueError("adjoint symmetry is a braid-form property; "
                         "convert with swapped_form first")
    d = math.isqrt(R.dim)
    if d * d != R.dim:
        raise ValueError(f"dimension {R.dim} is not a tensor square")
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    P = permutation_swap(d)
    residuals = []
    for z in plan.real_points():
        M = R(z)
        residuals.append(_residual(M - P @ M.dagger() @ P, plan.precision))
    params = {"dim": R.dim, "operator": R.name, "samples": len(residuals),
              "seed": plan.seed, "precision": plan.precision}
    return VerificationReport.build("adjoint-symmetry", params, residuals,
                                    tol, started)


# ---------------------------------------------------------------------------
# star-triangle relation for the self-dual weights

def fz_pole_positions(wts: FZWeights) -> tuple[complex, ...]:
    """Unit-circle pole positions of both weight kinds, all step counts."""
    out = []
    for j in range(1, wts.N):
        out.append(complex(wts.lam.pow_float(2 * j - 1, 64).value))
        out.append(complex(wts.lam.pow_float(-2 * j, 64).value))
    return tuple(out)


def check_str(wts: FZWeights, plan: SamplePlan, *,
              tolerance: float | None = None) -> VerificationReport:
    """Star-triangle relation in proportionality form.

    For each sampled (x, y) the ratio of the summed side to the product
    side must not depend on the three external indices; the residual is the
    relative spread of that ratio. The measured ratio is reported rather
    than asserted to be 1. The middle weight of the summed side is read
    with an index-difference argument, matching every other weight.
    """
    started = time.monotonic()
    tol = 1e-20 if tolerance is None else tolerance
    N = wts.N
    poles = fz_pole_positions(wts)
    pool = plan.with_count(plan.count * 2).point_pairs(poles, products=(1,))
    residuals: list[float] = []
    first_ratio: complex | None = None
    resampled = 0
    for x, y in pool:
        if len(residuals) == plan.count:
            break
        ratio0 = None
        spread = 0.0
        degenerate = False
        for a in range(N):
            for b in range(N):
                for c in range(N):
                    lhs, rhs = star_triangle_sides(wts, x, y, a, b, c)
                    if float(rhs.abs_mpfr()) < 1e-40:
                        degenerate = True
                        break
                    ratio = lhs / rhs
                    if ratio0 is None:
                        ratio0 = ratio
                        scale = float(ratio0.abs_mpfr())
                    else:
                        gap = float((ratio - ratio0).abs_mpfr()) / scale
                        if gap > spread:
                            spread = gap
                if degenerate:
                    break
            if degenerate:
                break
        if degenerate:
            resampled += 1
            continue
        if first_ratio is None:
            first_ratio = ratio0.to_complex()
        residuals.append(spread)
    if len(residuals) < plan.count:
        raise ArithmeticError(
            "sample pool exhausted by zero product sides; widen the plan")
    notes = ["summed-side middle weight argument read as an index difference",
             f"measured ratio at first sample: {first_ratio!r}"]
    if resampled:
        notes.append(f"resampled {resampled} degenerate samples")
    params = {"states": N, "root_order": wts.lam.order,
              "root_power": wts.lam.power, "samples": len(residuals),
              "seed": plan.seed, "precision": plan.precision}
    return VerificationReport.build("str", params, residuals, tol, started,
                                    notes)


# ---------------------------------------------------------------------------
# two-parameter braided family

def check_two_param(m: int, plan: SamplePlan, *,
                    tolerance: float | None = None) -> VerificationReport:
    """Braided exchange relation with an independent weight per slot.

    Each sample draws three unit-circle weights away from the degenerate
    values +-1, pairing one weight with each spectral argument on both
    sides of the equation.
    """
    started = time.monotonic()
    if m < 2 or m % 2:
        raise ValueError(f"parent dimension must be even and >= 2, got {m}")
    tol = default_tolerance(plan.precision) if tolerance is None else tolerance
    fam = descendant_pm_family(m, 1)
    rng = random.Random(f"two-param:{plan.seed}")

    def draw_weight() -> FloatScalar:
        while True:
            t = rng.random()
            clear = True
            for r in (0.0, 0.5):
                arc = abs(t - r) % 1.0
                if min(arc, 1.0 - arc) * 2 * math.pi < plan.margin:
                    clear = False
                    break
            if clear:
                return plan.unit_point(t)

    dims = (m, m, m)
    residuals = []
    for x, y in plan.point_pairs(fam.poles, products=(1,)):
        wa, wb, wc = draw_weight(), draw_weight(), draw_weight()
        xy = x * y
        A = two_param_R(m, x, wa)
        B = two_param_R(m, xy, wb)
        C = two_param_R(m, y, wc)
        lhs = (embed(A, "12", dims) @ embed(B, "23", dims)
               @ embed(C, "12", dims))
        rhs = (embed(C, "23", dims) @ embed(B, "12", dims)
               @ embed(A, "23", dims))
        residuals.append(_residual(lhs - rhs, plan.precision))
    params = {"parent_dim": m, "samples": len(residuals), "seed": plan.seed,
              "precision": plan.precision}
    return VerificationReport.build("two-param", params, residuals, tol,
                                    started)


# ---------------------------------------------------------------------------
# projector algebra, exact

def check_projectors(group_n: int, *,
                     tolerance: float = EXACT_TOLERANCE) -> VerificationReport:
    """Idempotency, orthogonality, completeness, construction agreement,
    and trace bookkeeping for the projector family, all in exact arithmetic.

    A residual is recorded per property: exactly 0.0 on success, the
    numeric magnitude of the worst violation otherwise.
    """
    started = time.monotonic()
    pairs = catalog(group_n)
    d = pairs[0].d
    mats = [projector_closed(alpha, group_n=group_n).matrix for alpha in pairs]
    eye = Operator.identity(d * d)

    def gap(op: Operator, target: Operator) -> float:
        return 0.0 if op.equals(target, strict=True) else float(
            op.max_abs_diff(target))

    idem = 0.0
    for p in mats:
        idem = max(idem, gap(p @ p, p))
    ortho = 0.0
    for i, p in enumerate(mats):
        for q in mats[i + 1:]:
            prod = p @ q
            if prod.nnz and not prod.is_zero(strict=True):
                ortho = max(ortho, float(prod.max_abs()))
    total = Operator.zero(d * d)
    for p in mats:
        total = total + p
    complete = gap(total, eye)
    agreement = 0.0
    for alpha, p in zip(pairs, mats):
        q = projector_algebraic(alpha, group_n=group_n).matrix
        agreement = max(agreement, gap(q, p))
    trace_gap = 0
    for alpha, p in zip(pairs, mats):
        want = parent_irrep(alpha, group_n=group_n).dimension
        got = p.trace().as_rational()
        trace_gap = max(trace_gap, abs(got - want))
    residuals = [idem, ortho, complete, agreement, float(trace_gap)]
    params = {"group_index": group_n, "dim": d, "labels": len(pairs),
              "properties": "idempotent+orthogonal+complete+agreement+trace"}
    return VerificationReport.build("projectors", params, residuals,
                                    tolerance, started)


# ---------------------------------------------------------------------------
# equivalence search between two spectral families

@dataclass(frozen=True)
class EquivalenceResult:
    """Outcome of the staged basis-transformation search."""

    kind: str
    matched: bool
    transform: Operator | None
    epsilon: int | None
    residuals: tuple[float, ...]
    tolerance: float
    details: dict

    def as_record(self) -> dict:
        return {
            "kind": self.kind,
            "matched": self.matched,
            "epsilon": self.epsilon,
            "residuals": list(self.residuals),
            "tolerance": self.tolerance,
            "details": self.details,
        }


def _projective_gap(M: np.ndarray, target: np.ndarray) -> float:
    """Max-entry distance from M to its best scalar multiple of target."""
    idx = np.unravel_index(int(np.argmax(np.abs(target))), target.shape)
    pivot = target[idx]
    scale = max(float(np.max(np.abs(M))), 1e-300)
    if abs(pivot) < 1e-300:
        return float(np.max(np.abs(M))) / scale
    s = M[idx] / pivot
    return float(np.max(np.abs(M - s * target))) / scale


def _involution_normalize(M: np.ndarray) -> np.ndarray | None:
    """Rescale so the square is the identity; None if the square is not
    a scalar matrix to working accuracy. The square root branch is
    arbitrary, so the result is canonical only up to a global sign."""
    n = M.shape[0]
    sq = M @ M
    kappa = complex(np.trace(sq)) / n
    if abs(kappa) < 1e-12:
        return None
    if float(np.max(np.abs(sq - kappa * np.eye(n)))) > 1e-6 * abs(kappa):
        return None
    return M / np.sqrt(kappa)


def _plus_count(M: np.ndarray) -> int:
    """Number of +1 eigenvalues of a normalized involution."""
    return int(np.sum(np.linalg.eigvals(M).real > 0))


def _canonical_spectrum(M: np.ndarray) -> np.ndarray | None:
    """Eigenvalues normalized by the reference member that minimizes the
    sorted multiset, making the result stable under a global scalar."""
    eig = np.linalg.eigvals(M)
    top = float(np.max(np.abs(eig)))
    if top < 1e-12:
        return None
    refs: dict[tuple, complex] = {}
    for v in eig:
        if abs(v) < 1e-9 * top:
            continue
        u = v / abs(v)
        key = (round(float(u.real), 6), round(float(u.imag), 6),
               round(float(abs(v)) / top, 6))
        refs.setdefault(key, complex(v))
    best_key = None
    best: np.ndarray | None = None
    for ref in refs.values():
        arr = np.sort_complex(eig / ref)
        key = tuple((round(float(v.real), 6), round(float(v.imag), 6))
                    for v in arr)
        if best_key is None or key < best_key:
            best_key, best = key, arr
    return best


def _operator_from_array(arr: np.ndarray,
                         precision: int = QUICK_PRECISION) -> Operator:
    entries = {}
    rows, cols = arr.shape
    for i in range(rows):
        for j in range(cols):
            v = complex(arr[i, j])
            if v != 0:
                entries[(i, j)] = as_scalar(v, precision)
    return Operator(rows, entries)


def _monomial_search(d: int, Az: list[np.ndarray], Bz: list[np.ndarray],
                     tolerance: float):
    """Diagonal-power times index-scaling candidates, smallest first."""
    root = root_of_unity(4 * d, 1)
    units = [c for c in range(1, d) if math.gcd(c, d) == 1] or [1]
    for c in units:
        S = index_scale_transform(d, c)
        Sinv = index_scale_transform(d, pow(c, -1, d))
        Sn = S.to_numpy()
        Sinvn = Sinv.to_numpy()
        for e in range(4 * d):
            lam = root.pow(e)
            Dn = diagonal_power_transform(d, lam).to_numpy()
            Dinvn = diagonal_power_transform(d, root.pow(-e)).to_numpy()
            Tn = Dn @ Sn
            Tinvn = Sinvn @ Dinvn
            TT = np.kron(Tn, Tn)
            TTinv = np.kron(Tinvn, Tinvn)
            gaps = []
            for M, N in zip(Az, Bz):
                gap = _projective_gap(TT @ M @ TTinv, N)
                gaps.append(gap)
                if gap > tolerance:
                    break
            if max(gaps) <= tolerance:
                T = diagonal_power_transform(d, lam) @ S
                return T, c, e, gaps
    return None


def _intertwiner_search(Az: list[np.ndarray], Bz: list[np.ndarray],
                        hold_a: list[np.ndarray], hold_b: list[np.ndarray],
                        tolerance: float):
    """Joint nullspace fit of G A(z) = s(z) B(z) G over involution-normalized
    samples, verified on the held-out points as well.

    Normalizing each sample to an involution leaves a per-sample sign; the
    +1-eigenspace dimensions force it whenever they are unbalanced, and the
    fit restricts to those samples. Verification re-minimizes over the sign
    at every point, so balanced samples still constrain the result.
    """
    An = [_involution_normalize(M) for M in Az]
    Bn = [_involution_normalize(M) for M in Bz]
    if any(M is None for M in An) or any(M is None for M in Bn):
        return None
    Ha = [_involution_normalize(M) for M in hold_a]
    Hb = [_involution_normalize(M) for M in hold_b]
    if any(M is None for M in Ha) or any(M is None for M in Hb):
        return None
    D = An[0].shape[0]
    signs = []
    for M, N in zip(An, Bn):
        pa, pb = _plus_count(M), _plus_count(N)
        if 2 * pa == D and 2 * pb == D:
            signs.append(0)
        elif pa == pb:
            signs.append(1)
        elif pa == D - pb:
            signs.append(-1)
        else:
            return None
    forced = [i for i, s in enumerate(signs) if s][:6]
    if forced:
        trials = [[(i, signs[i]) for i in forced]]
    else:
        idx = list(range(min(6, len(An))))
        trials = [[(i, 1) for i in idx], [(i, -1) for i in idx]]
    eyeD = np.eye(D)
    verify_a = An + Ha
    verify_b = Bn + Hb
    for trial in trials:
        stack = np.vstack([np.kron(eyeD, An[i].T) - s * np.kron(Bn[i], eyeD)
                           for i, s in trial])
        _, sv, vh = np.linalg.svd(stack)
        rank = int(np.sum(sv > sv[0] * 1e-8)) if sv.size and sv[0] > 0 else 0
        basis = [vh[i].conj() for i in range(rank, vh.shape[0])]
        if not basis:
            continue
        combo = np.zeros(D * D, dtype=complex)
        for i, vec in enumerate(basis):
            combo = combo + vec / (i + 1)
        for vec in [combo] + basis:
            G = vec.reshape(D, D)
            gs = np.linalg.svd(G, compute_uv=False)
            if gs[0] < 1e-12 or gs[-1] < 1e-8 * gs[0]:
                continue
            G = G / np.max(np.abs(G))
            gaps = []
            chosen = []
            for M, N in zip(verify_a, verify_b):
                left = G @ M
                cands = [(float(np.max(np.abs(left - s * (N @ G)))), s)
                         for s in (1, -1)]
                gap, s = min(cands)
                gaps.append(gap)
                chosen.append(s)
            if max(gaps) <= tolerance:
                eps = chosen[0] if len(set(chosen)) == 1 else None
                return G, eps, gaps, len(basis), chosen
    return None


def find_equivalence(A: SpectralOperator, B: SpectralOperator,
                     plan: SamplePlan, *,
                     tolerance: float = 1e-6) -> EquivalenceResult:
    """Search for a basis transformation carrying family A onto family B.

    Stages, strongest evidence first: the identity, a per-leg monomial
    transform (diagonal power times index scaling, conjugated on both legs,
    allowing a scalar per sample), a general linear intertwiner fitted by a
    joint nullspace solve and verified on held-out samples, and finally
    eigenvalue-multiset comparison per sample. The last stage alone never
    produces a transform; equal spectra give a weak match, unequal spectra
    a refusal.
    """
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    poles = _merged_poles(A, B)
    doubled = plan.with_count(plan.count * 2).points(poles)
    zs = doubled[:plan.count]
    held = doubled[plan.count:]
    Az = [A(z).to_numpy() for z in zs]
    Bz = [B(z).to_numpy() for z in zs]

    gaps = [_projective_gap(M, N) for M, N in zip(Az, Bz)]
    if max(gaps) <= tolerance:
        leg = math.isqrt(A.dim)
        ident = Operator.identity(leg if leg * leg == A.dim else A.dim)
        return EquivalenceResult("identity", True, ident, None, tuple(gaps),
                                 tolerance, {"samples": len(zs)})

    d = math.isqrt(A.dim)
    if d * d == A.dim:
        hit = _monomial_search(d, Az, Bz, tolerance)
        if hit is not None:
            T, c, e, gaps = hit
            details = {"scale_index": c, "phase_exponent": e,
                       "phase_order": 4 * d, "samples": len(zs)}
            return EquivalenceResult("monomial", True, T, None, tuple(gaps),
                                     tolerance, details)

    hold_a = [A(z).to_numpy() for z in held]
    hold_b = [B(z).to_numpy() for z in held]
    hit = _intertwiner_search(Az, Bz, hold_a, hold_b, tolerance)
    if hit is not None:
        G, eps, gaps, null_dim, signs = hit
        details = {"nullspace_dim": null_dim, "signs": signs,
                   "samples": len(gaps)}
        return EquivalenceResult("intertwiner", True,
                                 _operator_from_array(G), eps, tuple(gaps),
                                 tolerance, details)

    spectra_a = [_canonical_spectrum(M) for M in Az]
    spectra_b = [_canonical_spectrum(M) for M in Bz]
    gaps = []
    display: list[dict] = []
    for ea, eb in zip(spectra_a, spectra_b):
        if ea is None or eb is None:
            gaps.append(0.0 if ea is eb else 1.0)
            continue
        gaps.append(float(np.max(np.abs(ea - eb))))
        display.append({
            "a": [[round(float(v.real), 8), round(float(v.imag), 8)]
                  for v in ea],
            "b": [[round(float(v.real), 8), round(float(v.imag), 8)]
                  for v in eb],
        })
    matched = bool(gaps) and max(gaps) <= tolerance
    kind = "spectral" if matched else "refusal"
    details = {"samples": len(zs), "spectra": display}
    return EquivalenceResult(kind, matched, None, None, tuple(gaps),
                             tolerance, details)
