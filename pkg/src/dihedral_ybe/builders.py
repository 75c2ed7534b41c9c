"""Constructors for the spectral operator families.

Everything here is assembled from the coefficient engine and the operator
layer: the 4x4 trigonometric vertex matrix, the ladder operator L(z) mixing a
two-dimensional and a parent-dimensional space, the exchange matrices built
from g-coefficient tables (both parities, plus the even-only signed pair and
their two-parameter combination), and the basis transforms used to relate
different twist conventions. Exact scalar inputs yield exact matrices, so the
z = 0 and z = 1 limits are computed in the cyclotomic ring, not numerically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import partial
from typing import Callable

from .coeffs import Boundary, CoeffTable, SixVertexParams
from .dihedral import GroupElement, group_elements
from .irreps import CLASS_EVEN_AXES, IrrepLabel, dual_irrep_matrix, irrep_matrix
from .operators import Operator, SpectralOperator
from .scalars import ExactScalar, RootOfUnity, Scalar, as_scalar, root_of_unity

ScalarLike = Scalar | int | Fraction


def _scalar(z: ScalarLike) -> Scalar:
    return as_scalar(z)


# ---------------------------------------------------------------------------
# six-vertex seed

def six_vertex_r(p: SixVertexParams, z: ScalarLike) -> Operator:
    """4x4 vertex matrix; depends on the twists only through k*l mod n."""
    z = _scalar(z)
    if z.is_zero():
        raise ZeroDivisionError("z = 0 is a pole of the vertex matrix")
    zinv = ExactScalar.one() / z
    q = p.w.pow(2 * p.k * p.l)
    qinv = p.w.pow(-2 * p.k * p.l)
    corner = q * zinv - qinv * z
    middle = zinv - z
    cross = q - qinv
    return Operator(4, {(0, 0): corner, (1, 1): middle, (1, 2): cross,
                        (2, 1): cross, (2, 2): middle, (3, 3): corner})


def six_vertex_family(p: SixVertexParams) -> SpectralOperator:
    return SpectralOperator(4, partial(six_vertex_r, p), name="r", poles=(0j,))


# ---------------------------------------------------------------------------
# ladder operator

def l_operator(p: SixVertexParams, z: ScalarLike) -> Operator:
    """L(z) on the 2 x d space, entire in z; d is the parent dimension."""
    z = _scalar(z)
    d = p.parent_dim
    omega = p.omega
    out = Operator.zero(2 * d)
    for i in range(d):
        out.add_to(0 * d + i, 1 * d + i, omega.pow(i * p.k))
        out.add_to(1 * d + i, 0 * d + i, omega.pow(-i * p.k))
        out.add_to(0 * d + (i - p.l) % d, 0 * d + i, z)
        out.add_to(1 * d + (i + p.l) % d, 1 * d + i, z)
    return out


def l_operator_family(p: SixVertexParams) -> SpectralOperator:
    return SpectralOperator(2 * p.parent_dim, partial(l_operator, p), name="L")


def _two_dim_matrix(w: RootOfUnity, k: int, g: GroupElement) -> Operator:
    """Two-dimensional action for arbitrary twist k, no table-range limits."""
    hi = w.pow(k * g.rotation)
    lo = w.pow(-k * g.rotation)
    if g.flipped:
        return Operator(2, {(0, 1): hi, (1, 0): lo})
    return Operator(2, {(0, 0): hi, (1, 1): lo})


def _two_dim_dual(l: int, n: int, g: GroupElement) -> Operator:
    out = Operator(2)
    if not g.flipped:
        if g.rotation == l % n:
            out.add_to(0, 0, 1)
        if g.rotation == (-l) % n:
            out.add_to(1, 1, 1)
    return out


def _parent_carrier(n: int) -> IrrepLabel:
    if n % 2:
        return IrrepLabel.n_dim_odd(n, 1)
    return IrrepLabel.m_dim_even(n, CLASS_EVEN_AXES, 0, 0)


def l_ansatz(p: SixVertexParams, z: ScalarLike,
             h: Callable[[Scalar], Scalar] | None = None) -> Operator:
    """Ladder ansatz: mixed canonical element plus h(z) times its twisted
    inverse, evaluated in the 2 x d pair of representations.

    h defaults to the identity map, which reproduces l_operator exactly;
    other choices (h(z) = z**2, say) feed the negative checks.
    """
    z = _scalar(z)
    hz = z if h is None else h(z)
    carrier = _parent_carrier(p.n)
    d = carrier.dimension
    total = Operator.zero(2 * d)
    for g in group_elements(p.n):
        dual = dual_irrep_matrix(carrier, g)
        if dual.nnz:
            total = total + _two_dim_matrix(p.w, p.k, g).kron(dual)
    twisted = Operator.zero(2 * d)
    for g in group_elements(p.n):
        dual2 = _two_dim_dual(p.l, p.n, g)
        if dual2.nnz:
            twisted = twisted + dual2.kron(irrep_matrix(carrier, g.inverse()))
    return total + twisted * hz


# ---------------------------------------------------------------------------
# exchange matrices from g-tables

def _assemble(d: int, gtab: dict[tuple[int, int], Scalar], braided: bool) -> Operator:
    out = Operator.zero(d * d)
    for (a, j), val in gtab.items():
        if isinstance(val, ExactScalar):
            if val.is_zero_vector:
                continue
        elif val.value == 0:
            continue
        for i in range(d):
            if braided:
                out.add_to(((i + a + j) % d) * d + (i + j) % d,
                           ((i + a) % d) * d + i, val)
            else:
                out.add_to(((i + j) % d) * d + (i + a + j) % d,
                           ((i + a) % d) * d + i, val)
    return out


def descendant_matrix(table: CoeffTable, z: ScalarLike, braided: bool = False) -> Operator:
    """Exchange matrix of a coefficient table; braided picks the form that
    satisfies the braid-shaped equation, plain the permuted one."""
    return _assemble(table.d, table.g_table(_scalar(z)), braided)


def descendant_odd(p: SixVertexParams, z: ScalarLike, braided: bool = False,
                   boundary: Boundary | None = None) -> Operator:
    if p.n % 2 == 0:
        raise ValueError(f"group index {p.n} must be odd here")
    return descendant_matrix(p.table(boundary), z, braided)


def descendant_even(m: int, z: ScalarLike, w: RootOfUnity | None = None,
                    k: int = 1, l: int = 1, braided: bool = False,
                    boundary: Boundary | None = None) -> Operator:
    """Exchange matrix on the m**2 space of the doubled group of index 2m.

    Twists must be coprime to m only. Odd m runs through the identical
    assembly and lands on the odd-parity family at a relabeled root.
    """
    if m < 2:
        raise ValueError("parent dimension must be at least 2")
    if w is None:
        w = root_of_unity(2 * m, 1)
    if w.order != 2 * m:
        raise ValueError(f"root order {w.order} must equal 2m = {2 * m}")
    return descendant_matrix(CoeffTable(w.squared(), k, l, boundary), z, braided)


def descendant_family(p: SixVertexParams, braided: bool = False,
                      boundary: Boundary | None = None) -> SpectralOperator:
    table = p.table(boundary)
    d = table.d
    return SpectralOperator(d * d, partial(descendant_matrix, table, braided=braided),
                            name="Rcheck" if braided else "R",
                            poles=table.pole_positions(), braided=braided)


def descendant_even_family(m: int, w: RootOfUnity | None = None, k: int = 1,
                           l: int = 1, braided: bool = False,
                           boundary: Boundary | None = None) -> SpectralOperator:
    if w is None:
        w = root_of_unity(2 * m, 1)
    table = CoeffTable(w.squared(), k, l, boundary)
    return SpectralOperator(m * m, partial(descendant_matrix, table, braided=braided),
                            name="Rcheck" if braided else "R",
                            poles=table.pole_positions(), braided=braided)


# ---------------------------------------------------------------------------
# even-only signed pair and the two-parameter family

def _pm_table(m: int, w: RootOfUnity | None) -> CoeffTable:
    if m < 2 or m % 2:
        raise ValueError(f"parent dimension {m} must be even here")
    if w is None:
        w = root_of_unity(m, 1)
    if w.order != m:
        raise ValueError(f"root order {w.order} must equal m = {m}")
    return CoeffTable(w, 1, 1)


def _signed_g_table(table: CoeffTable, z: Scalar) -> dict[tuple[int, int], Scalar]:
    """Fourier transform of f with the alternating sign (-1)**(a+b) inserted."""
    d = table.d
    ftab = table.f_table(z)
    inv = Fraction(1, d)
    out: dict[tuple[int, int], Scalar] = {}
    for a in range(d):
        for j in range(d):
            total: Scalar = ExactScalar.rational(0)
            for b in range(d):
                term = table.omega.pow(b * j) * ftab[(a, b)]
                if (a + b) % 2:
                    total = total - term
                else:
                    total = total + term
            out[(a, j)] = total * inv
    return out


def descendant_pm(m: int, sign: int, z: ScalarLike,
                  w: RootOfUnity | None = None) -> Operator:
    """Braided-form exchange matrix of the signed even-only pair.

    sign +1 is the default even family at the order-m root; sign -1 inserts
    (-1)**(a+b) under the Fourier transform.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    table = _pm_table(m, w)
    z = _scalar(z)
    gtab = table.g_table(z) if sign == 1 else _signed_g_table(table, z)
    return _assemble(m, gtab, braided=True)


def descendant_pm_family(m: int, sign: int, w: RootOfUnity | None = None) -> SpectralOperator:
    table = _pm_table(m, w)
    return SpectralOperator(m * m, partial(descendant_pm, m, sign, w=w),
                            name="Rcheck+" if sign == 1 else "Rcheck-",
                            poles=table.pole_positions(), braided=True)


def pm_shift_assembly(m: int, z: ScalarLike, w: RootOfUnity | None = None) -> Operator:
    """Braided assembly with the first g-index shifted by the half period.

    Conjugating by the tensor square of diag(lambda**i) for a suitable fourth
    root lambda, then scaling, recovers the sign -1 matrix.
    """
    table = _pm_table(m, w)
    gtab = table.g_table(_scalar(z))
    shifted = {(a, j): gtab[((a + m // 2) % m, j)] for (a, j) in gtab}
    return _assemble(m, shifted, braided=True)


def two_param_R(m: int, z: ScalarLike, mu: ScalarLike,
                w: RootOfUnity | None = None) -> Operator:
    """Sum of the signed pair weighted by mu; invertible away from mu = +-1."""
    return descendant_pm(m, 1, z, w) + descendant_pm(m, -1, z, w) * _scalar(mu)


def two_param_family(m: int, mu: ScalarLike, w: RootOfUnity | None = None) -> SpectralOperator:
    table = _pm_table(m, w)
    return SpectralOperator(m * m, partial(two_param_R, m, mu=_scalar(mu), w=w),
                            name="Rcheck(mu)", poles=table.pole_positions(),
                            braided=True)


# ---------------------------------------------------------------------------
# basis transforms

def index_scale_transform(n: int, c: int) -> Operator:
    """Permutation sending basis index i to c*i mod n; needs gcd(c, n) = 1."""
    if math.gcd(c % n, n) != 1:
        raise ValueError(f"scale {c} must be coprime to {n}")
    return Operator(n, {((c * i) % n, i): 1 for i in range(n)})


def diagonal_power_transform(d: int, lam: ScalarLike) -> Operator:
    """diag(lam**i) for i in [0, d)."""
    lam = _scalar(lam)
    out = Operator.zero(d)
    cur: Scalar = ExactScalar.one()
    for i in range(d):
        out.add_to(i, i, cur)
        cur = cur * lam
    return out
