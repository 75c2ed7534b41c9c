"""Self-dual spin weights and the exchange matrix assembled from them.

The N-state weight system consists of two families W and Wbar, each a
length-l product over a primitive root of unity of order 2N and periodic in
l with period N. The weights satisfy the star-triangle relation up to a
factor independent of the three heights, and they assemble into an
N^2 x N^2 exchange matrix carrying two rapidity components per site.
Pairing each rapidity vector with its reversed inverse collapses the matrix
to a single-variable form; sending both rapidities to infinity at a fixed
ratio z yields a limiting matrix that this module computes two independent
ways, by a numeric growth schedule and by an exact closed form, so that
each route can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .operators import Operator
from .scalars import (
    DEFAULT_PRECISION,
    ExactScalar,
    FloatScalar,
    RootOfUnity,
    Scalar,
    as_scalar,
    root_of_unity,
)

ScalarLike = Scalar | int | Fraction

LIMIT_SCHEDULE = (10 ** 4, 10 ** 6, 10 ** 8)
LIMIT_TOLERANCE = 1e-6

_KINDS = {"W": "W", "Wbar": "Wbar", "W̄": "Wbar"}


@dataclass(frozen=True)
class FZWeights:
    """Weight system on N height states; lam must be primitive of order 2N.

    When lam is omitted and N is odd it defaults to minus the inverse of the
    standard primitive N-th root, the choice under which the limiting
    exchange matrix matches the odd-parity descendant. No default exists for
    even N because that power is not primitive there.
    """

    N: int
    lam: RootOfUnity | None = None

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        if self.lam is None:
            if self.N % 2 == 0 and self.N > 1:
                raise ValueError(
                    f"no default root for even N = {self.N}; pass lam explicitly")
            object.__setattr__(
                self, "lam", root_of_unity(2 * self.N, (self.N - 2) % (2 * self.N)))
        if self.lam.order != 2 * self.N:
            raise ValueError(
                f"lam must have order {2 * self.N}, got {self.lam.order}")

    @property
    def dim(self) -> int:
        return self.N * self.N


def _scalar(z: ScalarLike) -> Scalar:
    return as_scalar(z)


def _kind_key(kind: str) -> str:
    try:
        return _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown weight kind {kind!r}; use 'W' or 'Wbar'") from None


def _is_zero(value: Scalar) -> bool:
    if isinstance(value, ExactScalar):
        return value.is_zero_vector
    return value.value == 0


def fz_weight(wts: FZWeights, kind: str, z: ScalarLike, l: int) -> Scalar:
    """One weight value; l is reduced into [0, N) before the product runs."""
    key = _kind_key(kind)
    z = _scalar(z)
    steps = l % wts.N
    lam = wts.lam
    value: Scalar = ExactScalar.one()
    for j in range(1, steps + 1):
        if key == "W":
            num = lam.pow(2 * j - 1) * z - 1
            den = lam.pow(2 * j - 1) - z
        else:
            num = lam.pow(2 * j - 1) - lam.pow(1) * z
            den = lam.pow(2 * j) * z - 1
        if _is_zero(den):
            raise ZeroDivisionError(
                f"z is a pole of weight {key} at factor {j} of {steps} "
                f"for order {lam.order}")
        value = value * (num / den)
    return value


def fz_weight_row(wts: FZWeights, kind: str, z: ScalarLike) -> tuple[Scalar, ...]:
    """All N weights of one kind at a common argument."""
    z = _scalar(z)
    return tuple(fz_weight(wts, kind, z, l) for l in range(wts.N))


def fz_weight_at_zero(wts: FZWeights, kind: str, l: int) -> ExactScalar:
    """Exact weight value at argument 0; sign alternates with the height."""
    key = _kind_key(kind)
    steps = l % wts.N
    e = -steps * steps if key == "W" else steps * steps
    value = wts.lam.pow(e)
    return -value if steps % 2 else value


def fz_weight_at_infinity(wts: FZWeights, kind: str, l: int) -> ExactScalar:
    """Exact leading value as the argument grows without bound."""
    key = _kind_key(kind)
    steps = l % wts.N
    e = steps * steps if key == "W" else -steps * steps
    value = wts.lam.pow(e)
    return -value if steps % 2 else value


def _pack(n: int, wbar_a, w_b, wbar_c, w_d) -> Operator:
    """Assemble the four weight rows into the two-site exchange matrix.

    The entry at (b1*N + b2, a1*N + a2) multiplies one weight of each row,
    indexed by the height differences a1-b2, a1-a2, a2-b1 and b2-b1.
    """
    out = Operator(n * n)
    for a1 in range(n):
        for a2 in range(n):
            mid = w_b[(a1 - a2) % n]
            for b1 in range(n):
                left = wbar_c[(a2 - b1) % n] * mid
                for b2 in range(n):
                    out.add_to(
                        b1 * n + b2, a1 * n + a2,
                        wbar_a[(a1 - b2) % n] * left * w_d[(b2 - b1) % n])
    return out


def fz_rmatrix(wts: FZWeights, x: ScalarLike, y: ScalarLike) -> Operator:
    """Single-variable exchange matrix, both rapidity vectors self-paired."""
    x = _scalar(x)
    y = _scalar(y)
    xinv = ExactScalar.one() / x
    yinv = ExactScalar.one() / y
    return _pack(
        wts.N,
        fz_weight_row(wts, "Wbar", x * yinv),
        fz_weight_row(wts, "W", xinv * yinv),
        fz_weight_row(wts, "Wbar", xinv * y),
        fz_weight_row(wts, "W", x * y))


def fz_rmatrix_pair(
    wts: FZWeights,
    x_pair: tuple[ScalarLike, ScalarLike],
    y_pair: tuple[ScalarLike, ScalarLike],
) -> Operator:
    """Exchange matrix with independent rapidity components per site.

    fz_rmatrix(x, y) is the special case x_pair = (x, 1/x),
    y_pair = (y, 1/y). The product of this matrix with the one at reversed
    inverse pairs, (x2^-1, x1^-1) and (y2^-1, y1^-1), is a scalar multiple
    of the identity.
    """
    x1, x2 = (_scalar(v) for v in x_pair)
    y1, y2 = (_scalar(v) for v in y_pair)
    y1inv = ExactScalar.one() / y1
    y2inv = ExactScalar.one() / y2
    return _pack(
        wts.N,
        fz_weight_row(wts, "Wbar", x1 * y1inv),
        fz_weight_row(wts, "W", x2 * y1inv),
        fz_weight_row(wts, "Wbar", x2 * y2inv),
        fz_weight_row(wts, "W", x1 * y2inv))


def star_triangle_sides(
    wts: FZWeights, x: ScalarLike, y: ScalarLike, a: int, b: int, c: int,
) -> tuple[Scalar, Scalar]:
    """Both sides of the star-triangle identity at one height triple.

    The left side sums over the internal height; the two sides agree up to a
    factor depending on x and y but not on (a, b, c).
    """
    x = _scalar(x)
    y = _scalar(y)
    xy = x * y
    n = wts.N
    wbar_x = fz_weight_row(wts, "Wbar", x)
    wbar_y = fz_weight_row(wts, "Wbar", y)
    w_xy = fz_weight_row(wts, "W", xy)
    lhs: Scalar = ExactScalar.zero()
    for d in range(n):
        lhs = lhs + wbar_x[(a - d) % n] * w_xy[(d - c) % n] * wbar_y[(d - b) % n]
    rhs = (fz_weight(wts, "W", x, b - c)
           * fz_weight(wts, "Wbar", xy, a - b)
           * fz_weight(wts, "W", y, a - c))
    return lhs, rhs


class ConvergenceError(ArithmeticError):
    """Successive normalized iterates stayed farther apart than allowed."""

    def __init__(self, message: str, gap: float) -> None:
        super().__init__(message)
        self.gap = gap


def normalize_by_max_entry(op: Operator, precision: int = DEFAULT_PRECISION) -> Operator:
    """Divide by the entry of largest modulus; ties pick row-major order."""
    pivot: Scalar | None = None
    best = None
    for key in sorted(op.entries):
        value = op.entries[key]
        mag = value.abs_mpfr() if isinstance(value, FloatScalar) else value.abs_mpfr(precision)
        if best is None or mag > best:
            best = mag
            pivot = value
    if pivot is None:
        raise ArithmeticError("cannot normalize a zero matrix")
    return op / pivot


def fz_limit_iterates(
    wts: FZWeights,
    z: ScalarLike,
    y_sequence: tuple[int, ...] = LIMIT_SCHEDULE,
    precision: int = DEFAULT_PRECISION,
) -> list[Operator]:
    """Normalized exchange matrices along the schedule x = z*y, y growing.

    Runs at the given float precision; the growth schedule squares the
    rapidities, so exact arithmetic would drag enormous rationals through
    every entry for no gain over the tolerance actually tested.
    """
    zf = as_scalar(z, precision).to_float(precision)
    out = []
    for y in y_sequence:
        yf = as_scalar(y, precision).to_float(precision)
        out.append(normalize_by_max_entry(fz_rmatrix(wts, zf * yf, yf), precision))
    return out


def fz_limit_R(
    wts: FZWeights,
    z: ScalarLike,
    y_sequence: tuple[int, ...] = LIMIT_SCHEDULE,
    tolerance: float = LIMIT_TOLERANCE,
    precision: int = DEFAULT_PRECISION,
) -> Operator:
    """Limit of the normalized exchange matrix along the growth schedule.

    The convergence estimate is the max-norm gap between the last two
    normalized iterates; a gap above the tolerance raises ConvergenceError
    rather than returning a doubtful matrix. z = 0 has no schedule form
    (one weight argument is 1/z); use fz_limit_closed_form there.
    """
    if len(y_sequence) < 2:
        raise ValueError("schedule needs at least two points to estimate convergence")
    iterates = fz_limit_iterates(wts, z, y_sequence, precision)
    gap = float(iterates[-1].max_abs_diff(iterates[-2], precision))
    if gap > tolerance:
        raise ConvergenceError(
            f"limit not converged: last two iterates differ by {gap:.3e} "
            f"(tolerance {tolerance:.1e})", gap)
    return iterates[-1]


def fz_limit_closed_form(wts: FZWeights, z: ScalarLike) -> Operator:
    """Exact value of the rapidity limit, up to overall scale.

    Two weight arguments survive the limit as z and 1/z; the other two
    degenerate to the exact values at zero and infinite argument. Accepts
    z = 0 by sending the 1/z row to its infinite-argument values.
    """
    z = _scalar(z)
    n = wts.N
    if _is_zero(z):
        wbar_c = tuple(fz_weight_at_infinity(wts, "Wbar", l) for l in range(n))
    else:
        wbar_c = fz_weight_row(wts, "Wbar", ExactScalar.one() / z)
    return _pack(
        n,
        fz_weight_row(wts, "Wbar", z),
        tuple(fz_weight_at_zero(wts, "W", l) for l in range(n)),
        wbar_c,
        tuple(fz_weight_at_infinity(wts, "W", l) for l in range(n)))
