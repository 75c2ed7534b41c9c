"""Spectral coefficient engine: one-parameter phase-factor products.

Everything is driven by one primitive root omega of order d and two integer
twists (l, k) coprime to d. The atomic building block is

    factor(z, t) = (z + omega^t) / (1 + z omega^t),

a Moebius map of the unit disc for each fixed t. Coefficients f_(a,b)(z) are
products of such factors along a lattice diagonal, rooted at a boundary value
f0; the Fourier transform over b gives the g-coefficients that fill the
descendant exchange matrices. The factor has two removable branches, handled
exactly: omega^t = 1 gives the constant 1 and omega^t = -1 the constant -1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from .scalars import ExactScalar, FloatScalar, RootOfUnity, Scalar, root_of_unity

BoundaryValue = Union[Scalar, int, Fraction]
Boundary = Callable[[int], BoundaryValue]


def _coerce(value: BoundaryValue) -> Scalar:
    if isinstance(value, (ExactScalar, FloatScalar)):
        return value
    return ExactScalar.rational(value)


def _is_exact_value(z: Scalar, target: int) -> bool:
    return isinstance(z, ExactScalar) and (z - target).is_zero_vector


def phase_factor(omega: RootOfUnity, z: Scalar, theta: int) -> Scalar:
    """(z + omega^theta) / (1 + z omega^theta), with the removable branches."""
    e = (omega.power * theta) % omega.order
    if e == 0:
        return ExactScalar.one()
    if 2 * e == omega.order:
        return ExactScalar.rational(-1)
    wt = omega.pow(theta)
    if _is_exact_value(z, 0):
        return wt
    if _is_exact_value(z, 1):
        return ExactScalar.one()
    denom = ExactScalar.one() + z * wt
    hit_pole = (denom.is_zero_vector if isinstance(denom, ExactScalar)
                else denom.value == 0)
    if hit_pole:
        raise ZeroDivisionError(
            f"z is a pole of the phase factor with exponent {e} of order {omega.order}")
    return (z + wt) / denom


@dataclass(frozen=True, eq=False)
class CoeffTable:
    """Coefficient family for one root omega and twists (l, k).

    boundary supplies the a = 0 values f_(0, b) = boundary(b mod d); it
    defaults to the constant 1 and is NOT forced to be symmetric in b, so
    deliberately broken boundaries can be fed to the negative checks.
    """

    omega: RootOfUnity
    k: int = 1
    l: int = 1
    boundary: Boundary | None = None

    def __post_init__(self) -> None:
        d = self.omega.order
        if math.gcd(self.k % d, d) != 1 or math.gcd(self.l % d, d) != 1:
            raise ValueError(f"twists ({self.l}, {self.k}) must be coprime to {d}")

    @property
    def d(self) -> int:
        return self.omega.order

    def boundary_value(self, b: int) -> Scalar:
        if self.boundary is None:
            return ExactScalar.one()
        return _coerce(self.boundary(b % self.d))

    # -- coefficients -----------------------------------------------------

    def _diagonal(self, a: int) -> tuple[int, int]:
        """Steps r back to the boundary and the boundary offset for column a."""
        d = self.d
        linv = pow(self.l % d, -1, d)
        r = (a * linv) % d
        return r, (self.k * linv) % d

    def f(self, a: int, b: int, z: Scalar) -> Scalar:
        """f_(a,b)(z): the product of r phase factors times the boundary value."""
        d = self.d
        r, kl = self._diagonal(a)
        base = (b - a * kl) % d
        val = self.boundary_value(base)
        for j in range(1, r + 1):
            val = val * phase_factor(self.omega, z,
                                     (self.l * ((2 * j - 1) * self.k + base)) % d)
        return val

    def g(self, a: int, j: int, z: Scalar) -> Scalar:
        """g_(a,j)(z): discrete Fourier transform of f_(a, .)(z) over b."""
        d = self.d
        total: Scalar = ExactScalar.rational(0)
        for b in range(d):
            total = total + self.omega.pow(b * j) * self.f(a, b, z)
        return total * Fraction(1, d)

    def f_table(self, z: Scalar) -> dict[tuple[int, int], Scalar]:
        """All f_(a,b)(z) with cumulative products along each lattice diagonal."""
        d = self.d
        out: dict[tuple[int, int], Scalar] = {}
        for base in range(d):
            val = self.boundary_value(base)
            a = 0
            b = base
            out[(a, b)] = val
            for r in range(1, d):
                val = val * phase_factor(self.omega, z,
                                         (self.l * ((2 * r - 1) * self.k + base)) % d)
                a = (a + self.l) % d
                b = (b + self.k) % d
                out[(a, b)] = val
        return out

    def g_table(self, z: Scalar) -> dict[tuple[int, int], Scalar]:
        d = self.d
        ftab = self.f_table(z)
        inv = Fraction(1, d)
        out: dict[tuple[int, int], Scalar] = {}
        for a in range(d):
            row = [ftab[(a, b)] for b in range(d)]
            for j in range(d):
                total: Scalar = ExactScalar.rational(0)
                for b in range(d):
                    total = total + self.omega.pow(b * j) * row[b]
                out[(a, j)] = total * inv
        return out

    # -- boundary structure -------------------------------------------------

    def boundary_is_symmetric(self) -> bool:
        """f_(0,b) = f_(0,-b) for all b; required by the exchange identities."""
        for b in range(self.d):
            if not (self.boundary_value(b) - self.boundary_value(-b)).is_zero():
                return False
        return True

    def boundary_is_real_two_periodic(self) -> bool:
        """Real values with period two in b; the conjugation-symmetry criterion."""
        for b in range(self.d):
            v = self.boundary_value(b)
            if not (v - v.conjugate()).is_zero():
                return False
            if not (v - self.boundary_value(b + 2)).is_zero():
                return False
        return True

    # -- analytic structure ---------------------------------------------------

    def pole_positions(self) -> tuple[complex, ...]:
        """Candidate poles -omega^{-t} of the factors, minus removable branches."""
        d = self.d
        out = []
        for t in range(d):
            e = (self.omega.power * t) % d
            if e == 0 or 2 * e == d:
                continue
            out.append(-cmath.exp(-2j * cmath.pi * e / d))
        return tuple(out)


@dataclass(frozen=True)
class SixVertexParams:
    """Root and twist data for the trigonometric vertex weights.

    n is the group index; w defaults to the primitive n-th root exp(2*pi*i/n).
    The coefficient engine squares w, giving a root of order n (n odd) or n/2
    (n even): the parent dimension in both parities.
    """

    n: int
    k: int = 1
    l: int = 1
    w: RootOfUnity = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("group index must be at least 3")
        if self.w is None:
            object.__setattr__(self, "w", root_of_unity(self.n, 1))
        elif self.w.order != self.n:
            raise ValueError(f"root order {self.w.order} must equal n={self.n}")

    @property
    def parent_dim(self) -> int:
        return self.n if self.n % 2 else self.n // 2

    @property
    def omega(self) -> RootOfUnity:
        return self.w.squared()

    def require_coprime(self) -> None:
        if math.gcd(self.k, self.n) != 1 or math.gcd(self.l, self.n) != 1:
            raise ValueError(
                f"twists (l={self.l}, k={self.k}) must be coprime to n={self.n}")

    def table(self, boundary: Boundary | None = None) -> CoeffTable:
        self.require_coprime()
        return CoeffTable(self.omega, self.k, self.l, boundary)
