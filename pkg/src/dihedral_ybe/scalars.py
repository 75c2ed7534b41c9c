"""Scalar arithmetic: exact cyclotomic vectors and high-precision complex floats.

Two interoperable backends. The exact backend stores an element of
Q[x]/(x^N - 1) as a length-N vector of rationals, with x read as the primitive
N-th root of unity exp(2*pi*i/N). The float backend wraps gmpy2.mpc at a fixed
binary precision. Mixing exact with float coerces the exact side to the float
side's precision; mixing two floats of different precision is an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import gmpy2

DEFAULT_PRECISION = 256
QUICK_PRECISION = 53

#: |value| below this, evaluated at >= 128 bits, counts as zero for the
#: exact backend's semantic equality. Strict mode avoids any threshold.
EQUALITY_EVAL_THRESHOLD = Fraction(1, 10**20)

_EVAL_PRECISION = 256

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _ctx(precision: int) -> gmpy2.context:
    if precision < 2:
        raise ValueError(f"precision must be >= 2 bits, got {precision}")
    return gmpy2.context(precision=precision)


@lru_cache(maxsize=None)
def _unit_roots(order: int, precision: int) -> tuple[gmpy2.mpc, ...]:
    """exp(2*pi*i*j/order) for j in [0, order), at the given precision."""
    ctx = _ctx(precision + 32)
    out_ctx = _ctx(precision)
    two_pi = ctx.mul(ctx.const_pi(), gmpy2.mpfr(2))
    roots = []
    for j in range(order):
        theta = ctx.div(ctx.mul(two_pi, gmpy2.mpfr(j)), gmpy2.mpfr(order))
        roots.append(gmpy2.mpc(out_ctx.add(ctx.cos(theta), gmpy2.mpfr(0)),
                               out_ctx.add(ctx.sin(theta), gmpy2.mpfr(0)),
                               precision))
    return tuple(roots)


def _fraction_to_mpfr(q: Fraction, precision: int) -> gmpy2.mpfr:
    ctx = _ctx(precision)
    return ctx.div(gmpy2.mpfr(q.numerator, precision + 8),
                   gmpy2.mpfr(q.denominator, precision + 8))


# ---------------------------------------------------------------------------
# cyclotomic polynomials, for the strict (tolerance-free) equality mode

@lru_cache(maxsize=None)
def cyclotomic_coeffs(order: int) -> tuple[int, ...]:
    """Integer coefficients of the order-th cyclotomic polynomial, low first."""
    if order < 1:
        raise ValueError("cyclotomic order must be positive")
    if order == 1:
        return (-1, 1)
    # x^order - 1 divided by the product of all lower cyclotomic factors.
    num = [0] * (order + 1)
    num[0], num[order] = -1, 1
    for d in range(1, order):
        if order % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_coeffs(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials; remainder must vanish."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        coef, rem = divmod(num[shift + len(den) - 1], den[-1])
        if rem:
            raise ArithmeticError("non-exact polynomial division")
        out[shift] = coef
        for i, d in enumerate(den):
            num[shift + i] -= coef * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


def _poly_rem(coeffs: list[Fraction], mod: tuple[int, ...]) -> list[Fraction]:
    """Remainder of coeffs modulo mod, low-order first."""
    r = list(coeffs)
    deg_m = len(mod) - 1
    lead = Fraction(mod[-1])
    while len(r) > deg_m:
        c = r[-1] / lead
        if c:
            for i in range(deg_m + 1):
                r[len(r) - 1 - deg_m + i] -= c * mod[i]
        r.pop()
    while r and not r[-1]:
        r.pop()
    return r


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b):
        c = r[-1] / lead
        shift = len(r) - len(b)
        q[shift] += c
        r = _poly_sub(r, _poly_mul([Fraction(0)] * shift + [c], b))
        if not r:
            break
    return _poly_trim(q), r


def _poly_invert(coeffs: list[Fraction], mod: tuple[int, ...]) -> list[Fraction]:
    """Inverse of coeffs modulo mod via extended Euclid over Q[x]."""
    r0 = _poly_trim([Fraction(c) for c in mod])
    r1 = _poly_trim(list(coeffs))
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    if not r1:
        raise ZeroDivisionError("scalar is zero")
    while True:
        q, r = _poly_divmod(r0, r1)
        if not r:
            break
        s = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1, s0, s1 = r1, r, s1, s
    if len(r1) != 1:
        raise ZeroDivisionError("scalar is a zero divisor with no inverse value")
    inv_lead = 1 / r1[0]
    return [c * inv_lead for c in s1]


# ---------------------------------------------------------------------------
# exact backend

class ExactScalar:
    """Element of Q[x]/(x^order - 1), read at x = exp(2*pi*i/order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != order:
            raise ValueError(f"need {order} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------

    @classmethod
    def rational(cls, value: Rational) -> "ExactScalar":
        return cls(1, (Fraction(value),))

    @classmethod
    def zero(cls, order: int = 1) -> "ExactScalar":
        return cls(order, (Fraction(0),) * order)

    @classmethod
    def one(cls, order: int = 1) -> "ExactScalar":
        return cls(order, (Fraction(1),) + (Fraction(0),) * (order - 1))

    @classmethod
    def monomial(cls, order: int, index: int, coeff: Rational = 1) -> "ExactScalar":
        v = [Fraction(0)] * order
        v[index % order] = Fraction(coeff)
        return cls(order, v)

    # -- structure -----------------------------------------------------

    def promote(self, order: int) -> "ExactScalar":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot promote order {self.order} to {order}")
        step = order // self.order
        v = [Fraction(0)] * order
        for j, c in enumerate(self.coeffs):
            if c:
                v[j * step] = c
        return ExactScalar(order, v)

    def _common(self, other: "ExactScalar") -> tuple["ExactScalar", "ExactScalar"]:
        if self.order == other.order:
            return self, other
        target = math.lcm(self.order, other.order)
        return self.promote(target), other.promote(target)

    @property
    def is_zero_vector(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> Fraction:
        """The value as a rational, if the representation makes that visible."""
        red = self.reduce_strict()
        if any(red.coeffs[1:]):
            raise ValueError("not a visible rational")
        return red.coeffs[0]

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce_for_exact(other)
        if isinstance(other, FloatScalar):
            return self.to_float(other.precision) + other
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return ExactScalar(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_for_exact(other)
        if isinstance(other, FloatScalar):
            return self.to_float(other.precision) - other
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return ExactScalar(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        other = _coerce_for_exact(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return ExactScalar(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = _coerce_for_exact(other)
        if isinstance(other, FloatScalar):
            return self.to_float(other.precision) * other
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        out = [Fraction(0)] * a.order
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % a.order] += x * y
        return ExactScalar(a.order, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_for_exact(other)
        if isinstance(other, FloatScalar):
            return self.to_float(other.precision) / other
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_for_exact(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ExactScalar.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "ExactScalar":
        """Multiplicative inverse as a value; zero divisors of x^N-1 with a
        nonzero value are inverted modulo the cyclotomic factor."""
        nz = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if not nz:
            raise ZeroDivisionError("scalar is zero")
        if len(nz) == 1:
            i, c = nz[0]
            return ExactScalar.monomial(self.order, -i, 1 / c)
        mod = cyclotomic_coeffs(self.order)
        rem = _poly_rem([Fraction(c) for c in self.coeffs], mod)
        inv = _poly_invert(rem, mod)
        v = [Fraction(0)] * self.order
        for i, c in enumerate(inv):
            v[i] += c
        return ExactScalar(self.order, v)

    def conjugate(self) -> "ExactScalar":
        v = [Fraction(0)] * self.order
        for i, c in enumerate(self.coeffs):
            if c:
                v[(-i) % self.order] += c
        return ExactScalar(self.order, v)

    # -- equality ---------------------------------------------------------

    def reduce_strict(self) -> "ExactScalar":
        """Canonical representative modulo the order-th cyclotomic polynomial."""
        rem = _poly_rem(list(self.coeffs), cyclotomic_coeffs(self.order))
        v = list(rem) + [Fraction(0)] * (self.order - len(rem))
        return ExactScalar(self.order, v)

    def is_zero(self, strict: bool = False) -> bool:
        if self.is_zero_vector:
            return True
        if strict:
            return self.reduce_strict().is_zero_vector
        mag = self.abs_mpfr(_EVAL_PRECISION)
        return mag < _fraction_to_mpfr(EQUALITY_EVAL_THRESHOLD, _EVAL_PRECISION)

    def equals(self, other, strict: bool = False) -> bool:
        diff = self - _require_exact(other)
        return diff.is_zero(strict=strict)

    def __eq__(self, other):
        other = _coerce_for_exact(other)
        if isinstance(other, FloatScalar):
            return self.to_float(other.precision) == other
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # semantic equality is not hash-stable

    # -- conversion ---------------------------------------------------------

    def to_float(self, precision: int = DEFAULT_PRECISION) -> "FloatScalar":
        roots = _unit_roots(self.order, precision)
        ctx = _ctx(precision)
        acc = gmpy2.mpc(0)
        for j, c in enumerate(self.coeffs):
            if c:
                acc = ctx.add(acc, ctx.mul(roots[j], _fraction_to_mpfr(c, precision)))
        return FloatScalar(acc, precision)

    def to_complex(self) -> complex:
        return self.to_float(QUICK_PRECISION + 16).to_complex()

    def abs_mpfr(self, precision: int = DEFAULT_PRECISION):
        return self.to_float(precision).abs_mpfr()

    def __repr__(self) -> str:
        terms = [f"{c}*x^{j}" for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"ExactScalar[{self.order}]({body})"


# ---------------------------------------------------------------------------
# float backend

class FloatScalar:
    """Complex number at a fixed binary precision (gmpy2.mpc)."""

    __slots__ = ("value", "precision")

    def __init__(self, value, precision: int) -> None:
        if not isinstance(value, gmpy2.mpc):
            if isinstance(value, gmpy2.mpfr):
                value = gmpy2.mpc(value, gmpy2.mpfr(0), precision)
            elif isinstance(value, int):
                value = gmpy2.mpc(gmpy2.mpfr(value, precision), gmpy2.mpfr(0),
                                  precision)
            else:
                raise TypeError(
                    f"FloatScalar wraps gmpy2 values, got {type(value).__name__}; "
                    "use FloatScalar.from_str to parse at a precision")
        self.value = value
        self.precision = precision

    @classmethod
    def from_str(cls, real: str, imag: str = "0", precision: int = DEFAULT_PRECISION) -> "FloatScalar":
        return cls(gmpy2.mpc(gmpy2.mpfr(real, precision), gmpy2.mpfr(imag, precision),
                             precision),
                   precision)

    @classmethod
    def from_rational(cls, value: Rational, precision: int = DEFAULT_PRECISION) -> "FloatScalar":
        return ExactScalar.rational(value).to_float(precision)

    def _pair(self, other) -> tuple[gmpy2.mpc, gmpy2.mpc, gmpy2.context]:
        if isinstance(other, FloatScalar):
            if other.precision != self.precision:
                raise ValueError(
                    f"mixed float precisions {self.precision} and {other.precision}")
            return self.value, other.value, _ctx(self.precision)
        if isinstance(other, ExactScalar):
            return self.value, other.to_float(self.precision).value, _ctx(self.precision)
        if isinstance(other, (int, Fraction)):
            return (self.value,
                    ExactScalar.rational(other).to_float(self.precision).value,
                    _ctx(self.precision))
        raise TypeError(f"cannot combine FloatScalar with {type(other).__name__}")

    def __add__(self, other):
        a, b, ctx = self._pair(other)
        return FloatScalar(ctx.add(a, b), self.precision)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, ctx = self._pair(other)
        return FloatScalar(ctx.sub(a, b), self.precision)

    def __rsub__(self, other):
        a, b, ctx = self._pair(other)
        return FloatScalar(ctx.sub(b, a), self.precision)

    def __neg__(self):
        return FloatScalar(_ctx(self.precision).minus(self.value), self.precision)

    def __mul__(self, other):
        a, b, ctx = self._pair(other)
        return FloatScalar(ctx.mul(a, b), self.precision)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b, ctx = self._pair(other)
        if b == 0:
            raise ZeroDivisionError("division by zero scalar")
        return FloatScalar(ctx.div(a, b), self.precision)

    def __rtruediv__(self, other):
        a, b, ctx = self._pair(other)
        if a == 0:
            raise ZeroDivisionError("division by zero scalar")
        return FloatScalar(ctx.div(b, a), self.precision)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        ctx = _ctx(self.precision)
        return FloatScalar(ctx.pow(self.value, exponent), self.precision)

    def conjugate(self) -> "FloatScalar":
        ctx = _ctx(self.precision)
        return FloatScalar(gmpy2.mpc(self.value.real,
                                     ctx.minus(self.value.imag),
                                     self.precision),
                           self.precision)

    def inverse(self) -> "FloatScalar":
        return FloatScalar(1, self.precision) / self

    def is_zero(self, strict: bool = False) -> bool:
        if strict:
            return self.value == 0
        return self.abs_mpfr() < _fraction_to_mpfr(EQUALITY_EVAL_THRESHOLD,
                                                   self.precision)

    def abs_mpfr(self):
        return _ctx(self.precision).abs(self.value)

    def to_float(self, precision: int | None = None) -> "FloatScalar":
        if precision is None or precision == self.precision:
            return self
        ctx = _ctx(precision)
        return FloatScalar(ctx.add(self.value, gmpy2.mpc(0)), precision)

    def to_complex(self) -> complex:
        return complex(float(self.value.real), float(self.value.imag))

    def __eq__(self, other):
        try:
            a, b, _ = self._pair(other)
        except (TypeError, ValueError):
            return NotImplemented
        return a == b

    __hash__ = None

    def __repr__(self) -> str:
        return f"FloatScalar({self.value}, prec={self.precision})"


Scalar = Union[ExactScalar, FloatScalar]


def _coerce_for_exact(value):
    if isinstance(value, (ExactScalar, FloatScalar)):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.rational(value)
    return NotImplemented


def _require_exact(value) -> ExactScalar:
    coerced = _coerce_for_exact(value)
    if not isinstance(coerced, ExactScalar):
        raise TypeError(f"expected an exact scalar, got {type(value).__name__}")
    return coerced


def as_scalar(value, precision: int | None = None) -> Scalar:
    """Coerce ints, Fractions, and backend scalars; floats must come with an
    explicit precision so that none is invented."""
    if isinstance(value, (ExactScalar, FloatScalar)):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.rational(value)
    if isinstance(value, (float, complex)):
        if precision is None:
            raise TypeError(
                "raw floats carry no precision; pass one explicitly or use "
                "FloatScalar.from_str")
        return FloatScalar.from_str(repr(complex(value).real),
                                    repr(complex(value).imag), precision)
    raise TypeError(f"cannot interpret {type(value).__name__} as a scalar")


# ---------------------------------------------------------------------------
# roots of unity

@dataclass(frozen=True)
class RootOfUnity:
    """Primitive root of unity exp(2*pi*i*power/order); exponents live mod order."""

    order: int
    power: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be positive")
        if math.gcd(self.power % self.order if self.order > 1 else 1, self.order) != 1:
            raise ValueError(
                f"power {self.power} is not coprime to order {self.order}; "
                "the root would not be primitive")
        object.__setattr__(self, "power", self.power % self.order)

    def pow(self, exponent: int) -> ExactScalar:
        return ExactScalar.monomial(self.order, self.power * exponent)

    def as_exact(self) -> ExactScalar:
        return self.pow(1)

    def pow_float(self, exponent: int, precision: int = DEFAULT_PRECISION) -> FloatScalar:
        roots = _unit_roots(self.order, precision)
        return FloatScalar(roots[(self.power * exponent) % self.order], precision)

    def squared(self) -> "RootOfUnity":
        """The primitive root realizing this root's square (order halves when even)."""
        if self.order % 2 == 0:
            return RootOfUnity(self.order // 2, self.power % (self.order // 2))
        return RootOfUnity(self.order, (2 * self.power) % self.order)

    def conjugate_root(self) -> "RootOfUnity":
        return RootOfUnity(self.order, (-self.power) % self.order)

    def exponent_of_minus_one(self) -> int | None:
        """Exponent e with root^e = -1, when one exists (even order only)."""
        if self.order % 2:
            return None
        half = self.order // 2
        return (half * pow(self.power, -1, self.order)) % self.order


def root_of_unity(order: int, power: int) -> RootOfUnity:
    """Primitive root of unity of the given order; rejects non-coprime powers."""
    return RootOfUnity(order, power)
