"""Sparse square operators over the scalar backends, plus tensor tooling.

An Operator stores only nonzero entries, keyed by (row, col). Entries may be
exact or float scalars; mixing follows the scalar coercion rules. Tensor
products use row-major index packing: slot indices (i, j) over dims (d1, d2)
pack to i*d2 + j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

import gmpy2
import numpy as np

from .scalars import (
    DEFAULT_PRECISION,
    ExactScalar,
    FloatScalar,
    Scalar,
    _ctx,
    as_scalar,
)

EntryValue = Union[Scalar, int, Fraction]


def _entry_scalar(value: EntryValue) -> Scalar:
    if isinstance(value, (ExactScalar, FloatScalar)):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.rational(value)
    raise TypeError(f"operator entries must be scalars, got {type(value).__name__}")


def _prunable(value: Scalar) -> bool:
    if isinstance(value, ExactScalar):
        return value.is_zero_vector
    return value.value == 0


class Operator:
    """Square matrix with sparse scalar entries."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[tuple[int, int], EntryValue] | None = None) -> None:
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        store: dict[tuple[int, int], Scalar] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < dim and 0 <= c < dim):
                    raise ValueError(f"index ({r}, {c}) outside dimension {dim}")
                s = _entry_scalar(v)
                if not _prunable(s):
                    store[(r, c)] = s
        self.entries = store

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "Operator":
        return cls(dim)

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(dim, {(i, i): 1 for i in range(dim)})

    @classmethod
    def elementary(cls, dim: int, row: int, col: int, coeff: EntryValue = 1) -> "Operator":
        """Matrix unit e_{row,col}; indices wrap modulo dim."""
        return cls(dim, {(row % dim, col % dim): coeff})

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[EntryValue]]) -> "Operator":
        grid = [list(r) for r in rows]
        dim = len(grid)
        entries = {}
        for i, row in enumerate(grid):
            if len(row) != dim:
                raise ValueError("rows must form a square matrix")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(dim, entries)

    # -- access ----------------------------------------------------------

    def entry(self, row: int, col: int) -> Scalar:
        return self.entries.get((row, col), ExactScalar.rational(0))

    def add_to(self, row: int, col: int, value: EntryValue) -> None:
        """In-place accumulate; builder use only, before the operator escapes."""
        key = (row % self.dim, col % self.dim)
        cur = self.entries.get(key)
        s = _entry_scalar(value)
        total = s if cur is None else cur + s
        if _prunable(total):
            self.entries.pop(key, None)
        else:
            self.entries[key] = total

    @property
    def nnz(self) -> int:
        return len(self.entries)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")
        out = dict(self.entries)
        result = Operator(self.dim)
        result.entries = out
        for key, v in other.entries.items():
            cur = out.get(key)
            total = v if cur is None else cur + v
            if _prunable(total):
                out.pop(key, None)
            else:
                out[key] = total
        return result

    def __sub__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Operator":
        result = Operator(self.dim)
        result.entries = {k: -v for k, v in self.entries.items()}
        return result

    def __mul__(self, scalar: EntryValue) -> "Operator":
        s = _entry_scalar(scalar)
        result = Operator(self.dim)
        if _prunable(s):
            return result
        result.entries = {k: v * s for k, v in self.entries.items()}
        return result

    __rmul__ = __mul__

    def __truediv__(self, scalar: EntryValue) -> "Operator":
        s = _entry_scalar(scalar)
        return self * s.inverse() if isinstance(s, ExactScalar) else self * (
            FloatScalar(1, s.precision) / s)

    def __matmul__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Scalar] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                prod = a * b
                cur = out.get(key)
                out[key] = prod if cur is None else cur + prod
        result = Operator(self.dim)
        result.entries = {k: v for k, v in out.items() if not _prunable(v)}
        return result

    def __pow__(self, exponent: int) -> "Operator":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Operator.identity(self.dim)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result @ base
            base = base @ base if e > 1 else base
            e >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def kron(self, other: "Operator") -> "Operator":
        d = self.dim * other.dim
        out: dict[tuple[int, int], Scalar] = {}
        for (r1, c1), a in self.entries.items():
            for (r2, c2), b in other.entries.items():
                out[(r1 * other.dim + r2, c1 * other.dim + c2)] = a * b
        result = Operator(d)
        result.entries = {k: v for k, v in out.items() if not _prunable(v)}
        return result

    def transpose(self) -> "Operator":
        result = Operator(self.dim)
        result.entries = {(c, r): v for (r, c), v in self.entries.items()}
        return result

    def conjugate(self) -> "Operator":
        result = Operator(self.dim)
        result.entries = {k: v.conjugate() for k, v in self.entries.items()}
        return result

    def dagger(self) -> "Operator":
        result = Operator(self.dim)
        result.entries = {(c, r): v.conjugate() for (r, c), v in self.entries.items()}
        return result

    def trace(self) -> Scalar:
        total: Scalar = ExactScalar.rational(0)
        for (r, c), v in self.entries.items():
            if r == c:
                total = total + v
        return total

    def to_float(self, precision: int = DEFAULT_PRECISION) -> "Operator":
        result = Operator(self.dim)
        result.entries = {k: (v.to_float(precision) if isinstance(v, ExactScalar)
                              else v.to_float(precision))
                          for k, v in self.entries.items()}
        return result

    def to_numpy(self) -> np.ndarray:
        arr = np.zeros((self.dim, self.dim), dtype=complex)
        for (r, c), v in self.entries.items():
            arr[r, c] = v.to_complex()
        return arr

    # -- comparison ----------------------------------------------------------

    def max_abs(self, precision: int = DEFAULT_PRECISION) -> gmpy2.mpfr:
        best = gmpy2.mpfr(0, precision)
        for v in self.entries.values():
            mag = v.abs_mpfr(precision) if isinstance(v, ExactScalar) else v.abs_mpfr()
            if mag > best:
                best = mag
        return best

    def max_abs_diff(self, other: "Operator", precision: int = DEFAULT_PRECISION) -> gmpy2.mpfr:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")
        return (self - other).max_abs(precision)

    def is_zero(self, strict: bool = False, precision: int = DEFAULT_PRECISION) -> bool:
        for v in self.entries.values():
            if isinstance(v, ExactScalar):
                if not v.is_zero(strict=strict):
                    return False
            else:
                if strict:
                    if v.value != 0:
                        return False
                elif not v.is_zero():
                    return False
        return True

    def equals(self, other: "Operator", strict: bool = False) -> bool:
        return (self - other).is_zero(strict=strict)

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# tensor helpers

def kron(*ops: Operator) -> Operator:
    if not ops:
        raise ValueError("kron needs at least one operator")
    out = ops[0]
    for op in ops[1:]:
        out = out.kron(op)
    return out


def permutation_swap(d1: int, d2: int | None = None) -> Operator:
    """Flip operator on C^d1 (x) C^d2: v (x) w maps to w (x) v."""
    if d2 is None:
        d2 = d1
    entries = {}
    for i in range(d1):
        for j in range(d2):
            entries[(j * d1 + i, i * d2 + j)] = 1
    return Operator(d1 * d2, entries)


def embed(op: Operator, slot: str, dims: tuple[int, int, int]) -> Operator:
    """Place a two-slot operator inside a three-fold tensor product.

    slot is one of "12", "13", "23"; op must act on the named pair of factors.
    """
    d1, d2, d3 = dims
    total = d1 * d2 * d3
    pair = {"12": d1 * d2, "13": d1 * d3, "23": d2 * d3}.get(slot)
    if pair is None:
        raise ValueError(f"slot must be '12', '13', or '23', got {slot!r}")
    if op.dim != pair:
        raise ValueError(f"operator dim {op.dim} does not match slot {slot} size {pair}")
    out: dict[tuple[int, int], Scalar] = {}
    if slot == "12":
        for (r, c), v in op.entries.items():
            for k in range(d3):
                out[(r * d3 + k, c * d3 + k)] = v
    elif slot == "23":
        step = d2 * d3
        for (r, c), v in op.entries.items():
            for i in range(d1):
                out[(i * step + r, i * step + c)] = v
    else:
        for (r, c), v in op.entries.items():
            a, b = divmod(r, d3)
            e, f = divmod(c, d3)
            for j in range(d2):
                out[((a * d2 + j) * d3 + b, (e * d2 + j) * d3 + f)] = v
    result = Operator(total)
    result.entries = out
    return result


# ---------------------------------------------------------------------------
# spectral-parameter families

@dataclass(frozen=True)
class SpectralOperator:
    """Matrix-valued function of one spectral parameter.

    poles lists complex positions (double precision is enough to steer
    sampling away); braided marks families satisfying the braid-form
    exchange relation rather than the plain one.
    """

    dim: int
    fn: Callable[[Scalar], Operator] = field(repr=False)
    name: str = "R"
    poles: tuple[complex, ...] = ()
    braided: bool = False

    def __call__(self, z: Scalar) -> Operator:
        mat = self.fn(z)
        if mat.dim != self.dim:
            raise ValueError(f"{self.name} produced dim {mat.dim}, declared {self.dim}")
        return mat

    def with_name(self, name: str) -> "SpectralOperator":
        return SpectralOperator(self.dim, self.fn, name, self.poles, self.braided)


def spectral_from_constant(mat: Operator, name: str = "C") -> SpectralOperator:
    return SpectralOperator(mat.dim, lambda z: mat, name)
