"""Irreducible representations of the dihedral quantum double.

Each irrep pairs a matrix action pi(g) with a dual action pi(g*); the dual
matrices are diagonal 0/1 selectors supported on one conjugacy class, and sum
to the identity over the group. Table indices are stored 0-based throughout:
basis vectors of the d-dimensional modules are labelled by residues mod d.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .dihedral import GroupElement, group_elements
from .operators import Operator
from .scalars import ExactScalar, Scalar, root_of_unity

ONE_ODD = "one_odd"
TWO = "two"
N_ODD = "n_odd"
ONE_EVEN = "one_even"
M_EVEN = "m_even"

#: dual conjugacy classes for the even-index 1-dim irreps
CLASS_IDENTITY = "identity"
CLASS_HALF_TURN = "half_turn"
#: dual classes for the m-dim irreps: reflections with even / odd rotation part
CLASS_EVEN_AXES = "even_axes"
CLASS_ODD_AXES = "odd_axes"


@dataclass(frozen=True)
class IrrepLabel:
    """Label of one irrep of the quantum double of the dihedral group D_n."""

    n: int
    variant: str
    sign: int = 1
    l: int = 0
    k: int = 0
    dual_class: str = ""
    a: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        n = self.n
        if n < 3:
            raise ValueError("group index must be at least 3")
        odd = n % 2 == 1
        v = self.variant
        if v == ONE_ODD or v == N_ODD:
            if not odd:
                raise ValueError(f"{v} labels require odd group index")
            if self.sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")
        elif v == TWO:
            l, k = self.l, self.k
            if odd:
                half = (n - 1) // 2
                if l == 0:
                    if not 1 <= k <= half:
                        raise ValueError(f"k={k} outside [1, {half}] for l=0")
                elif 1 <= l <= half:
                    if not 0 <= k <= n - 1:
                        raise ValueError(f"k={k} outside [0, {n - 1}]")
                else:
                    raise ValueError(f"l={l} outside [0, {half}]")
            else:
                m = n // 2
                if l in (0, m):
                    if not 1 <= k <= m - 1:
                        raise ValueError(f"k={k} outside [1, {m - 1}] for l in {{0, {m}}}")
                elif 1 <= l <= m - 1:
                    if not 0 <= k <= n - 1:
                        raise ValueError(f"k={k} outside [0, {n - 1}]")
                else:
                    raise ValueError(f"l={l} outside [0, {m}]")
        elif v == ONE_EVEN or v == M_EVEN:
            if odd:
                raise ValueError(f"{v} labels require even group index")
            allowed = ((CLASS_IDENTITY, CLASS_HALF_TURN) if v == ONE_EVEN
                       else (CLASS_EVEN_AXES, CLASS_ODD_AXES))
            if self.dual_class not in allowed:
                raise ValueError(f"dual_class must be one of {allowed}")
            if self.a not in (0, 1) or self.b not in (0, 1):
                raise ValueError("a and b must be 0 or 1")
        else:
            raise ValueError(f"unknown variant {v!r}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def one_dim_odd(cls, n: int, sign: int) -> "IrrepLabel":
        return cls(n, ONE_ODD, sign=sign)

    @classmethod
    def two_dim(cls, n: int, l: int, k: int) -> "IrrepLabel":
        return cls(n, TWO, l=l, k=k)

    @classmethod
    def n_dim_odd(cls, n: int, sign: int) -> "IrrepLabel":
        return cls(n, N_ODD, sign=sign)

    @classmethod
    def one_dim_even(cls, n: int, dual_class: str, a: int, b: int) -> "IrrepLabel":
        return cls(n, ONE_EVEN, dual_class=dual_class, a=a, b=b)

    @classmethod
    def m_dim_even(cls, n: int, dual_class: str, a: int, b: int) -> "IrrepLabel":
        return cls(n, M_EVEN, dual_class=dual_class, a=a, b=b)

    @property
    def dimension(self) -> int:
        if self.variant in (ONE_ODD, ONE_EVEN):
            return 1
        if self.variant == TWO:
            return 2
        if self.variant == N_ODD:
            return self.n
        return self.n // 2


def all_labels(n: int) -> Iterator[IrrepLabel]:
    """Every irrep label of the double, covering the full matrix algebra."""
    if n % 2 == 1:
        half = (n - 1) // 2
        for sign in (1, -1):
            yield IrrepLabel.one_dim_odd(n, sign)
        for k in range(1, half + 1):
            yield IrrepLabel.two_dim(n, 0, k)
        for l in range(1, half + 1):
            for k in range(n):
                yield IrrepLabel.two_dim(n, l, k)
        for sign in (1, -1):
            yield IrrepLabel.n_dim_odd(n, sign)
    else:
        m = n // 2
        for cls_ in (CLASS_IDENTITY, CLASS_HALF_TURN):
            for a in (0, 1):
                for b in (0, 1):
                    yield IrrepLabel.one_dim_even(n, cls_, a, b)
        for l in (0, m):
            for k in range(1, m):
                yield IrrepLabel.two_dim(n, l, k)
        for l in range(1, m):
            for k in range(n):
                yield IrrepLabel.two_dim(n, l, k)
        for cls_ in (CLASS_EVEN_AXES, CLASS_ODD_AXES):
            for a in (0, 1):
                for b in (0, 1):
                    yield IrrepLabel.m_dim_even(n, cls_, a, b)


# ---------------------------------------------------------------------------
# matrix actions

def irrep_matrix(label: IrrepLabel, g: GroupElement) -> Operator:
    """The representing matrix pi(g), with exact root-of-unity entries."""
    if g.n != label.n:
        raise ValueError(f"element of D_{g.n} fed to a D_{label.n} label")
    n, r, s = label.n, g.rotation, g.flipped
    v = label.variant
    if v == ONE_ODD:
        val = -1 if (label.sign == -1 and s) else 1
        return Operator(1, {(0, 0): val})
    if v == ONE_EVEN:
        val = (-1) ** (label.b * r + label.a * s)
        return Operator(1, {(0, 0): val})
    if v == TWO:
        w = root_of_unity(n, 1)
        hi, lo = w.pow(label.k * r), w.pow(-label.k * r)
        if s:
            return Operator(2, {(0, 1): hi, (1, 0): lo})
        return Operator(2, {(0, 0): hi, (1, 1): lo})
    if v == N_ODD:
        out = Operator(n)
        if s:
            sign = label.sign
            for i in range(n):
                out.add_to(r - i, i, sign)
        else:
            for i in range(n):
                out.add_to(i + r, i, 1)
        return out
    # m-dim, even group index
    m = n // 2
    a, b = label.a, label.b
    mat = _m_dim_rot_power(m, a, r)
    if s:
        flip = Operator(m)
        if label.dual_class == CLASS_EVEN_AXES:
            for i in range(m):
                flip.add_to(i, -i, (-1) ** (a * (i == 0) + b))
        else:
            for i in range(m):
                flip.add_to(i, -i - 1, (-1) ** b)
        mat = mat @ flip
    return mat


def _m_dim_rot_power(m: int, a: int, r: int) -> Operator:
    # rot acts as the cyclic shift with a (-1)^a twist on the wrap entry;
    # its r-th power picks up one sign per wrap.
    out = Operator(m)
    r = r % (2 * m)
    for i in range(m):
        wraps = (i + r) // m
        out.add_to(i + r, i, (-1) ** (a * wraps))
    return out


def dual_irrep_matrix(label: IrrepLabel, g: GroupElement) -> Operator:
    """The dual-basis matrix pi(g*): a diagonal 0/1 selector."""
    if g.n != label.n:
        raise ValueError(f"element of D_{g.n} fed to a D_{label.n} label")
    n, r, s = label.n, g.rotation, g.flipped
    v = label.variant
    if v == ONE_ODD:
        return Operator(1, {(0, 0): 1} if g.is_identity else None)
    if v == ONE_EVEN:
        m = n // 2
        hit = (g.is_identity if label.dual_class == CLASS_IDENTITY
               else (not s and r == m))
        return Operator(1, {(0, 0): 1} if hit else None)
    if v == TWO:
        out = Operator(2)
        if not s:
            if r == label.l % n:
                out.add_to(0, 0, 1)
            if r == (-label.l) % n:
                out.add_to(1, 1, 1)
        return out
    if v == N_ODD:
        out = Operator(n)
        if s:
            j = (r * pow(2, -1, n)) % n
            out.add_to(j, j, 1)
        return out
    m = n // 2
    out = Operator(m)
    if s:
        if label.dual_class == CLASS_EVEN_AXES and r % 2 == 0:
            out.add_to(r // 2, r // 2, 1)
        elif label.dual_class == CLASS_ODD_AXES and r % 2 == 1:
            out.add_to((r - 1) // 2, (r - 1) // 2, 1)
    return out


def canonical_element(label: IrrepLabel) -> Operator:
    """Sum over the group of pi(g) (x) pi(g*), by direct summation."""
    d = label.dimension
    total = Operator.zero(d * d)
    for g in group_elements(label.n):
        dual = dual_irrep_matrix(label, g)
        if dual.nnz:
            total = total + irrep_matrix(label, g).kron(dual)
    return total


def character(label: IrrepLabel, h: GroupElement, g: GroupElement) -> Scalar:
    """Trace of pi(h*) pi(g^-1): the character at the double element h* g^-1."""
    dual = dual_irrep_matrix(label, h)
    if not dual.nnz:
        return ExactScalar.rational(0)
    return (dual @ irrep_matrix(label, g.inverse())).trace()
