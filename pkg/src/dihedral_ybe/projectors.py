"""Projector family decomposing the tensor square of the top-dimensional irrep.

Each projector is labelled by an ordered pair alpha = (a, b) of residues. Two
constructions are provided: a closed form (sum of weighted matrix units) and a
character sum over the group. They must agree entrywise; the character sum is
the internal oracle for the closed form.

Parity convention: a parent dimension d arises either from the odd-index group
(d = n odd) or from the even-index group (d = m = n/2). The closed form reads
its root of unity from that context: both cases reduce to powers of a fixed
primitive d-th root, reached as the square of the group's natural root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dihedral import GroupElement, group_elements
from .irreps import (
    CLASS_EVEN_AXES,
    CLASS_HALF_TURN,
    CLASS_IDENTITY,
    CLASS_ODD_AXES,
    IrrepLabel,
    character,
    irrep_matrix,
)
from .operators import Operator
from .scalars import ExactScalar, RootOfUnity, root_of_unity


@dataclass(frozen=True)
class AlphaPair:
    """Ordered pair labelling one projector; d is the parent dimension."""

    a: int
    b: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError("parent dimension must be at least 2")
        object.__setattr__(self, "a", self.a % self.d)
        object.__setattr__(self, "b", self.b % self.d)


@dataclass(frozen=True)
class Projector:
    alpha: AlphaPair
    matrix: Operator
    scaled: bool


def _group_index_for(d: int, group_n: int | None) -> int:
    if group_n is None:
        group_n = d if d % 2 else 2 * d
    if group_n == d:
        if d % 2 == 0:
            raise ValueError("parent dimension equal to group index needs it odd")
    elif group_n == 2 * d:
        pass
    else:
        raise ValueError(f"group index {group_n} incompatible with dimension {d}")
    return group_n


def catalog_for_dim(d: int) -> list[AlphaPair]:
    """All pairs labelling nonzero projectors at parent dimension d."""
    if d < 2:
        raise ValueError("parent dimension must be at least 2")
    pairs = [AlphaPair(0, 0, d)]
    if d % 2:
        half = (d - 1) // 2
        pairs += [AlphaPair(0, b, d) for b in range(1, half + 1)]
        pairs += [AlphaPair(a, b, d) for a in range(1, half + 1) for b in range(d)]
    else:
        h = d // 2
        pairs += [AlphaPair(0, h, d), AlphaPair(h, 0, d), AlphaPair(h, h, d)]
        pairs += [AlphaPair(0, b, d) for b in range(1, h)]
        pairs += [AlphaPair(h, b, d) for b in range(1, h)]
        pairs += [AlphaPair(a, b, d) for a in range(1, h) for b in range(d)]
    return pairs


def catalog(n: int) -> list[AlphaPair]:
    """Projector labels for group index n (parent dim n when odd, n/2 when even)."""
    if n < 3:
        raise ValueError("group index must be at least 3")
    return catalog_for_dim(n if n % 2 else n // 2)


def c_alpha(alpha: AlphaPair) -> Fraction:
    """Prefactor weight: 1/2 on self-paired labels, 1 otherwise."""
    d = alpha.d
    if d % 2:
        return Fraction(1, 2) if (alpha.a == 0 and alpha.b == 0) else Fraction(1)
    h = d // 2
    if alpha.a in (0, h) and alpha.b in (0, h):
        return Fraction(1, 2)
    return Fraction(1)


def parent_irrep(alpha: AlphaPair, group_n: int | None = None,
                 flavor: str = CLASS_EVEN_AXES) -> IrrepLabel:
    """The irrep this projector selects inside the tensor-square decomposition.

    flavor picks which m-dim family the even-index decomposition came from;
    the two choices differ only in the 1-dim labels they name, not in the
    projector matrices.
    """
    a, b, d = alpha.a, alpha.b, alpha.d
    n = _group_index_for(d, group_n)
    if n % 2:
        quarter = (n - 1) // 4
        upper_start = (n + 3) // 4
        half = (n - 1) // 2
        if a == 0 and b == 0:
            return IrrepLabel.one_dim_odd(n, 1)
        if a == 0:
            if 1 <= b <= quarter:
                return IrrepLabel.two_dim(n, 0, 2 * b)
            if upper_start <= b <= half:
                return IrrepLabel.two_dim(n, 0, n - 2 * b)
            raise ValueError(f"{alpha} not in the catalog")
        if 1 <= a <= quarter:
            return IrrepLabel.two_dim(n, 2 * a, (2 * b) % n)
        if upper_start <= a <= half:
            return IrrepLabel.two_dim(n, n - 2 * a, (n - 2 * b) % n)
        raise ValueError(f"{alpha} not in the catalog")
    m = d
    if flavor not in (CLASS_EVEN_AXES, CLASS_ODD_AXES):
        raise ValueError("flavor must name one of the two m-dim families")
    if m % 2:
        half = (m - 1) // 2
        if a == 0 and b == 0:
            return IrrepLabel.one_dim_even(n, CLASS_IDENTITY, 0, 0)
        if a == 0 and 1 <= b <= half:
            return IrrepLabel.two_dim(n, 0, 2 * b)
        if 1 <= a <= half and 0 <= b <= m - 1:
            return IrrepLabel.two_dim(n, 2 * a, 2 * b)
        raise ValueError(f"{alpha} not in the catalog")
    h = m // 2
    one_dim_ab = (lambda t: (t, t)) if flavor == CLASS_ODD_AXES else (lambda t: (0, t))
    if a == 0 and b in (0, h):
        aa, bb = one_dim_ab(b // h)
        return IrrepLabel.one_dim_even(n, CLASS_IDENTITY, aa, bb)
    if a == h and b in (0, h):
        aa, bb = one_dim_ab(b // h)
        return IrrepLabel.one_dim_even(n, CLASS_HALF_TURN, aa, bb)
    if a == 0 and 1 <= b <= h - 1:
        return IrrepLabel.two_dim(n, 0, 2 * b)
    if a == h and 1 <= b <= h - 1:
        return IrrepLabel.two_dim(n, m, 2 * b)
    if 1 <= a <= h - 1 and 0 <= b <= m - 1:
        return IrrepLabel.two_dim(n, 2 * a, 2 * b)
    raise ValueError(f"{alpha} not in the catalog")


def default_carrier(group_n: int) -> IrrepLabel:
    """The top-dimensional irrep whose tensor square the projectors decompose."""
    if group_n % 2:
        return IrrepLabel.n_dim_odd(group_n, 1)
    return IrrepLabel.m_dim_even(group_n, CLASS_EVEN_AXES, 0, 0)


def projector_root(d: int, group_n: int | None = None) -> RootOfUnity:
    """Primitive d-th root used in the closed form: square of the group root."""
    n = _group_index_for(d, group_n)
    return root_of_unity(n, 1).squared()


def projector_closed(alpha: AlphaPair, d: int | None = None, scaled: bool = False,
                     group_n: int | None = None) -> Projector:
    """Closed-form projector; scaled=True drops the c_alpha/d prefactor."""
    if d is None:
        d = alpha.d
    if d != alpha.d:
        raise ValueError(f"dimension {d} does not match label {alpha}")
    omega = projector_root(d, group_n)
    a, b = alpha.a, alpha.b
    mat = Operator.zero(d * d)
    for i in range(d):
        for j in range(d):
            fwd = omega.pow(b * j)
            bwd = omega.pow(-b * j)
            mat.add_to(((i + a + j) % d) * d + (i + j) % d,
                       ((i + a) % d) * d + i, fwd)
            mat.add_to(((i - a + j) % d) * d + (i + j) % d,
                       ((i - a) % d) * d + i, bwd)
    if not scaled:
        mat = mat * Fraction(c_alpha(alpha), d)
    return Projector(alpha, mat, scaled)


def projector_algebraic_for_label(label: IrrepLabel, group_n: int,
                                  carrier: IrrepLabel | None = None) -> Operator:
    """Character-sum projector onto copies of label inside the tensor square."""
    if carrier is None:
        carrier = default_carrier(group_n)
    if label.n != group_n or carrier.n != group_n:
        raise ValueError("label and group index disagree")
    d = carrier.dimension
    out = Operator.zero(d * d)
    for g in group_elements(group_n):
        gm = irrep_matrix(carrier, g)
        cols: dict[int, tuple[int, object]] = {}
        for (r, c), v in gm.entries.items():
            cols[c] = (r, v)
        for j in range(d):
            chi = character(label, GroupElement.rot(group_n, 2 * j), g)
            if isinstance(chi, ExactScalar) and chi.is_zero_vector:
                continue
            for i in range(d):
                r1, v1 = cols[(i - j) % d]
                r2, v2 = cols[i]
                out.add_to(r1 * d + r2, ((i - j) % d) * d + i, chi * v1 * v2)
    weight = Fraction(label.dimension, 2 * group_n)
    return out * weight


def projector_algebraic(alpha: AlphaPair, d: int | None = None,
                        group_n: int | None = None) -> Projector:
    """Character-sum construction; must equal projector_closed entrywise."""
    if d is None:
        d = alpha.d
    if d != alpha.d:
        raise ValueError(f"dimension {d} does not match label {alpha}")
    n = _group_index_for(d, group_n)
    label = parent_irrep(alpha, n)
    return Projector(alpha, projector_algebraic_for_label(label, n), False)
