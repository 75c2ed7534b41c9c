"""Dihedral group elements: rotations and reflections of the regular n-gon."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class GroupElement:
    """Word rot^rotation * flip^flipped in the dihedral group of order 2n.

    rot is the basic rotation (order n), flip a fixed reflection (order 2),
    with flip * rot * flip = rot^-1.
    """

    n: int
    rotation: int
    flipped: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("group index must be positive")
        if self.flipped not in (0, 1):
            raise ValueError("flip exponent must be 0 or 1")
        object.__setattr__(self, "rotation", self.rotation % self.n)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("elements from different groups")
        sign = -1 if self.flipped else 1
        return GroupElement(self.n,
                            self.rotation + sign * other.rotation,
                            self.flipped ^ other.flipped)

    def inverse(self) -> "GroupElement":
        if self.flipped:
            return self
        return GroupElement(self.n, -self.rotation, 0)

    @property
    def is_identity(self) -> bool:
        return self.rotation == 0 and not self.flipped

    @property
    def is_reflection(self) -> bool:
        return bool(self.flipped)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(n, 0, 0)

    @classmethod
    def rot(cls, n: int, power: int = 1) -> "GroupElement":
        return cls(n, power, 0)

    @classmethod
    def flip(cls, n: int) -> "GroupElement":
        return cls(n, 0, 1)


def group_elements(n: int) -> Iterator[GroupElement]:
    """All 2n elements, rotations first."""
    for s in (0, 1):
        for r in range(n):
            yield GroupElement(n, r, s)
