"""Deterministic spectral-parameter sampling.

All randomness flows from one integer seed through random.Random, and points
are materialized at a fixed binary precision from the decimal repr of the
double-precision draw, so a (seed, precision) pair reproduces bit-identical
samples on any platform. Points live on the unit circle; pole positions are
avoided by a minimum arc distance.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

import gmpy2

from .scalars import DEFAULT_PRECISION, FloatScalar, _ctx


def _circle_turns(poles: tuple[complex, ...]) -> list[float]:
    """Angle fractions of the poles lying near the unit circle; others cannot
    collide with unit-modulus samples and are dropped."""
    out = []
    for p in poles:
        if abs(abs(p) - 1.0) > 0.2:
            continue
        out.append(cmath.phase(p) / (2 * math.pi) % 1.0)
    return out


@dataclass(frozen=True)
class SamplePlan:
    """Unit-circle sampling schedule for identity verification."""

    count: int = 25
    seed: int = 0
    precision: int = DEFAULT_PRECISION
    margin: float = 1e-3  # minimum arc distance from any listed pole

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def _clear(self, turn: float, avoid_turns: list[float]) -> bool:
        for p in avoid_turns:
            d = abs(turn - p) % 1.0
            if min(d, 1.0 - d) * 2 * math.pi < self.margin:
                return False
        return True

    def unit_point(self, turn: float) -> FloatScalar:
        """exp(2*pi*i*turn) at the plan's precision, from the repr of turn."""
        ctx = _ctx(self.precision + 16)
        out = _ctx(self.precision)
        theta = ctx.mul(ctx.mul(ctx.const_pi(), gmpy2.mpfr(2)),
                        gmpy2.mpfr(repr(turn), self.precision + 16))
        return FloatScalar(gmpy2.mpc(out.add(ctx.cos(theta), gmpy2.mpfr(0)),
                                     out.add(ctx.sin(theta), gmpy2.mpfr(0)),
                                     self.precision),
                           self.precision)

    def turns(self, rng: random.Random, needed: int,
              poles: tuple[complex, ...] = ()) -> list[float]:
        """needed angle fractions in [0,1), each margin-clear of the poles."""
        avoid = _circle_turns(poles)
        out: list[float] = []
        attempts = 0
        while len(out) < needed:
            attempts += 1
            if attempts > 1000 * max(needed, 1):
                raise RuntimeError("pole margin too tight to sample")
            t = rng.random()
            if self._clear(t, avoid):
                out.append(t)
        return out

    def points(self, poles: tuple[complex, ...] = ()) -> list[FloatScalar]:
        rng = self.rng()
        return [self.unit_point(t) for t in self.turns(rng, self.count, poles)]

    def point_pairs(self, poles: tuple[complex, ...] = (),
                    products: tuple[int, ...] = (1,)) -> list[tuple[FloatScalar, FloatScalar]]:
        """(x, y) pairs with x, y, and x*y^p clear of the poles for each p.

        products lists the exponents p such that x*y^p must stay clear; the
        sum of two clear turns is checked in angle space before the points
        are materialized.
        """
        rng = self.rng()
        avoid = _circle_turns(poles)
        out = []
        attempts = 0
        while len(out) < self.count:
            attempts += 1
            if attempts > 2000 * max(self.count, 1):
                raise RuntimeError("pole margin too tight to sample pairs")
            tx, ty = rng.random(), rng.random()
            ok = self._clear(tx, avoid) and self._clear(ty, avoid)
            if ok:
                for p in products:
                    if not self._clear((tx + p * ty) % 1.0, avoid):
                        ok = False
                        break
            if ok:
                out.append((self.unit_point(tx), self.unit_point(ty)))
        return out

    def real_points(self, low: float = -0.95, high: float = 0.95,
                    min_abs: float = 0.05) -> list[FloatScalar]:
        """Real samples in [low, high] bounded away from zero."""
        rng = self.rng()
        out = []
        while len(out) < self.count:
            t = rng.uniform(low, high)
            if abs(t) < min_abs:
                continue
            out.append(FloatScalar.from_str(repr(t), "0", self.precision))
        return out

    def with_count(self, count: int) -> "SamplePlan":
        return SamplePlan(count, self.seed, self.precision, self.margin)
