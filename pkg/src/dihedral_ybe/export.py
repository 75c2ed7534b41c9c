"""Serializable matrix records for the command-line front end.

A record carries construction metadata plus the nonzero entries with real
and imaginary parts as decimal strings carrying enough digits to survive a
decimal round trip at the recorded binary precision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

import gmpy2

from .operators import Operator
from .scalars import DEFAULT_PRECISION, FloatScalar, Scalar

CSV_HEADER = "row,col,re,im"


def decimal_digits(precision: int) -> int:
    """Digits guaranteeing decimal -> binary -> decimal identity."""
    return math.ceil(precision * math.log10(2)) + 2


def _decimal(x: "gmpy2.mpfr", digits: int) -> str:
    mant, exp, _ = x.digits(10, digits)
    sign = "-" if mant.startswith("-") else ""
    return f"{sign}0.{mant.lstrip('-')}e{exp}"


def scalar_strings(value: Scalar, precision: int) -> tuple[str, str]:
    """Decimal string pair for one entry at the target precision.

    The value is rounded to the target precision before printing; the
    decimal image of a p-bit value re-parsed at p bits is that value again,
    which is what makes the record round-trip exact.
    """
    v = value.to_float(precision).value
    digits = decimal_digits(precision)
    return _decimal(v.real, digits), _decimal(v.imag, digits)


@dataclass(frozen=True)
class ExportRecord:
    """Matrix snapshot: metadata plus sorted nonzero entries."""

    metadata: dict[str, Any]
    entries: tuple[tuple[int, int, str, str], ...]

    @classmethod
    def from_operator(cls, op: Operator, metadata: dict[str, Any],
                      precision: int = DEFAULT_PRECISION) -> "ExportRecord":
        meta = dict(metadata)
        meta.setdefault("dim", op.dim)
        meta.setdefault("precision", precision)
        rows = []
        for (i, j), v in op.entries.items():
            re, im = scalar_strings(v, precision)
            if re == "0.0e0" and im == "0.0e0":
                continue
            rows.append((i, j, re, im))
        rows.sort(key=lambda r: (r[0], r[1]))
        return cls(meta, tuple(rows))

    def to_operator(self) -> Operator:
        """Rebuild the matrix with float entries at the recorded precision."""
        precision = int(self.metadata["precision"])
        entries = {}
        for i, j, re, im in self.entries:
            entries[(int(i), int(j))] = FloatScalar.from_str(re, im, precision)
        return Operator(int(self.metadata["dim"]), entries)

    def to_json(self) -> str:
        payload = {"metadata": self.metadata,
                   "entries": [list(row) for row in self.entries]}
        return json.dumps(payload, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExportRecord":
        payload = json.loads(text)
        entries = tuple((int(r[0]), int(r[1]), str(r[2]), str(r[3]))
                        for r in payload["entries"])
        return cls(payload["metadata"], entries)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        lines.extend(f"{i},{j},{re},{im}" for i, j, re, im in self.entries)
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"format must be json or csv, got {fmt!r}")


def round_trip_equal(record: ExportRecord) -> bool:
    """True when import followed by export reproduces the record exactly."""
    back = ExportRecord.from_operator(record.to_operator(), record.metadata,
                                      int(record.metadata["precision"]))
    return back.entries == record.entries
