"""Round-trip and formatting behavior of the serializable matrix records."""

from __future__ import annotations

import json
from fractions import Fraction

from dihedral_ybe.builders import descendant_odd, six_vertex_r
from dihedral_ybe.coeffs import SixVertexParams
from dihedral_ybe.export import (
    CSV_HEADER,
    ExportRecord,
    decimal_digits,
    round_trip_equal,
    scalar_strings,
)
from dihedral_ybe.operators import Operator
from dihedral_ybe.scalars import ExactScalar, as_scalar


def sample_operator():
    return descendant_odd(SixVertexParams(3), as_scalar(0.37 + 0.21j, 256))


def test_decimal_digits_covers_256_bits():
    assert decimal_digits(256) >= 79
    assert decimal_digits(53) >= 17


def test_scalar_strings_zero():
    re, im = scalar_strings(ExactScalar.rational(0), 256)
    assert re == "0.0e0" and im == "0.0e0"


def test_scalar_strings_parse_back():
    value = as_scalar(Fraction(1, 3), 256)
    re, im = scalar_strings(value, 256)
    assert re.startswith("0.3333")
    assert im == "0.0e0"


def test_record_entries_sorted_and_nonzero():
    rec = ExportRecord.from_operator(sample_operator(), {"n": 3}, 256)
    keys = [(i, j) for i, j, _, _ in rec.entries]
    assert keys == sorted(keys)
    assert all(re != "0.0e0" or im != "0.0e0" for _, _, re, im in rec.entries)


def test_round_trip_identity_json():
    rec = ExportRecord.from_operator(sample_operator(), {"n": 3}, 256)
    again = ExportRecord.from_json(rec.to_json())
    assert again == rec
    assert round_trip_equal(rec)


def test_round_trip_identity_through_operator():
    rec = ExportRecord.from_operator(sample_operator(), {"n": 3}, 256)
    back = ExportRecord.from_operator(rec.to_operator(), rec.metadata, 256)
    assert back.entries == rec.entries


def test_round_trip_at_quick_precision():
    rec = ExportRecord.from_operator(sample_operator(), {}, 53)
    assert round_trip_equal(rec)


def test_metadata_defaults_filled():
    rec = ExportRecord.from_operator(Operator.identity(2), {"tag": "I"}, 128)
    assert rec.metadata["dim"] == 2
    assert rec.metadata["precision"] == 128
    assert rec.metadata["tag"] == "I"


def test_csv_layout():
    p = SixVertexParams(3)
    rec = ExportRecord.from_operator(six_vertex_r(p, 2), {}, 256)
    lines = rec.to_csv().strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == len(rec.entries) + 1
    first = lines[1].split(",")
    assert first[0].isdigit() and first[1].isdigit()


def test_json_is_sorted_and_loadable():
    rec = ExportRecord.from_operator(Operator.identity(3), {"b": 1, "a": 2}, 64)
    payload = json.loads(rec.to_json())
    assert list(payload) == ["entries", "metadata"]


def test_render_rejects_unknown_format():
    rec = ExportRecord.from_operator(Operator.identity(2), {}, 64)
    try:
        rec.render("yaml")
    except ValueError as exc:
        assert "format" in str(exc)
    else:
        raise AssertionError("expected ValueError")


def test_reconstruction_matches_source_numerically():
    op = sample_operator()
    rec = ExportRecord.from_operator(op, {}, 256)
    diff = rec.to_operator().max_abs_diff(op, 256)
    assert float(diff) < 1e-75
