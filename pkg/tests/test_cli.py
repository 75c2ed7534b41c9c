"""End-to-end behavior of the command-line front end.

Runs main() in process; exit codes and the stdout JSON stream are the
contract under test.
"""

from __future__ import annotations

import json

import pytest

from dihedral_ybe.cli import main
from dihedral_ybe.export import ExportRecord
from dihedral_ybe.operators import permutation_swap


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def json_lines(out):
    return [json.loads(line) for line in out.strip().splitlines() if line]


# ---------------------------------------------------------------------------
# build

def test_build_rodd_at_one_is_the_swap(capsys):
    code, out, _ = run(capsys, "build", "Rodd", "--n", "3", "--z", "1")
    assert code == 0
    rec = ExportRecord.from_json(out)
    assert rec.metadata["z"] == "symbolic-limit-1"
    diff = rec.to_operator().max_abs_diff(permutation_swap(3), 256)
    assert float(diff) == 0.0


def test_build_projector_trace_metadata(capsys):
    code, out, _ = run(capsys, "build", "projector", "--n", "3",
                       "--alpha", "0,0")
    assert code == 0
    rec = ExportRecord.from_json(out)
    assert rec.metadata["trace"] == "1"
    assert rec.metadata["alpha"] == [0, 0]


def test_build_rodd_rejects_even_index(capsys):
    code, _, err = run(capsys, "build", "Rodd", "--n", "4")
    assert code == 2
    assert "odd" in err


def test_build_rejects_twist_sharing_a_factor(capsys):
    code, _, err = run(capsys, "build", "r6v", "--n", "4", "--k", "2")
    assert code == 2
    assert "gcd" in err


def test_build_reven_rejects_twist_sharing_a_factor(capsys):
    code, _, err = run(capsys, "build", "Reven", "--m", "3", "--k", "3")
    assert code == 2
    assert "gcd" in err


def test_build_csv_to_file(capsys, tmp_path):
    target = tmp_path / "matrix.csv"
    code, out, err = run(capsys, "build", "L", "--n", "3", "--z", "2",
                         "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    assert "wrote" in err
    lines = target.read_text().strip().splitlines()
    assert lines[0] == "row,col,re,im"
    assert len(lines) > 1


def test_build_two_param_needs_mu(capsys):
    code, _, err = run(capsys, "build", "Rmu", "--m", "2")
    assert code == 2
    assert "--mu" in err


def test_build_two_param_with_mu(capsys):
    code, out, _ = run(capsys, "build", "Rmu", "--m", "2", "--z", "0.3+0.1j",
                       "--mu", "0.7-0.2j")
    assert code == 0
    rec = ExportRecord.from_json(out)
    assert rec.metadata["dim"] == 4
    assert rec.metadata["convention"] == "braided"


def test_build_canonical_matches_zero_limit(capsys):
    code, out, _ = run(capsys, "build", "canonical", "--n", "3")
    assert code == 0
    canonical = ExportRecord.from_json(out).to_operator()
    code, out, _ = run(capsys, "build", "Rodd", "--n", "3", "--z", "0")
    assert code == 0
    at_zero = ExportRecord.from_json(out).to_operator()
    assert float(canonical.max_abs_diff(at_zero, 256)) == 0.0


def test_build_fz_limit_closed_form(capsys):
    code, out, _ = run(capsys, "build", "fz", "--N", "3", "--z", "1/2")
    assert code == 0
    rec = ExportRecord.from_json(out)
    assert rec.metadata["dim"] == 9
    assert rec.metadata["root"] == {"order": 6, "power": 1}


def test_build_fz_rejects_even_states(capsys):
    code, _, err = run(capsys, "build", "fz", "--N", "4")
    assert code == 2
    assert "odd" in err


def test_build_signed_pair_needs_even_parent(capsys):
    code, _, err = run(capsys, "build", "Rplus", "--m", "3")
    assert code == 2
    assert "even" in err


def test_precision_env_var(capsys, monkeypatch):
    monkeypatch.setenv("DIHEDRAL_YBE_PRECISION", "128")
    code, out, _ = run(capsys, "build", "Rodd", "--n", "3", "--z", "1")
    assert code == 0
    assert ExportRecord.from_json(out).metadata["precision"] == 128


def test_precision_env_var_rejects_garbage(capsys, monkeypatch):
    monkeypatch.setenv("DIHEDRAL_YBE_PRECISION", "plenty")
    code, _, err = run(capsys, "build", "Rodd", "--n", "3")
    assert code == 2
    assert "DIHEDRAL_YBE_PRECISION" in err


# ---------------------------------------------------------------------------
# verify

def test_verify_ybe_quick(capsys):
    code, out, err = run(capsys, "verify", "ybe", "--n", "3",
                         "--samples", "2", "--quick")
    assert code == 0
    rows = json_lines(out)
    assert len(rows) == 3
    assert all(r["met"] for r in rows)
    assert all(r["params"]["precision"] == 53 for r in rows)
    assert "expectations met" in err


def test_verify_ybe_perturbed_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "ybe", "--n", "3", "--samples", "2",
                       "--quick", "--perturb", "1e-2")
    assert code == 1
    rows = json_lines(out)
    assert any(r["verdict"] == "fail" for r in rows)


def test_verify_g_identity_even_parent(capsys):
    code, out, _ = run(capsys, "verify", "g-identity", "--m", "2",
                       "--samples", "2", "--quick")
    assert code == 0
    rows = json_lines(out)
    assert rows[0]["params"]["parity"] == "even"


def test_verify_projectors_exact(capsys):
    code, out, _ = run(capsys, "verify", "projectors", "--n", "3")
    assert code == 0
    rows = json_lines(out)
    assert rows[0]["residuals"] == [0.0] * 5


def test_verify_two_param_requires_even_parent(capsys):
    code, _, err = run(capsys, "verify", "two-param", "--n", "3")
    assert code == 2
    assert "--m" in err


def test_verify_stream_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "g-identity", "--n", "3",
                      "--samples", "2", "--quick", "--seed", "5")
    _, second, _ = run(capsys, "verify", "g-identity", "--n", "3",
                       "--samples", "2", "--quick", "--seed", "5")
    assert first == second


def test_verify_records_have_sorted_keys_and_no_wall_time(capsys):
    _, out, _ = run(capsys, "verify", "str", "--N", "3", "--samples", "2",
                    "--quick")
    for line in out.strip().splitlines():
        row = json.loads(line)
        assert list(row) == sorted(row)
        assert "wall_time" not in row


def test_verify_unknown_suite_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "nonsense"])
    assert info.value.code == 2


# ---------------------------------------------------------------------------
# fz-compare

def test_fz_compare_rejects_even_states(capsys):
    code, _, err = run(capsys, "fz-compare", "--N", "4")
    assert code == 2
    assert "odd" in err


def test_fz_compare_three_states(capsys):
    code, out, _ = run(capsys, "fz-compare", "--N", "3", "--z-samples", "3")
    assert code == 0
    rows = json_lines(out)
    idents = [r["identity"] for r in rows]
    assert idents == ["fz-limit-convergence", "fz-equivalence",
                      "fz-zero-equivalence"]
    assert rows[1]["kind"] == "intertwiner"
    assert all(r["met"] for r in rows)


def test_fz_compare_short_schedule_reports_convergence(capsys):
    code, out, _ = run(capsys, "fz-compare", "--N", "3", "--z-samples", "2",
                       "--schedule", "2,3")
    rows = json_lines(out)
    assert rows[0]["identity"] == "fz-limit-convergence"
    assert code == 1
    assert rows[0]["verdict"] == "fail"
