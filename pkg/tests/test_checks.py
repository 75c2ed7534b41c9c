"""Checker behavior: passing families pass, injected faults fail loudly,
and the equivalence search takes the documented routes."""

from __future__ import annotations

import json
from fractions import Fraction

import gmpy2
import pytest

from dihedral_ybe.builders import (
    descendant_family,
    descendant_pm_family,
    diagonal_power_transform,
    index_scale_transform,
    l_ansatz,
    l_operator_family,
    six_vertex_family,
)
from dihedral_ybe.checks import (
    EXACT_TOLERANCE,
    VerificationReport,
    check_adjoint_symmetry,
    check_f_constraints,
    check_g_identity,
    check_LLR,
    check_projectors,
    check_properties,
    check_rLL,
    check_str,
    check_two_param,
    check_ybe,
    default_tolerance,
    find_equivalence,
    fz_pole_positions,
    perturbed_family,
    six_vertex_unitarity_scalar,
    swapped_form,
    _g_relation_residual,
    _g_relation_tensor,
    _numeric_g_table,
)
from dihedral_ybe.coeffs import CoeffTable, SixVertexParams
from dihedral_ybe.fz import FZWeights, fz_limit_closed_form
from dihedral_ybe.operators import Operator, SpectralOperator, permutation_swap, spectral_from_constant
from dihedral_ybe.sampling import SamplePlan
from dihedral_ybe.scalars import QUICK_PRECISION, as_scalar, root_of_unity

PLAN = SamplePlan(count=3, seed=11)
TOL = 1e-30


def i_boundary(b: int):
    """Complex head value at b = 1; breaks adjoint symmetry only."""
    return as_scalar(1j, PLAN.precision) if b == 1 else 1


def asym_boundary(b: int):
    return 2 if b == 1 else 1


# -- report ------------------------------------------------------------------

def test_report_verdict_boundary():
    r = VerificationReport.build("x", {}, [1e-31, 5e-31], 1e-30, 0.0)
    assert r.verdict == "pass"
    r = VerificationReport.build("x", {}, [1e-31, 1e-30], 1e-30, 0.0)
    assert r.verdict == "fail"
    assert r.max_residual == 1e-30


def test_report_record_omits_wall_time():
    r = VerificationReport.build("x", {"n": 3}, [0.0], 1e-30, 0.0, ["note"])
    rec = r.as_record()
    assert "wall_time" not in rec
    assert rec["notes"] == ["note"]
    json.dumps(rec)


def test_default_tolerance_tracks_precision():
    assert default_tolerance(256) == 1e-30
    assert default_tolerance(QUICK_PRECISION) == 1e-9


# -- full matrix exchange relation --------------------------------------------

@pytest.mark.parametrize("n,k,l", [(3, 1, 1), (5, 2, 3)])
def test_six_vertex_ybe(n, k, l):
    p = SixVertexParams(n, k, l)
    assert check_ybe(six_vertex_family(p), PLAN).verdict == "pass"


def test_descendant_ybe_both_forms():
    p = SixVertexParams(3)
    plain = check_ybe(descendant_family(p), PLAN)
    assert plain.verdict == "pass"
    assert plain.max_residual < TOL
    braided = check_ybe(descendant_family(p, braided=True), PLAN, form="braided")
    assert braided.verdict == "pass"


def test_swapped_form_converts_between_shapes():
    fam = descendant_family(SixVertexParams(3))
    conv = swapped_form(fam)
    assert conv.braided and not fam.braided
    assert check_ybe(conv, PLAN, form="braided").verdict == "pass"
    assert swapped_form(conv)(PLAN.points(fam.poles)[0]).equals(
        fam(PLAN.points(fam.poles)[0]), strict=True)


def test_constant_form_swap_matrix():
    r = check_ybe(spectral_from_constant(permutation_swap(2)), PLAN,
                  form="constant")
    assert r.verdict == "pass"
    assert r.residuals == (0.0,)


def test_ybe_detects_broken_family():
    bad = perturbed_family(six_vertex_family(SixVertexParams(3)),
                           Fraction(1, 10), entry=(0, 1))
    r = check_ybe(bad, PLAN)
    assert r.verdict == "fail"
    assert r.max_residual > 1e-3


def test_ybe_form_and_flag_must_agree():
    fam = descendant_family(SixVertexParams(3))
    with pytest.raises(ValueError, match="braided"):
        check_ybe(fam, PLAN, form="braided")
    with pytest.raises(ValueError, match="form"):
        check_ybe(fam, PLAN, form="twisted")


def test_ybe_large_leg_needs_override():
    big = spectral_from_constant(Operator.identity(81))
    with pytest.raises(ValueError, match="capped"):
        check_ybe(big, PLAN)
    assert check_ybe(big, PLAN, allow_large=True).verdict == "pass"


# -- mixed dimension relations -------------------------------------------------

@pytest.mark.parametrize("n,k,l", [(3, 1, 1), (7, 3, 2)])
def test_seed_ladder_relation(n, k, l):
    p = SixVertexParams(n, k, l)
    r = check_rLL(six_vertex_family(p), l_operator_family(p), PLAN)
    assert r.verdict == "pass"
    assert r.max_residual < TOL


def test_seed_ladder_rejects_squared_weight():
    p = SixVertexParams(3)
    bad = SpectralOperator(2 * p.parent_dim,
                           lambda z: l_ansatz(p, z, h=lambda v: v * v),
                           name="Lz2")
    r = check_rLL(six_vertex_family(p), bad, PLAN)
    assert r.verdict == "fail"
    assert r.max_residual > 1e-3


def test_ladder_descent_both_forms():
    p = SixVertexParams(3)
    L = l_operator_family(p)
    assert check_LLR(L, descendant_family(p), PLAN).verdict == "pass"
    r = check_LLR(L, descendant_family(p, braided=True), PLAN, form="braided")
    assert r.verdict == "pass"


def test_ladder_descent_rejects_perturbed_family():
    p = SixVertexParams(3)
    bad = perturbed_family(descendant_family(p))
    r = check_LLR(l_operator_family(p), bad, PLAN)
    assert r.verdict == "fail"
    assert r.max_residual > 1e-3


def test_rll_dimension_guards():
    p = SixVertexParams(3)
    with pytest.raises(ValueError, match="dimension 4"):
        check_rLL(descendant_family(p), l_operator_family(p), PLAN)
    with pytest.raises(ValueError, match="does not match"):
        check_LLR(l_operator_family(SixVertexParams(5)),
                  descendant_family(p), PLAN)


# -- scalar four-index relation -------------------------------------------------

@pytest.mark.parametrize("index,parity", [(3, "odd"), (5, "odd"),
                                          (2, "even"), (4, "even")])
def test_g_identity_passes(index, parity):
    r = check_g_identity(index, parity, PLAN)
    assert r.verdict == "pass"
    assert r.max_residual < TOL


def test_g_identity_rejects_bad_indices():
    with pytest.raises(ValueError, match="odd"):
        check_g_identity(4, "odd", PLAN)
    with pytest.raises(ValueError, match=">= 2"):
        check_g_identity(1, "even", PLAN)
    with pytest.raises(ValueError, match="parity"):
        check_g_identity(3, "both", PLAN)


def test_g_identity_odd_even_profiles_agree():
    # same relation through conjugate roots; profiles differ only by
    # addition order noise far below the verdict scale
    ro = check_g_identity(3, "odd", PLAN)
    re = check_g_identity(3, "even", PLAN)
    assert ro.verdict == re.verdict == "pass"
    gap = max(abs(a - b) for a, b in zip(ro.residuals, re.residuals))
    assert gap < 1e-75


def test_numeric_table_matches_exact_table():
    omega = root_of_unity(5, 1).squared()
    z = PLAN.points(())[0]
    saved = gmpy2.get_context()
    try:
        gmpy2.set_context(gmpy2.context(precision=272))
        wpow = [omega.pow_float(t, 272).value for t in range(5)]
        fast = _numeric_g_table(5, wpow, gmpy2.mpc(z.value, precision=272))
    finally:
        gmpy2.set_context(saved)
    exact = CoeffTable(omega).g_table(z)
    worst = 0.0
    for a in range(5):
        for j in range(5):
            diff = fast[a][j] - exact[(a, j)].to_float(272).value
            worst = max(worst, float(abs(diff)))
    assert worst < 1e-70


def test_g_relation_scan_discriminates():
    # feeding x where the middle argument expects x*y must blow up
    omega = root_of_unity(5, 1).squared()
    x, y = PLAN.point_pairs((), products=(1,))[0]
    saved = gmpy2.get_context()
    try:
        gmpy2.set_context(gmpy2.context(precision=272))
        wpow = [omega.pow_float(t, 272).value for t in range(5)]
        zx = gmpy2.mpc(x.value, precision=272)
        zy = gmpy2.mpc(y.value, precision=272)
        gx = _numeric_g_table(5, wpow, zx)
        gy = _numeric_g_table(5, wpow, zy)
        good = _g_relation_residual(
            5, _g_relation_tensor(5, gx, _numeric_g_table(5, wpow, zx * zy), gy))
        bad = _g_relation_residual(
            5, _g_relation_tensor(5, gx, gx, gy))
    finally:
        gmpy2.set_context(saved)
    assert good < 1e-75
    assert bad > 1e-3


def test_g_tables_at_one_are_deltas():
    # every coefficient ratio degenerates at z = 1, leaving delta tables
    omega = root_of_unity(3, 1).squared()
    saved = gmpy2.get_context()
    try:
        gmpy2.set_context(gmpy2.context(precision=128))
        wpow = [omega.pow_float(t, 128).value for t in range(3)]
        tab = _numeric_g_table(3, wpow, gmpy2.mpc(1))
        worst = 0.0
        for a in range(3):
            for j in range(3):
                want = 1 if j == 0 else 0
                worst = max(worst, float(abs(tab[a][j] - want)))
    finally:
        gmpy2.set_context(saved)
    assert worst < 1e-30


# -- coefficient constraints ---------------------------------------------------

def test_f_constraints_default_pass():
    p = SixVertexParams(5)
    r = check_f_constraints(p, p.table(), PLAN)
    assert r.verdict == "pass"
    assert r.max_residual < TOL


def test_f_constraints_twisted_pass():
    p = SixVertexParams(7, 3, 2)
    assert check_f_constraints(p, p.table(), PLAN).verdict == "pass"


def test_f_constraints_reject_asymmetric_boundary():
    p = SixVertexParams(5)
    r = check_f_constraints(p, CoeffTable(p.omega, boundary=asym_boundary),
                            PLAN)
    assert r.verdict == "fail"
    assert r.max_residual > 1e-3


def test_f_constraints_dimension_guard():
    p = SixVertexParams(5)
    with pytest.raises(ValueError, match="disagree"):
        check_f_constraints(p, CoeffTable(root_of_unity(3, 1).squared()), PLAN)


# -- property suites -----------------------------------------------------------

def test_property_suite_odd():
    fam = descendant_family(SixVertexParams(5))
    r = check_properties(fam, ["conj-symmetry", "transpose", "involution",
                               "unitarity", "limit0", "limit1"], PLAN)
    assert r.verdict == "pass"
    # both strict limits resolve exactly
    assert r.residuals[-1] == 0.0 and r.residuals[-2] == 0.0


def test_property_suite_braided_input():
    fam = descendant_family(SixVertexParams(3), braided=True)
    r = check_properties(fam, ["limit0", "limit1"], PLAN)
    assert r.verdict == "pass"


def test_six_vertex_unitarity():
    p = SixVertexParams(5, 2, 3)
    r = check_properties(six_vertex_family(p), ["unitarity"], PLAN,
                         unitarity_scalar=six_vertex_unitarity_scalar(p))
    assert r.verdict == "pass"


def test_even_family_keeps_limit0_loses_limit1():
    from dihedral_ybe.builders import descendant_even_family
    fam = descendant_even_family(2)
    assert check_properties(fam, ["limit0"], PLAN).verdict == "pass"
    r = check_properties(fam, ["limit1"], PLAN)
    assert r.verdict == "fail"
    assert r.max_residual > 1e-3


def test_property_name_guard():
    fam = descendant_family(SixVertexParams(3))
    with pytest.raises(ValueError, match="unknown property"):
        check_properties(fam, ["spectrum"], PLAN)


def test_adjoint_symmetry_dual_behavior():
    p = SixVertexParams(5)
    good = descendant_family(p, braided=True)
    assert check_adjoint_symmetry(good, PLAN.with_count(10)).verdict == "pass"
    bad = descendant_family(p, braided=True, boundary=i_boundary)
    r = check_adjoint_symmetry(bad, PLAN.with_count(10))
    assert r.verdict == "fail"
    assert r.max_residual > 1e-3


def test_adjoint_symmetry_needs_braid_form():
    with pytest.raises(ValueError, match="braid"):
        check_adjoint_symmetry(descendant_family(SixVertexParams(3)), PLAN)


# -- star-triangle -------------------------------------------------------------

def test_star_triangle_small():
    r = check_str(FZWeights(3), PLAN)
    assert r.verdict == "pass"
    assert r.max_residual < 1e-20
    assert any("index difference" in note for note in r.notes)
    assert any("measured ratio" in note for note in r.notes)


def test_star_triangle_five_states():
    assert check_str(FZWeights(5), SamplePlan(count=2, seed=11)).verdict == "pass"


# -- two-parameter family --------------------------------------------------------

def test_two_param_passes():
    r = check_two_param(2, PLAN)
    assert r.verdict == "pass"
    assert r.max_residual < TOL
    assert check_two_param(4, SamplePlan(count=2, seed=11)).verdict == "pass"


def test_two_param_rejects_odd_parent():
    with pytest.raises(ValueError, match="even"):
        check_two_param(3, PLAN)


def test_two_param_deterministic():
    a = check_two_param(2, PLAN).as_record()
    b = check_two_param(2, PLAN).as_record()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


# -- projector algebra -----------------------------------------------------------

@pytest.mark.parametrize("group_n", [3, 5, 4, 6])
def test_projector_suite_exact(group_n):
    r = check_projectors(group_n)
    assert r.verdict == "pass"
    assert r.residuals == (0.0, 0.0, 0.0, 0.0, 0.0)
    assert r.tolerance == EXACT_TOLERANCE


# -- equivalence search ------------------------------------------------------------

EQ_PLAN = SamplePlan(count=5, seed=4)


def test_equivalence_identity_route():
    fam = descendant_family(SixVertexParams(3))
    res = find_equivalence(fam, fam, EQ_PLAN)
    assert res.kind == "identity" and res.matched
    assert res.transform.equals(Operator.identity(3), strict=True)


def test_equivalence_monomial_route():
    fam = descendant_family(SixVertexParams(3))
    lam = root_of_unity(12, 1).pow(5)
    T = diagonal_power_transform(3, lam) @ index_scale_transform(3, 2)
    Tinv = index_scale_transform(3, 2) @ diagonal_power_transform(
        3, root_of_unity(12, 1).pow(-5))
    TT = T.kron(T)
    TTinv = Tinv.kron(Tinv)
    twisted = SpectralOperator(9, lambda z: TT @ fam.fn(z) @ TTinv,
                               name="twisted", poles=fam.poles)
    res = find_equivalence(twisted, fam, EQ_PLAN)
    assert res.kind == "monomial" and res.matched
    assert max(res.residuals) < 1e-10
    assert res.details["phase_order"] == 12


def test_equivalence_intertwiner_route():
    # dense limiting family versus the sparse one: outside the monomial
    # orbit, found by the nullspace fit instead
    wts = FZWeights(3)
    A = SpectralOperator(9, lambda z: fz_limit_closed_form(wts, z),
                         name="fz-limit", poles=fz_pole_positions(wts))
    fam = descendant_family(SixVertexParams(3))
    res = find_equivalence(A, fam, EQ_PLAN)
    assert res.kind == "intertwiner" and res.matched
    assert max(res.residuals) < 1e-6
    assert res.details["nullspace_dim"] > 0
    sv = res.transform.to_numpy()
    import numpy as np
    s = np.linalg.svd(sv, compute_uv=False)
    assert s[-1] > 1e-8 * s[0]


def test_equivalence_signed_pair():
    plus = descendant_pm_family(2, 1)
    minus = descendant_pm_family(2, -1)
    res = find_equivalence(plus, minus, EQ_PLAN)
    assert res.matched
    assert res.kind == "intertwiner"
    assert res.epsilon == -1


def test_equivalence_refusal():
    fam = descendant_family(SixVertexParams(3))
    res = find_equivalence(perturbed_family(fam, Fraction(1, 3)), fam, EQ_PLAN)
    assert res.kind == "refusal" and not res.matched
    assert max(res.residuals) > 1e-3
    assert res.details["spectra"]


def test_equivalence_dimension_guard():
    with pytest.raises(ValueError, match="mismatch"):
        find_equivalence(descendant_family(SixVertexParams(3)),
                         descendant_family(SixVertexParams(5)), EQ_PLAN)


def test_equivalence_record_serializes():
    fam = descendant_family(SixVertexParams(3))
    rec = find_equivalence(fam, fam, EQ_PLAN).as_record()
    json.dumps(rec)
    assert rec["kind"] == "identity"
