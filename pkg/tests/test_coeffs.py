from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dihedral_ybe.coeffs import CoeffTable, SixVertexParams, phase_factor
from dihedral_ybe.sampling import SamplePlan
from dihedral_ybe.scalars import ExactScalar, FloatScalar, root_of_unity

_PLAN = SamplePlan(count=1, precision=256)


def unit_sample(rng: random.Random) -> FloatScalar:
    return _PLAN.unit_point(rng.uniform(0.03, 0.97))


def test_phase_factor_branches():
    om = root_of_unity(6, 1)
    z = FloatScalar.from_str("0.3", "0.4", 128)
    assert phase_factor(om, z, 0).as_rational() == 1
    assert phase_factor(om, z, 3).as_rational() == -1
    assert phase_factor(om, z, 6).as_rational() == 1
    generic = phase_factor(om, z, 1)
    assert isinstance(generic, FloatScalar)


def test_phase_factor_exact_special_points():
    om = root_of_unity(5, 1)
    zero = ExactScalar.zero()
    one = ExactScalar.one()
    assert phase_factor(om, zero, 2).equals(om.pow(2), strict=True)
    assert phase_factor(om, one, 2).as_rational() == 1


def test_f_boundary_row():
    tab = CoeffTable(root_of_unity(5, 1))
    z = FloatScalar.from_str("0.5", "0.1", 128)
    for b in range(5):
        assert tab.f(0, b, z).as_rational() == 1
    tab2 = CoeffTable(root_of_unity(5, 1), boundary=lambda b: Fraction(b + 1, 7))
    assert tab2.f(0, 3, z).as_rational() == Fraction(4, 7)


@pytest.mark.parametrize("d,k,l", [(5, 1, 1), (5, 2, 3), (7, 3, 2), (6, 1, 1), (8, 3, 5)])
def test_f_table_matches_pointwise(d, k, l):
    tab = CoeffTable(root_of_unity(d, 1), k=k, l=l)
    rng = random.Random(d * 100 + k * 10 + l)
    z = unit_sample(rng)
    full = tab.f_table(z)
    assert len(full) == d * d
    for a in range(d):
        for b in range(d):
            diff = full[(a, b)] - tab.f(a, b, z)
            assert diff.is_zero(), (a, b)


@pytest.mark.parametrize("d,k,l", [(5, 1, 1), (7, 2, 3), (6, 1, 1), (8, 1, 3)])
def test_recursion_step(d, k, l):
    # f at (a+l, b+k) equals f at (a, b) times the factor with twist
    # exponent (a+l)k + bl.
    tab = CoeffTable(root_of_unity(d, 1), k=k, l=l)
    rng = random.Random(d + k + l)
    for _ in range(100):
        a = rng.randrange(d)
        b = rng.randrange(d)
        z = unit_sample(rng)
        lhs = tab.f(a + l, b + k, z)
        rhs = tab.f(a, b, z) * phase_factor(tab.omega, z, (a + l) * k + b * l)
        assert (lhs - rhs).is_zero(), (a, b)


@pytest.mark.parametrize("d", [5, 7, 6, 8])
def test_full_cycle_wraps(d):
    tab = CoeffTable(root_of_unity(d, 1))
    rng = random.Random(d)
    z = unit_sample(rng)
    for base in range(d):
        prod = ExactScalar.one()
        for j in range(1, d + 1):
            prod = prod * phase_factor(tab.omega, z, (2 * j - 1) + base)
        assert (prod - 1).is_zero(), base


@pytest.mark.parametrize("d,k,l", [(5, 1, 1), (7, 3, 2), (6, 1, 1), (8, 5, 3)])
def test_f_at_zero_is_pure_phase(d, k, l):
    tab = CoeffTable(root_of_unity(d, 1), k=k, l=l)
    zero = ExactScalar.zero()
    for a in range(d):
        for b in range(d):
            got = tab.f(a, b, zero)
            assert got.equals(tab.omega.pow(a * b), strict=True), (a, b)


def test_f_at_one_odd_is_boundary():
    tab = CoeffTable(root_of_unity(7, 1), k=3, l=2)
    one = ExactScalar.one()
    for a in range(7):
        for b in range(7):
            assert tab.f(a, b, one).as_rational() == 1


def test_f_at_one_even_has_sign_pattern():
    # even order: factors crossing the half-turn exponent contribute -1 at z=1
    tab = CoeffTable(root_of_unity(6, 1))
    one = ExactScalar.one()
    signs = {tab.f(a, b, one).as_rational() for a in range(6) for b in range(6)}
    assert signs == {1, -1}


def test_g_limits():
    d = 7
    tab = CoeffTable(root_of_unity(d, 1), k=2, l=3)
    one = ExactScalar.one()
    zero = ExactScalar.zero()
    for a in range(d):
        for j in range(d):
            at1 = tab.g(a, j, one)
            want1 = 1 if j == 0 else 0
            assert at1.equals(ExactScalar.rational(want1), strict=True)
            at0 = tab.g(a, j, zero)
            want0 = 1 if (j + a) % d == 0 else 0
            assert at0.equals(ExactScalar.rational(want0), strict=True)


def test_g_table_matches_pointwise():
    d = 5
    tab = CoeffTable(root_of_unity(d, 1), k=2, l=2)
    rng = random.Random(99)
    z = unit_sample(rng)
    gt = tab.g_table(z)
    for a in range(d):
        for j in range(d):
            assert (gt[(a, j)] - tab.g(a, j, z)).is_zero()


def test_boundary_structure_predicates():
    d = 5
    sym = CoeffTable(root_of_unity(d, 1))
    assert sym.boundary_is_symmetric()
    assert sym.boundary_is_real_two_periodic()

    im = root_of_unity(4, 1).pow(1)  # the imaginary unit
    skew = CoeffTable(root_of_unity(d, 1),
                      boundary=lambda b: im if b == 1 else ExactScalar.one())
    assert not skew.boundary_is_symmetric()

    both = CoeffTable(root_of_unity(d, 1),
                      boundary=lambda b: im if b in (1, d - 1) else ExactScalar.one())
    assert both.boundary_is_symmetric()
    assert not both.boundary_is_real_two_periodic()


def test_pole_positions_on_unit_circle():
    tab = CoeffTable(root_of_unity(7, 1))
    poles = tab.pole_positions()
    assert len(poles) == 6
    for p in poles:
        assert abs(abs(p) - 1) < 1e-12
        assert abs(p - 1) > 0.1 and abs(p + 1) > 0.1
    even = CoeffTable(root_of_unity(6, 1)).pole_positions()
    assert len(even) == 4


def test_coprimality_enforced():
    with pytest.raises(ValueError):
        CoeffTable(root_of_unity(6, 1), k=2)
    with pytest.raises(ValueError):
        CoeffTable(root_of_unity(6, 1), l=3)
    params = SixVertexParams(8, k=2, l=1)
    with pytest.raises(ValueError):
        params.table()


def test_six_vertex_params_roots():
    p = SixVertexParams(7)
    assert p.parent_dim == 7
    assert p.omega.order == 7 and p.omega.power == 2
    q = SixVertexParams(8, k=3, l=5)
    assert q.parent_dim == 4
    assert q.omega.order == 4 and q.omega.power == 1
    tab = q.table()
    assert tab.d == 4
    with pytest.raises(ValueError):
        SixVertexParams(6, w=root_of_unity(3, 1))
