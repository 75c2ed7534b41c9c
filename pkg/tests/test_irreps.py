from __future__ import annotations

import random

import pytest

from dihedral_ybe.dihedral import GroupElement, group_elements
from dihedral_ybe.irreps import (
    CLASS_EVEN_AXES,
    CLASS_HALF_TURN,
    CLASS_IDENTITY,
    CLASS_ODD_AXES,
    IrrepLabel,
    all_labels,
    canonical_element,
    character,
    dual_irrep_matrix,
    irrep_matrix,
)
from dihedral_ybe.operators import Operator, embed
from dihedral_ybe.scalars import root_of_unity


def test_group_relations():
    n = 7
    rot = GroupElement.rot(n)
    flip = GroupElement.flip(n)
    assert (rot ** 1 if False else rot).inverse() * rot == GroupElement.identity(n)
    acc = GroupElement.identity(n)
    for _ in range(n):
        acc = acc * rot
    assert acc.is_identity
    assert (flip * flip).is_identity
    assert flip * rot * flip == rot.inverse()


def test_label_validation():
    with pytest.raises(ValueError):
        IrrepLabel.two_dim(5, 0, 3)  # k out of range for l=0
    with pytest.raises(ValueError):
        IrrepLabel.two_dim(5, 3, 0)  # l too large
    with pytest.raises(ValueError):
        IrrepLabel.one_dim_odd(6, 1)  # parity mismatch
    with pytest.raises(ValueError):
        IrrepLabel.m_dim_even(7, CLASS_EVEN_AXES, 0, 0)
    with pytest.raises(ValueError):
        IrrepLabel.two_dim(8, 4, 0)  # k=0 invalid on the l=m row
    IrrepLabel.two_dim(8, 4, 3)
    IrrepLabel.two_dim(8, 2, 7)


def test_two_dim_rot_matrix_matches_diag():
    n = 3
    lab = IrrepLabel.two_dim(n, 1, 1)
    w = root_of_unity(n, 1)
    got = irrep_matrix(lab, GroupElement.rot(n))
    assert got.entry(0, 0).equals(w.pow(1), strict=True)
    assert got.entry(1, 1).equals(w.pow(-1), strict=True)
    assert got.entry(0, 1).is_zero(strict=True)


def test_full_dim_identity_and_defining_relation():
    n = 5
    lab = IrrepLabel.n_dim_odd(n, 1)
    assert irrep_matrix(lab, GroupElement.identity(n)).equals(
        Operator.identity(n), strict=True)
    s = irrep_matrix(lab, GroupElement.rot(n))
    t = irrep_matrix(lab, GroupElement.flip(n))
    assert (s @ t @ s).equals(t, strict=True)


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_multiplicativity_random(n):
    rng = random.Random(11 * n)
    elements = list(group_elements(n))
    for label in all_labels(n):
        for _ in range(25):
            g = rng.choice(elements)
            h = rng.choice(elements)
            lhs = irrep_matrix(label, g) @ irrep_matrix(label, h)
            rhs = irrep_matrix(label, g * h)
            assert lhs.equals(rhs, strict=True), (label, g, h)


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_defining_relations_all_labels(n):
    rot = GroupElement.rot(n)
    flip = GroupElement.flip(n)
    for label in all_labels(n):
        s = irrep_matrix(label, rot)
        t = irrep_matrix(label, flip)
        d = label.dimension
        assert (s ** n).equals(Operator.identity(d), strict=True), label
        assert (t @ t).equals(Operator.identity(d), strict=True), label
        assert (s @ t @ s).equals(t, strict=True), label


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_dual_partition_of_unity(n):
    for label in all_labels(n):
        d = label.dimension
        total = Operator.zero(d)
        for g in group_elements(n):
            total = total + dual_irrep_matrix(label, g)
        assert total.equals(Operator.identity(d), strict=True), label


@pytest.mark.parametrize("n", [5, 8])
def test_dual_orthogonal_idempotents(n):
    rng = random.Random(n)
    elements = list(group_elements(n))
    for label in all_labels(n):
        for _ in range(10):
            g = rng.choice(elements)
            h = rng.choice(elements)
            prod = dual_irrep_matrix(label, g) @ dual_irrep_matrix(label, h)
            if g == h:
                assert prod.equals(dual_irrep_matrix(label, g), strict=True)
            else:
                assert prod.nnz == 0


def test_dual_examples():
    lab1 = IrrepLabel.one_dim_odd(3, 1)
    assert dual_irrep_matrix(lab1, GroupElement.rot(3)).nnz == 0
    lab3 = IrrepLabel.n_dim_odd(3, 1)
    got = dual_irrep_matrix(lab3, GroupElement.flip(3))
    assert set(got.entries) == {(0, 0)}


def test_canonical_two_dim_closed_form():
    n = 5
    w = root_of_unity(n, 1)
    for l in (1, 2):
        for k in (0, 1, 3):
            lab = IrrepLabel.two_dim(n, l, k)
            got = canonical_element(lab)
            want = Operator(4, {(0, 0): w.pow(k * l), (1, 1): w.pow(-k * l),
                                (2, 2): w.pow(-k * l), (3, 3): w.pow(k * l)})
            assert got.equals(want, strict=True)


@pytest.mark.parametrize("n", [3, 5])
def test_canonical_full_dim_closed_form(n):
    for sign in (1, -1):
        lab = IrrepLabel.n_dim_odd(n, sign)
        got = canonical_element(lab)
        want = Operator.zero(n * n)
        for i in range(n):
            for j in range(n):
                want.add_to(((i + j) % n) * n + i, ((i - j) % n) * n + i, sign)
        assert got.equals(want, strict=True)
    # unit-entry permutation structure
    plus = canonical_element(IrrepLabel.n_dim_odd(n, 1))
    assert plus.nnz == n * n
    assert all(v.as_rational() == 1 for v in plus.entries.values())


@pytest.mark.parametrize("m", [2, 3, 4])
def test_canonical_m_dim_closed_form(m):
    n = 2 * m
    for cls_ in (CLASS_EVEN_AXES, CLASS_ODD_AXES):
        for b in (0, 1):
            lab = IrrepLabel.m_dim_even(n, cls_, 0, b)
            got = canonical_element(lab)
            want = Operator.zero(m * m)
            for i in range(m):
                for j in range(m):
                    want.add_to(((i + j) % m) * m + i, ((i - j) % m) * m + i,
                                (-1) ** b)
            assert got.equals(want, strict=True), (cls_, b)


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_canonical_constant_ybe(n):
    for label in all_labels(n):
        d = label.dimension
        if d > n:
            continue
        r = canonical_element(label)
        dims = (d, d, d)
        r12 = embed(r, "12", dims)
        r13 = embed(r, "13", dims)
        r23 = embed(r, "23", dims)
        lhs = r12 @ r13 @ r23
        rhs = r23 @ r13 @ r12
        assert lhs.equals(rhs, strict=True), label


def test_character_examples():
    lab = IrrepLabel.one_dim_odd(3, 1)
    e = GroupElement.identity(3)
    assert character(lab, e, e).as_rational() == 1

    lab2 = IrrepLabel.two_dim(5, 1, 0)
    got = character(lab2, GroupElement.rot(5), GroupElement.identity(5))
    assert got.as_rational() == 1

    lab3 = IrrepLabel.n_dim_odd(3, 1)
    got3 = character(lab3, GroupElement.rot(3, 2), GroupElement.flip(3))
    assert got3.is_zero(strict=True)


def test_half_turn_duals_even():
    n = 8
    m = n // 2
    lab = IrrepLabel.one_dim_even(n, CLASS_HALF_TURN, 1, 0)
    assert dual_irrep_matrix(lab, GroupElement.rot(n, m)).nnz == 1
    assert dual_irrep_matrix(lab, GroupElement.identity(n)).nnz == 0
    lab2 = IrrepLabel.one_dim_even(n, CLASS_IDENTITY, 1, 0)
    assert dual_irrep_matrix(lab2, GroupElement.identity(n)).nnz == 1


def test_sum_of_squared_dims():
    for n in (3, 5, 6, 8):
        total = sum(lab.dimension ** 2 for lab in all_labels(n))
        assert total == (2 * n) ** 2
