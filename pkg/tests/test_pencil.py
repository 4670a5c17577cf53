"""Tests of the pencil module: the unimodular action and the invariant form."""

import random

import pytest

import pencilred as pr
from pencilred import linalg
from helpers import invariant_form_oracle, rand_pencil, rand_unimodular

I4 = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
DIAG_B = tuple(tuple((2, 3, 0, -1)[i] * int(i == j) for j in range(4))
               for i in range(4))
DIAG_PENCIL = pr.Pencil(4, I4, DIAG_B)

WORKED = pr.Pencil(
    4,
    ((0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1)),
    ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, -1, 0)))


def test_pencil_validation():
    with pytest.raises(ValueError):
        pr.Pencil(4, I4, tuple(tuple(int(i == j + 1) for j in range(4))
                               for i in range(4)))
    with pytest.raises(pr.DimensionMismatch):
        pr.Pencil(4, I4[:3], DIAG_B)
    with pytest.raises(ValueError):
        pr.Pencil(3, I4[:3], I4[:3])   # odd n


def test_unimodular_validation():
    with pytest.raises(ValueError):
        pr.UnimodularMatrix(2, ((2, 0), (0, 1)))
    g = pr.UnimodularMatrix(2, ((1, 5), (0, -1)))
    assert g.det == -1
    assert linalg.mat_mul([list(r) for r in g.entries],
                          [list(r) for r in g.inverse().entries]) == \
        linalg.identity_matrix(2)


def test_act_identity():
    g = pr.UnimodularMatrix.identity(4)
    assert pr.act(g, DIAG_PENCIL) == DIAG_PENCIL


def test_act_composition():
    rng = random.Random(21)
    for _ in range(25):
        p = rand_pencil(rng, 4, 3, nondegenerate=False)
        g = rand_unimodular(rng, 4)
        h = rand_unimodular(rng, 4)
        gh = pr.UnimodularMatrix(4, tuple(tuple(r) for r in linalg.mat_mul(
            [list(r) for r in g.entries], [list(r) for r in h.entries])))
        assert pr.act(g, pr.act(h, p)) == pr.act(gh, p)


def test_act_sign_fixes_diagonal():
    g = pr.UnimodularMatrix(4, ((-1, 0, 0, 0), (0, 1, 0, 0),
                                (0, 0, 1, 0), (0, 0, 0, 1)))
    assert pr.act(g, DIAG_PENCIL) == DIAG_PENCIL


def test_invariant_form_diagonal():
    # (-1)^6 prod(x - b_i y) = x(x-2y)(x-3y)(x+y)
    f = pr.invariant_form(DIAG_PENCIL)
    expected = pr.form_from_linear_factors([(1, 2), (1, 3), (1, 0), (1, -1)])
    assert f == expected
    assert f.coeffs == (1, -4, 1, 6, 0)


def test_invariant_form_worked_orbit():
    assert pr.invariant_form(WORKED).coeffs == (1, 0, 0, 0, 1)
    assert invariant_form_oracle(WORKED).coeffs == (1, 0, 0, 0, 1)


def test_invariant_form_matches_cofactor_oracle():
    rng = random.Random(22)
    for _ in range(50):
        p = rand_pencil(rng, 4, 4, nondegenerate=False)
        assert pr.invariant_form(p) == invariant_form_oracle(p)


def test_invariance_under_action():
    rng = random.Random(23)
    for _ in range(500):
        p = rand_pencil(rng, 4, 5, nondegenerate=False)
        g = rand_unimodular(rng, 4)
        q = pr.act(g, p)
        assert all(linalg.is_symmetric(M) for M in (q.A, q.B))
        assert pr.invariant_form(q) == pr.invariant_form(p)


def test_invariance_detminus1():
    rng = random.Random(24)
    for _ in range(20):
        p = rand_pencil(rng, 4, 3, nondegenerate=False)
        while True:
            g = rand_unimodular(rng, 4)
            if g.det == -1:
                break
        assert pr.invariant_form(pr.act(g, p)) == pr.invariant_form(p)


def test_pencil_discriminant():
    assert pr.pencil_discriminant(DIAG_PENCIL) != 0
    same = pr.Pencil(4, I4, I4)
    assert pr.pencil_discriminant(same) == 0
    rng = random.Random(25)
    for _ in range(20):
        p = rand_pencil(rng, 4, 3, nondegenerate=False)
        g = rand_unimodular(rng, 4)
        assert pr.pencil_discriminant(pr.act(g, p)) == pr.pencil_discriminant(p)


def test_invariant_form_n6():
    rng = random.Random(26)
    for _ in range(5):
        p = rand_pencil(rng, 6, 2, nondegenerate=False)
        assert pr.invariant_form(p) == invariant_form_oracle(p)


def test_pencil_json_roundtrip():
    assert pr.Pencil.from_json_dict(WORKED.to_json_dict()) == WORKED
