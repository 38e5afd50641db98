"""Alternating cochains, the insertion bracket, and the differential."""

import math
from fractions import Fraction

import pytest

from liedef.catalog import filiform_algebra, heisenberg_algebra, sl2_algebra
from liedef.cochain import (
    Cochain,
    algebra_cochain,
    cochain_algebra,
    cochain_basis,
    differential,
    differential_matrix,
    nr_bracket,
    sort_with_sign,
)
from liedef.liealg import check_jacobi

from conftest import (
    base_algebras_dim_le_5,
    ce_differential_dense,
    rand_fraction,
    random_jacobi_algebra,
)


def random_cochain(rng, dim, degree):
    vals = {}
    for key in cochain_basis(dim, degree):
        c = rand_fraction(rng)
        if c != 0:
            vals[key] = c
    return Cochain(dim, degree, vals)


def test_sort_with_sign():
    assert sort_with_sign((1, 2, 3)) == ((1, 2, 3), 1)
    assert sort_with_sign((2, 1, 3)) == ((1, 2, 3), -1)
    assert sort_with_sign((3, 1, 2)) == ((1, 2, 3), 1)
    assert sort_with_sign((1, 1, 2)) is None


def test_basis_sizes_are_binomials():
    for dim in (3, 4, 5):
        for degree in range(0, dim + 1):
            assert len(cochain_basis(dim, degree)) == math.comb(dim, degree) * dim


def test_value_on_is_alternating(rng):
    f = random_cochain(rng, 4, 2)
    assert f.value_on((2, 1)) == {k: -c for k, c in f.value_on((1, 2)).items()}
    assert f.value_on((3, 3)) == {}
    g = random_cochain(rng, 4, 3)
    base = g.value_on((1, 2, 4))
    assert g.value_on((2, 1, 4)) == {k: -c for k, c in base.items()}
    assert g.value_on((4, 2, 1)) == {k: -c for k, c in base.items()}


def test_algebra_cochain_round_trip():
    for L in base_algebras_dim_le_5():
        phi = algebra_cochain(L)
        assert phi.degree == 2
        back = cochain_algebra(phi)
        assert back.dim == L.dim and back.brackets == L.brackets


def test_nr_bracket_graded_antisymmetry(rng):
    # [f, g] = -(-1)^((p-1)(q-1)) [g, f]
    for p, q in ((1, 1), (1, 2), (2, 2), (2, 3)):
        f = random_cochain(rng, 4, p)
        g = random_cochain(rng, 4, q)
        sign = (-1) ** ((p - 1) * (q - 1))
        lhs = nr_bracket(f, g)
        rhs = nr_bracket(g, f).scale(-sign)
        assert lhs == rhs


def test_jacobi_iff_self_bracket_vanishes():
    for L in base_algebras_dim_le_5():
        phi = algebra_cochain(L)
        assert nr_bracket(phi, phi).is_zero == check_jacobi(L).ok
    from liedef.liealg import LieAlgebra

    bad = LieAlgebra(3, {(1, 2): {3: Fraction(1)}, (1, 3): {1: Fraction(1)}})
    assert not nr_bracket(algebra_cochain(bad), algebra_cochain(bad)).is_zero
    assert not check_jacobi(bad).ok


def test_differential_matrix_agrees_with_bracket_form(rng):
    for L in (heisenberg_algebra(), sl2_algebra(), filiform_algebra(5)):
        for degree in (0, 1, 2):
            cols, row_keys, col_keys = differential_matrix(L, degree)
            for _ in range(4):
                f = random_cochain(rng, L.dim, degree)
                via_bracket = differential(f, L)
                vec = f.to_vector({k: i for i, k in enumerate(col_keys)})
                out = {}
                for ci, coeff in vec.items():
                    for ri, c in cols[ci].items():
                        s = out.get(ri, Fraction(0)) + coeff * c
                        if s == 0:
                            out.pop(ri, None)
                        else:
                            out[ri] = s
                direct = {
                    row_keys[ri]: c for ri, c in out.items()
                }
                assert direct == via_bracket.entries


def test_d_squared_zero_random(rng):
    for _ in range(20):
        L = random_jacobi_algebra(rng)
        for degree in (0, 1, 2):
            f = random_cochain(rng, L.dim, degree)
            assert differential(differential(f, L), L).is_zero


def test_differential_matches_dense_oracle(rng):
    for L in (heisenberg_algebra(), sl2_algebra()):
        for degree in (1, 2):
            mat = ce_differential_dense(L, degree)
            cols, row_keys, col_keys = differential_matrix(L, degree)
            assert len(mat) == len(row_keys) and len(mat[0]) == len(col_keys)
            for j in range(len(col_keys)):
                for i in range(len(row_keys)):
                    assert cols[j].get(i, Fraction(0)) == mat[i][j]


def test_degree_zero_differential():
    # d of a constant cochain x is the 1-cochain a -> [a, x]
    L = sl2_algebra()
    x = Cochain(3, 0, {((), 1): Fraction(1)})  # the element e1
    df = differential(x, L)
    for a in range(1, 4):
        expect = L.bracket({a: Fraction(1)}, {1: Fraction(1)})
        assert df.value_on((a,)) == expect


def test_cochain_arithmetic(rng):
    f = random_cochain(rng, 3, 2)
    g = random_cochain(rng, 3, 2)
    assert (f + g) - g == f
    assert f.scale(2) - f == f
    assert (f - f).is_zero
    with pytest.raises(ValueError):
        f + random_cochain(rng, 3, 1)
