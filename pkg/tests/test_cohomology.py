"""Cohomology dimensions, Hodge splits, and derivation machinery."""

from fractions import Fraction

from liedef.catalog import (
    abelian_algebra,
    filiform_algebra,
    filiform_weights,
    heisenberg_algebra,
    sl2_algebra,
)
from liedef.cochain import differential
from liedef.cohomology import (
    DerivationSet,
    cohomology,
    derivations,
    diagonal_symmetry_weights,
    inner_derivations,
    is_derivation,
)

from conftest import (
    base_algebras_dim_le_5,
    ce_cohomology_dim_oracle,
    random_jacobi_algebra,
)


def test_known_small_dimensions():
    sl2 = sl2_algebra()
    assert cohomology(sl2, 1).dim_h == 0
    assert cohomology(sl2, 2).dim_h == 0
    heis = heisenberg_algebra()
    assert cohomology(heis, 1).dim_h == 4
    assert cohomology(heis, 2).dim_h == 5
    ab3 = abelian_algebra(3)
    assert cohomology(ab3, 1).dim_h == 9
    assert cohomology(ab3, 2).dim_h == 9


def test_abelian_h2_formula():
    # dim H^2(K^m, K^m) = m * m(m-1)/2
    for m in (2, 3, 4):
        expect = m * (m * (m - 1) // 2)
        assert cohomology(abelian_algebra(m), 2).dim_h == expect


def test_z_equals_b_plus_h_everywhere(rng):
    for L in base_algebras_dim_le_5():
        for degree in (0, 1, 2, 3):
            rep = cohomology(L, degree)
            assert rep.dim_z == rep.dim_b + rep.dim_h
    for _ in range(5):
        L = random_jacobi_algebra(rng)
        rep = cohomology(L, 2)
        assert rep.dim_z == rep.dim_b + rep.dim_h


def test_matches_dense_oracle(rng):
    for L in base_algebras_dim_le_5():
        if L.dim > 4:
            continue
        for degree in (1, 2):
            assert cohomology(L, degree).dim_h == ce_cohomology_dim_oracle(L, degree)
    for _ in range(3):
        L = random_jacobi_algebra(rng)
        if L.dim > 4:
            continue
        assert cohomology(L, 2).dim_h == ce_cohomology_dim_oracle(L, 2)


def test_representatives_are_closed_and_independent():
    L = heisenberg_algebra()
    rep = cohomology(L, 2)
    for c in rep.h_cochains(L.dim):
        assert differential(c, L).is_zero


def test_invariant_h2_of_graded_filiform():
    # zero through dimension 6 (the member is rigid in the graded setting),
    # one-dimensional from dimension 7 on (a single deformation direction)
    for n, expect in ((5, 0), (6, 0), (7, 1), (8, 1), (10, 1), (12, 1)):
        L = filiform_algebra(n)
        chi = DerivationSet.diagonal(n, filiform_weights(n))
        assert cohomology(L, 2, chi).dim_h == expect


def test_invariant_report_is_flagged():
    L = filiform_algebra(6)
    chi = DerivationSet.diagonal(6, filiform_weights(6))
    assert cohomology(L, 2, chi).invariant
    assert not cohomology(L, 2).invariant


def test_derivation_checks():
    L = filiform_algebra(8)
    der = derivations(L)
    for mat in der.matrices:
        assert is_derivation(L, mat)
    inner = inner_derivations(L)
    for mat in inner.matrices:
        assert is_derivation(L, mat)
    not_der = [[Fraction(1 if (r, c) == (0, 7) else 0) for c in range(8)] for r in range(8)]
    assert not is_derivation(L, not_der)


def test_derivation_dimensions():
    # derivation spaces: dim 13 for the graded family at size 8, 3 for sl2
    assert len(derivations(filiform_algebra(8)).matrices) == 13
    assert len(derivations(sl2_algebra()).matrices) == 3
    assert len(derivations(abelian_algebra(3)).matrices) == 9


def test_diagonal_symmetry_weights():
    wts = diagonal_symmetry_weights(filiform_algebra(8))
    # the diagonal derivations of the graded family form a rank-1 torus
    assert len(wts) == 1
    col = wts[0]
    ratio = [col[i] / col[0] for i in range(8)]
    assert ratio == [Fraction(i) for i in range(1, 9)]


def test_diagonal_derivation_set_shape():
    chi = DerivationSet.diagonal(5, filiform_weights(5))
    assert chi.is_diagonal()
    assert chi.diagonal_weights() == filiform_weights(5)
    for mat in chi.matrices:
        assert is_derivation(filiform_algebra(5), mat)


def test_general_invariance_agrees_with_diagonal():
    # a non-diagonal spanning set of the same torus gives the same numbers
    L = filiform_algebra(6)
    wts = filiform_weights(6)
    diag = DerivationSet.diagonal(6, wts)
    mat = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(6):
        mat[i][i] = wts[0][i]
    doubled = [[2 * mat[r][c] for c in range(6)] for r in range(6)]
    general = DerivationSet(6, [doubled])
    assert cohomology(L, 2, general).dim_h == cohomology(L, 2, diag).dim_h
