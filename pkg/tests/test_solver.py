"""Admissible coordinates, slice presentations, the order-by-order solver,
and the rigidity verdict."""

from fractions import Fraction

import pytest

from liedef import linalg
from liedef.catalog import (
    abelian_algebra,
    filiform_algebra,
    filiform_weights,
    heisenberg_algebra,
    sl2_algebra,
)
from liedef.cohomology import DerivationSet, cohomology
from liedef.solver import (
    admissible_set,
    essential_names,
    rigidity_test,
    slice_presentation,
    solve_versal,
)

from conftest import base_algebras_dim_le_5, random_jacobi_algebra


def torus(n):
    return DerivationSet.diagonal(n, filiform_weights(n))


def linear_tangent_dim(pres):
    variables = pres.quotient.variables
    rows = []
    for g in pres.quotient.relations:
        row = {}
        for e, c in g.terms:
            if sum(e) == 1:
                (idx,) = [i for i, x in enumerate(e) if x == 1]
                row[idx] = c
        if row:
            rows.append(row)
    return len(variables) - linalg.rank(rows, len(variables))


def test_essential_names():
    assert essential_names(0) == ()
    assert essential_names(1) == ("t",)
    assert essential_names(2) == ("u", "v")
    assert essential_names(3) == ("t1", "t2", "t3")


def test_admissible_cardinality_everywhere(rng):
    for L in base_algebras_dim_le_5():
        a = admissible_set(L)
        assert len(a.keys) == a.dim_b2 == cohomology(L, 2).dim_b
    for _ in range(5):
        L = random_jacobi_algebra(rng)
        a = admissible_set(L)
        assert len(a.keys) == a.dim_b2 == cohomology(L, 2).dim_b
    for n in (7, 8):
        a = admissible_set(filiform_algebra(n), invariance=torus(n))
        assert len(a.keys) == a.dim_b2 == cohomology(filiform_algebra(n), 2, torus(n)).dim_b


def test_admissible_pairs_of_graded_filiform():
    a7 = admissible_set(filiform_algebra(7), invariance=torus(7))
    assert a7.pairs() == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3)]
    a8 = admissible_set(filiform_algebra(8), invariance=torus(8))
    assert a8.pairs() == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (2, 3)]


def test_admissible_candidate_validation():
    L = filiform_algebra(7)
    chi = torus(7)
    default = admissible_set(L, invariance=chi)
    again = admissible_set(L, invariance=chi, candidate=default.keys)
    assert again.keys == default.keys
    with pytest.raises(ValueError):
        admissible_set(L, invariance=chi, candidate=default.keys[:-1])
    with pytest.raises(ValueError):
        bad = [(((1, 2)), 3)] * len(default.keys)
        admissible_set(L, invariance=chi, candidate=bad)


def test_slice_tangent_equals_h2(rng):
    for L in base_algebras_dim_le_5():
        pres = slice_presentation(L)
        assert linear_tangent_dim(pres) == cohomology(L, 2).dim_h
    for n in (7, 8):
        L = filiform_algebra(n)
        pres = slice_presentation(L, invariance=torus(n))
        assert linear_tangent_dim(pres) == cohomology(L, 2, torus(n)).dim_h
    for _ in range(3):
        L = random_jacobi_algebra(rng)
        assert linear_tangent_dim(slice_presentation(L)) == cohomology(L, 2).dim_h


def test_solver_tangent_matches_h2():
    for L, chi in (
        (heisenberg_algebra(), None),
        (filiform_algebra(7), torus(7)),
        (filiform_algebra(8), torus(8)),
        (sl2_algebra(), None),
    ):
        sol = solve_versal(L, order=2, invariance=chi)
        assert sol.tangent_dim == cohomology(L, 2, chi).dim_h


def test_versal_family_of_dim7_member():
    L = filiform_algebra(7)
    sol = solve_versal(L, order=6, invariance=torus(7))
    assert sol.params == ("t",)
    assert sol.essential_keys == [((3, 4), 7)]
    assert sol.tangent_dim == 1
    assert sol.terminated
    assert sol.obstruction_set == []
    vals = {k: dict(v.terms) for k, v in sol.coordinate_values(L).items() if not v.is_zero}
    assert vals == {
        ((2, 4), 6): {(0,): Fraction(1)},
        ((2, 5), 7): {(0,): Fraction(1), (1,): Fraction(-1)},
        ((3, 4), 7): {(1,): Fraction(1)},
    }


def test_versal_family_of_dim8_member():
    L = filiform_algebra(8)
    sol = solve_versal(L, order=6, invariance=torus(8))
    assert sol.params == ("t",)
    assert sol.essential_keys == [((3, 5), 8)]
    assert sol.terminated and sol.obstruction_set == []
    vals = {k: dict(v.terms) for k, v in sol.coordinate_values(L).items() if not v.is_zero}
    assert vals == {
        ((2, 4), 6): {(0,): Fraction(1)},
        ((2, 5), 7): {(0,): Fraction(1), (1,): Fraction(-1)},
        ((2, 6), 8): {(0,): Fraction(1), (1,): Fraction(-2)},
        ((3, 4), 7): {(1,): Fraction(1)},
        ((3, 5), 8): {(1,): Fraction(1)},
    }


def test_family_stays_in_slice_form():
    L = filiform_algebra(8)
    chi = torus(8)
    a = admissible_set(L, invariance=chi)
    sol = solve_versal(L, a_set=a, order=4, invariance=chi)
    fam = sol.family()
    for key in a.keys:
        assert key not in fam.entries


def test_rigidity_verdicts():
    assert rigidity_test(filiform_algebra(5), invariance=torus(5)).verdict == "rigid"
    r6 = rigidity_test(filiform_algebra(6), invariance=torus(6))
    assert r6.verdict == "rigid" and r6.k_dimension == 1
    assert rigidity_test(sl2_algebra()).verdict == "rigid"
    r9 = rigidity_test(filiform_algebra(9), invariance=torus(9))
    assert r9.verdict == "not_rigid"
    assert not r9.finite and r9.complete


def test_zero_h2_gives_point_slice():
    sol = solve_versal(sl2_algebra(), order=3)
    assert sol.params == ()
    assert sol.tangent_dim == 0
    assert sol.family().entries == {}
    assert sol.terminated


def test_abelian_surface_family_is_unobstructed():
    # on K^2 every alternating bracket satisfies the closure identity, so
    # the two tangent directions integrate with no obstruction
    sol = solve_versal(abelian_algebra(2), order=3)
    assert sol.tangent_dim == 2
    assert sol.obstruction_set == []
    assert sol.terminated
