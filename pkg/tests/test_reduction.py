"""Semidirect assembly and the class-transfer rank conditions."""

from fractions import Fraction

from liedef.catalog import (
    abelian_algebra,
    filiform_algebra,
    filiform_weights,
    heisenberg_algebra,
    sl2_algebra,
)
from liedef.cochain import Cochain
from liedef.cohomology import DerivationSet, cohomology
from liedef.liealg import check_jacobi
from liedef.reduction import (
    algebra_is_complete,
    check_reduction_hypotheses,
    cochain_derivation_action,
    cochain_embed,
    is_invariant_cochain,
    semidirect_assemble,
)


def f8_data():
    return semidirect_assemble(
        filiform_algebra(8), DerivationSet.diagonal(8, filiform_weights(8))
    )


def test_assembled_algebra_shape():
    S = f8_data()
    g = S.assembled
    assert g.dim == 9
    assert check_jacobi(g).ok
    # the appended generator acts diagonally: [e_i, e_9] = -w_i e_i
    for i in range(1, 9):
        assert g.bracket_basis(i, 9) == {i: Fraction(-i)}
    # nilradical brackets are untouched
    for pair, out in filiform_algebra(8).brackets.items():
        assert g.brackets[pair] == out
    assert S.reductive_rank == 1


def test_completeness_detector():
    assert algebra_is_complete(sl2_algebra())
    assert not algebra_is_complete(heisenberg_algebra())
    assert not algebra_is_complete(abelian_algebra(2))
    assert algebra_is_complete(f8_data().assembled)


def test_derivation_action_on_cochains():
    mat = [[Fraction(0)] * 3 for _ in range(3)]
    mat[0][0], mat[1][1], mat[2][2] = Fraction(1), Fraction(2), Fraction(3)
    # weight of the entry ((i, j), k) under a diagonal action is w_k - w_i - w_j
    zero_weight = Cochain(3, 2, {((1, 2), 3): Fraction(1)})
    assert cochain_derivation_action(mat, zero_weight).entries == {}
    shifted = Cochain(3, 2, {((1, 3), 2): Fraction(1)})
    assert cochain_derivation_action(mat, shifted).entries == {
        ((1, 3), 2): Fraction(-2)
    }


def test_invariance_detector():
    L = filiform_algebra(8)
    chi = DerivationSet.diagonal(8, filiform_weights(8))
    rep = cohomology(L, 2, chi)
    for h in rep.h_cochains(8):
        assert is_invariant_cochain(h, chi)
    assert not is_invariant_cochain(
        Cochain(8, 2, {((1, 2), 4): Fraction(1)}), chi
    )


def test_embedding_extends_by_zero():
    S = f8_data()
    rep = cohomology(S.nilradical, 2, S.action)
    for h in rep.h_cochains(8):
        emb = cochain_embed(h, S)
        assert emb.dim == 9
        for key, c in h.entries.items():
            assert emb.entries.get(key) == c
        for key in emb.entries:
            (args, out) = key
            assert 9 not in args and out != 9
    assert len(rep.h_basis) == 1


def test_transfer_conditions_for_f8_are_exact():
    rep = check_reduction_hypotheses(f8_data())
    assert rep.h1_epi and rep.h2_iso and rep.h3_mono
    assert rep.prop_case == "case1"
    assert rep.dim_h1_quotient == 0 and rep.dim_h2_quotient == 0
    assert rep.dims_invariant == {1: 1, 2: 1, 3: 0}
    assert rep.dims_assembled == {1: 0, 2: 1, 3: 1}
    assert rep.assembled_complete is True


def test_rank_zero_action_is_the_trivial_case():
    S = semidirect_assemble(sl2_algebra(), DerivationSet(3, []))
    assert S.assembled.dim == 3
    rep = check_reduction_hypotheses(S)
    assert rep.prop_case == "case2"
    assert rep.h1_epi and rep.h2_iso and rep.h3_mono
