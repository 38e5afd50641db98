"""Semidirect products and transfer of deformation data to the nilradical.

A reductive part acting on a nilpotent algebra assembles into a larger
algebra; invariant cochains of the nilradical embed by zero-extension, and
the induced maps on cohomology decide whether deformation questions about
the big algebra reduce to invariant questions about the nilradical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cochain import Cochain, sort_with_sign
from .cohomology import (
    CohomologyReport,
    DerivationSet,
    cohomology,
    derivations,
    diagonal_symmetry_weights,
    is_derivation,
)
from .liealg import LieAlgebra, check_jacobi
from .linalg import Vector

Matrix = list[list[Fraction]]


@dataclass
class SemidirectData:
    nilradical: LieAlgebra
    action: DerivationSet
    r_brackets: dict[tuple[int, int], dict[int, Fraction]]
    assembled: LieAlgebra

    @property
    def reductive_rank(self) -> int:
        return len(self.action.matrices)


def semidirect_assemble(
    n: LieAlgebra,
    action: DerivationSet,
    r_brackets: dict[tuple[int, int], dict[int, Fraction]] | None = None,
) -> SemidirectData:
    """Assemble the algebra spanned by the nilradical and one new basis
    vector per acting derivation.

    ``r_brackets`` gives the brackets among the acting vectors in their own
    1-based indexing; values are coordinate dicts over those same indices.
    The assembled algebra is validated against the closure conditions.
    """
    r_brackets = r_brackets or {}
    r = len(action.matrices)
    if action.dim != n.dim:
        raise ValueError("action matrices must match the nilradical dimension")
    for mat in action.matrices:
        if not is_derivation(n, mat):
            raise ValueError("action contains a non-derivation")

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {
        k: dict(v) for k, v in n.brackets.items()
    }
    for i in range(1, r + 1):
        mat = action.matrices[i - 1]
        for j in range(1, n.dim + 1):
            out = {
                k + 1: mat[k][j - 1]
                for k in range(n.dim)
                if mat[k][j - 1] != 0
            }
            if out:
                # the new vector has the larger index, so the stored
                # orientation picks up a sign
                brackets[(j, n.dim + i)] = {k: -c for k, c in out.items()}
    for (i, j), out in r_brackets.items():
        if not 1 <= i < j <= r:
            raise ValueError("reductive bracket indices out of range")
        shifted = {
            n.dim + k: Fraction(c) for k, c in out.items() if Fraction(c) != 0
        }
        if shifted:
            brackets[(n.dim + i, n.dim + j)] = shifted

    g = LieAlgebra(n.dim + r, brackets)
    report = check_jacobi(g)
    if not report.ok:
        raise ValueError(
            f"assembled algebra fails closure at triples "
            f"{[d[0] for d in report.defects[:4]]}"
        )
    return SemidirectData(n, action, r_brackets, g)


# ----------------------------------------------------------------------
# invariant cochains and the zero-extension embedding
# ----------------------------------------------------------------------

def cochain_derivation_action(mat: Matrix, f: Cochain) -> Cochain:
    """Natural action of a linear map on a cochain:
    (D.f)(x...) = D(f(x...)) - sum_i f(..., D x_i, ...)."""
    entries: dict[tuple[tuple[int, ...], int], Fraction] = {}

    def add(key: tuple[tuple[int, ...], int], c: Fraction) -> None:
        cur = entries.get(key, Fraction(0)) + c
        if cur == 0:
            entries.pop(key, None)
        else:
            entries[key] = cur

    for (args, out), c in f.entries.items():
        for k in range(f.dim):
            v = mat[k][out - 1]
            if v != 0:
                add((args, k + 1), c * v)
        for pos, a in enumerate(args):
            for b in range(f.dim):
                v = mat[b][a - 1]
                if v == 0:
                    continue
                replaced = args[:pos] + (b + 1,) + args[pos + 1 :]
                sorted_args = sort_with_sign(replaced)
                if sorted_args is None:
                    continue
                new_args, sign = sorted_args
                add((tuple(new_args), out), -c * v * sign)
    return Cochain(f.dim, f.degree, entries)


def is_invariant_cochain(f: Cochain, action: DerivationSet) -> bool:
    return all(
        not cochain_derivation_action(mat, f).entries
        for mat in action.matrices
    )


def cochain_embed(f: Cochain, S: SemidirectData) -> Cochain:
    """Zero-extension of an invariant nilradical cochain to the assembled
    algebra: unchanged on nilradical arguments, zero whenever any argument
    comes from the acting part."""
    if f.dim != S.nilradical.dim:
        raise ValueError("cochain does not live on the nilradical")
    if not is_invariant_cochain(f, S.action):
        raise ValueError("cochain is not invariant under the action")
    return Cochain(S.assembled.dim, f.degree, dict(f.entries))


# ----------------------------------------------------------------------
# induced maps on cohomology
# ----------------------------------------------------------------------

@dataclass
class ReductionMaps:
    columns: dict[int, list[Vector]]   # degree -> image class coordinates
    ranks: dict[int, int]
    injective: dict[int, bool]
    surjective: dict[int, bool]


def _block_key_of(weights: list[list[Fraction]], key) -> tuple:
    args, out = key
    return tuple(
        w[out - 1] - sum(w[a - 1] for a in args) for w in weights
    )


def class_coordinates(
    report: CohomologyReport,
    weights: list[list[Fraction]],
    vec: Vector,
) -> Vector:
    """Coordinates of a cocycle in the harmonic basis of the report.

    The cocycle is decomposed as coboundary plus harmonic part; only basis
    vectors in the weight blocks meeting the support are needed.
    """
    if not vec:
        return {}
    blocks = {
        _block_key_of(weights, report.keys[i]) for i in vec
    }

    def in_blocks(col: Vector) -> bool:
        i = next(iter(col))
        return _block_key_of(weights, report.keys[i]) in blocks

    cols = []
    tags = []
    for b in report.b_basis:
        if b and in_blocks(b):
            cols.append(b)
            tags.append(None)
    for j, h in enumerate(report.h_basis):
        if h and in_blocks(h):
            cols.append(h)
            tags.append(j)
    sol = linalg.solve_columns(cols, vec)
    if sol is None:
        raise AssertionError("cocycle does not lie in the cocycle space")
    out: Vector = {}
    for idx, coeff in sol.items():
        tag = tags[idx]
        if tag is not None and coeff != 0:
            out[tag] = coeff
    return out


# ----------------------------------------------------------------------
# cohomology of the nilradical in the quotient module
# ----------------------------------------------------------------------

def _invariant_trivial_keys(
    n: LieAlgebra, action: DerivationSet, r: int, degree: int
) -> list[tuple[tuple[int, ...], int]]:
    if not action.is_diagonal():
        raise NotImplementedError(
            "quotient-module cohomology needs a diagonal action"
        )
    weight_rows = action.diagonal_weights()
    keys = []
    for args in itertools.combinations(range(1, n.dim + 1), degree):
        if all(
            sum(w[a - 1] for a in args) == 0 for w in weight_rows
        ):
            for s in range(1, r + 1):
                keys.append((args, s))
    return keys


def _trivial_module_columns(
    n: LieAlgebra,
    domain: list[tuple[tuple[int, ...], int]],
    codomain: list[tuple[tuple[int, ...], int]],
) -> list[Vector]:
    """Differential on cochains with values in a module the algebra kills:
    only the bracket-substitution terms survive."""
    cod_pos = {k: i for i, k in enumerate(codomain)}
    cols: list[Vector] = []
    for args, s in domain:
        col: Vector = {}
        for J, s2 in codomain:
            if s2 != s:
                continue
            total = Fraction(0)
            for p, q in itertools.combinations(range(len(J)), 2):
                a, b = J[p], J[q]
                rest = tuple(x for t, x in enumerate(J) if t not in (p, q))
                for l, c in n.bracket_basis(a, b).items():
                    merged = sort_with_sign((l,) + rest)
                    if merged is None:
                        continue
                    m_args, sign = merged
                    if tuple(m_args) == args:
                        total += ((-1) ** (p + q)) * c * sign
            if total != 0:
                col[cod_pos[(J, s2)]] = total
        cols.append(col)
    return cols


def quotient_module_cohomology_dim(
    S: SemidirectData, degree: int
) -> int:
    """dim H^degree of the nilradical with coefficients in the quotient by
    the nilradical, as an invariant space under the action."""
    for out in S.r_brackets.values():
        if any(Fraction(c) != 0 for c in out.values()):
            raise NotImplementedError(
                "quotient-module cohomology assumes an abelian acting part"
            )
    n = S.nilradical
    r = S.reductive_rank
    domain = _invariant_trivial_keys(n, S.action, r, degree)
    if not domain:
        return 0
    codomain = _invariant_trivial_keys(n, S.action, r, degree + 1)
    d_here = _trivial_module_columns(n, domain, codomain)
    dim_z = len(domain) - linalg.rank(
        linalg.columns_to_rows(d_here, len(codomain)), len(domain)
    )
    if degree == 1:
        dim_b = 0
    else:
        below = _invariant_trivial_keys(n, S.action, r, degree - 1)
        d_prev = _trivial_module_columns(n, below, domain)
        dim_b = linalg.rank(d_prev, len(domain))
    return dim_z - dim_b


# ----------------------------------------------------------------------
# the hypothesis report
# ----------------------------------------------------------------------

@dataclass
class HypothesisReport:
    h1_epi: bool
    h2_iso: bool
    h3_mono: bool
    prop_case: str          # "case1" | "case2" | "neither" | "unknown"
    dim_h1_quotient: int
    dim_h2_quotient: int
    dims_invariant: dict[int, int]
    dims_assembled: dict[int, int]
    maps: ReductionMaps
    assembled_complete: bool | None


def algebra_is_complete(g: LieAlgebra) -> bool:
    """Zero center and every derivation inner."""
    if g.center_basis():
        return False
    der = derivations(g)
    return len(der.matrices) == g.dim


def check_reduction_hypotheses(
    S: SemidirectData, check_completeness: bool = True
) -> HypothesisReport:
    """Exact-rank verification of the transfer conditions: the embedding of
    invariant nilradical classes must be onto in degree 1, bijective in
    degree 2, and injective in degree 3."""
    n = S.nilradical
    g = S.assembled
    weights_g = diagonal_symmetry_weights(g)

    dims_n: dict[int, int] = {}
    dims_g: dict[int, int] = {}
    columns: dict[int, list[Vector]] = {}
    ranks: dict[int, int] = {}
    injective: dict[int, bool] = {}
    surjective: dict[int, bool] = {}

    for k in (1, 2, 3):
        rep_n = cohomology(n, k, invariance=S.action)
        rep_g = cohomology(g, k)
        dims_n[k] = rep_n.dim_h
        dims_g[k] = rep_g.dim_h
        rep_pos = {key: i for i, key in enumerate(rep_g.keys)}
        cols = []
        for h in rep_n.h_cochains(n.dim):
            emb = cochain_embed(h, S)
            vec = {rep_pos[key]: c for key, c in emb.entries.items()}
            cols.append(class_coordinates(rep_g, weights_g, vec))
        columns[k] = cols
        ranks[k] = linalg.rank(cols, rep_g.dim_h)
        injective[k] = ranks[k] == dims_n[k]
        surjective[k] = ranks[k] == dims_g[k]

    maps = ReductionMaps(columns, ranks, injective, surjective)
    h1_epi = surjective[1]
    h2_iso = injective[2] and surjective[2]
    h3_mono = injective[3]

    dim_q1 = quotient_module_cohomology_dim(S, 1)
    dim_q2 = quotient_module_cohomology_dim(S, 2)

    abelian_r = all(
        Fraction(c) == 0 for out in S.r_brackets.values() for c in out.values()
    )
    complete: bool | None = None
    if dim_q1 != 0 or dim_q2 != 0:
        case = "neither"
    elif S.reductive_rank == 0:
        case = "case2"
    elif abelian_r:
        # an abelian acting part is all torus; case 1 asks completeness
        if check_completeness:
            complete = algebra_is_complete(g)
            case = "case1" if complete else "neither"
        else:
            case = "unknown"
    else:
        case = "unknown"

    return HypothesisReport(
        h1_epi,
        h2_iso,
        h3_mono,
        case,
        dim_q1,
        dim_q2,
        dims_n,
        dims_g,
        maps,
        complete,
    )
