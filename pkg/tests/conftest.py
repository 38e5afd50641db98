"""Shared fixtures and independent oracles for the test suite.

The oracles here are written from scratch against the textbook formulas
(dense matrices, direct index loops) so they share no code path with the
package internals they check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from liedef.liealg import LieAlgebra


# ----------------------------------------------------------------------
# random data helpers


def rand_fraction(rng: random.Random, span: int = 3) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.choice((1, 1, 2, 3))
    return Fraction(num, den)


def random_invertible(rng: random.Random, n: int) -> list[list[Fraction]]:
    """Unit lower-triangular times unit upper-triangular: always invertible."""
    lower = [
        [
            Fraction(1)
            if i == j
            else (rand_fraction(rng, 2) if i > j else Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    upper = [
        [
            Fraction(rng.choice((1, -1)))
            if i == j
            else (rand_fraction(rng, 2) if i < j else Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return [
        [
            sum((lower[i][k] * upper[k][j] for k in range(n)), Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]


def invert_matrix(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def conjugate_algebra(L: LieAlgebra, P: list[list[Fraction]]) -> LieAlgebra:
    """Structure constants of the same algebra in the basis f_j = sum_i P[i][j] e_i."""
    n = L.dim
    Pinv = invert_matrix(P)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            x = {a + 1: P[a][i - 1] for a in range(n) if P[a][i - 1] != 0}
            y = {a + 1: P[a][j - 1] for a in range(n) if P[a][j - 1] != 0}
            z = L.bracket(x, y)
            out: dict[int, Fraction] = {}
            for k in range(n):
                c = sum((Pinv[k][a - 1] * v for a, v in z.items()), Fraction(0))
                if c != 0:
                    out[k + 1] = c
            if out:
                brackets[(i, j)] = out
    return LieAlgebra(n, brackets)


def base_algebras_dim_le_5() -> list[LieAlgebra]:
    """Small verified Lie algebras used as seeds for random conjugation."""
    abelian3 = LieAlgebra(3, {})
    heis = LieAlgebra(3, {(1, 2): {3: Fraction(1)}})
    fil4 = LieAlgebra(4, {(1, 2): {3: Fraction(1)}, (1, 3): {4: Fraction(1)}})
    fil5 = LieAlgebra(
        5,
        {
            (1, 2): {3: Fraction(1)},
            (1, 3): {4: Fraction(1)},
            (1, 4): {5: Fraction(1)},
            (2, 3): {5: Fraction(1)},
        },
    )
    sl2 = LieAlgebra(
        3,
        {
            (1, 2): {3: Fraction(1)},
            (1, 3): {1: Fraction(-2)},
            (2, 3): {2: Fraction(2)},
        },
    )
    sl2_plus = LieAlgebra(
        5,
        {
            (1, 2): {3: Fraction(1)},
            (1, 3): {1: Fraction(-2)},
            (2, 3): {2: Fraction(2)},
        },
    )
    heis5 = LieAlgebra(
        5, {(1, 2): {5: Fraction(1)}, (3, 4): {5: Fraction(1)}}
    )
    return [abelian3, heis, fil4, fil5, sl2, sl2_plus, heis5]


def random_jacobi_algebra(rng: random.Random) -> LieAlgebra:
    base = rng.choice(base_algebras_dim_le_5())
    P = random_invertible(rng, base.dim)
    return conjugate_algebra(base, P)


# ----------------------------------------------------------------------
# independent Chevalley-Eilenberg oracle (dense, adjoint module)


def _tuples(n: int, p: int):
    return list(itertools.combinations(range(1, n + 1), p))


def ce_differential_dense(L: LieAlgebra, p: int) -> list[list[Fraction]]:
    """Dense matrix of d: C^p -> C^{p+1} from the alternating-sum formula,
    rows indexed by (tuple of p+1 arguments, output index)."""
    n = L.dim
    dom = [(args, k) for args in _tuples(n, p) for k in range(1, n + 1)]
    cod = [(args, k) for args in _tuples(n, p + 1) for k in range(1, n + 1)]
    cod_pos = {key: i for i, key in enumerate(cod)}
    mat = [[Fraction(0)] * len(dom) for _ in range(len(cod))]

    for col, (args, out) in enumerate(dom):
        # term 1: sum_i (-1)^i [x_i, f(..xi hat..)] for f = basis cochain
        for args2 in _tuples(n, p + 1):
            for i, xi in enumerate(args2):
                rest = args2[:i] + args2[i + 1 :]
                if rest != args:
                    continue
                for k, c in L.bracket_basis(xi, out).items():
                    row = cod_pos[(args2, k)]
                    mat[row][col] += Fraction(-1) ** i * c
            # term 2: sum_{i<j} (-1)^{i+j} f([xi,xj], rest)
            for i in range(p + 1):
                for j in range(i + 1, p + 1):
                    rest = tuple(
                        x for t, x in enumerate(args2) if t not in (i, j)
                    )
                    for b, c in L.bracket_basis(args2[i], args2[j]).items():
                        if b in rest:
                            continue
                        merged = tuple(sorted(rest + (b,)))
                        pos = merged.index(b)
                        sign = Fraction(-1) ** pos
                        if merged != args:
                            continue
                        row = cod_pos[(args2, out)]
                        mat[row][col] += Fraction(-1) ** (i + j) * sign * c
    return mat


def dense_rank(mat: list[list[Fraction]]) -> int:
    rows = [list(r) for r in mat if any(x != 0 for x in r)]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next(
            (r for r in range(rank, len(rows)) if rows[r][col] != 0), None
        )
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def ce_cohomology_dim_oracle(L: LieAlgebra, k: int) -> int:
    """dim H^k for the adjoint module, by dense elimination on the raw
    Chevalley-Eilenberg matrices."""
    import math

    n = L.dim
    dim_ck = math.comb(n, k) * n
    dk = ce_differential_dense(L, k)
    rank_dk = dense_rank(dk)
    if k == 0:
        return dim_ck - rank_dk
    dk1 = ce_differential_dense(L, k - 1)
    rank_dk1 = dense_rank(dk1)
    return dim_ck - rank_dk - rank_dk1


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260821)
