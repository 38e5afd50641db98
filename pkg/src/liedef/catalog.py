"""Built-in families of algebras used by the command line and the tests."""

from __future__ import annotations

from fractions import Fraction

from .graded import StepHints, WeightPath, filiation_run
from .liealg import LieAlgebra

MAX_SIZE = 32

CATALOG_NAMES = (
    "f_n",
    "witt_n",
    "example52",
    "abelian_m",
    "heisenberg",
    "sl2",
)


def filiform_algebra(n: int) -> LieAlgebra:
    """The graded filiform family: e1 shifts every index up by one and e2
    shifts by two where that stays in range."""
    if n < 5:
        raise ValueError("filiform family starts at dimension 5")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(2, n):
        brackets[(1, i)] = {i + 1: Fraction(1)}
    for i in range(3, n - 1):
        brackets[(2, i)] = {i + 2: Fraction(1)}
    return LieAlgebra(n, brackets)


def filiform_weights(n: int) -> list[list[Fraction]]:
    """One diagonal torus generator with eigenvalue i on e_i."""
    return [[Fraction(i) for i in range(1, n + 1)]]


def filiform_path(n: int) -> WeightPath:
    return WeightPath(1, [(Fraction(i),) for i in range(1, n + 1)], 5)


def witt_algebra(n: int) -> LieAlgebra:
    """Truncated algebra with [e_i, e_j] = (j - i) e_{i+j}."""
    if n < 3:
        raise ValueError("truncated Witt algebra needs dimension >= 3")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if i + j <= n:
                brackets[(i, j)] = {i + j: Fraction(j - i)}
    return LieAlgebra(n, brackets)


def abelian_algebra(m: int) -> LieAlgebra:
    if m < 1:
        raise ValueError("dimension must be positive")
    return LieAlgebra(m, {})


def heisenberg_algebra() -> LieAlgebra:
    return LieAlgebra(3, {(1, 2): {3: Fraction(1)}})


def heisenberg_weights() -> list[list[Fraction]]:
    return [
        [Fraction(1), Fraction(0), Fraction(1)],
        [Fraction(0), Fraction(1), Fraction(1)],
    ]


def sl2_algebra() -> LieAlgebra:
    """Basis (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return LieAlgebra(
        3,
        {
            (1, 2): {3: Fraction(1)},
            (1, 3): {1: Fraction(-2)},
            (2, 3): {2: Fraction(2)},
        },
    )


def _e4(*ones: int) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(1) if i in ones else Fraction(0) for i in range(1, 5)
    )


def example52_path() -> WeightPath:
    """Rank-4 weight list: the four generators, five of their two-element
    sums, three of the three-element sums, and the total sum."""
    weights = [
        _e4(1),
        _e4(2),
        _e4(3),
        _e4(4),
        _e4(1, 2),
        _e4(1, 3),
        _e4(2, 3),
        _e4(2, 4),
        _e4(3, 4),
        _e4(1, 2, 3),
        _e4(1, 2, 4),
        _e4(1, 3, 4),
        _e4(1, 2, 3, 4),
    ]
    return WeightPath(4, weights, 4)


def example52_hints() -> dict[int, StepHints]:
    """Pivot and free-coordinate choices that pin the published
    normalization of the rank-4 family."""
    return {
        10: StepHints(pivot=(3, 5), free=[(1, 7)]),
        11: StepHints(pivot=(4, 5)),
        12: StepHints(pivot=(4, 6)),
        13: StepHints(pivot=(2, 12), free=[(4, 10)]),
    }


def example52_algebra(dim: int = 13) -> LieAlgebra:
    """Base fiber of the rank-4 filiation at the given dimension."""
    path = example52_path()
    if not 4 <= dim <= len(path.weights):
        raise ValueError("dimension must be between 4 and 13")
    if dim == 4:
        return abelian_algebra(4)
    result = filiation_run(path, dim, abelian_algebra(4), example52_hints())
    return result.state.algebra()


def example52_weights(dim: int = 13) -> list[list[Fraction]]:
    path = example52_path()
    return [
        [path.weight(i)[s] for i in range(1, dim + 1)] for s in range(4)
    ]


def direct_sum(
    a: LieAlgebra, b: LieAlgebra
) -> LieAlgebra:
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {
        k: dict(v) for k, v in a.brackets.items()
    }
    for (i, j), out in b.brackets.items():
        brackets[(i + a.dim, j + a.dim)] = {
            k + a.dim: c for k, c in out.items()
        }
    return LieAlgebra(a.dim + b.dim, brackets)


def direct_sum_weights(
    wa: list[list[Fraction]], wb: list[list[Fraction]], dim_a: int, dim_b: int
) -> list[list[Fraction]]:
    """Weight columns of the product torus acting on the direct sum."""
    out = []
    for col in wa:
        out.append(list(col) + [Fraction(0)] * dim_b)
    for col in wb:
        out.append([Fraction(0)] * dim_a + list(col))
    return out


def catalog_algebra(
    name: str, size: int | None = None
) -> tuple[LieAlgebra, list[list[Fraction]] | None, dict[str, str]]:
    """Algebra, optional torus weight columns, and labels for a catalog name."""
    if name == "f_n":
        if size is None:
            raise ValueError("f_n needs a size")
        if not 5 <= size <= MAX_SIZE:
            raise ValueError(f"f_n size must be in [5, {MAX_SIZE}]")
        return (
            filiform_algebra(size),
            filiform_weights(size),
            {"family": "f_n", "size": str(size)},
        )
    if name == "witt_n":
        if size is None:
            raise ValueError("witt_n needs a size")
        if not 3 <= size <= MAX_SIZE:
            raise ValueError(f"witt_n size must be in [3, {MAX_SIZE}]")
        return (
            witt_algebra(size),
            filiform_weights(size),
            {"family": "witt_n", "size": str(size)},
        )
    if name == "example52":
        size = 13 if size is None else size
        if not 4 <= size <= 13:
            raise ValueError("example52 size must be in [4, 13]")
        return (
            example52_algebra(size),
            example52_weights(size),
            {"family": "example52", "size": str(size)},
        )
    if name == "abelian_m":
        if size is None:
            raise ValueError("abelian_m needs a size")
        if not 1 <= size <= MAX_SIZE:
            raise ValueError(f"abelian_m size must be in [1, {MAX_SIZE}]")
        return abelian_algebra(size), None, {
            "family": "abelian_m",
            "size": str(size),
        }
    if name == "heisenberg":
        return heisenberg_algebra(), heisenberg_weights(), {
            "family": "heisenberg"
        }
    if name == "sl2":
        return sl2_algebra(), None, {"family": "sl2"}
    raise ValueError(f"unknown catalog name: {name}")
