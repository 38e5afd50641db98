"""Finite-dimensional Lie algebras by structure constants.

Basis indices are 1-based.  Brackets are stored for ordered pairs i < j as
sparse output vectors; [e_j, e_i] is derived by antisymmetry and [e_i, e_i]
is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .linalg import Vector

BracketTable = dict[tuple[int, int], dict[int, Fraction]]


@dataclass
class LieAlgebra:
    dim: int
    brackets: BracketTable = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: BracketTable = {}
        for (i, j), out in self.brackets.items():
            if not (1 <= i < j <= self.dim):
                raise ValueError(f"bad bracket pair ({i}, {j}) for dim {self.dim}")
            vec = {}
            for k, c in out.items():
                if not 1 <= k <= self.dim:
                    raise ValueError(f"bad bracket output index {k}")
                c = Fraction(c)
                if c != 0:
                    vec[k] = c
            if vec:
                clean[(i, j)] = vec
        self.brackets = clean

    # ------------------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        """[e_i, e_j] as a sparse output vector."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        out = self.brackets.get((j, i), {})
        return {k: -c for k, c in out.items()}

    def bracket(self, x: Vector, y: Vector) -> Vector:
        """[x, y] for sparse vectors keyed by 1-based basis index."""
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                if i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    s = out.get(k, Fraction(0)) + a * b * c
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def ad_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of ad(e_i) acting on column vectors, 0-based entries."""
        mat = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(1, self.dim + 1):
            for k, c in self.bracket_basis(i, j).items():
                mat[k - 1][j - 1] = c
        return mat

    # ------------------------------------------------------------------
    def jacobi_defects(self) -> list[tuple[tuple[int, int, int], int, Fraction]]:
        """All nonzero Jacobi expressions ((i, j, k), out, value)."""
        out = []
        m = self.dim
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                for k in range(j + 1, m + 1):
                    acc: dict[int, Fraction] = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_basis(a, b)
                        for s, x in inner.items():
                            for l, y in self.bracket_basis(s, c).items():
                                v = acc.get(l, Fraction(0)) + x * y
                                if v == 0:
                                    acc.pop(l, None)
                                else:
                                    acc[l] = v
                    for l in sorted(acc):
                        out.append(((i, j, k), l, acc[l]))
        return out

    # ------------------------------------------------------------------
    def center_basis(self) -> list[Vector]:
        """Basis of {x : [x, e_j] = 0 for all j}, 0-based coordinate keys."""
        rows: list[Vector] = []
        for j in range(1, self.dim + 1):
            cols: dict[int, dict[int, Fraction]] = {}
            for i in range(1, self.dim + 1):
                for k, c in self.bracket_basis(i, j).items():
                    cols.setdefault(k, {})[i - 1] = c
            for k in sorted(cols):
                rows.append(cols[k])
        return linalg.kernel_basis(rows, self.dim)

    def derived_rank(self) -> int:
        rows = [
            {k - 1: c for k, c in out.items()} for out in self.brackets.values()
        ]
        return linalg.rank(rows, self.dim)

    def lower_central_dims(self) -> list[int]:
        """Dimensions of the lower central series g >= [g,g] >= [g,[g,g]] >= ..."""
        dims = [self.dim]
        # vectors are 1-based for bracket(), shifted to 0-based for linalg
        current: list[dict[int, Fraction]] = [
            {i: Fraction(1)} for i in range(1, self.dim + 1)
        ]
        while True:
            nxt: list[Vector] = []
            for i in range(1, self.dim + 1):
                for v in current:
                    w = self.bracket({i: Fraction(1)}, v)
                    if w:
                        nxt.append({k - 1: c for k, c in w.items()})
            basis = linalg.row_space_basis(nxt, self.dim)
            d = len(basis)
            if d == dims[-1]:
                return dims
            dims.append(d)
            if d == 0:
                return dims
            current = [{k + 1: c for k, c in row.items()} for row in basis]

    def is_nilpotent(self) -> bool:
        return self.lower_central_dims()[-1] == 0


@dataclass
class JacobiReport:
    ok: bool
    defects: list[tuple[tuple[int, int, int], int, Fraction]]


def check_jacobi(L: LieAlgebra) -> JacobiReport:
    defects = L.jacobi_defects()
    return JacobiReport(not defects, defects)
