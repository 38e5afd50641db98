"""Alternating multilinear cochains and the graded bracket that controls
Lie-algebra deformations.

A cochain of degree k sends k algebra arguments to an algebra value; the
degree-2 cochain collecting all structure constants satisfies the Jacobi
identity exactly when its self-bracket vanishes.  The differential of the
deformation complex is defined through that bracket, so closedness and
exactness computations share one convention throughout the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .liealg import LieAlgebra
from .linalg import Vector

CochainKey = tuple[tuple[int, ...], int]


def sort_with_sign(args: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Sorted tuple and permutation sign; None when an index repeats."""
    if len(set(args)) != len(args):
        return None
    order = sorted(range(len(args)), key=lambda i: args[i])
    inversions = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                inversions += 1
    return tuple(args[i] for i in order), (-1) ** inversions


def cochain_basis(dim: int, degree: int) -> list[CochainKey]:
    """Basis keys ((i_1 < ... < i_k), out): input tuples in lexicographic
    order, then output index ascending."""
    if degree < 0:
        return []
    keys = []
    for combo in itertools.combinations(range(1, dim + 1), degree):
        for out in range(1, dim + 1):
            keys.append((combo, out))
    return keys


@dataclass
class Cochain:
    dim: int
    degree: int
    entries: dict[CochainKey, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[CochainKey, Fraction] = {}
        for (args, out), c in self.entries.items():
            args = tuple(args)
            if len(args) != self.degree:
                raise ValueError(f"key {args} has wrong arity for degree {self.degree}")
            if list(args) != sorted(set(args)):
                raise ValueError(f"key {args} must be strictly increasing")
            if args and not (1 <= args[0] and args[-1] <= self.dim):
                raise ValueError(f"key {args} out of range for dim {self.dim}")
            if not 1 <= out <= self.dim:
                raise ValueError(f"output index {out} out of range")
            c = Fraction(c)
            if c != 0:
                clean[(args, out)] = c
        self.entries = clean

    # ------------------------------------------------------------------
    @staticmethod
    def zero(dim: int, degree: int) -> "Cochain":
        return Cochain(dim, degree, {})

    @staticmethod
    def from_vector(dim: int, degree: int, vec: Vector) -> "Cochain":
        basis = cochain_basis(dim, degree)
        return Cochain(dim, degree, {basis[i]: c for i, c in vec.items()})

    def to_vector(self, index: dict[CochainKey, int] | None = None) -> Vector:
        if index is None:
            index = {k: i for i, k in enumerate(cochain_basis(self.dim, self.degree))}
        return {index[k]: c for k, c in self.entries.items()}

    def value_on(self, args: tuple[int, ...]) -> dict[int, Fraction]:
        """Output vector on basis arguments (any order, sign-adjusted)."""
        if self.degree == 0:
            if args:
                raise ValueError("degree-0 cochain takes no arguments")
            return {out: c for (_, out), c in self.entries.items()}
        sorted_args = sort_with_sign(args)
        if sorted_args is None:
            return {}
        key_args, sign = sorted_args
        out: dict[int, Fraction] = {}
        for l in range(1, self.dim + 1):
            c = self.entries.get((key_args, l))
            if c is not None:
                out[l] = sign * c
        return out

    # ------------------------------------------------------------------
    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ValueError("cochain shapes differ")
        out = dict(self.entries)
        for k, c in other.entries.items():
            s = out.get(k, Fraction(0)) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return Cochain(self.dim, self.degree, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.dim, self.degree, {k: -c for k, c in self.entries.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "Cochain":
        c = Fraction(c)
        return Cochain(self.dim, self.degree, {k: c * x for k, x in self.entries.items()})

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.degree == other.degree
            and self.entries == other.entries
        )


def algebra_cochain(L: LieAlgebra) -> Cochain:
    """The degree-2 cochain whose entries are the structure constants."""
    entries: dict[CochainKey, Fraction] = {}
    for (i, j), out in L.brackets.items():
        for k, c in out.items():
            entries[((i, j), k)] = c
    return Cochain(L.dim, 2, entries)


def cochain_algebra(c: Cochain) -> LieAlgebra:
    """Rebuild a structure-constant table from a degree-2 cochain."""
    if c.degree != 2:
        raise ValueError("need a degree-2 cochain")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for ((i, j), out), x in c.entries.items():
        brackets.setdefault((i, j), {})[out] = x
    return LieAlgebra(c.dim, brackets)


def _shuffles(elements: tuple[int, ...], first_len: int):
    """All (first_len, rest)-shuffles of a sorted tuple, with signs.

    Yields (first_part, rest_part, sign) where sign is the sign of the
    permutation carrying ``elements`` to first_part + rest_part.
    """
    n = len(elements)
    for positions in itertools.combinations(range(n), first_len):
        pos_set = set(positions)
        first = tuple(elements[p] for p in positions)
        rest = tuple(elements[p] for p in range(n) if p not in pos_set)
        # moving chosen entries to the front crosses each earlier non-chosen one
        inversions = 0
        seen_outside = 0
        for p in range(n):
            if p in pos_set:
                inversions += seen_outside
            else:
                seen_outside += 1
        yield first, rest, (-1) ** inversions


def insertion_product(f: Cochain, g: Cochain) -> Cochain:
    """Sum over shuffles of f(g(first args), remaining args), signed.

    Degrees p and q combine to p + q - 1.  The first q arguments feed g and
    the remaining p - 1 feed f after its first slot.
    """
    if f.dim != g.dim:
        raise ValueError("cochain dimensions differ")
    m = f.dim
    p, q = f.degree, g.degree
    r = p + q - 1
    if r < 0:
        raise ValueError("insertion product needs p + q >= 1")
    result: dict[CochainKey, Fraction] = {}
    tuples = [()] if r == 0 else list(itertools.combinations(range(1, m + 1), r))
    for args in tuples:
        for g_args, f_rest, sign in _shuffles(args, q):
            inner = g.value_on(g_args)
            if not inner:
                continue
            for l, c in inner.items():
                outer = f.value_on((l,) + f_rest)
                for h, c2 in outer.items():
                    key = (args, h)
                    s = result.get(key, Fraction(0)) + sign * c * c2
                    if s == 0:
                        result.pop(key, None)
                    else:
                        result[key] = s
    return Cochain(m, r, result)


def nr_bracket(f: Cochain, g: Cochain) -> Cochain:
    """Graded bracket [f, g] = f o g - (-1)^((p-1)(q-1)) g o f."""
    p, q = f.degree, g.degree
    fg = insertion_product(f, g)
    gf = insertion_product(g, f)
    sign = -1 if ((p - 1) * (q - 1)) % 2 else 1
    return fg - gf.scale(sign)


def differential(f: Cochain, L: LieAlgebra) -> Cochain:
    """Deformation-complex differential d f = (-1)^(deg f + 1) [phi0, f]."""
    phi0 = algebra_cochain(L)
    return nr_bracket(phi0, f).scale((-1) ** (f.degree + 1))


def differential_matrix(
    L: LieAlgebra, degree: int
) -> tuple[list[Vector], list[CochainKey], list[CochainKey]]:
    """Matrix of the differential C^degree -> C^(degree+1).

    Returns (columns, row_keys, col_keys): one sparse column per domain
    basis cochain, rows indexed by the codomain basis.  Built from the
    direct expansion of the differential on basis cochains; agreement with
    the bracket-based definition is covered by tests.
    """
    m = L.dim
    col_keys = cochain_basis(m, degree)
    row_keys = cochain_basis(m, degree + 1)
    row_index = {k: i for i, k in enumerate(row_keys)}

    # bracket entries grouped by output index, for the substitution part
    by_out: dict[int, list[tuple[int, int, Fraction]]] = {}
    for (u, v), out in L.brackets.items():
        for b, c in out.items():
            by_out.setdefault(b, []).append((u, v, c))

    columns: list[Vector] = []
    for args, l in col_keys:
        col: Vector = {}

        def add(key: CochainKey, c: Fraction) -> None:
            i = row_index[key]
            s = col.get(i, Fraction(0)) + c
            if s == 0:
                col.pop(i, None)
            else:
                col[i] = s

        arg_set = set(args)
        # argument acting on the value: rows J = args + {a}
        for a in range(1, m + 1):
            if a in arg_set:
                continue
            pos = sum(1 for x in args if x < a)
            J = args[:pos] + (a,) + args[pos:]
            for h, c in L.bracket_basis(a, l).items():
                add((J, h), (-1) ** pos * c)
        # bracket feeding the first slot: replace entry b by a pair (u, v)
        for pos_b, b in enumerate(args):
            others = args[:pos_b] + args[pos_b + 1 :]
            others_set = set(others)
            sign0 = (-1) ** pos_b
            for u, v, c in by_out.get(b, ()):
                if u in others_set or v in others_set:
                    continue
                merged = sorted(others + (u, v))
                if len(set(merged)) != len(merged):
                    continue
                J = tuple(merged)
                i0 = J.index(u)
                j0 = J.index(v)
                add((J, l), (-1) ** (i0 + j0) * sign0 * c)
        columns.append(col)
    return columns, row_keys, col_keys
