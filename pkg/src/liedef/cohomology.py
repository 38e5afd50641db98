"""Cohomology of the deformation complex, Hodge-style splittings, and
derivation solvers.

Large eliminations are organized by an internal grading: any diagonal
derivation assigns each basis cochain a weight defect, and the differential
cannot mix defects.  The decomposition is verified entry by entry rather
than assumed, then each block is reduced independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cochain import Cochain, CochainKey, cochain_basis, differential_matrix
from .liealg import LieAlgebra
from .linalg import Vector

Matrix = list[list[Fraction]]


@dataclass
class DerivationSet:
    dim: int
    matrices: list[Matrix]

    @staticmethod
    def diagonal(dim: int, weight_columns: list[list[Fraction]]) -> "DerivationSet":
        """Build diagonal derivations: one matrix per weight column, with
        weight_columns[s][i] the eigenvalue on basis vector i+1."""
        mats = []
        for col in weight_columns:
            if len(col) != dim:
                raise ValueError("weight column length does not match dim")
            mats.append(
                [
                    [Fraction(col[i]) if i == j else Fraction(0) for j in range(dim)]
                    for i in range(dim)
                ]
            )
        return DerivationSet(dim, mats)

    def is_diagonal(self) -> bool:
        return all(
            all(m[i][j] == 0 for i in range(self.dim) for j in range(self.dim) if i != j)
            for m in self.matrices
        )

    def diagonal_weights(self) -> list[list[Fraction]]:
        if not self.is_diagonal():
            raise ValueError("derivation set is not diagonal")
        return [[m[i][i] for i in range(self.dim)] for m in self.matrices]


def is_derivation(L: LieAlgebra, mat: Matrix) -> bool:
    m = L.dim
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            lhs: dict[int, Fraction] = {}
            for k, c in L.bracket_basis(i, j).items():
                for a in range(m):
                    v = lhs.get(a + 1, Fraction(0)) + c * mat[a][k - 1]
                    lhs[a + 1] = v
            rhs: dict[int, Fraction] = {}
            for b in range(m):
                cb = mat[b][i - 1]
                if cb != 0:
                    for a, c in L.bracket_basis(b + 1, j).items():
                        rhs[a] = rhs.get(a, Fraction(0)) + cb * c
                cb = mat[b][j - 1]
                if cb != 0:
                    for a, c in L.bracket_basis(i, b + 1).items():
                        rhs[a] = rhs.get(a, Fraction(0)) + cb * c
            for a in set(lhs) | set(rhs):
                if lhs.get(a, Fraction(0)) != rhs.get(a, Fraction(0)):
                    return False
    return True


def derivations(
    L: LieAlgebra, commuting_with: DerivationSet | None = None
) -> DerivationSet:
    """All derivations of L, optionally restricted to those commuting with
    the given set; solved as one exact linear system."""
    m = L.dim

    def unk(a: int, b: int) -> int:
        return a * m + b  # entry D[a][b], 0-based

    rows: list[Vector] = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            cij = L.bracket_basis(i, j)
            for a in range(m):
                row: Vector = {}

                def bump(idx: int, c: Fraction) -> None:
                    s = row.get(idx, Fraction(0)) + c
                    if s == 0:
                        row.pop(idx, None)
                    else:
                        row[idx] = s

                for k, c in cij.items():
                    bump(unk(a, k - 1), c)
                for b in range(1, m + 1):
                    for aa, c in L.bracket_basis(b, j).items():
                        if aa == a + 1:
                            bump(unk(b - 1, i - 1), -c)
                    for aa, c in L.bracket_basis(i, b).items():
                        if aa == a + 1:
                            bump(unk(b - 1, j - 1), -c)
                if row:
                    rows.append(row)
    if commuting_with is not None:
        for T in commuting_with.matrices:
            for a in range(m):
                for b in range(m):
                    row = {}
                    for k in range(m):
                        c1 = T[k][b]
                        if c1 != 0:
                            row[unk(a, k)] = row.get(unk(a, k), Fraction(0)) + c1
                        c2 = T[a][k]
                        if c2 != 0:
                            row[unk(k, b)] = row.get(unk(k, b), Fraction(0)) - c2
                    row = {idx: c for idx, c in row.items() if c != 0}
                    if row:
                        rows.append(row)
    kernel = linalg.kernel_basis(rows, m * m)
    mats = []
    for vec in kernel:
        mat = [[Fraction(0)] * m for _ in range(m)]
        for idx, c in vec.items():
            mat[idx // m][idx % m] = c
        mats.append(mat)
    return DerivationSet(m, mats)


def inner_derivations(L: LieAlgebra) -> DerivationSet:
    return DerivationSet(L.dim, [L.ad_matrix(i) for i in range(1, L.dim + 1)])


def diagonal_symmetry_weights(L: LieAlgebra) -> list[list[Fraction]]:
    """Basis of the space of diagonal derivations, as weight vectors."""
    m = L.dim
    rows: list[Vector] = []
    for (i, j), out in L.brackets.items():
        for k in out:
            row: Vector = {}
            for idx, c in ((i - 1, 1), (j - 1, 1), (k - 1, -1)):
                s = row.get(idx, Fraction(0)) + c
                if s == 0:
                    row.pop(idx, None)
                else:
                    row[idx] = s
            if row:
                rows.append(row)
    return [
        [vec.get(i, Fraction(0)) for i in range(m)]
        for vec in linalg.kernel_basis(rows, m)
    ]


# ----------------------------------------------------------------------
# complex assembly
# ----------------------------------------------------------------------

@dataclass
class ComplexBlock:
    key: tuple[Fraction, ...]
    domain: list[int]        # global column indices of C^k in this block
    codomain: list[int]      # global row indices of C^(k+1) in this block


@dataclass
class ChainComplexSlice:
    """Degrees k-1, k, k+1 of the deformation complex, with the matrices
    d_(k-1) and d_k and a verified grading partition of C^k."""

    L: LieAlgebra
    degree: int
    keys_prev: list[CochainKey]
    keys_here: list[CochainKey]
    keys_next: list[CochainKey]
    d_prev_cols: list[Vector]   # columns over keys_here-rows
    d_here_cols: list[Vector]   # columns over keys_next-rows
    blocks: list[ComplexBlock]
    invariant: bool


def _weight_key(
    weights: list[list[Fraction]], key: CochainKey
) -> tuple[Fraction, ...]:
    args, out = key
    return tuple(
        w[out - 1] - sum((w[i - 1] for i in args), Fraction(0)) for w in weights
    )


def _restrict_columns(
    cols: list[Vector],
    col_sel: list[int],
    row_sel: list[int],
) -> list[Vector]:
    row_map = {g: i for i, g in enumerate(row_sel)}
    out = []
    for j in col_sel:
        col = {}
        for i, c in cols[j].items():
            col[row_map[i]] = c
        out.append(col)
    return out


def build_complex_slice(
    L: LieAlgebra, degree: int, invariance: DerivationSet | None = None
) -> ChainComplexSlice:
    """Assemble the slice (C^(k-1) -> C^k -> C^(k+1)) with its grading.

    With a diagonal invariance set, bases are restricted to cochains of
    weight defect zero.  Without invariance the full bases are used and the
    grading by all diagonal derivations splits the elimination; either way
    every matrix entry is checked to respect the grading.
    """
    if invariance is not None and not invariance.is_diagonal():
        raise ValueError("only diagonal invariance sets restrict the complex here")
    grading = (
        invariance.diagonal_weights()
        if invariance is not None
        else diagonal_symmetry_weights(L)
    )

    if degree >= 1:
        d_prev_cols_full, keys_here_full, keys_prev_full = differential_matrix(L, degree - 1)
    else:
        keys_prev_full = []
        keys_here_full = cochain_basis(L.dim, degree)
        d_prev_cols_full = []
    d_here_cols_full, keys_next_full, _ = differential_matrix(L, degree)

    if invariance is not None:
        zero = tuple(Fraction(0) for _ in grading)
        sel_prev = [
            i for i, k in enumerate(keys_prev_full) if _weight_key(grading, k) == zero
        ]
        sel_here = [
            i for i, k in enumerate(keys_here_full) if _weight_key(grading, k) == zero
        ]
        sel_next = [
            i for i, k in enumerate(keys_next_full) if _weight_key(grading, k) == zero
        ]
        # invariance of the differential: no entry may leave the selection
        here_set = set(sel_here)
        next_set = set(sel_next)
        for j in sel_prev:
            if any(i not in here_set for i in d_prev_cols_full[j]):
                raise AssertionError("differential leaves the invariant subcomplex")
        for j in sel_here:
            if any(i not in next_set for i in d_here_cols_full[j]):
                raise AssertionError("differential leaves the invariant subcomplex")
        keys_prev = [keys_prev_full[i] for i in sel_prev]
        keys_here = [keys_here_full[i] for i in sel_here]
        keys_next = [keys_next_full[i] for i in sel_next]
        d_prev_cols = _restrict_columns(d_prev_cols_full, sel_prev, sel_here)
        d_here_cols = _restrict_columns(d_here_cols_full, sel_here, sel_next)
        blocks = [
            ComplexBlock(zero, list(range(len(keys_here))), list(range(len(keys_next))))
        ]
        return ChainComplexSlice(
            L, degree, keys_prev, keys_here, keys_next, d_prev_cols, d_here_cols,
            blocks, True,
        )

    keys_prev = keys_prev_full
    keys_here = keys_here_full
    keys_next = keys_next_full
    d_prev_cols = d_prev_cols_full
    d_here_cols = d_here_cols_full

    here_by_key: dict[tuple[Fraction, ...], list[int]] = {}
    for i, k in enumerate(keys_here):
        here_by_key.setdefault(_weight_key(grading, k), []).append(i)
    next_by_key: dict[tuple[Fraction, ...], list[int]] = {}
    for i, k in enumerate(keys_next):
        next_by_key.setdefault(_weight_key(grading, k), []).append(i)
    prev_key_of = {i: _weight_key(grading, k) for i, k in enumerate(keys_prev)}
    here_key_of = {i: _weight_key(grading, k) for i, k in enumerate(keys_here)}
    next_key_of = {i: _weight_key(grading, k) for i, k in enumerate(keys_next)}

    # grading must be respected by both matrices (checked, not assumed)
    for j, col in enumerate(d_prev_cols):
        kj = prev_key_of[j]
        for i in col:
            if here_key_of[i] != kj:
                raise AssertionError("differential entry crosses a grading block")
    for j, col in enumerate(d_here_cols):
        kj = here_key_of[j]
        for i in col:
            if next_key_of[i] != kj:
                raise AssertionError("differential entry crosses a grading block")

    all_keys = sorted(set(here_by_key) | set(next_by_key))
    blocks = [
        ComplexBlock(k, here_by_key.get(k, []), next_by_key.get(k, []))
        for k in all_keys
    ]
    return ChainComplexSlice(
        L, degree, keys_prev, keys_here, keys_next, d_prev_cols, d_here_cols,
        blocks, False,
    )


# ----------------------------------------------------------------------
# cohomology and the splitting
# ----------------------------------------------------------------------

@dataclass
class HodgeSplit:
    """Decomposition C^k = W + span(Z) with Z = B + H on basis indices.

    ``w_indices`` are coordinates on which d_k is injective (pivot columns);
    ``z_basis`` spans the kernel of d_k, one vector per remaining
    coordinate; ``b_basis`` spans the image of d_(k-1); ``h_basis`` is the
    greedy subfamily of kernel vectors independent modulo that image, and
    ``b_indices`` are the leftover coordinates, as many as dim B.
    """

    degree: int
    keys: list[CochainKey]
    w_indices: list[int]
    b_indices: list[int]
    h_indices: list[int]
    z_basis: list[Vector]
    b_basis: list[Vector]
    h_basis: list[Vector]


@dataclass
class CohomologyReport:
    degree: int
    dim_z: int
    dim_b: int
    dim_h: int
    keys: list[CochainKey]
    z_basis: list[Vector]
    b_basis: list[Vector]
    h_basis: list[Vector]
    invariant: bool

    def h_cochains(self, dim: int) -> list[Cochain]:
        return [
            Cochain(dim, self.degree, {self.keys[i]: c for i, c in vec.items()})
            for vec in self.h_basis
        ]


def _split_block(
    slice_: ChainComplexSlice, block: ComplexBlock
) -> tuple[list[int], list[int], list[int], list[Vector], list[Vector], list[Vector]]:
    """Hodge data of one grading block, in global coordinates."""
    ncols = len(block.domain)
    col_of = {g: i for i, g in enumerate(block.domain)}
    # rows of d_k restricted to the block
    row_map = {g: i for i, g in enumerate(block.codomain)}
    rows: list[Vector] = [dict() for _ in block.codomain]
    for local_j, g in enumerate(block.domain):
        for gi, c in slice_.d_here_cols[g].items():
            rows[row_map[gi]][local_j] = c
    reduced, pivots = linalg.rref(rows, ncols)
    pivot_set = set(pivots)
    w_indices = [block.domain[p] for p in pivots]
    z_local = []
    free_cols = [f for f in range(ncols) if f not in pivot_set]
    for f in free_cols:
        vec: Vector = {f: Fraction(1)}
        for prow, pcol in zip(reduced, pivots):
            c = prow.get(f)
            if c is not None:
                vec[pcol] = -c
        z_local.append(vec)

    # image of d_(k-1) inside this block: columns whose support sits here
    dom_set = set(block.domain)
    img_rows: list[Vector] = []
    for col in slice_.d_prev_cols:
        if not col:
            continue
        first = next(iter(col))
        if first in dom_set:
            img_rows.append({col_of[g]: c for g, c in col.items()})
    b_local = linalg.row_space_basis(img_rows, ncols)

    keep = linalg.extend_to_complement(b_local, z_local, ncols)
    keep_set = set(keep)
    h_local = [z_local[i] for i in keep]
    free_kept = {free_cols[i] for i in keep}
    b_indices = [block.domain[f] for f in free_cols if f not in free_kept]
    h_indices = [block.domain[f] for f in free_cols if f in free_kept]

    def to_global(vec: Vector) -> Vector:
        return {block.domain[j]: c for j, c in vec.items()}

    return (
        w_indices,
        b_indices,
        h_indices,
        [to_global(v) for v in z_local],
        [to_global(v) for v in b_local],
        [to_global(v) for v in h_local],
    )


def hodge_split(
    L: LieAlgebra, degree: int, invariance: DerivationSet | None = None
) -> HodgeSplit:
    slice_ = build_complex_slice(L, degree, invariance)
    w_indices: list[int] = []
    b_indices: list[int] = []
    h_indices: list[int] = []
    z_basis: list[Vector] = []
    b_basis: list[Vector] = []
    h_basis: list[Vector] = []
    for block in slice_.blocks:
        if not block.domain:
            continue
        w, bi, hi, z, b, h = _split_block(slice_, block)
        w_indices.extend(w)
        b_indices.extend(bi)
        h_indices.extend(hi)
        z_basis.extend(z)
        b_basis.extend(b)
        h_basis.extend(h)
    return HodgeSplit(
        degree, slice_.keys_here,
        sorted(w_indices), sorted(b_indices), sorted(h_indices),
        z_basis, b_basis, h_basis,
    )


def _invariant_subspace_general(
    L: LieAlgebra, degree: int, invariance: DerivationSet
) -> tuple[list[CochainKey], list[Vector]]:
    """Kernel of the derivation action on C^degree for a non-diagonal set."""
    keys = cochain_basis(L.dim, degree)
    index = {k: i for i, k in enumerate(keys)}
    rows: list[Vector] = []
    m = L.dim
    for mat in invariance.matrices:
        # theta(delta) on a basis cochain e_(args, out)
        cols: dict[int, Vector] = {}
        for j, (args, out) in enumerate(keys):
            col: Vector = {}

            def bump(key: CochainKey, c: Fraction) -> None:
                if c == 0:
                    return
                i = index[key]
                s = col.get(i, Fraction(0)) + c
                if s == 0:
                    col.pop(i, None)
                else:
                    col[i] = s

            for a in range(m):
                c = mat[a][out - 1]
                if c != 0:
                    bump((args, a + 1), c)
            for pos, arg in enumerate(args):
                for a in range(m):
                    c = mat[a][arg - 1]
                    if c == 0:
                        continue
                    new_args = args[:pos] + (a + 1,) + args[pos + 1 :]
                    if len(set(new_args)) != len(new_args):
                        continue
                    ordered = tuple(sorted(new_args))
                    sign = 1
                    perm = list(new_args)
                    for x in range(len(perm)):
                        for y in range(x + 1, len(perm)):
                            if perm[x] > perm[y]:
                                sign = -sign
                    bump((ordered, out), -sign * c)
            cols[j] = col
        # transpose the operator columns into equation rows
        op_rows: dict[int, Vector] = {}
        for j, col in cols.items():
            for i, c in col.items():
                op_rows.setdefault(i, {})[j] = c
        rows.extend(op_rows.values())
    kernel = linalg.kernel_basis(rows, len(keys))
    return keys, kernel


def cohomology(
    L: LieAlgebra, degree: int, invariance: DerivationSet | None = None
) -> CohomologyReport:
    """Closed, exact, and representative bases in the given degree.

    Diagonal invariance sets restrict to the weight-defect-zero subcomplex;
    a general derivation set restricts to its kernel subspace.  In every
    case dim Z = dim B + dim H holds by construction.
    """
    if invariance is None or invariance.is_diagonal():
        split = hodge_split(L, degree, invariance)
        return CohomologyReport(
            degree,
            len(split.z_basis),
            len(split.b_basis),
            len(split.h_basis),
            split.keys,
            split.z_basis,
            split.b_basis,
            split.h_basis,
            invariance is not None,
        )

    keys, inv_basis = _invariant_subspace_general(L, degree, invariance)
    keys_prev = cochain_basis(L.dim, degree - 1) if degree >= 1 else []
    _, prev_inv = (
        _invariant_subspace_general(L, degree - 1, invariance)
        if degree >= 1
        else ([], [])
    )
    d_here_cols, keys_next, _ = differential_matrix(L, degree)
    if degree >= 1:
        d_prev_cols, _, _ = differential_matrix(L, degree - 1)
    else:
        d_prev_cols = []

    def apply_cols(cols: list[Vector], vec: Vector) -> Vector:
        out: Vector = {}
        for j, c in vec.items():
            linalg.vec_axpy(out, c, cols[j])
        return out

    # Z: invariant vectors killed by d
    images = [apply_cols(d_here_cols, v) for v in inv_basis]
    next_index_count = len(keys_next)
    coeff_rows: list[Vector] = [dict() for _ in range(next_index_count)]
    for j, img in enumerate(images):
        for i, c in img.items():
            coeff_rows[i][j] = c
    coeff_rows = [r for r in coeff_rows if r]
    coker = linalg.kernel_basis(coeff_rows, len(inv_basis))
    z_basis = []
    for comb in coker:
        vec: Vector = {}
        for j, c in comb.items():
            linalg.vec_axpy(vec, c, inv_basis[j])
        z_basis.append(vec)
    # B: images of invariant (k-1)-cochains
    b_images = [apply_cols(d_prev_cols, v) for v in prev_inv]
    b_basis = linalg.row_space_basis([v for v in b_images if v], len(keys))
    keep = linalg.extend_to_complement(b_basis, z_basis, len(keys))
    h_basis = [z_basis[i] for i in keep]
    return CohomologyReport(
        degree, len(z_basis), len(b_basis), len(h_basis),
        keys, z_basis, b_basis, h_basis, True,
    )
