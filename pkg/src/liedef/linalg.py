"""Exact linear algebra over the rationals.

Vectors are sparse dicts mapping column index to a nonzero Fraction.
Matrices are lists of such rows together with an explicit column count.
All routines are deterministic: columns are processed in ascending order
and ties between candidate pivot rows are broken by row position.
"""

from __future__ import annotations

from fractions import Fraction

Vector = dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_is_zero(v: Vector) -> bool:
    return not v


def vec_scale(v: Vector, c: Fraction) -> Vector:
    if c == 0:
        return {}
    return {j: c * x for j, x in v.items()}


def vec_add(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for j, x in b.items():
        s = out.get(j, ZERO) + x
        if s == 0:
            out.pop(j, None)
        else:
            out[j] = s
    return out


def vec_sub(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for j, x in b.items():
        s = out.get(j, ZERO) - x
        if s == 0:
            out.pop(j, None)
        else:
            out[j] = s
    return out


def vec_axpy(acc: Vector, c: Fraction, v: Vector) -> None:
    """In-place acc += c * v."""
    if c == 0:
        return
    for j, x in v.items():
        s = acc.get(j, ZERO) + c * x
        if s == 0:
            acc.pop(j, None)
        else:
            acc[j] = s


def vec_dot(a: Vector, b: Vector) -> Fraction:
    if len(b) < len(a):
        a, b = b, a
    total = ZERO
    for j, x in a.items():
        y = b.get(j)
        if y is not None:
            total += x * y
    return total


def vec_from_list(entries: list[Fraction]) -> Vector:
    return {j: x for j, x in enumerate(entries) if x != 0}


def vec_to_list(v: Vector, n: int) -> list[Fraction]:
    out = [ZERO] * n
    for j, x in v.items():
        out[j] = x
    return out


def rref(rows: list[Vector], ncols: int) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_columns).  Reduced rows are listed in pivot
    order, each scaled to have a unit pivot entry, fully reduced above and
    below.  Zero rows are dropped.  Pivot selection: columns ascending, and
    for each column the earliest remaining row with a nonzero entry.
    """
    work = [dict(r) for r in rows if r]
    pivots: list[int] = []
    done: list[Vector] = []
    for col in range(ncols):
        hit = None
        for idx, row in enumerate(work):
            if col in row:
                hit = idx
                break
        if hit is None:
            continue
        row = work.pop(hit)
        inv = ONE / row[col]
        row = {j: inv * x for j, x in row.items()}
        for other in done:
            c = other.get(col)
            if c is not None:
                vec_axpy(other, -c, row)
        kept = []
        for other in work:
            c = other.get(col)
            if c is not None:
                vec_axpy(other, -c, row)
            if other:
                kept.append(other)
        work = kept
        done.append(row)
        pivots.append(col)
        if not work:
            break
    return done, pivots


def rank(rows: list[Vector], ncols: int) -> int:
    _, pivots = rref(rows, ncols)
    return len(pivots)


def row_space_basis(rows: list[Vector], ncols: int) -> list[Vector]:
    reduced, _ = rref(rows, ncols)
    return reduced


def kernel_basis(rows: list[Vector], ncols: int) -> list[Vector]:
    """Basis of the right kernel {x : M x = 0}.

    One vector per free column f, with coordinate f equal to 1 and other
    free coordinates equal to 0; listed in ascending free-column order.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec: Vector = {f: ONE}
        for prow, pcol in zip(reduced, pivots):
            c = prow.get(f)
            if c is not None:
                vec[pcol] = -c
        basis.append(vec)
    return basis


def solve_columns(cols: list[Vector], b: Vector) -> Vector | None:
    """Solve sum_j x_j * cols[j] = b exactly; None when inconsistent.

    When the columns are dependent the free coefficients are set to zero,
    so the answer is deterministic.
    """
    ncols = len(cols)
    row_index: set[int] = set(b)
    for c in cols:
        row_index.update(c)
    aug_col = ncols
    rows: list[Vector] = []
    for i in sorted(row_index):
        row: Vector = {}
        for j, c in enumerate(cols):
            x = c.get(i)
            if x is not None:
                row[j] = x
        y = b.get(i)
        if y is not None:
            row[aug_col] = y
        if row:
            rows.append(row)
    reduced, pivots = rref(rows, ncols + 1)
    sol: Vector = {}
    for prow, pcol in zip(reduced, pivots):
        if pcol == aug_col:
            return None
        y = prow.get(aug_col)
        if y is not None:
            sol[pcol] = y
    return sol


def express_in_basis(basis: list[Vector], v: Vector) -> Vector | None:
    """Coefficients of v over the given (not necessarily independent) list."""
    return solve_columns(basis, v)


def extend_to_complement(base: list[Vector], candidates: list[Vector], ncols: int) -> list[int]:
    """Indices of candidates that greedily extend span(base), in given order."""
    state = [dict(r) for r in base]
    r = rank(state, ncols)
    kept: list[int] = []
    for idx, cand in enumerate(candidates):
        trial = state + [dict(cand)]
        r2 = rank(trial, ncols)
        if r2 > r:
            state = trial
            r = r2
            kept.append(idx)
    return kept


def invert_dense(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square matrix given as dense rows; raises on singular."""
    n = len(mat)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = ONE / work[col][col]
        work[col] = [inv * x for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                c = work[i][col]
                work[i] = [a - c * b for a, b in zip(work[i], work[col])]
    return [row[n:] for row in work]


def transpose(cols: list[Vector]) -> list[Vector]:
    """Treat the input as columns and return the rows of the same matrix.

    The result has one dict per row index present; absent rows are zero, so
    the caller keeps track of the true row count.
    """
    out: dict[int, Vector] = {}
    for j, col in enumerate(cols):
        for i, x in col.items():
            out.setdefault(i, {})[j] = x
    if not out:
        return []
    nrows = max(out) + 1
    return [out.get(i, {}) for i in range(nrows)]


def columns_to_rows(cols: list[Vector], nrows: int) -> list[Vector]:
    rows: list[Vector] = [dict() for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            rows[i][j] = x
    return rows
