"""Torus-graded nilpotent algebras built by successive central extensions.

A weight path fixes one-dimensional weight spaces; bracket coordinates are
attached to index pairs whose weights sum to another path weight.  Each new
basis vector adds one weight level; the closure conditions of that level
are linear in the level's coordinates over the ring accumulated so far and
are solved exactly by unit-pivot elimination over local fractions.  What
remains unsolvable becomes either new essential parameters or polynomial
relations between the old ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .ideals import (
    DEFAULT_DEGREE_CAP,
    GroebnerResult,
    QuotientPresentation,
    groebner_basis,
    normal_form,
)
from .liealg import LieAlgebra
from .linalg import Vector
from .localfrac import LocalFraction, poly_exact_div
from .poly import SparsePoly
from .solver import essential_names

Weight = tuple[Fraction, ...]
Pair = tuple[int, int]


@dataclass
class WeightPath:
    rank: int
    weights: list[Weight]
    n0: int

    def __post_init__(self) -> None:
        self.weights = [tuple(Fraction(x) for x in w) for w in self.weights]
        for w in self.weights:
            if len(w) != self.rank:
                raise ValueError("weight length does not match rank")
        if not 1 <= self.n0 <= len(self.weights):
            raise ValueError("starting dimension out of range")

    def weight(self, i: int) -> Weight:
        return self.weights[i - 1]

    def position(self, w: Weight, upto: int) -> int | None:
        """1-based index of the weight among the first ``upto``, or None."""
        for i in range(1, upto + 1):
            if self.weights[i - 1] == w:
                return i
        return None

    def is_simple(self, upto: int | None = None) -> bool:
        upto = len(self.weights) if upto is None else upto
        seen = self.weights[:upto]
        return len(set(seen)) == len(seen)


@dataclass
class PathReport:
    valid: bool
    simple: bool
    positivity_witness: Weight | None
    problems: list[str]


def validate_weight_path(path: WeightPath) -> PathReport:
    """Check the spanning, positivity, and new-weight conditions.

    Positivity is decided exactly: the witness region {w : a_i(w) >= 1} is
    pointed (the weights span), so it is nonempty iff one of its vertices
    exists; every vertex solves r of the equalities a_i(w) = 1.
    """
    problems: list[str] = []
    r = path.rank
    n = len(path.weights)
    rows = [
        {j: w[j] for j in range(r) if w[j] != 0} for w in path.weights
    ]
    if linalg.rank(rows, r) != r:
        problems.append("weights do not span the dual space")

    witness: Weight | None = None
    for subset in itertools.combinations(range(n), r):
        mat = [[path.weights[i][j] for j in range(r)] for i in subset]
        try:
            inv = linalg.invert_dense(mat)
        except ValueError:
            continue
        cand = tuple(
            sum((inv[j][s] for s in range(r)), Fraction(0)) for j in range(r)
        )
        values = [
            sum((w[j] * cand[j] for j in range(r)), Fraction(0))
            for w in path.weights
        ]
        if all(v >= 1 for v in values):
            witness = cand
            break
    if witness is None:
        problems.append("no positivity witness exists")

    for m in range(path.n0, n):
        new = path.weights[m]
        diffs = {
            tuple(a - b for a, b in zip(wa, wb))
            for wa in path.weights[:m]
            for wb in path.weights[:m]
        }
        if new in diffs:
            problems.append(
                f"weight {m + 1} lies in the difference set of the first {m}"
            )
    return PathReport(not problems, path.is_simple(), witness, problems)


@dataclass
class GradedIndexSet:
    pairs: list[Pair]
    target: dict[Pair, int]
    simple: bool


def build_graded_index_set(path: WeightPath, n: int) -> GradedIndexSet:
    if not path.is_simple(n):
        raise NotImplementedError(
            "bracket coordinates need pairwise distinct weights"
        )
    pairs = []
    target = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            s = tuple(a + b for a, b in zip(path.weight(i), path.weight(j)))
            k = path.position(s, n)
            if k is not None:
                pairs.append((i, j))
                target[(i, j)] = k
    return GradedIndexSet(pairs, target, True)


def pair_variable(p: Pair) -> str:
    return f"X_{p[0]}_{p[1]}"


def _cyclic_terms(
    index: GradedIndexSet, i: int, j: int, k: int
) -> list[tuple[Pair, int, Pair, int]]:
    """Quadratic closure terms for the triple (i, j, k).

    Each term is (first_pair, first_sign, second_pair, second_sign): the
    product first * second enters the closure polynomial with the product
    of the signs.  Terms whose inner pair carries no weight are dropped.
    """
    out = []
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        pa = (a, b) if a < b else (b, a)
        sa = 1 if a < b else -1
        w = index.target.get(pa)
        if w is None:
            continue
        if w == c:
            continue
        pb = (w, c) if w < c else (c, w)
        sb = 1 if w < c else -1
        if pb not in index.target:
            continue
        out.append((pa, sa, pb, sb))
    return out


@dataclass
class GradedJacobiSystem:
    index: GradedIndexSet
    variables: tuple[str, ...]
    generators: list[SparsePoly]
    generator_triples: list[tuple[int, int, int]]


def graded_jacobi_system(path: WeightPath, n: int) -> GradedJacobiSystem:
    """Closure polynomials for a graded structure on the first n weights,
    one variable per bracket coordinate."""
    index = build_graded_index_set(path, n)
    variables = tuple(pair_variable(p) for p in index.pairs)
    var_pos = {p: i for i, p in enumerate(index.pairs)}
    gens = []
    triples = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                terms: dict[tuple[int, ...], Fraction] = {}
                for pa, sa, pb, sb in _cyclic_terms(index, i, j, k):
                    e = [0] * len(variables)
                    e[var_pos[pa]] += 1
                    e[var_pos[pb]] += 1
                    et = tuple(e)
                    c = terms.get(et, Fraction(0)) + sa * sb
                    if c == 0:
                        terms.pop(et, None)
                    else:
                        terms[et] = c
                if terms:
                    gens.append(SparsePoly.make(variables, terms))
                    triples.append((i, j, k))
    return GradedJacobiSystem(index, variables, gens, triples)


# ----------------------------------------------------------------------
# weight-space homology
# ----------------------------------------------------------------------

@dataclass
class WeightSpaceReport:
    beta: Weight
    pairs: list[Pair]
    dim_kernel: int
    dim_boundary: int
    nu: int


def h2_weight_space(
    L: LieAlgebra, weights: list[Weight], beta: Weight
) -> WeightSpaceReport:
    """Dimension data of the degree-2 homology in one weight.

    The wedge pairs of weight beta map to the algebra by the bracket; the
    kernel of that map modulo the boundaries of weight-beta triples has
    dimension nu, the number that classifies the next extension step.
    """
    beta = tuple(Fraction(x) for x in beta)
    m = L.dim
    if len(weights) < m:
        raise ValueError("need a weight for every basis vector")
    pairs = [
        (i, j)
        for i in range(1, m + 1)
        for j in range(i + 1, m + 1)
        if tuple(a + b for a, b in zip(weights[i - 1], weights[j - 1])) == beta
    ]
    pair_pos = {p: c for c, p in enumerate(pairs)}
    # bracket map on the weight-beta wedge space, rows per algebra index
    rows: list[Vector] = [dict() for _ in range(m)]
    for c, (i, j) in enumerate(pairs):
        for k, v in L.bracket_basis(i, j).items():
            rows[k - 1][c] = v
    kernel = linalg.kernel_basis([r for r in rows if r], len(pairs))

    boundary_vecs: list[Vector] = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for k in range(j + 1, m + 1):
                s = tuple(
                    a + b + c
                    for a, b, c in zip(weights[i - 1], weights[j - 1], weights[k - 1])
                )
                if s != beta:
                    continue
                vec: Vector = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for l, v in L.bracket_basis(a, b).items():
                        if l == c:
                            continue
                        p = (l, c) if l < c else (c, l)
                        sign = 1 if l < c else -1
                        pos = pair_pos.get(p)
                        if pos is None:
                            raise AssertionError(
                                "boundary leaves the weight-beta wedge space"
                            )
                        sacc = vec.get(pos, Fraction(0)) + sign * v
                        if sacc == 0:
                            vec.pop(pos, None)
                        else:
                            vec[pos] = sacc
                if vec:
                    boundary_vecs.append(vec)
    dim_boundary = linalg.rank(boundary_vecs, len(pairs))
    # boundaries lie inside the kernel, so nu is the difference
    nu = len(kernel) - dim_boundary
    return WeightSpaceReport(beta, pairs, len(kernel), dim_boundary, nu)


# ----------------------------------------------------------------------
# the extension driver
# ----------------------------------------------------------------------

class FiliationError(ValueError):
    pass


@dataclass
class StepHints:
    pivot: Pair | None = None
    free: list[Pair] = field(default_factory=list)
    a_value: Fraction = Fraction(1)


@dataclass
class ExtensionFiberReport:
    level: int
    beta: Weight
    pairs: list[Pair]
    nu: int
    case: str                       # "no_fiber" | "unique" | "parametric"
    pivot: Pair | None
    new_params: list[str]
    new_relations: list[SparsePoly]
    solved_level: dict[Pair, LocalFraction]


@dataclass
class FiliationState:
    path: WeightPath
    n: int
    params: tuple[str, ...]
    solved: dict[Pair, LocalFraction]
    a_choices: dict[int, tuple[Pair, Fraction]]
    relations: list[SparsePoly]
    unit_pool: list[SparsePoly]

    @staticmethod
    def from_algebra(L: LieAlgebra, path: WeightPath) -> "FiliationState":
        if L.dim > len(path.weights):
            raise FiliationError("algebra dimension exceeds the weight path")
        index = build_graded_index_set(path, L.dim)
        ring: tuple[str, ...] = ()
        solved: dict[Pair, LocalFraction] = {}
        for (i, j), out in L.brackets.items():
            for k, c in out.items():
                if index.target.get((i, j)) != k:
                    raise FiliationError(
                        f"bracket ({i},{j})->{k} violates the weight grading"
                    )
                solved[(i, j)] = LocalFraction.from_poly(
                    SparsePoly.const(ring, c)
                )
        return FiliationState(path, L.dim, ring, solved, {}, [], [])

    def relations_basis(self, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerResult:
        return groebner_basis(self.relations, "degrevlex", degree_cap)

    def algebra(self) -> LieAlgebra:
        """The base-point fiber: all parameters at zero."""
        index = build_graded_index_set(self.path, self.n)
        brackets: dict[Pair, dict[int, Fraction]] = {}
        for pair, lf in self.solved.items():
            val = lf.value_at_origin()
            if val != 0:
                brackets.setdefault(pair, {})[index.target[pair]] = val
        return LieAlgebra(self.n, brackets)

    def algebra_at(self, point: Mapping[str, Fraction | int]) -> LieAlgebra:
        """The fiber over a parameter point; display names are accepted.

        The point should satisfy the relations, otherwise the result can
        fail the Jacobi identity.
        """
        display = dict(zip(essential_names(len(self.params)), self.params))
        full = {p: Fraction(0) for p in self.params}
        for name, value in point.items():
            key = display.get(name, name)
            if key not in full:
                raise FiliationError(f"unknown parameter {name}")
            full[key] = Fraction(value)
        index = build_graded_index_set(self.path, self.n)
        brackets: dict[Pair, dict[int, Fraction]] = {}
        for pair, lf in self.solved.items():
            val = lf.evaluate(full)
            if val != 0:
                brackets.setdefault(pair, {})[index.target[pair]] = val
        return LieAlgebra(self.n, brackets)

    def weight_columns(self) -> list[list[Fraction]]:
        return [
            [self.path.weight(i)[s] for i in range(1, self.n + 1)]
            for s in range(self.path.rank)
        ]

    def presentation(self) -> QuotientPresentation:
        """Relations between the essential parameters, display-named."""
        names = essential_names(len(self.params))
        mapping = dict(zip(self.params, names))
        rels = [r.rename_variables(mapping) for r in self.relations]
        return QuotientPresentation(names, rels)

    def display_solved(self) -> dict[Pair, LocalFraction]:
        names = essential_names(len(self.params))
        mapping = dict(zip(self.params, names))
        return {
            p: lf.rename_variables(mapping) for p, lf in sorted(self.solved.items())
        }


def _is_unit_mod(
    num: SparsePoly, gb: GroebnerResult
) -> bool:
    nf = normal_form(num, gb.basis, gb.order) if gb.basis else num
    return nf.constant_term() != 0


def _strip_known_units(p: SparsePoly, pool: list[SparsePoly]) -> SparsePoly:
    changed = True
    while changed and not p.is_zero:
        changed = False
        for f in pool:
            if f.total_degree() < 1:
                continue
            q = poly_exact_div(p, f)
            if q is not None:
                p = q
                changed = True
    return p.primitive_part()


def central_extension_step(
    state: FiliationState,
    hints: StepHints | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> tuple[FiliationState | None, ExtensionFiberReport]:
    """Extend the graded algebra by the next weight level.

    The closure conditions of the new level are linear and homogeneous in
    the level's coordinates; the classifying number nu (computed at the
    base point) decides the outcome: nu=0 means no extension fiber, nu=1 a
    unique one, nu>1 a family with exactly nu-1 new essential parameters.
    One coordinate is pinned to the normalization value (the pivot); the
    rest are solved by unit-pivot elimination, and unsolvable combinations
    become relations between the parameters.
    """
    hints = hints or StepHints()
    path = state.path
    n = state.n
    if n >= len(path.weights):
        raise FiliationError("weight path is exhausted")
    beta = path.weight(n + 1)
    if not path.is_simple(n + 1):
        raise NotImplementedError("extension needs pairwise distinct weights")

    pairs = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if tuple(a + b for a, b in zip(path.weight(i), path.weight(j))) == beta
    ]
    index_n = build_graded_index_set(path, n)
    gb = state.relations_basis(degree_cap)

    # one linear row per closure triple of total weight beta
    triples = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                s = tuple(
                    a + b + c
                    for a, b, c in zip(path.weight(i), path.weight(j), path.weight(k))
                )
                if s == beta:
                    triples.append((i, j, k))

    ring = state.params
    zero = LocalFraction.from_const(ring, 0)

    rows: list[dict[Pair, LocalFraction]] = []
    for i, j, k in triples:
        row: dict[Pair, LocalFraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            pa = (a, b) if a < b else (b, a)
            sa = 1 if a < b else -1
            # the inner pair must carry an existing weight; a new-level pair
            # in first position would need a second factor beyond the path
            w = index_n.target.get(pa)
            if w is None:
                continue
            if w == c:
                continue
            known = state.solved.get(pa)
            if known is None or known.is_zero:
                continue
            pb = (w, c) if w < c else (c, w)
            sb = 1 if w < c else -1
            contrib = known.scale(sa * sb)
            cur = row.get(pb, zero)
            row[pb] = cur + contrib
        row = {p: v for p, v in row.items() if not v.is_zero}
        if row:
            rows.append(row)

    # nu from the base-point matrix over all level coordinates
    pair_pos = {p: c for c, p in enumerate(pairs)}
    base_rows: list[Vector] = []
    for row in rows:
        brow: Vector = {}
        for p, v in row.items():
            val = v.value_at_origin()
            if val != 0:
                brow[pair_pos[p]] = val
        if brow:
            base_rows.append(brow)
    nu = len(pairs) - linalg.rank(base_rows, len(pairs))

    if nu == 0:
        report = ExtensionFiberReport(
            n + 1, beta, pairs, 0, "no_fiber", None, [], [], {}
        )
        return None, report
    case = "unique" if nu == 1 else "parametric"

    pivot = hints.pivot or (pairs[0] if pairs else None)
    if pivot not in pairs:
        raise FiliationError(f"pivot {pivot} is not a level-{n + 1} coordinate")
    for f in hints.free:
        if f not in pairs or f == pivot:
            raise FiliationError(f"free hint {f} is not available at this level")

    a_value = Fraction(hints.a_value)
    if a_value == 0:
        raise FiliationError("normalization value must be nonzero")

    # move the pivot column to the constant side
    sys_rows: list[tuple[dict[Pair, LocalFraction], LocalFraction]] = []
    for row in rows:
        const = zero
        coeffs = {}
        for p, v in row.items():
            if p == pivot:
                const = const + v.scale(a_value)
            else:
                coeffs[p] = v
        sys_rows.append((coeffs, const))

    free_set = set(hints.free)
    columns = [p for p in pairs if p != pivot]
    pivot_exprs: list[tuple[Pair, LocalFraction, dict[Pair, LocalFraction], LocalFraction]] = []
    for col in columns:
        if col in free_set:
            continue
        hit = None
        for ri, (coeffs, const) in enumerate(sys_rows):
            cv = coeffs.get(col)
            if cv is not None and _is_unit_mod(cv.num, gb):
                hit = ri
                break
        if hit is None:
            free_set.add(col)
            continue
        coeffs, const = sys_rows.pop(hit)
        piv_coeff = coeffs.pop(col)
        pivot_exprs.append((col, piv_coeff, coeffs, const))
        new_rows = []
        for coeffs2, const2 in sys_rows:
            cv = coeffs2.get(col)
            if cv is None:
                new_rows.append((coeffs2, const2))
                continue
            factor = cv / piv_coeff
            coeffs3 = dict(coeffs2)
            coeffs3.pop(col)
            for p, v in coeffs.items():
                cur = coeffs3.get(p, zero)
                coeffs3[p] = cur - factor * v
            coeffs3 = {p: v for p, v in coeffs3.items() if not v.is_zero}
            const3 = const2 - factor * const
            new_rows.append((coeffs3, const3))
        sys_rows = new_rows

    free_cols = [p for p in columns if p in free_set]
    if len(free_cols) != nu - 1:
        raise FiliationError(
            f"level {n + 1}: {len(free_cols)} free coordinates but nu measures {nu}"
        )

    # extend the parameter ring by the newborn essentials
    new_param_names = [
        f"p{len(state.params) + i + 1}" for i in range(len(free_cols))
    ]
    new_ring = state.params + tuple(new_param_names)

    def ext(lf: LocalFraction) -> LocalFraction:
        return lf.extend_to(new_ring)

    values: dict[Pair, LocalFraction] = {pivot: LocalFraction.from_poly(
        SparsePoly.const(new_ring, a_value)
    )}
    for p, name in zip(free_cols, new_param_names):
        values[p] = LocalFraction.from_poly(SparsePoly.var(new_ring, name))
    for col, piv_coeff, coeffs, const in reversed(pivot_exprs):
        acc = ext(const)
        for p, v in coeffs.items():
            acc = acc + ext(v) * values[p]
        values[col] = (-acc) / ext(piv_coeff)

    # leftover rows become relations between the parameters
    old_relations = [r.extend_to(new_ring) for r in state.relations]
    gb_new = groebner_basis(old_relations, "degrevlex", degree_cap)
    unit_pool = [f.extend_to(new_ring) for f in state.unit_pool]
    for _, piv_coeff, _, _ in pivot_exprs:
        cand = piv_coeff.num.primitive_part().extend_to(new_ring)
        if cand.total_degree() >= 1 and cand not in unit_pool:
            unit_pool.append(cand)
    new_relations: list[SparsePoly] = []
    for coeffs, const in sys_rows:
        acc = ext(const)
        for p, v in coeffs.items():
            acc = acc + ext(v) * values[p]
        if acc.is_zero:
            continue
        rel = _strip_known_units(acc.num, unit_pool)
        rel = normal_form(rel, gb_new.basis, "degrevlex") if gb_new.basis else rel
        if rel.is_zero:
            continue
        rel = rel.primitive_part()
        new_relations.append(rel)
        old_relations.append(rel)
        gb_new = groebner_basis(old_relations, "degrevlex", degree_cap)

    solved = {p: ext(v) for p, v in state.solved.items()}
    for p, v in values.items():
        solved[p] = v

    a_choices = dict(state.a_choices)
    a_choices[n + 1] = (pivot, a_value)
    new_state = FiliationState(
        path,
        n + 1,
        new_ring,
        solved,
        a_choices,
        old_relations[: len(state.relations)] + new_relations,
        unit_pool,
    )

    report = ExtensionFiberReport(
        n + 1,
        beta,
        pairs,
        nu,
        case,
        pivot,
        list(new_param_names),
        list(new_relations),
        {p: values[p] for p in sorted(values)},
    )
    return new_state, report


@dataclass
class FiliationResult:
    steps: list[ExtensionFiberReport]
    state: FiliationState

    def presentation(self) -> QuotientPresentation:
        return self.state.presentation()


def filiation_run(
    path: WeightPath,
    target_dim: int,
    start: LieAlgebra,
    hints: dict[int, StepHints] | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> FiliationResult:
    """Run successive central extensions from ``start`` up to ``target_dim``.

    ``hints`` maps the level (the dimension being created) to pivot and
    free-coordinate choices; levels without hints use the earliest
    coordinate as pivot and let the elimination decide the free ones.
    """
    report = validate_weight_path(path)
    if not report.valid:
        raise FiliationError("; ".join(report.problems))
    if target_dim > len(path.weights):
        raise FiliationError("target dimension exceeds the weight path")
    hints = hints or {}
    state = FiliationState.from_algebra(start, path)
    steps: list[ExtensionFiberReport] = []
    while state.n < target_dim:
        level = state.n + 1
        new_state, step = central_extension_step(
            state, hints.get(level), degree_cap
        )
        steps.append(step)
        if new_state is None:
            raise FiliationError(
                f"no extension fiber at level {level} (nu = 0)"
            )
        state = new_state
    return FiliationResult(steps, state)


# ----------------------------------------------------------------------
# stratum membership
# ----------------------------------------------------------------------

@dataclass
class StratumReport:
    in_stratum: bool
    torus_rank: int
    commutant_dimension: int


def stratum_check(L: LieAlgebra, weight_columns: list[list[Fraction]]) -> StratumReport:
    """Is the torus of the given diagonal weights a maximal torus of
    derivations?  Membership in the open stratum means the commutant of the
    torus inside all derivations is the torus itself."""
    from .cohomology import DerivationSet, derivations, is_derivation

    torus = DerivationSet.diagonal(L.dim, weight_columns)
    for mat in torus.matrices:
        if not is_derivation(L, mat):
            raise ValueError("torus weights are not derivation weights for L")
    commutant = derivations(L, commuting_with=torus)
    dim = len(commutant.matrices)
    return StratumReport(dim == len(weight_columns), len(weight_columns), dim)
