"""Polynomial ideals: division, Buchberger bases, quotient dimensions,
localization at a point, and a monomial-prime scan.

Gröbner computations carry a degree cap and an explicit completeness flag;
callers must treat results with ``complete=False`` as inconclusive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import (
    Exponent,
    SparsePoly,
    monomial_div,
    monomial_divides,
    monomial_key,
    monomial_lcm,
    monomial_mul,
)

DEFAULT_DEGREE_CAP = 20


@dataclass
class PolyIdeal:
    variables: tuple[str, ...]
    generators: list[SparsePoly]
    order: str = "degrevlex"

    def __post_init__(self) -> None:
        self.variables = tuple(self.variables)
        gens = []
        for g in self.generators:
            if g.variables != self.variables:
                raise ValueError("generator lives in a different ring")
            if not g.is_zero:
                gens.append(g)
        self.generators = gens


@dataclass
class GroebnerResult:
    basis: list[SparsePoly]
    complete: bool
    order: str
    degree_cap: int

    def normal_form(self, p: SparsePoly) -> SparsePoly:
        return normal_form(p, self.basis, self.order)

    def contains(self, p: SparsePoly) -> bool | None:
        nf = self.normal_form(p)
        if nf.is_zero:
            return True
        return False if self.complete else None


def normal_form(p: SparsePoly, basis: Sequence[SparsePoly], order: str = "degrevlex") -> SparsePoly:
    """Full remainder of multivariate division by the listed reducers.

    Deterministic: at each step the leading term is reduced by the first
    reducer whose leading monomial divides it; irreducible leading terms are
    moved to the remainder.
    """
    if not basis:
        return p
    key = monomial_key(order)
    remainder: dict[Exponent, Fraction] = {}
    work = dict(p.terms)
    lead = [(g.leading(order), g) for g in basis if not g.is_zero]
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        reduced = False
        for (ge, gc), g in lead:
            if monomial_divides(ge, e):
                factor_e = monomial_div(e, ge)
                factor_c = c / gc
                for e2, c2 in g.terms:
                    e3 = monomial_mul(factor_e, e2)
                    if e3 == e:
                        continue
                    s = work.get(e3, Fraction(0)) - factor_c * c2
                    if s == 0:
                        work.pop(e3, None)
                    else:
                        work[e3] = s
                reduced = True
                break
        if not reduced:
            remainder[e] = c
    return SparsePoly.make(p.variables, remainder)


def _spoly(f: SparsePoly, g: SparsePoly, order: str) -> SparsePoly:
    fe, fc = f.leading(order)
    ge, gc = g.leading(order)
    l = monomial_lcm(fe, ge)
    a = f.mul_monomial(monomial_div(l, fe), Fraction(1) / fc)
    b = g.mul_monomial(monomial_div(l, ge), Fraction(1) / gc)
    return a - b


def groebner_basis(
    ideal: PolyIdeal | Sequence[SparsePoly],
    order: str | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> GroebnerResult:
    """Buchberger's algorithm with the coprime-leading-term criterion and a
    normal (smallest-lcm-first) selection strategy.

    S-polynomial remainders whose leading degree exceeds ``degree_cap`` are
    discarded and the result is flagged incomplete.  The returned basis is
    the unique reduced basis whenever ``complete`` is true.
    """
    if isinstance(ideal, PolyIdeal):
        gens = list(ideal.generators)
        order = order or ideal.order
    else:
        gens = [g for g in ideal if not g.is_zero]
        order = order or "degrevlex"
    if not gens:
        return GroebnerResult([], True, order, degree_cap)
    variables = gens[0].variables

    G: list[SparsePoly] = []
    complete = True
    for g in gens:
        if g.variables != variables:
            raise ValueError("generators live in different rings")
        G.append(g)

    pairs: list[tuple[int, int]] = [(i, j) for j in range(len(G)) for i in range(j)]

    def lcm_of(i: int, j: int) -> Exponent:
        return monomial_lcm(G[i].leading(order)[0], G[j].leading(order)[0])

    guard = 0
    while pairs:
        guard += 1
        if guard > 200000:
            complete = False
            break
        pairs.sort(key=lambda ij: (sum(lcm_of(*ij)), ij))
        i, j = pairs.pop(0)
        fe = G[i].leading(order)[0]
        ge = G[j].leading(order)[0]
        if monomial_lcm(fe, ge) == monomial_mul(fe, ge):
            continue
        s = _spoly(G[i], G[j], order)
        nf = normal_form(s, G, order)
        if nf.is_zero:
            continue
        if nf.total_degree() > degree_cap:
            complete = False
            continue
        G.append(nf)
        k = len(G) - 1
        pairs.extend((m, k) for m in range(k))

    G = _reduce_basis(G, order)
    return GroebnerResult(G, complete, order, degree_cap)


def _reduce_basis(G: list[SparsePoly], order: str) -> list[SparsePoly]:
    key = monomial_key(order)
    G = [g for g in G if not g.is_zero]
    # minimalize: drop generators whose leading monomial is divisible by another's
    lead = [g.leading(order)[0] for g in G]
    keep = []
    for i, e in enumerate(lead):
        if any(
            j != i and monomial_divides(lead[j], e) and (lead[j] != e or j < i)
            for j in range(len(G))
        ):
            continue
        keep.append(G[i])
    # interreduce tails and normalize leading coefficients
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        nf = normal_form(g, others, order) if others else g
        if nf.is_zero:
            continue
        e, c = nf.leading(order)
        reduced.append(nf.scale(Fraction(1) / c))
    reduced.sort(key=lambda g: key(g.leading(order)[0]))
    return reduced


@dataclass
class QuotientPresentation:
    """A quotient ring K[variables]/<relations> with a marked base point."""

    variables: tuple[str, ...]
    relations: list[SparsePoly]
    base_point: tuple[Fraction, ...] = field(default=())

    def __post_init__(self) -> None:
        self.variables = tuple(self.variables)
        if not self.base_point:
            self.base_point = tuple(Fraction(0) for _ in self.variables)
        self.base_point = tuple(Fraction(x) for x in self.base_point)
        if len(self.base_point) != len(self.variables):
            raise ValueError("base point length does not match variables")
        for r in self.relations:
            if r.variables != self.variables:
                raise ValueError("relation lives in a different ring")


@dataclass
class KDimReport:
    finite: bool
    dimension: int | None
    complete: bool
    leading_monomials: list[Exponent]


def quotient_k_dimension(
    presentation: QuotientPresentation | Sequence[SparsePoly],
    order: str = "degrevlex",
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> KDimReport:
    """Vector-space dimension of K[x]/I via the standard-monomial staircase.

    The quotient is finite-dimensional iff every variable has a pure power
    among the leading monomials of a Gröbner basis; the dimension counts
    monomials outside the leading-term ideal.
    """
    relations = (
        list(presentation.relations)
        if isinstance(presentation, QuotientPresentation)
        else list(presentation)
    )
    if not relations:
        if isinstance(presentation, QuotientPresentation) and not presentation.variables:
            return KDimReport(True, 1, True, [])
        nvars = len(presentation.variables) if isinstance(presentation, QuotientPresentation) else 0
        return KDimReport(nvars == 0, 1 if nvars == 0 else None, True, [])
    gb = groebner_basis(relations, order, degree_cap)
    lead = [g.leading(order)[0] for g in gb.basis]
    if any(sum(e) == 0 for e in lead):
        # the ideal is the whole ring
        return KDimReport(True, 0, gb.complete, lead)
    nvars = len(relations[0].variables)
    caps: list[int | None] = [None] * nvars
    for e in lead:
        support = [i for i, x in enumerate(e) if x > 0]
        if len(support) == 1:
            i = support[0]
            if caps[i] is None or e[i] < caps[i]:
                caps[i] = e[i]
    if any(c is None for c in caps):
        return KDimReport(False, None, gb.complete, lead)
    count = 0
    for mono in itertools.product(*(range(c) for c in caps)):  # type: ignore[arg-type]
        if not any(monomial_divides(e, mono) for e in lead):
            count += 1
    return KDimReport(True, count, gb.complete, lead)


def _strip_unit_factors(p: SparsePoly) -> SparsePoly:
    """Replace a generator by a local associate at the origin.

    Extracts the monomial content x^a; if the cofactor is a unit at the
    origin (nonzero constant term) only the monomial survives.  Generators
    with nonzero constant term are units and become 1.
    """
    if p.is_zero:
        return p
    if p.constant_term() != 0:
        return SparsePoly.const(p.variables, 1)
    exps = [e for e, _ in p.terms]
    gcd_exp = tuple(min(e[i] for e in exps) for i in range(p.nvars))
    if sum(gcd_exp) == 0:
        return p.primitive_part()
    shifted = {monomial_div(e, gcd_exp): c for e, c in p.terms}
    cofactor = SparsePoly.make(p.variables, shifted)
    if cofactor.constant_term() != 0:
        return SparsePoly.make(p.variables, {gcd_exp: Fraction(1)})
    return p.primitive_part()


def localize_at(
    presentation: QuotientPresentation, point: Sequence[Fraction]
) -> QuotientPresentation:
    """Move ``point`` to the origin and strip detectable unit factors.

    After the shift each generator is replaced by a local associate: factors
    that are units at the origin (nonzero constant term, including unit
    cofactors of a monomial content) are removed.  For univariate generators
    this is exact; a multivariate generator whose non-monomial cofactor
    vanishes at the origin is kept as is.
    """
    point = tuple(Fraction(x) for x in point)
    if len(point) != len(presentation.variables):
        raise ValueError("point length does not match variables")
    offsets = {v: x for v, x in zip(presentation.variables, point)}
    shifted = [r.shift(offsets) for r in presentation.relations]
    stripped = [_strip_unit_factors(r) for r in shifted if not r.is_zero]
    return QuotientPresentation(presentation.variables, stripped)


@dataclass
class LocalRingReport:
    """Dimension data of the local factor of a quotient at a point."""

    finite: bool
    dimension: int | None
    complete: bool
    stable_order: int | None
    presentation: QuotientPresentation | None

    def nilpotency_order_of(
        self, name: str, degree_cap: int = DEFAULT_DEGREE_CAP
    ) -> int | None:
        if self.presentation is None:
            return None
        return nilpotency_order(self.presentation, name, degree_cap=degree_cap)


def _power_monomials(variables: tuple[str, ...], total: int) -> list[SparsePoly]:
    out = []
    for e in itertools.product(range(total + 1), repeat=len(variables)):
        if sum(e) == total:
            out.append(SparsePoly.make(variables, {e: Fraction(1)}))
    return out


def local_quotient(
    presentation: QuotientPresentation,
    point: Sequence[Fraction] | None = None,
    order: str = "degrevlex",
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> LocalRingReport:
    """Dimension of the localization of K[x]/I at a point of its variety.

    The point is moved to the origin and detectable unit factors are
    stripped; then the jet dimensions dim K[x]/(I + m^N) are computed for
    growing N.  Two consecutive equal values certify (by Nakayama) that
    m^N lies in the local ideal, so the stable value is the multiplicity
    of the point and I + m^N presents the local ring exactly.
    """
    if point is None:
        point = presentation.base_point
    local = localize_at(presentation, point)
    variables = local.variables
    if not variables:
        return LocalRingReport(True, 1, True, 0, local)
    if any(
        r.total_degree() == 0 and not r.is_zero for r in local.relations
    ):
        # a unit in the ideal: the point is not on the variety
        return LocalRingReport(True, 0, True, 0, local)

    global_report = quotient_k_dimension(local, order, degree_cap)
    if global_report.complete and global_report.finite:
        max_n = (global_report.dimension or 0) + 2
    else:
        max_n = degree_cap

    complete = global_report.complete
    prev: int | None = None
    for n in range(1, max_n + 1):
        jet = list(local.relations) + _power_monomials(variables, n)
        rep = quotient_k_dimension(jet, order, degree_cap)
        complete = complete and rep.complete
        if not rep.complete:
            break
        if prev is not None and rep.dimension == prev:
            stable = QuotientPresentation(
                variables,
                list(local.relations) + _power_monomials(variables, n - 1),
            )
            return LocalRingReport(True, prev, True, n - 1, stable)
        prev = rep.dimension
    return LocalRingReport(False, None, complete, None, None)


def nilpotency_order(
    presentation: QuotientPresentation,
    name: str,
    order: str = "degrevlex",
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> int | None:
    """Least e with name**e = 0 in the quotient, or None if none is found
    below the cap (or the basis is incomplete)."""
    gb = groebner_basis(presentation.relations, order, degree_cap)
    if not gb.complete:
        return None
    x = SparsePoly.var(presentation.variables, name)
    power = SparsePoly.const(presentation.variables, 1)
    for e in range(1, degree_cap + 1):
        power = normal_form(power * x, gb.basis, order)
        if power.is_zero:
            return e
    return None


# ----------------------------------------------------------------------
# monomial prime scan
# ----------------------------------------------------------------------

def _monomial_minimal_generators(monos: Iterable[Exponent]) -> list[Exponent]:
    monos = sorted(set(monos))
    out = []
    for m in monos:
        if not any(o != m and monomial_divides(o, m) for o in monos):
            out.append(m)
    return out


def monomial_ideal_is_prime(gens: Sequence[Exponent]) -> tuple[bool, str]:
    """Primality of a monomial ideal via the product-membership criterion.

    A monomial ideal is prime iff its minimal generators are single
    variables: any other minimal generator m factors as m1*m2 with neither
    factor in the ideal, which is an explicit witness against primality.
    """
    minimal = _monomial_minimal_generators(gens)
    if any(sum(e) == 0 for e in minimal):
        return False, "contains a unit, hence is the whole ring"
    for m in minimal:
        if sum(m) == 1:
            continue
        # split off one variable occurrence: m = m1 * m2 with m1 a variable.
        # Minimality of m means neither proper divisor lies in the ideal,
        # so the pair (m1, m2) witnesses failure of primality.
        i = next(k for k, x in enumerate(m) if x > 0)
        m1 = tuple(1 if k == i else 0 for k in range(len(m)))
        m2 = monomial_div(m, m1)
        assert not any(monomial_divides(g, m1) for g in minimal)
        assert not any(monomial_divides(g, m2) for g in minimal)
        return False, f"product witness {m1} * {m2} at generator {m}"
    return True, "generated by variables; quotient is a polynomial ring"


def monomial_primes_over(
    relations: Sequence[SparsePoly],
    degree_cap: int = 3,
    order: str = "degrevlex",
) -> list[tuple[list[Exponent], bool]]:
    """All monomial prime ideals containing the given relations, generated in
    degrees up to the cap, each with its maximality flag.

    Candidates are ideals generated by subsets of variables (the only
    monomial primes, as certified by ``monomial_ideal_is_prime``); the scan
    nevertheless enumerates every antichain of monomials up to the cap and
    filters by the primality test, so the classification is checked rather
    than assumed.
    """
    if not relations:
        raise ValueError("need at least one relation")
    variables = relations[0].variables
    nvars = len(variables)
    monos = [
        e
        for e in itertools.product(range(degree_cap + 1), repeat=nvars)
        if 0 < sum(e) <= degree_cap
    ]
    results: list[tuple[list[Exponent], bool]] = []
    seen: set[tuple[Exponent, ...]] = set()
    for r in range(1, len(monos) + 1):
        for combo in itertools.combinations(monos, r):
            minimal = _monomial_minimal_generators(combo)
            if len(minimal) != len(combo):
                continue  # not an antichain; the same ideal appears elsewhere
            key = tuple(sorted(minimal))
            if key in seen:
                continue
            seen.add(key)
            prime, _ = monomial_ideal_is_prime(minimal)
            if not prime:
                continue
            ideal_gens = [SparsePoly.make(variables, {e: Fraction(1)}) for e in minimal]
            if not all(normal_form(rel, ideal_gens, order).is_zero for rel in relations):
                continue
            kdim = quotient_k_dimension(list(ideal_gens), order)
            maximal = bool(kdim.finite and kdim.dimension == 1)
            results.append((minimal, maximal))
    results.sort(key=lambda t: (len(t[0]), t[0]))
    return results
