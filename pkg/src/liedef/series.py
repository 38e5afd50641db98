"""Truncated multivariate power series over the rationals.

A series of order N keeps exactly the terms of total degree <= N; all
higher terms are discarded on every operation.  Variables are shared the
same way as for SparsePoly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import Exponent, SparsePoly


@dataclass
class TruncatedSeries:
    variables: tuple[str, ...]
    order: int
    terms: dict[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.variables = tuple(self.variables)
        clean = {}
        for e, c in self.terms.items():
            c = Fraction(c)
            if c != 0 and sum(e) <= self.order:
                clean[tuple(e)] = c
        self.terms = clean

    # ------------------------------------------------------------------
    @staticmethod
    def zero(variables: Sequence[str], order: int) -> "TruncatedSeries":
        return TruncatedSeries(tuple(variables), order, {})

    @staticmethod
    def const(variables: Sequence[str], order: int, c: Fraction | int) -> "TruncatedSeries":
        vs = tuple(variables)
        return TruncatedSeries(vs, order, {tuple([0] * len(vs)): Fraction(c)})

    @staticmethod
    def var(variables: Sequence[str], order: int, name: str) -> "TruncatedSeries":
        vs = tuple(variables)
        i = vs.index(name)
        e = [0] * len(vs)
        e[i] = 1
        return TruncatedSeries(vs, order, {tuple(e): Fraction(1)})

    @staticmethod
    def from_poly(p: SparsePoly, order: int) -> "TruncatedSeries":
        return TruncatedSeries(p.variables, order, dict(p.terms))

    def to_poly(self) -> SparsePoly:
        return SparsePoly.make(self.variables, self.terms)

    # ------------------------------------------------------------------
    def _check(self, other: "TruncatedSeries") -> None:
        if self.variables != other.variables or self.order != other.order:
            raise ValueError("incompatible series (variables or order differ)")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get(tuple([0] * len(self.variables)), Fraction(0))

    def homogeneous_part(self, degree: int) -> dict[Exponent, Fraction]:
        return {e: c for e, c in self.terms.items() if sum(e) == degree}

    def valuation(self) -> int | None:
        """Lowest total degree with a nonzero term; None for the zero series."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def zero_through(self, degree: int) -> bool:
        return all(sum(e) > degree for e in self.terms)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return TruncatedSeries(self.variables, self.order, out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.variables, self.order, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > self.order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return TruncatedSeries(self.variables, self.order, out)

    def scale(self, c: Fraction | int) -> "TruncatedSeries":
        c = Fraction(c)
        if c == 0:
            return TruncatedSeries.zero(self.variables, self.order)
        return TruncatedSeries(
            self.variables, self.order, {e: c * x for e, x in self.terms.items()}
        )

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ValueError("series is not a unit (zero constant term)")
        inv0 = Fraction(1) / c0
        # x_{k+1} = x_k (2 - a x_k) doubles correct order each step
        x = TruncatedSeries.const(self.variables, self.order, inv0)
        two = TruncatedSeries.const(self.variables, self.order, 2)
        correct = 0
        while correct < self.order:
            x = x * (two - self * x)
            correct = 2 * correct + 1
        return x

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise truncation order")
        return TruncatedSeries(self.variables, order, dict(self.terms))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.order == other.order
            and self.terms == other.terms
        )

    def __str__(self) -> str:
        return str(self.to_poly()) if self.terms else "0"


def evaluate_poly_on_series(
    p: SparsePoly, values: Mapping[str, TruncatedSeries], order: int
) -> TruncatedSeries:
    """Evaluate a polynomial with series values for every variable."""
    if p.nvars == 0:
        return TruncatedSeries.const((), order, p.constant_term())
    some = next(iter(values.values()))
    target_vars = some.variables
    out = TruncatedSeries.zero(target_vars, order)
    for v in p.variables:
        if v not in values:
            raise ValueError(f"no series value for variable {v}")
    for e, c in p.terms:
        term = TruncatedSeries.const(target_vars, order, c)
        for v, n in zip(p.variables, e):
            s = values[v]
            for _ in range(n):
                term = term * s
        out = out + term
    return out
