"""Fractions of polynomials that are regular at the origin.

A LocalFraction is num / (scalar * prod f_i^{e_i}) where every factor f_i
is a primitive polynomial with nonzero constant term (a unit in the local
ring at the origin).  The factored denominator is kept unexpanded so that
cancellation against pivot factors stays cheap and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import Exponent, SparsePoly, monomial_div, monomial_divides
from .series import TruncatedSeries


def _rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    from math import gcd

    if a == 0:
        return abs(b) if b != 0 else Fraction(1)
    if b == 0:
        return abs(a)
    n = gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(n, a.denominator * b.denominator)


def poly_exact_div(a: SparsePoly, b: SparsePoly) -> SparsePoly | None:
    """Exact quotient a / b, or None when b does not divide a."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero:
        return a
    if a.variables != b.variables:
        raise ValueError("operands live in different rings")
    order = "degrevlex"
    be, bc = b.leading(order)
    work = dict(a.terms)
    quotient: dict[Exponent, Fraction] = {}
    from .poly import monomial_key, monomial_mul

    key = monomial_key(order)
    while work:
        e = max(work, key=key)
        c = work[e]
        if not monomial_divides(be, e):
            return None
        qe = monomial_div(e, be)
        qc = c / bc
        quotient[qe] = qc
        for e2, c2 in b.terms:
            e3 = monomial_mul(qe, e2)
            s = work.get(e3, Fraction(0)) - qc * c2
            if s == 0:
                work.pop(e3, None)
            else:
                work[e3] = s
    return SparsePoly.make(a.variables, quotient)


@dataclass(frozen=True)
class LocalFraction:
    num: SparsePoly
    den_factors: tuple[tuple[SparsePoly, int], ...] = ()
    den_scalar: Fraction = Fraction(1)

    # ------------------------------------------------------------------
    @staticmethod
    def make(
        num: SparsePoly,
        den_factors: Sequence[tuple[SparsePoly, int]] = (),
        den_scalar: Fraction | int = 1,
    ) -> "LocalFraction":
        den_scalar = Fraction(den_scalar)
        if den_scalar == 0:
            raise ZeroDivisionError("zero denominator scalar")
        if num.is_zero:
            return LocalFraction(num, (), Fraction(1))
        merged: dict[SparsePoly, int] = {}
        for f, e in den_factors:
            if e == 0:
                continue
            if e < 0:
                raise ValueError("negative denominator exponent")
            if f.constant_term() == 0:
                raise ValueError("denominator factor is not a unit at the origin")
            content = f.content()
            prim = f.primitive_part()
            if f.leading()[1] < 0:
                content = -content
            den_scalar *= content**e
            merged[prim] = merged.get(prim, 0) + e
        # cancel factors into the numerator where division is exact
        for f in sorted(merged, key=str):
            e = merged[f]
            while e > 0:
                q = poly_exact_div(num, f)
                if q is None:
                    break
                num = q
                e -= 1
            merged[f] = e
        factors = tuple(
            sorted(((f, e) for f, e in merged.items() if e > 0), key=lambda t: str(t[0]))
        )
        if den_scalar < 0:
            den_scalar = -den_scalar
            num = -num
        g = _rational_gcd(num.content(), den_scalar)
        if g != 1:
            num = num.scale(1 / g)
            den_scalar = den_scalar / g
        return LocalFraction(num, factors, den_scalar)

    @staticmethod
    def from_poly(p: SparsePoly) -> "LocalFraction":
        return LocalFraction.make(p)

    @staticmethod
    def from_const(variables: Sequence[str], c: Fraction | int) -> "LocalFraction":
        return LocalFraction.make(SparsePoly.const(tuple(variables), c))

    # ------------------------------------------------------------------
    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def den_poly(self) -> SparsePoly:
        out = SparsePoly.const(self.variables, self.den_scalar)
        for f, e in self.den_factors:
            out = out * f**e
        return out

    def is_unit_at_origin(self) -> bool:
        return self.num.constant_term() != 0

    def value_at_origin(self) -> Fraction:
        den = self.den_scalar
        for f, e in self.den_factors:
            den *= f.constant_term() ** e
        return self.num.constant_term() / den

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        den = self.den_scalar
        for f, e in self.den_factors:
            v = f.evaluate(point)
            if v == 0:
                raise ZeroDivisionError("denominator vanishes at the point")
            den *= v**e
        return self.num.evaluate(point) / den

    # ------------------------------------------------------------------
    def _check(self, other: "LocalFraction") -> None:
        if self.variables != other.variables:
            raise ValueError("operands live in different rings")

    def __add__(self, other: "LocalFraction") -> "LocalFraction":
        self._check(other)
        num = self.num * other.den_poly() + other.num * self.den_poly()
        factors = list(self.den_factors) + list(other.den_factors)
        return LocalFraction.make(num, factors, self.den_scalar * other.den_scalar)

    def __neg__(self) -> "LocalFraction":
        return LocalFraction(-self.num, self.den_factors, self.den_scalar)

    def __sub__(self, other: "LocalFraction") -> "LocalFraction":
        return self + (-other)

    def __mul__(self, other: "LocalFraction") -> "LocalFraction":
        self._check(other)
        return LocalFraction.make(
            self.num * other.num,
            list(self.den_factors) + list(other.den_factors),
            self.den_scalar * other.den_scalar,
        )

    def scale(self, c: Fraction | int) -> "LocalFraction":
        c = Fraction(c)
        if c == 0:
            return LocalFraction.make(SparsePoly.zero(self.variables))
        return LocalFraction(self.num.scale(c), self.den_factors, self.den_scalar)

    def reciprocal(self) -> "LocalFraction":
        if not self.is_unit_at_origin():
            raise ZeroDivisionError("fraction is not a unit at the origin")
        num = self.den_poly()
        return LocalFraction.make(num, [(self.num, 1)])

    def __truediv__(self, other: "LocalFraction") -> "LocalFraction":
        return self * other.reciprocal()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LocalFraction):
            return (self.num * other.den_poly()) == (other.num * self.den_poly())
        return NotImplemented

    def __hash__(self) -> int:
        raise TypeError("LocalFraction is not hashable")

    # ------------------------------------------------------------------
    def extend_to(self, variables: Sequence[str]) -> "LocalFraction":
        vs = tuple(variables)
        if vs == self.variables:
            return self
        return LocalFraction(
            self.num.extend_to(vs),
            tuple((f.extend_to(vs), e) for f, e in self.den_factors),
            self.den_scalar,
        )

    def rename_variables(self, mapping: Mapping[str, str]) -> "LocalFraction":
        return LocalFraction(
            self.num.rename_variables(mapping),
            tuple((f.rename_variables(mapping), e) for f, e in self.den_factors),
            self.den_scalar,
        )

    def series_expand(self, order: int) -> TruncatedSeries:
        num = TruncatedSeries.from_poly(self.num, order)
        den = TruncatedSeries.from_poly(self.den_poly(), order)
        return num * den.inverse()

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        num = str(self.num)
        if not self.den_factors:
            if self.den_scalar == 1:
                return num
            return f"({num}) / {self.den_scalar}"
        parts = []
        if self.den_scalar != 1:
            parts.append(str(self.den_scalar))
        for f, e in self.den_factors:
            base = f"({f})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return f"({num}) / ({'*'.join(parts)})"

    def __repr__(self) -> str:  # pragma: no cover
        return f"LocalFraction({str(self)!r})"


def poly_on_localfracs(
    p: SparsePoly, values: Mapping[str, LocalFraction]
) -> LocalFraction:
    """Evaluate a polynomial with LocalFraction values for its variables."""
    some = next(iter(values.values()), None)
    if some is None:
        raise ValueError("need at least one value to fix the target ring")
    target = some.variables
    out = LocalFraction.from_const(target, 0)
    for v in p.variables:
        if v not in values:
            raise ValueError(f"no value for variable {v}")
    for e, c in p.terms:
        term = LocalFraction.from_const(target, c)
        for v, n in zip(p.variables, e):
            val = values[v]
            for _ in range(n):
                term = term * val
        out = out + term
    return out
