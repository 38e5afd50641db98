"""Sparse multivariate polynomials over the rationals.

A polynomial carries its own ordered variable tuple; binary operations
require identical variable tuples (use ``extend_to`` to embed into a larger
ring).  Exponent vectors are tuples of non-negative ints keyed in a dict to
nonzero Fraction coefficients.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

Exponent = tuple[int, ...]

_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def monomial_key(order: str) -> Callable[[Exponent], object]:
    """Sort key such that max(key) is the leading monomial."""
    if order == "lex":
        return lambda e: e
    if order == "degrevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    raise ValueError(f"unknown monomial order: {order!r}")


def monomial_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class SparsePoly:
    variables: tuple[str, ...]
    terms: "frozenset[tuple[Exponent, Fraction]]"

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    @staticmethod
    def make(variables: Iterable[str], terms: Mapping[Exponent, Fraction]) -> "SparsePoly":
        vs = tuple(variables)
        for v in vs:
            if not _VAR_RE.match(v):
                raise ValueError(f"bad variable name: {v!r}")
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate variable names")
        clean = {}
        for e, c in terms.items():
            if len(e) != len(vs):
                raise ValueError("exponent length does not match variables")
            c = Fraction(c)
            if c != 0:
                clean[tuple(int(x) for x in e)] = c
        return SparsePoly(vs, frozenset(clean.items()))

    @staticmethod
    def zero(variables: Iterable[str]) -> "SparsePoly":
        return SparsePoly.make(variables, {})

    @staticmethod
    def const(variables: Iterable[str], c: Fraction | int) -> "SparsePoly":
        vs = tuple(variables)
        return SparsePoly.make(vs, {tuple([0] * len(vs)): Fraction(c)})

    @staticmethod
    def var(variables: Iterable[str], name: str) -> "SparsePoly":
        vs = tuple(variables)
        i = vs.index(name)
        e = [0] * len(vs)
        e[i] = 1
        return SparsePoly.make(vs, {tuple(e): Fraction(1)})

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    def coeffs(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.variables.index(name)
        return max(e[i] for e, _ in self.terms)

    def constant_term(self) -> Fraction:
        zero = tuple([0] * len(self.variables))
        for e, c in self.terms:
            if e == zero:
                return c
        return Fraction(0)

    def leading(self, order: str = "degrevlex") -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = monomial_key(order)
        e = max((e for e, _ in self.terms), key=key)
        return e, dict(self.terms)[e]

    def sorted_terms(self, order: str = "degrevlex") -> list[tuple[Exponent, Fraction]]:
        key = monomial_key(order)
        return sorted(self.terms, key=lambda t: key(t[0]), reverse=True)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _check(self, other: "SparsePoly") -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"incompatible polynomial rings: {self.variables} vs {other.variables}"
            )

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms:
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return SparsePoly(self.variables, frozenset(out.items()))

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.variables, frozenset((e, -c) for e, c in self.terms))

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = monomial_mul(e1, e2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return SparsePoly(self.variables, frozenset(out.items()))

    def scale(self, c: Fraction | int) -> "SparsePoly":
        c = Fraction(c)
        if c == 0:
            return SparsePoly.zero(self.variables)
        return SparsePoly(self.variables, frozenset((e, c * x) for e, x in self.terms))

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, e: Exponent, c: Fraction) -> "SparsePoly":
        if c == 0:
            return SparsePoly.zero(self.variables)
        return SparsePoly(
            self.variables,
            frozenset((monomial_mul(e, e2), c * c2) for e2, c2 in self.terms),
        )

    # ------------------------------------------------------------------
    # ring maps
    # ------------------------------------------------------------------
    def extend_to(self, variables: Iterable[str]) -> "SparsePoly":
        """Embed into a ring with more variables (must contain current ones)."""
        vs = tuple(variables)
        pos = []
        for v in self.variables:
            if v not in vs:
                raise ValueError(f"variable {v} missing from target ring")
            pos.append(vs.index(v))
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms:
            new_e = [0] * len(vs)
            for p, x in zip(pos, e):
                new_e[p] = x
            out[tuple(new_e)] = c
        return SparsePoly.make(vs, out)

    def rename_variables(self, mapping: Mapping[str, str]) -> "SparsePoly":
        vs = tuple(mapping.get(v, v) for v in self.variables)
        return SparsePoly.make(vs, dict(self.terms))

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        vals = [Fraction(point[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms:
            prod = c
            for x, n in zip(vals, e):
                if n:
                    prod *= x**n
            total += prod
        return total

    def substitute(self, assignment: Mapping[str, "SparsePoly"]) -> "SparsePoly":
        """Substitute polynomials for variables.

        Every value must live in one common ring; unsubstituted variables
        must be present in that ring under the same name.
        """
        if not assignment:
            return self
        target = next(iter(assignment.values())).variables
        for p in assignment.values():
            if p.variables != target:
                raise ValueError("substitution values must share one ring")
        images: list[SparsePoly] = []
        for v in self.variables:
            if v in assignment:
                images.append(assignment[v])
            else:
                images.append(SparsePoly.var(target, v))
        out = SparsePoly.zero(target)
        for e, c in self.terms:
            term = SparsePoly.const(target, c)
            for img, n in zip(images, e):
                if n:
                    term = term * img**n
            out = out + term
        return out

    def shift(self, offsets: Mapping[str, Fraction]) -> "SparsePoly":
        """Substitute v -> v + offsets[v] for the listed variables."""
        assignment = {}
        for v, a in offsets.items():
            assignment[v] = SparsePoly.var(self.variables, v) + SparsePoly.const(
                self.variables, a
            )
        return self.substitute(assignment)

    # ------------------------------------------------------------------
    # content and normalization
    # ------------------------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive; sign of leading
        degrevlex coefficient is preserved in the primitive part."""
        if not self.terms:
            return Fraction(1)
        nums = [c.numerator for _, c in self.terms]
        dens = [c.denominator for _, c in self.terms]
        g = 0
        for n in nums:
            g = math.gcd(g, abs(n))
        l = 1
        for d in dens:
            l = l * d // math.gcd(l, d)
        return Fraction(g, l)

    def primitive_part(self, order: str = "degrevlex") -> "SparsePoly":
        """Divide by content and normalize the leading coefficient positive."""
        if not self.terms:
            return self
        c = self.content()
        p = self.scale(1 / c)
        if p.leading(order)[1] < 0:
            p = -p
        return p

    def coefficient_in(self, name: str, power: int) -> "SparsePoly":
        """Coefficient of name**power, as a polynomial in the same ring with
        that variable's exponent zeroed."""
        i = self.variables.index(name)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms:
            if e[i] == power:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return SparsePoly.make(self.variables, out)

    def remove_variable(self, name: str) -> "SparsePoly":
        """Project to the subring without ``name``; requires degree <= 0 in it."""
        if self.degree_in(name) > 0:
            raise ValueError(f"polynomial still involves {name}")
        i = self.variables.index(name)
        vs = self.variables[:i] + self.variables[i + 1 :]
        out = {e[:i] + e[i + 1 :]: c for e, c in self.terms}
        return SparsePoly.make(vs, out)

    # ------------------------------------------------------------------
    # formatting
    # ------------------------------------------------------------------
    def monomial_str(self, e: Exponent) -> str:
        parts = []
        for v, n in zip(self.variables, e):
            if n == 1:
                parts.append(v)
            elif n > 1:
                parts.append(f"{v}^{n}")
        return "*".join(parts) if parts else "1"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e, c in self.sorted_terms("degrevlex"):
            mon = self.monomial_str(e)
            if mon == "1":
                body = str(c)
            elif c == 1:
                body = mon
            elif c == -1:
                body = f"-{mon}"
            else:
                body = f"{c}*{mon}"
            if chunks and not body.startswith("-"):
                chunks.append(f"+ {body}")
            elif chunks:
                chunks.append(f"- {body[1:]}")
            else:
                chunks.append(body)
        return " ".join(chunks)

    def __repr__(self) -> str:  # pragma: no cover
        return f"SparsePoly({str(self)!r})"


def poly_substitute(p: SparsePoly, assignment: Mapping[str, SparsePoly]) -> SparsePoly:
    return p.substitute(assignment)


def parse_poly(text: str, variables: Iterable[str]) -> SparsePoly:
    """Parse a polynomial from a restricted expression string.

    Accepts integers, fractions ``p/q``, the given variable names, ``+ - *``,
    ``^`` or ``**`` powers, and parentheses.
    """
    vs = tuple(variables)
    tokens = re.findall(r"\d+/\d+|\d+|[A-Za-z_][A-Za-z0-9_]*|\*\*|[()+\-*^]", text)
    if "".join(tokens).replace("**", "^") != re.sub(r"\s+", "", text).replace("**", "^"):
        raise ValueError(f"cannot tokenize polynomial: {text!r}")
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_atom() -> SparsePoly:
        tok = peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        if tok == "(":
            take()
            e = parse_sum()
            if peek() != ")":
                raise ValueError("missing closing parenthesis")
            take()
            return e
        if tok == "-":
            take()
            return -parse_atom()
        take()
        if re.fullmatch(r"\d+/\d+|\d+", tok):
            base = SparsePoly.const(vs, Fraction(tok))
        elif tok in vs:
            base = SparsePoly.var(vs, tok)
        else:
            raise ValueError(f"unknown symbol {tok!r}")
        if peek() in ("^", "**"):
            take()
            exp_tok = take()
            if not re.fullmatch(r"\d+", exp_tok):
                raise ValueError("exponent must be a literal integer")
            base = base ** int(exp_tok)
        return base

    def parse_product() -> SparsePoly:
        e = parse_atom()
        while peek() == "*":
            take()
            e = e * parse_atom()
        return e

    def parse_sum() -> SparsePoly:
        e = parse_product()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_product()
            e = e + rhs if op == "+" else e - rhs
        return e

    result = parse_sum()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return result
