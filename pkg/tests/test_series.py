import random
from fractions import Fraction

import sympy

from liedef.poly import parse_poly
from liedef.series import TruncatedSeries, evaluate_poly_on_series

from conftest import rand_fraction

VARS = ("s", "t")


def random_series(rng: random.Random, order=4, unit=False) -> TruncatedSeries:
    terms = {}
    for _ in range(5):
        e = (rng.randint(0, order), rng.randint(0, order))
        terms[e] = rand_fraction(rng)
    if unit:
        terms[(0, 0)] = Fraction(rng.choice((1, -1, 2)))
    return TruncatedSeries(VARS, order, terms)


def to_sympy(s: TruncatedSeries):
    xs = sympy.symbols(s.variables)
    out = sympy.Integer(0)
    for e, c in s.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, k in zip(xs, e):
            term *= x**k
        out += term
    return sympy.expand(out)


def truncate_sympy(expr, order):
    s, t = sympy.symbols(VARS)
    out = sympy.Integer(0)
    poly = sympy.Poly(expr, s, t)
    for (i, j), c in poly.terms():
        if i + j <= order:
            out += c * s**i * t**j
    return sympy.expand(out)


def test_mul_truncates_consistently():
    rng = random.Random(4)
    for _ in range(20):
        a = random_series(rng)
        b = random_series(rng)
        got = to_sympy(a * b)
        want = truncate_sympy(to_sympy(a) * to_sympy(b), 4)
        assert got == want


def test_inverse_is_reciprocal():
    rng = random.Random(8)
    for _ in range(20):
        a = random_series(rng, unit=True)
        inv = a.inverse()
        prod = a * inv
        assert prod.terms == {(0, 0): Fraction(1)}


def test_homogeneous_part_and_zero_through():
    s = TruncatedSeries(
        VARS, 4, {(0, 0): Fraction(0), (1, 0): Fraction(2), (1, 2): Fraction(5)}
    )
    h1 = s.homogeneous_part(1)
    assert h1 == {(1, 0): Fraction(2)}
    assert not s.zero_through(1)
    assert (s - s).zero_through(4)


def test_evaluate_poly_on_series():
    p = parse_poly("x^2 + 2*x + 1", ("x",))
    x = TruncatedSeries(VARS, 3, {(1, 0): Fraction(1)})  # x = s
    out = evaluate_poly_on_series(p, {"x": x}, 3)
    assert out.terms == {
        (0, 0): Fraction(1),
        (1, 0): Fraction(2),
        (2, 0): Fraction(1),
    }


def test_order_truncation_drops_high_degrees():
    s = TruncatedSeries(VARS, 2, {(3, 0): Fraction(1), (1, 0): Fraction(1)})
    assert s.terms == {(1, 0): Fraction(1)}
