import random
from fractions import Fraction

import sympy

from liedef.ideals import (
    QuotientPresentation,
    groebner_basis,
    local_quotient,
    localize_at,
    monomial_ideal_is_prime,
    monomial_primes_over,
    nilpotency_order,
    normal_form,
    quotient_k_dimension,
)
from liedef.poly import SparsePoly, parse_poly

from conftest import rand_fraction

XY = ("x", "y")
XYZ = ("x", "y", "z")


def test_groebner_contains_derived_generator():
    # S-poly of x^2 and x*y - y reduces to y, so y joins the basis
    gens = [parse_poly("x^2", XY), parse_poly("x*y - y", XY)]
    res = groebner_basis(gens)
    assert res.complete
    strs = {str(p) for p in res.basis}
    assert strs == {"x^2", "y"}


def test_normal_form_idempotent_and_multiplicative():
    rng = random.Random(6)
    gens = [parse_poly("x^2 - y", XY), parse_poly("y^2 - 1", XY)]
    res = groebner_basis(gens)
    for _ in range(15):
        terms = {
            (rng.randint(0, 3), rng.randint(0, 3)): rand_fraction(rng)
            for _ in range(4)
        }
        p = SparsePoly.make(XY, terms)
        q = SparsePoly.make(
            XY,
            {
                (rng.randint(0, 3), rng.randint(0, 3)): rand_fraction(rng)
                for _ in range(4)
            },
        )
        np = normal_form(p, res.basis)
        assert normal_form(np, res.basis) == np
        lhs = normal_form(p * q, res.basis)
        rhs = normal_form(normal_form(p, res.basis) * normal_form(q, res.basis), res.basis)
        assert lhs == rhs


def test_groebner_ideal_membership_matches_sympy():
    rng = random.Random(13)
    xs = sympy.symbols(XYZ)
    for _ in range(8):
        gens = []
        for _ in range(2):
            terms = {
                (
                    rng.randint(0, 2),
                    rng.randint(0, 2),
                    rng.randint(0, 1),
                ): rand_fraction(rng)
                for _ in range(3)
            }
            p = SparsePoly.make(XYZ, terms)
            if not p.is_zero:
                gens.append(p)
        if not gens:
            continue
        res = groebner_basis(gens)
        if not res.complete:
            continue
        sy_gens = [sympy.sympify(str(p).replace("^", "**")) for p in gens]
        sy_basis = sympy.groebner(sy_gens, *xs, order="grevlex")
        probe = SparsePoly.make(
            XYZ,
            {
                (
                    rng.randint(0, 2),
                    rng.randint(0, 2),
                    rng.randint(0, 1),
                ): rand_fraction(rng)
                for _ in range(3)
            },
        )
        ours = normal_form(probe, res.basis).is_zero
        theirs = sy_basis.reduce(sympy.sympify(str(probe).replace("^", "**")))[1] == 0
        assert ours == theirs


def test_quotient_k_dimension_monomial_product():
    rng = random.Random(17)
    for _ in range(10):
        exps = [rng.randint(1, 4) for _ in range(3)]
        gens = [
            SparsePoly.make(XYZ, {tuple(e if i == j else 0 for j in range(3)): Fraction(1)})
            for i, e in enumerate(exps)
        ]
        rep = quotient_k_dimension(QuotientPresentation(XYZ, gens))
        assert rep.finite and rep.dimension == exps[0] * exps[1] * exps[2]


def test_quotient_k_dimension_infinite():
    rep = quotient_k_dimension(QuotientPresentation(XY, [parse_poly("x*y", XY)]))
    assert rep.complete and not rep.finite


def test_localize_strips_unit_factors():
    pres = QuotientPresentation(
        ("t",), [parse_poly("10*t^6 - t^5", ("t",))]
    )
    local = localize_at(pres, [Fraction(0)])
    assert [str(r) for r in local.relations] == ["t^5"]


def test_local_quotient_at_origin_of_principal_ideal():
    pres = QuotientPresentation(("t",), [parse_poly("10*t^6 - t^5", ("t",))])
    rep = local_quotient(pres, [Fraction(0)])
    assert rep.finite and rep.dimension == 5
    assert nilpotency_order(rep.presentation, "t") == 5


def test_local_quotient_at_companion_point():
    pres = QuotientPresentation(("t",), [parse_poly("10*t^6 - t^5", ("t",))])
    rep = local_quotient(pres, [Fraction(1, 10)])
    assert rep.finite and rep.dimension == 1


def test_local_quotient_separates_components():
    # V(x*y, y^2 - y) is the x axis together with the point (0, 1); the
    # global quotient is infinite dimensional, the origin stays infinite
    # (the axis passes through it) while (0, 1) is a simple point
    gens = [parse_poly("x*y", XY), parse_poly("y^2 - y", XY)]
    glob = quotient_k_dimension(QuotientPresentation(XY, gens))
    assert not glob.finite
    loc0 = local_quotient(QuotientPresentation(XY, gens), [Fraction(0), Fraction(0)])
    assert not loc0.finite  # the x axis survives at the origin
    loc1 = local_quotient(QuotientPresentation(XY, gens), [Fraction(0), Fraction(1)])
    assert loc1.finite and loc1.dimension == 1


def test_local_quotient_positive_dimensional():
    pres = QuotientPresentation(XY, [parse_poly("x*y", XY)])
    rep = local_quotient(pres, [Fraction(0), Fraction(0)])
    assert rep.complete and not rep.finite


def test_monomial_prime_detection():
    assert monomial_ideal_is_prime([(1, 0), (0, 1)])[0]
    assert monomial_ideal_is_prime([(1, 0)])[0]
    ok, why = monomial_ideal_is_prime([(1, 1)])
    assert not ok and "witness" in why or not ok


def test_monomial_primes_over_uv():
    found = monomial_primes_over([parse_poly("u*v", ("u", "v"))], degree_cap=3)
    normalized = {
        (tuple(sorted(gens)), maximal) for gens, maximal in found
    }
    assert normalized == {
        (((0, 1),), False),
        (((1, 0),), False),
        (((0, 1), (1, 0)), True),
    }
