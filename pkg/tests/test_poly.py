import random

import pytest

from frobsandwich.gf2k import field_make
from frobsandwich.poly import (MultiPoly, NotZeroDimensional, ParseError, divexact, divides, gcd,
                               local_quotient_dim, parse_element, parse_poly)


def P(text, k=1, vars=None):
    return parse_poly(text, field_make(k), vars)


def random_poly(ctx, vars, deg, terms, rng):
    t = {}
    for _ in range(terms):
        e = [rng.randint(0, deg) for _ in vars]
        while sum(e) > deg:
            e[rng.randrange(len(e))] -= 1
            e = [max(0, x) for x in e]
        t[tuple(e)] = rng.randrange(1, ctx.order)
    return MultiPoly(ctx, vars, t)


def test_parse_and_print():
    f = P("x^3 + x*y^2 + x")
    assert parse_poly(str(f), f.ctx) == f
    assert P("2*x + y - y") == P("0")
    assert str(P("(g+1)*x*y + g^2", 2)) == "(g + 1)*x*y + (g + 1)"
    assert P("(x+y)^2") == P("x^2 + y^2")
    assert parse_element("g^2", field_make(2)) == 3


def test_parse_errors_point_at_offender():
    with pytest.raises(ParseError) as ei:
        P("x + * y")
    assert ei.value.caret().splitlines()[-1] == "      ^"
    with pytest.raises(ParseError):
        P("x + z", vars=("x", "y"))
    with pytest.raises(ParseError):
        P("")
    with pytest.raises(ParseError):
        P("(x + y")


def test_derivative_char2():
    f = P("x^3 + x*y^2 + x^2 + x + y")
    assert f.derivative("x") == P("x^2 + y^2 + 1")
    assert f.derivative("y") == P("1")


@pytest.mark.parametrize("k", [1, 2])
def test_leibniz_and_square_kill(k):
    ctx = field_make(k)
    rng = random.Random(k)
    for _ in range(40):
        a = random_poly(ctx, ("x", "y"), 5, 4, rng)
        b = random_poly(ctx, ("x", "y"), 5, 4, rng)
        for v in ("x", "y"):
            assert (a * b).derivative(v) == a.derivative(v) * b + a * b.derivative(v)
            assert (a * a).derivative(v).is_zero()


def test_gcd_examples():
    assert gcd(P("x*y^2"), P("x^2+y^3")) == P("1")
    assert gcd(P("x^2"), P("x*y")) == P("x")
    assert gcd(P("y^2"), P("y^3+y^2*w")) == P("y^2")
    a = P("(x+y+1)^3*(x*y+1)")
    b = P("(x+y+1)*(x^2+y)^2")
    assert gcd(a, b) == P("x+y+1")
    assert gcd(P("0"), P("x+1")) == P("x+1")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gcd_divides_random_products(k):
    ctx = field_make(k)
    rng = random.Random(100 + k)
    for _ in range(25):
        c = random_poly(ctx, ("x", "y"), 2, 3, rng)
        a = random_poly(ctx, ("x", "y"), 3, 3, rng) * c
        b = random_poly(ctx, ("x", "y"), 3, 3, rng) * c
        if a.is_zero() or b.is_zero():
            continue
        g = gcd(a, b)
        assert divides(g, a) and divides(g, b)
        if not c.is_zero():
            assert divides(c.monic(), g)


def test_gcd_three_variables():
    a = P("(x*z + y)^2*(w + 1)")
    b = P("(x*z + y)*(x + w)")
    assert gcd(a, b) == P("x*z + y")


def test_divexact():
    assert divexact(P("x^2 + x*y"), P("x")) == P("x + y")
    with pytest.raises(ArithmeticError):
        divexact(P("x^2 + 1"), P("x"))


def test_local_quotient_dim_examples():
    assert local_quotient_dim([P("x"), P("y")]) == 1
    assert local_quotient_dim([P("x^2"), P("y^2")]) == 4
    # staircase 1, x, y, xy, y^2, y^3, y^4
    assert local_quotient_dim([P("x*y^2"), P("x^2+y^3")]) == 7
    # at (0, 1): with y = 1 + t the ideal is (x t^2, x^2 + t + t^2 + t^3), so t ~ x^2
    assert local_quotient_dim([P("x*y^2+x"), P("x^2+y^3+1")], {"x": 0, "y": 1}) == 5
    # units do not count
    assert local_quotient_dim([P("x+1"), P("y")]) == 0
    with pytest.raises(NotZeroDimensional):
        local_quotient_dim([P("x*y"), P("x*y^2")])


@pytest.mark.parametrize("k", [1, 2])
def test_local_dim_translation_invariance(k):
    ctx = field_make(k)
    rng = random.Random(7 * k)
    checked = 0
    while checked < 15:
        f = random_poly(ctx, ("x", "y"), 4, 3, rng)
        g = random_poly(ctx, ("x", "y"), 4, 3, rng)
        a, b = rng.randrange(ctx.order), rng.randrange(ctx.order)
        f = f + MultiPoly.const(ctx, f.evaluate({"x": a, "y": b}), ("x", "y"))
        g = g + MultiPoly.const(ctx, g.evaluate({"x": a, "y": b}), ("x", "y"))
        if not gcd(f, g).is_constant():
            continue
        here = local_quotient_dim([f, g], {"x": a, "y": b})
        moved = [p.translate({"x": a, "y": b}) for p in (f, g)]
        assert local_quotient_dim(moved) == here
        checked += 1


def test_substitute_and_evaluate():
    f = P("x*y + y^2")
    assert f.substitute({"x": P("x+1")}) == P("x*y + y + y^2")
    assert f.evaluate({"x": 1, "y": 1}) == 0
    assert P("x^3", 2).evaluate({"x": 2}) == 1
