from __future__ import annotations

import math

import pytest
import sympy

from hypovir.maps import C, MapExpr, Z, one_point_Tk1, schwarzian, transformation_check

W = sympy.Symbol("w")

SQUARE = MapExpr(Z**2)
EXP = MapExpr(sympy.exp(Z))
IDENT = MapExpr.identity()


def test_from_string_and_compose():
    m = MapExpr.from_string("exp(z)")
    assert m.expr == sympy.exp(Z)
    comp = SQUARE.compose(EXP)
    assert sympy.simplify(comp.expr - sympy.exp(2 * Z)) == 0
    with pytest.raises(ValueError):
        MapExpr.from_string("a*z + q")


def test_mobius_guard():
    with pytest.raises(ValueError):
        MapExpr.mobius(1, 2, 2, 4)


def test_schwarzian_annihilates_mobius():
    for a, b, c, d in [(1, 0, 0, 1), (2, 1, 1, 1), (0, 1, 1, 0), (3, -2, 5, 1)]:
        m = MapExpr.mobius(a, b, c, d)
        assert sympy.simplify(schwarzian(m, W)) == 0


def test_schwarzian_values():
    assert sympy.simplify(schwarzian(SQUARE, W) + sympy.Rational(3, 2) / W**2) == 0
    assert schwarzian(EXP, W) == sympy.Rational(-1, 2)
    assert schwarzian(SQUARE, 2) == -sympy.Rational(3, 8)


def test_schwarzian_singularities():
    with pytest.raises(ZeroDivisionError):
        schwarzian(MapExpr(sympy.Integer(3)), W)
    with pytest.raises(ZeroDivisionError):
        schwarzian(SQUARE, 0)


def test_one_point_identity_map_vanishes():
    for k in range(2, 7):
        assert one_point_Tk1(IDENT, k, W) == 0


def test_one_point_exponential():
    assert one_point_Tk1(EXP, 2, W) == -C / 24
    for k in range(3, 7):
        assert one_point_Tk1(EXP, k, W) == 0


def test_one_point_square_map():
    # {z^2, w} = -3/(2 w^2); each derivative in w is explicit
    for k in range(2, 6):
        n = k - 2
        expect = (
            C
            / 12
            * sympy.Rational(-3, 2)
            * sympy.prod([sympy.Integer(-2 - j) for j in range(n)])
            / math.factorial(n)
            * W ** (-2 - n)
        )
        got = one_point_Tk1(SQUARE, k, W)
        assert sympy.simplify(got - expect) == 0, k


def test_one_point_rejects_bad_k():
    with pytest.raises(ValueError):
        one_point_Tk1(EXP, 1, W)


def test_one_point_holomorphic_in_point():
    # Cauchy-Riemann residual of the numeric evaluation on a grid
    expr = one_point_Tk1(EXP, 2, Z).subs(C, 1)
    f = sympy.lambdify(Z, expr, "math")

    def val(x, y):
        return complex(f(complex(x, y)))

    h = 1e-5
    for x in [0.3, 1.1]:
        for y in [-0.4, 0.8]:
            du_dx = (val(x + h, y).real - val(x - h, y).real) / (2 * h)
            dv_dy = (val(x, y + h).imag - val(x, y - h).imag) / (2 * h)
            du_dy = (val(x, y + h).real - val(x, y - h).real) / (2 * h)
            dv_dx = (val(x + h, y).imag - val(x - h, y).imag) / (2 * h)
            assert abs(du_dx - dv_dy) < 1e-10
            assert abs(du_dy + dv_dx) < 1e-10


def test_cocycle_mobius_symbolic():
    for s in (IDENT, EXP, SQUARE):
        assert transformation_check(s, MapExpr.mobius(2, 1, 1, 1), at=W)


def test_cocycle_numeric_cases():
    assert transformation_check(EXP, SQUARE, at=1 + sympy.I)
    assert transformation_check(IDENT, SQUARE, at=1 + sympy.I)
    assert transformation_check(IDENT, EXP, at=sympy.Rational(1, 2))
    assert transformation_check(SQUARE, EXP, at=sympy.Rational(1, 3))


def test_cocycle_guards():
    with pytest.raises(ValueError):
        transformation_check(EXP, SQUARE, at=0)
    with pytest.raises(ValueError):
        transformation_check(EXP, SQUARE, k=3, at=1 + sympy.I)


def test_inverse_branch_selection():
    # the branch through the base point is chosen, including off the
    # principal one
    inv = SQUARE.inverse_branch(-2 + 0.01 * sympy.I)
    val = complex(inv((-2 + 0.01j) ** 2).evalf())
    assert abs(val - (-2 + 0.01j)) < 1e-9
    with pytest.raises(ValueError):
        SQUARE.inverse_branch(W)  # two branches, no way to pick symbolically
