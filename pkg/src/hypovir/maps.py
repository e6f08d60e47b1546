"""Symbolic conformal maps of one variable and Schwarzian calculus.

Expression trees are sympy expressions in a shared variable; the central
charge stays a free symbol so one-point values come out exact.  Numeric
fallbacks use complex arithmetic only when a symbolic identity cannot be
settled exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import sympy

Z = sympy.Symbol("z")
C = sympy.Symbol("c")

PointLike = Union[sympy.Expr, complex, float, int]


@dataclass(frozen=True)
class MapExpr:
    """A one-variable analytic map with a tag for its conformality domain."""

    expr: sympy.Expr
    domain: str = "plane"

    @classmethod
    def identity(cls) -> "MapExpr":
        return cls(Z, domain="plane")

    @classmethod
    def from_string(cls, text: str, domain: str = "plane") -> "MapExpr":
        allowed = {
            "z": Z,
            "exp": sympy.exp,
            "log": sympy.log,
            "sqrt": sympy.sqrt,
            "I": sympy.I,
            "pi": sympy.pi,
        }
        expr = sympy.sympify(text, locals=allowed)
        extra = expr.free_symbols - {Z}
        if extra:
            raise ValueError("unknown symbols in map: %r" % (sorted(map(str, extra)),))
        return cls(expr, domain=domain)

    @classmethod
    def mobius(cls, a, b, c, d) -> "MapExpr":
        if sympy.simplify(sympy.sympify(a * d - b * c)) == 0:
            raise ValueError("degenerate coefficients")
        return cls((a * Z + b) / (c * Z + d), domain="plane")

    def compose(self, inner: "MapExpr") -> "MapExpr":
        return MapExpr(self.expr.subs(Z, inner.expr), domain=inner.domain)

    def derivative(self, order: int = 1) -> sympy.Expr:
        return sympy.diff(self.expr, Z, order)

    def __call__(self, at: PointLike) -> sympy.Expr:
        return self.expr.subs(Z, sympy.sympify(at))

    def inverse_branch(self, near: PointLike) -> "MapExpr":
        """The inverse map, on the branch whose value at self(near) is near."""
        y = sympy.Symbol("_w_inverse")
        candidates = sympy.solve(sympy.Eq(self.expr, y), Z)
        if not candidates:
            raise ValueError("no symbolic inverse found")
        target = sympy.sympify(near)
        if target.free_symbols:
            # symbolic base point: only a globally exact inverse can be chosen
            exact = [
                cand
                for cand in candidates
                if sympy.simplify(cand.subs(y, self.expr) - Z) == 0
            ]
            if len(exact) != 1:
                raise ValueError("branch selection needs a numeric base point")
            return MapExpr(exact[0].subs(y, Z), domain=self.domain)
        image = self(target)
        best = None
        best_err = None
        for cand in candidates:
            try:
                err = abs(complex(cand.subs(y, image).evalf()) - complex(target.evalf()))
            except (TypeError, ValueError):
                continue
            if best_err is None or err < best_err:
                best, best_err = cand, err
        if best is None or best_err is None or best_err > 1e-9:
            raise ValueError("no inverse branch matches the base point")
        return MapExpr(best.subs(y, Z), domain=self.domain)


def schwarzian(s: MapExpr, at: PointLike) -> sympy.Expr:
    """s'''/s' - (3/2)(s''/s')^2 at the given point; exact when the point is."""
    s1 = s.derivative(1)
    if sympy.simplify(s1) == 0:
        raise ZeroDivisionError("map is constant")
    s2 = s.derivative(2)
    s3 = s.derivative(3)
    expr = sympy.together(s3 / s1 - sympy.Rational(3, 2) * (s2 / s1) ** 2)
    point = sympy.sympify(at)
    if not point.free_symbols:
        d1 = sympy.simplify(s1.subs(Z, point))
        if d1 == 0:
            raise ZeroDivisionError("derivative vanishes at the point")
    return sympy.simplify(expr.subs(Z, point))


def one_point_Tk1(s: MapExpr, k: int, at: PointLike) -> sympy.Expr:
    """One-point average of the k-arm field on the domain uniformized by s.

    The k-arm field is the scaled (k-2)nd derivative of the stress field, so
    its average is the same derivative of (c/12) times the Schwarzian.
    """
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    base = schwarzian(s, Z)
    expr = sympy.diff(base, Z, k - 2) / math.factorial(k - 2)
    point = sympy.sympify(at)
    if not point.free_symbols:
        d1 = sympy.simplify(s.derivative(1).subs(Z, point))
        if d1 == 0:
            raise ZeroDivisionError("derivative vanishes at the point")
    return sympy.simplify(C / 12 * expr.subs(Z, point))


def transformation_check(
    s: MapExpr,
    g: MapExpr,
    k: int = 2,
    at: PointLike = sympy.Rational(1, 2),
    tol: float = 1e-12,
) -> bool:
    """Cocycle law of the stress one-point value under a change of chart.

    Checks (g'(w))^2 {s o g^{-1}, g(w)} + {g, w} = {s, w}: exactly when every
    ingredient stays symbolic, else numerically to tol.  Only the stress case
    k = 2 transforms this way; other k raise.
    """
    if k != 2:
        raise ValueError("only the stress case k=2 has this cocycle")
    point = sympy.sympify(at)
    g1_at = g.derivative(1).subs(Z, point)
    if sympy.simplify(g1_at) == 0:
        raise ValueError("map is not invertible near the point")
    g_inv = g.inverse_branch(point)
    pulled = s.compose(g_inv)
    lhs = g1_at**2 * schwarzian(pulled, g(point)) + schwarzian(g, point)
    rhs = schwarzian(s, point)
    diff = sympy.simplify(lhs - rhs)
    if diff == 0:
        return True
    try:
        return abs(complex(diff.evalf())) < tol
    except (TypeError, ValueError):
        return False
