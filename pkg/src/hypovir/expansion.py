"""Verification kit for the inverse-map asymptotic expansion.

Evaluates analytic functionals of conformal maps exactly, differentiates them
along direction fields, inverts the arm deformation numerically, and compares
the results order by order against the operator-calculus predictions.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import sympy

from .curves import TWO_PI, HypotrochoidSpec, map_derivative, map_eval
from .maps import MapExpr, Z
from .operators import Monomial, OperatorSum, tbox_closed

EVALUATION = "evaluation_at"
LOG_DERIVATIVE = "log_derivative_at"
SCHWARZIAN = "schwarzian_at"
_KINDS = (EVALUATION, LOG_DERIVATIVE, SCHWARZIAN)


# ------------------------------------------------------------- functionals

@dataclass(frozen=True)
class AnalyticFunctional:
    """A scalar functional of a conformal map, anchored at one point."""

    kind: str
    z0: complex | sympy.Expr

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError("unknown functional kind %r" % (self.kind,))

    @classmethod
    def evaluation_at(cls, z0) -> "AnalyticFunctional":
        return cls(EVALUATION, z0)

    @classmethod
    def log_derivative_at(cls, z0) -> "AnalyticFunctional":
        return cls(LOG_DERIVATIVE, z0)

    @classmethod
    def schwarzian_at(cls, z0) -> "AnalyticFunctional":
        return cls(SCHWARZIAN, z0)

    def numeric_point(self) -> complex:
        if sympy.sympify(self.z0).free_symbols:
            raise ValueError("a numeric evaluation point is required here")
        return complex(self.z0)

    def apply_to_expr(self, g_expr: sympy.Expr) -> sympy.Expr:
        """Value of the functional on a map given as an expression in z."""
        z0 = sympy.sympify(self.z0)
        if self.kind == EVALUATION:
            return g_expr.subs(Z, z0)
        d1 = sympy.diff(g_expr, Z)
        if self.kind == LOG_DERIVATIVE:
            return sympy.log(d1).subs(Z, z0)
        d2 = sympy.diff(g_expr, Z, 2)
        d3 = sympy.diff(g_expr, Z, 3)
        sch = d3 / d1 - sympy.Rational(3, 2) * (d2 / d1) ** 2
        return sch.subs(Z, z0)


def _finalize(expr: sympy.Expr) -> complex | sympy.Expr:
    # singular intermediate values must surface as errors, never as NaN
    if expr.has(sympy.zoo, sympy.oo, -sympy.oo, sympy.nan):
        raise ZeroDivisionError("functional is singular at the evaluation point")
    if expr.free_symbols:
        return expr
    value = complex(sympy.N(expr, 17))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ZeroDivisionError("functional is singular at the evaluation point")
    return value


def functional_eval(f: AnalyticFunctional, g: MapExpr) -> complex | sympy.Expr:
    return _finalize(sympy.together(f.apply_to_expr(g.expr)))


def _direction_expr(direction: "MapExpr | sympy.Expr") -> sympy.Expr:
    if isinstance(direction, MapExpr):
        return direction.expr
    return sympy.sympify(direction)


def _nabla_expr(f: AnalyticFunctional, directions: Sequence[sympy.Expr]) -> sympy.Expr:
    # iterated first variation at the identity: each direction perturbs the
    # current map on the outside, and one t-derivative is taken per direction
    ts = [sympy.Dummy("t%d" % i) for i in range(len(directions))]
    g_expr: sympy.Expr = Z
    for t, a in zip(ts, directions):
        g_expr = g_expr + t * a.subs(Z, g_expr)
    value = f.apply_to_expr(g_expr)
    for t in ts:
        value = sympy.diff(value, t).subs(t, 0)
    return value


def functional_nabla(
    f: AnalyticFunctional, directions: Iterable["MapExpr | sympy.Expr"]
) -> complex | sympy.Expr:
    """Iterated variational derivative of the functional at the identity map."""
    exprs = [_direction_expr(d) for d in directions]
    return _finalize(sympy.expand(_nabla_expr(f, exprs)))


# ------------------------------------------------------ operator predictions

def arm_direction(k: int, w: "complex | sympy.Expr" = 0) -> sympy.Expr:
    """Direction field (z - w)^(1-k) generating the k-arm deformation."""
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    return (Z - sympy.sympify(w)) ** (1 - k)


def deformation_map(
    k: int,
    w: "complex | sympy.Expr" = 0,
    eps: "float | sympy.Expr" = 1,
    theta: "float | sympy.Expr" = 0,
) -> MapExpr:
    """The k-arm map z + (eps e^(i theta))^k (z - w)^(1-k) as an expression."""
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    q = (sympy.sympify(eps) * sympy.exp(sympy.I * sympy.sympify(theta))) ** k
    return MapExpr(Z + q * (Z - sympy.sympify(w)) ** (1 - k))


def _mono_expr(m: Monomial, h_expr: sympy.Expr) -> sympy.Expr:
    out: sympy.Expr = sympy.Integer(1)
    for order, power in m:
        out = out * sympy.diff(h_expr, Z, order) ** power
    return out


def operator_value(
    f: AnalyticFunctional, op: OperatorSum, h_expr: sympy.Expr
) -> complex | sympy.Expr:
    """Apply a derivative-word operator to the functional along h."""
    total: sympy.Expr = sympy.Integer(0)
    for word, co in op.terms.items():
        dirs = [_mono_expr(m, h_expr) for m in word]
        total = total + sympy.Rational(co.numerator, co.denominator) * _nabla_expr(f, dirs)
    return _finalize(sympy.expand(total))


def expansion_coefficient(
    f: AnalyticFunctional, k: int, w: "complex | sympy.Expr", m: int
) -> complex | sympy.Expr:
    """Order-m coefficient of the inverse-map expansion of the functional."""
    if m < 0:
        raise ValueError("m must be >= 0, got %r" % (m,))
    if m == 0:
        return _finalize(f.apply_to_expr(Z))
    value = operator_value(f, tbox_closed(m), arm_direction(k, w))
    factorial = sympy.factorial(m)
    if isinstance(value, complex):
        return value / int(factorial)
    return value / factorial


def inverse_series_coefficient(
    k: int, n: int, z0: "complex | sympy.Expr", w: "complex | sympy.Expr" = 0
) -> sympy.Expr:
    """Exact series coefficient of the inverse map by Lagrange reversion."""
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    if n < 0:
        raise ValueError("n must be >= 0, got %r" % (n,))
    z0s, ws = sympy.sympify(z0), sympy.sympify(w)
    if n == 0:
        return z0s
    p = n * (1 - k)
    coeff = sympy.Rational((-1) ** n, 1) / sympy.factorial(n) * sympy.ff(p, n - 1)
    return coeff * (z0s - ws) ** (p - n + 1)


# ------------------------------------------------------------ numeric engine

def _map_second(spec: HypotrochoidSpec, z: complex) -> complex:
    k = spec.k
    q = spec.frame() ** k
    return k * (k - 1) * q * (z - spec.w) ** (-k - 1)


def _map_third(spec: HypotrochoidSpec, z: complex) -> complex:
    k = spec.k
    q = spec.frame() ** k
    return -k * (k - 1) * (k + 1) * q * (z - spec.w) ** (-k - 2)


def _newton(
    spec: HypotrochoidSpec, target: complex, seed: complex, tol: float, max_iter: int
) -> complex | None:
    z = seed
    for _ in range(max_iter):
        try:
            resid = map_eval(spec, z) - target
            der = map_derivative(spec, z)
        except ZeroDivisionError:
            return None
        if not (math.isfinite(resid.real) and math.isfinite(resid.imag)):
            return None
        if der == 0:
            return None
        if abs(resid) <= tol:
            return z - resid / der  # one polish step past the tolerance
        z = z - resid / der
    return None


def invert_map(spec: HypotrochoidSpec, target: complex, max_iter: int = 64) -> complex:
    """Preimage of target under the arm deformation map; error on failure."""
    tol = 1e-15 * max(1.0, abs(target))
    z = _newton(spec, target, complex(target), tol, max_iter)
    if z is not None:
        return z
    # fallback: bracket the radial displacement along the ray through target
    offset = complex(target) - spec.w
    if abs(offset) > 0 and math.isfinite(offset.real) and math.isfinite(offset.imag):
        ray = offset / abs(offset)

        def radial(r: float) -> float:
            return ((map_eval(spec, spec.w + r * ray) - target) / ray).real

        lo, hi = 0.5 * abs(offset), 1.5 * abs(offset)
        try:
            flo, fhi = radial(lo), radial(hi)
            for _ in range(8):
                if flo * fhi <= 0:
                    break
                lo, hi = 0.5 * lo, 1.5 * hi
                flo, fhi = radial(lo), radial(hi)
            if flo * fhi <= 0:
                for _ in range(64):
                    mid = 0.5 * (lo + hi)
                    fm = radial(mid)
                    if flo * fm <= 0:
                        hi = mid
                    else:
                        lo, flo = mid, fm
                z = _newton(spec, target, spec.w + 0.5 * (lo + hi) * ray, tol, max_iter)
                if z is not None:
                    return z
        except ZeroDivisionError:
            pass
    raise ArithmeticError(
        "inverse iteration failed: k=%d eps=%g theta=%g target=%r"
        % (spec.k, spec.eps, spec.theta, target)
    )


def functional_of_inverse(f: AnalyticFunctional, spec: HypotrochoidSpec) -> complex:
    """Numeric value of the functional on the inverse of the deformation map."""
    z0 = f.numeric_point()
    zin = invert_map(spec, z0)
    if f.kind == EVALUATION:
        return zin
    d1 = map_derivative(spec, zin)
    if d1 == 0:
        raise ZeroDivisionError("map derivative vanishes at the preimage")
    if f.kind == LOG_DERIVATIVE:
        # (g^-1)'(z0) = 1/g'(zin), so the log derivative flips sign
        return -cmath.log(d1)
    d2 = _map_second(spec, zin)
    d3 = _map_third(spec, zin)
    forward = d3 / d1 - 1.5 * (d2 / d1) ** 2
    return -forward / (d1 * d1)


def _require_outside(z0: complex, k: int, w: complex, eps: float, b: float) -> None:
    # outer radius of the sampled curve; the functional anchor must clear it
    radius = eps * (b + b ** (1 - k))
    if abs(z0 - complex(w)) <= radius:
        raise ValueError("evaluation point lies inside the sampled curve")


def fourier_mode(
    f: AnalyticFunctional,
    k: int,
    mode: int,
    eps: float,
    n_theta: int = 256,
    w: complex = 0j,
    b: float = 1.5,
) -> complex:
    """Raw angular projection (1/2pi) sum of e^(-i mode theta) f(g^-1) dtheta."""
    if n_theta < 64:
        raise ValueError("n_theta must be >= 64, got %r" % (n_theta,))
    _require_outside(f.numeric_point(), k, w, eps, b)
    total = 0j
    for j in range(n_theta):
        theta = TWO_PI * j / n_theta
        spec = HypotrochoidSpec(k=k, b=b, w=w, eps=eps, theta=theta)
        total += cmath.exp(-1j * mode * theta) * functional_of_inverse(f, spec)
    return total / n_theta


def fourier_extract(
    f: AnalyticFunctional,
    k: int,
    m: int,
    eps: float,
    n_theta: int = 256,
    w: complex = 0j,
    b: float = 1.5,
) -> complex:
    """Normalized mode-km extraction; converges to the order-m operator value."""
    if m < 0:
        raise ValueError("m must be >= 0, got %r" % (m,))
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    scale = math.factorial(m) * eps ** (-k * m)
    return scale * fourier_mode(f, k, k * m, eps, n_theta=n_theta, w=w, b=b)


# ------------------------------------------------------------------ reports

@dataclass(frozen=True)
class ExpansionReport:
    """Residuals of the truncated expansion against the inverted map."""

    kind: str
    k: int
    w: complex
    theta: float
    b: float
    order_max: int
    coefficients: tuple[complex, ...]
    eps_grid: tuple[float, ...]
    residuals: tuple[float, ...]
    decay_exponent: float

    def __post_init__(self) -> None:
        if len(self.eps_grid) != len(self.residuals):
            raise ValueError("eps grid and residuals must have equal length")
        if any(b >= a for a, b in zip(self.eps_grid, self.eps_grid[1:])):
            raise ValueError("eps grid must be strictly decreasing")
        if len(self.coefficients) != self.order_max + 1:
            raise ValueError("need one coefficient per order up to order_max")


def expansion_report_to_json(report: ExpansionReport) -> dict:
    return {
        "kind": report.kind,
        "k": report.k,
        "w": [report.w.real, report.w.imag],
        "theta": report.theta,
        "b": report.b,
        "order_max": report.order_max,
        "coefficients": [[c.real, c.imag] for c in report.coefficients],
        "eps_grid": list(report.eps_grid),
        "residuals": list(report.residuals),
        "decay_exponent": report.decay_exponent,
    }


def expansion_report_from_json(data: dict) -> ExpansionReport:
    return ExpansionReport(
        kind=str(data["kind"]),
        k=int(data["k"]),
        w=complex(data["w"][0], data["w"][1]),
        theta=float(data["theta"]),
        b=float(data["b"]),
        order_max=int(data["order_max"]),
        coefficients=tuple(complex(re, im) for re, im in data["coefficients"]),
        eps_grid=tuple(float(e) for e in data["eps_grid"]),
        residuals=tuple(float(r) for r in data["residuals"]),
        decay_exponent=float(data["decay_exponent"]),
    )


def expansion_residual(
    f: AnalyticFunctional,
    k: int,
    w: complex,
    theta: float,
    b: float,
    M: int,
    eps_grid: Sequence[float],
) -> ExpansionReport:
    """Compare f(g^-1) with the truncated operator expansion over an eps grid."""
    if not 0 <= M <= 4:
        raise ValueError("M must lie in 0..4, got %r" % (M,))
    if len(eps_grid) < 2:
        raise ValueError("need at least two eps values to fit a decay exponent")
    z0 = f.numeric_point()
    _require_outside(z0, k, complex(w), max(eps_grid), b)
    coefficients = []
    for m in range(M + 1):
        value = expansion_coefficient(f, k, w, m)
        coefficients.append(value if isinstance(value, complex) else complex(sympy.N(value, 17)))
    residuals = []
    for eps in eps_grid:
        u = eps * cmath.exp(1j * theta)
        prediction = sum(c * u ** (k * m) for m, c in enumerate(coefficients))
        spec = HypotrochoidSpec(k=k, b=b, w=w, eps=eps, theta=theta)
        value = functional_of_inverse(f, spec)
        residuals.append(abs(value - prediction))
    logs = np.log(np.maximum(np.asarray(residuals, dtype=float), 1e-300))
    slope = float(np.polyfit(np.log(np.asarray(eps_grid, dtype=float)), logs, 1)[0])
    return ExpansionReport(
        kind=f.kind,
        k=k,
        w=complex(w),
        theta=float(theta),
        b=float(b),
        order_max=M,
        coefficients=tuple(coefficients),
        eps_grid=tuple(float(e) for e in eps_grid),
        residuals=tuple(residuals),
        decay_exponent=slope,
    )
