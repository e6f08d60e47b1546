"""Hypotrochoid curves, their conformal exterior maps, and curve diagnostics.

Geometry is the one floating-point corner of the package.  Curve sampling and
map evaluation are plain complex arithmetic; the self-intersection test
switches to exact rational orientation tests on the sampled endpoints, so the
simple/not-simple verdict never depends on an epsilon.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HypotrochoidSpec:
    """Arm count k, center w, scale eps, rotation theta, radius parameter b.

    The simple-curve regime b > (k-1)^(1/k) is diagnosed, not enforced, so
    cusped and self-intersecting shapes can be constructed on purpose.
    """

    k: int
    b: float
    w: complex = 0j
    eps: float = 1.0
    theta: float = 0.0

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("k must be >= 2, got %r" % (self.k,))
        if not self.eps > 0:
            raise ValueError("eps must be positive, got %r" % (self.eps,))
        if not self.b > 0:
            raise ValueError("b must be positive, got %r" % (self.b,))
        object.__setattr__(self, "w", complex(self.w))
        theta = math.fmod(float(self.theta), TWO_PI)
        if theta < 0:
            theta += TWO_PI
        object.__setattr__(self, "theta", theta)

    def frame(self) -> complex:
        return self.eps * cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class CurveSamples:
    """Curve points on a uniform parameter grid, strictly increasing in [0, 2pi)."""

    alphas: tuple[float, ...]
    points: tuple[complex, ...]

    def __post_init__(self) -> None:
        a = self.alphas
        if len(a) != len(self.points):
            raise ValueError("grid and points differ in length")
        if any(x < 0 or x >= TWO_PI for x in a):
            raise ValueError("parameters must lie in [0, 2pi)")
        if any(a[i] >= a[i + 1] for i in range(len(a) - 1)):
            raise ValueError("parameter grid must be strictly increasing")


def curve_point(spec: HypotrochoidSpec, alpha: float) -> complex:
    """Point of the k-armed curve at parameter alpha."""
    k, b = spec.k, spec.b
    return spec.w + spec.frame() * (
        b * cmath.exp(1j * alpha) + b ** (1 - k) * cmath.exp(1j * (1 - k) * alpha)
    )


def curve_velocity(spec: HypotrochoidSpec, alpha: float) -> complex:
    """d(point)/d(alpha); vanishes exactly at the cusps of the critical radius."""
    k, b = spec.k, spec.b
    return spec.frame() * 1j * (
        b * cmath.exp(1j * alpha)
        - (k - 1) * b ** (1 - k) * cmath.exp(1j * (1 - k) * alpha)
    )


def sample_curve(spec: HypotrochoidSpec, n_samples: int) -> CurveSamples:
    if n_samples < 3:
        raise ValueError("need at least 3 samples, got %r" % (n_samples,))
    alphas = tuple(TWO_PI * i / n_samples for i in range(n_samples))
    return CurveSamples(alphas, tuple(curve_point(spec, a) for a in alphas))


def map_eval(spec: HypotrochoidSpec, z: complex) -> complex:
    """The exterior conformal map z + (eps e^(i theta))^k / (z - w)^(k-1)."""
    z = complex(z)
    if z == spec.w:
        raise ZeroDivisionError("the map has its pole at the center")
    u = spec.frame()
    return z + u**spec.k / (z - spec.w) ** (spec.k - 1)


def map_derivative(spec: HypotrochoidSpec, z: complex) -> complex:
    z = complex(z)
    if z == spec.w:
        raise ZeroDivisionError("the map has its pole at the center")
    u = spec.frame()
    return 1 - (spec.k - 1) * u**spec.k / (z - spec.w) ** spec.k


def cusp_threshold(k: int) -> dict:
    """Critical radius and the cusp parameter angles at that radius."""
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    return {
        "b_star": (k - 1) ** (1.0 / k),
        "cusp_angles": [TWO_PI * j / k for j in range(k)],
    }


# ------------------------------------------------------- self-intersection

def _orient(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction], r: tuple[Fraction, Fraction]) -> int:
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (det > 0) - (det < 0)


def _within(p, q, r) -> bool:
    # r on the closed bounding box of pq; only called for collinear triples
    return (
        min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
        and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])
    )


def _segments_cross(p, q, r, s) -> bool:
    o1 = _orient(p, q, r)
    o2 = _orient(p, q, s)
    o3 = _orient(r, s, p)
    o4 = _orient(r, s, q)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _within(p, q, r):
        return True
    if o2 == 0 and _within(p, q, s):
        return True
    if o3 == 0 and _within(r, s, p):
        return True
    if o4 == 0 and _within(r, s, q):
        return True
    return False


def polyline_self_intersects(points: Sequence[complex]) -> bool:
    """Exact pairwise test on the closed polyline, adjacent segments excluded."""
    n = len(points)
    exact = [(Fraction(z.real), Fraction(z.imag)) for z in points]
    segs = []
    for i in range(n):
        a, b = exact[i], exact[(i + 1) % n]
        xmin, xmax = min(a[0], b[0]), max(a[0], b[0])
        ymin, ymax = min(a[1], b[1]), max(a[1], b[1])
        segs.append((xmin, xmax, ymin, ymax, i, a, b))
    order = sorted(range(n), key=lambda i: segs[i][0])
    active: list[int] = []
    for idx in order:
        xmin, xmax, ymin, ymax, i, a, b = segs[idx]
        active = [j for j in active if segs[j][1] >= xmin]
        for j in active:
            jx0, jx1, jy0, jy1, jj, c, d = segs[j]
            gap = (i - jj) % n
            if gap == 1 or gap == n - 1:
                continue
            if jy1 < ymin or ymax < jy0:
                continue
            if _segments_cross(a, b, c, d):
                return True
        active.append(idx)
    return False


def simplicity_check(spec: HypotrochoidSpec, n_samples: int = 4096) -> bool:
    """True when the sampled curve shows no self-intersection.

    The critical radius itself is classified not simple: the curve is cusped
    there, and the simple regime is the strict inequality above it.
    """
    if n_samples < 64:
        raise ValueError("need at least 64 samples, got %r" % (n_samples,))
    if spec.b == (spec.k - 1) ** (1.0 / spec.k):
        return False
    pts = sample_curve(spec, n_samples).points
    return not polyline_self_intersects(pts)


# ------------------------------------------------------------------ symmetry

def dk_symmetry_check(
    spec: HypotrochoidSpec, tolerance: float = 1e-9, n_samples: int = 360
) -> bool:
    """Invariance of the sampled point set under the k-fold dihedral action.

    Rotation by 2pi/k about the center and reflection across the theta-axis
    must both map the set onto itself within tolerance, via nearest-point
    matching.
    """
    pts = sample_curve(spec, n_samples).points
    centered = [z - spec.w for z in pts]
    rot = cmath.exp(2j * math.pi / spec.k)
    mirror = cmath.exp(2j * spec.theta)

    def matches(images: Iterable[complex]) -> bool:
        for im in images:
            if min(abs(im - z) for z in centered) > tolerance:
                return False
        return True

    return matches(z * rot for z in centered) and matches(
        mirror * z.conjugate() for z in centered
    )


# -------------------------------------------------------------------- export

CSV_HEADER = "alpha,re,im"


def export_curve(
    spec: HypotrochoidSpec, path: str, fmt: str = "csv", n_samples: int = 720
) -> str:
    """Write the sampled curve as CSV rows or an SVG 1.1 path; returns path."""
    samples = sample_curve(spec, n_samples)
    if fmt == "csv":
        lines = [CSV_HEADER]
        for a, z in zip(samples.alphas, samples.points):
            lines.append("%.17g,%.17g,%.17g" % (a, z.real, z.imag))
        text = "\n".join(lines) + "\n"
    elif fmt == "svg":
        text = curve_svg(spec, samples)
    else:
        raise ValueError("format must be csv or svg, got %r" % (fmt,))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def curve_svg(spec: HypotrochoidSpec, samples: CurveSamples) -> str:
    # the curve lies within radius eps*(b + b^(1-k)) of the center
    radius = spec.eps * (spec.b + spec.b ** (1 - spec.k))
    margin = 0.05 * radius
    x0 = spec.w.real - radius - margin
    y0 = spec.w.imag - radius - margin
    side = 2 * (radius + margin)
    coords = ["%.12g %.12g" % (z.real, z.imag) for z in samples.points]
    d = "M " + " L ".join(coords) + " Z"
    stroke = max(side / 400.0, 1e-12)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="%.12g %.12g %.12g %.12g">\n'
        '  <path d="%s" fill="none" stroke="black" stroke-width="%.12g"/>\n'
        "</svg>\n" % (x0, y0, side, side, d, stroke)
    )
