"""Exact rational functions of several labeled points.

Correlation functions on the sphere live here: polynomials in point variables
w_1, w_2, ... with central-charge-polynomial coefficients, divided by products
of point differences.  Denominators stay factored as (w_a - w_b)^e with a < b;
reduction cancels every difference factor that divides the numerator, so the
representation is canonical and equality is exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .exact import CPoly, CRat, rat

# sorted ((label, exponent), ...) pairs; the empty tuple is the unit monomial
PointMono = tuple[tuple[int, int], ...]


def pmono(pairs: Mapping[int, int]) -> PointMono:
    if any(e < 0 for e in pairs.values()):
        raise ValueError("negative exponent in point monomial")
    return tuple(sorted((v, e) for v, e in pairs.items() if e))


def _as_cpoly(x) -> CPoly:
    if isinstance(x, CPoly):
        return x
    return CPoly.const(rat(x))


class MPoly:
    """Multivariate polynomial in point labels over the central-charge ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PointMono, "CPoly | Fraction | int"] | None = None):
        clean: dict[PointMono, CPoly] = {}
        if terms:
            for m, co in terms.items():
                co = _as_cpoly(co)
                if not co.is_zero():
                    clean[tuple(m)] = co
        self.terms = clean

    @classmethod
    def zero(cls) -> "MPoly":
        return cls()

    @classmethod
    def const(cls, value: "CPoly | Fraction | int") -> "MPoly":
        return cls({(): _as_cpoly(value)})

    @classmethod
    def var(cls, label: int) -> "MPoly":
        return cls({pmono({label: 1}): 1})

    @classmethod
    def diff(cls, a: int, b: int) -> "MPoly":
        """The difference w_a - w_b."""
        if a == b:
            raise ValueError("difference of a point with itself")
        return cls({pmono({a: 1}): 1, pmono({b: 1}): -1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_part(self) -> CPoly:
        return self.terms.get((), CPoly.zero())

    def labels(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def degree_in(self, label: int) -> int:
        best = -1
        for m in self.terms:
            best = max(best, dict(m).get(label, 0))
        return best

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for m, co in other.terms.items():
            s = out.get(m, CPoly.zero()) + co
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return MPoly(out)

    def __neg__(self) -> "MPoly":
        return MPoly({m: -co for m, co in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        out: dict[PointMono, CPoly] = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                d = dict(d1)
                for v, e in m2:
                    d[v] = d.get(v, 0) + e
                m = pmono(d)
                s = out.get(m, CPoly.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return MPoly(out)

    def scale(self, value: "CPoly | Fraction | int") -> "MPoly":
        co = _as_cpoly(value)
        if co.is_zero():
            return MPoly.zero()
        return MPoly({m: q * co for m, q in self.terms.items()})

    def derivative(self, label: int) -> "MPoly":
        out: dict[PointMono, CPoly] = {}
        for m, co in self.terms.items():
            d = dict(m)
            e = d.get(label, 0)
            if not e:
                continue
            d[label] = e - 1
            key = pmono(d)
            s = out.get(key, CPoly.zero()) + co * e
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return MPoly(out)

    def rename(self, mapping: Mapping[int, int]) -> "MPoly":
        """Substitute labels by labels; merging two labels is allowed."""
        out: dict[PointMono, CPoly] = {}
        for m, co in self.terms.items():
            d: dict[int, int] = {}
            for v, e in m:
                t = mapping.get(v, v)
                d[t] = d.get(t, 0) + e
            key = pmono(d)
            s = out.get(key, CPoly.zero()) + co
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return MPoly(out)

    def evaluate(self, points: Mapping[int, Fraction]) -> CPoly:
        total = CPoly.zero()
        for m, co in self.terms.items():
            factor = Fraction(1)
            for v, e in m:
                if v not in points:
                    raise ValueError("no value for point label %d" % v)
                factor *= rat(points[v]) ** e
            total = total + co * factor
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted((m, tuple(sorted(co.coeffs.items()))) for m, co in self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            mono_s = "*".join(
                "w%d" % v + ("^%d" % e if e > 1 else "") for v, e in m
            )
            co_s = "(%r)" % (self.terms[m],)
            parts.append(co_s + ("*" + mono_s if mono_s else ""))
        return " + ".join(parts)


def _divide_once(num: MPoly, a: int, b: int) -> "MPoly | None":
    """num / (w_a - w_b) when exact, else None.

    Synthetic division in w_a at the root w_a = w_b; divisibility holds iff
    the substitution w_a -> w_b kills the numerator.
    """
    if not num.rename({a: b}).is_zero():
        return None
    by_deg: dict[int, MPoly] = {}
    for m, co in num.terms.items():
        d = dict(m)
        e = d.pop(a, 0)
        part = MPoly({pmono(d): co})
        by_deg[e] = by_deg.get(e, MPoly.zero()) + part
    top = max(by_deg)
    wb = MPoly.var(b)
    quot_by_deg: dict[int, MPoly] = {}
    carry = MPoly.zero()
    for e in range(top, 0, -1):
        carry = by_deg.get(e, MPoly.zero()) + wb * carry
        quot_by_deg[e - 1] = carry
    out = MPoly.zero()
    wa = MPoly.var(a)
    power = MPoly.const(1)
    for e in range(0, top):
        out = out + quot_by_deg[e] * power
        power = power * wa
    return out


class PointRational:
    """MPoly numerator over a factored product of point differences.

    Denominator: {(a, b): exponent} with a < b, exponents positive.  The
    constructor cancels every difference factor dividing the numerator, so two
    equal values have identical parts; equality still cross-multiplies.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if den:
            for (a, b), e in den.items():
                if e < 0:
                    raise ValueError("negative denominator exponent")
                if a == b:
                    raise ValueError("difference of a point with itself")
                if e:
                    if a > b:
                        # (w_b - w_a)^e = (-1)^e (w_a - w_b)^e
                        a, b = b, a
                        if e % 2:
                            num = -num
                    clean[(a, b)] = clean.get((a, b), 0) + e
        if num.is_zero():
            self.num = MPoly.zero()
            self.den = {}
            return
        for pair in sorted(clean):
            a, b = pair
            while clean.get(pair, 0) > 0:
                quotient = _divide_once(num, a, b)
                if quotient is None:
                    break
                num = quotient
                clean[pair] -= 1
            if not clean.get(pair, 0):
                clean.pop(pair, None)
        self.num = num
        self.den = clean

    @classmethod
    def zero(cls) -> "PointRational":
        return cls(MPoly.zero())

    @classmethod
    def const(cls, value: "CPoly | Fraction | int") -> "PointRational":
        return cls(MPoly.const(value))

    @classmethod
    def inv_diff(cls, a: int, b: int, power: int) -> "PointRational":
        """(w_a - w_b)^(-power)."""
        if power < 0:
            raise ValueError("power must be >= 0")
        sign = 1
        if a > b:
            a, b = b, a
            sign = -1 if power % 2 else 1
        return cls(MPoly.const(sign), {(a, b): power})

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_poly(self) -> MPoly:
        out = MPoly.const(1)
        for (a, b), e in self.den.items():
            d = MPoly.diff(a, b)
            for _ in range(e):
                out = out * d
        return out

    def __add__(self, other: "PointRational") -> "PointRational":
        pairs = set(self.den) | set(other.den)
        den: dict[tuple[int, int], int] = {}
        left = self.num
        right = other.num
        for pair in pairs:
            e1 = self.den.get(pair, 0)
            e2 = other.den.get(pair, 0)
            e = max(e1, e2)
            den[pair] = e
            d = MPoly.diff(*pair)
            for _ in range(e - e1):
                left = left * d
            for _ in range(e - e2):
                right = right * d
        return PointRational(left + right, den)

    def __neg__(self) -> "PointRational":
        out = PointRational.__new__(PointRational)
        out.num = -self.num
        out.den = dict(self.den)
        return out

    def __sub__(self, other: "PointRational") -> "PointRational":
        return self + (-other)

    def __mul__(self, other: "PointRational") -> "PointRational":
        den = dict(self.den)
        for pair, e in other.den.items():
            den[pair] = den.get(pair, 0) + e
        return PointRational(self.num * other.num, den)

    def scale(self, value: "CPoly | Fraction | int") -> "PointRational":
        return PointRational(self.num.scale(value), self.den)

    def derivative(self, label: int) -> "PointRational":
        """Exact partial derivative in one point via the quotient rule."""
        total = PointRational(self.num.derivative(label), self.den)
        for (a, b), e in self.den.items():
            sign = 1 if label == a else -1 if label == b else 0
            if not sign:
                continue
            den = dict(self.den)
            den[(a, b)] = e + 1
            total = total + PointRational(self.num.scale(-sign * e), den)
        return total

    def rename(self, mapping: Mapping[int, int]) -> "PointRational":
        """Relabel points; merging labels that share a denominator factor raises."""
        den: dict[tuple[int, int], int] = {}
        for (a, b), e in self.den.items():
            na, nb = mapping.get(a, a), mapping.get(b, b)
            if na == nb:
                raise ZeroDivisionError(
                    "denominator factor (w%d-w%d) collapses under the relabeling" % (a, b)
                )
            den[(na, nb)] = den.get((na, nb), 0) + e
        return PointRational(self.num.rename(mapping), den)

    def evaluate(self, points: Mapping[int, Fraction]) -> CRat:
        num = self.num.evaluate(points)
        den = Fraction(1)
        for (a, b), e in self.den.items():
            if a not in points or b not in points:
                raise ValueError("no value for point label %d" % (a if a not in points else b))
            d = rat(points[a]) - rat(points[b])
            if d == 0:
                raise ZeroDivisionError("coincident points w%d = w%d" % (a, b))
            den *= d**e
        return CRat(num, CPoly.const(den))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CPoly)):
            other = PointRational.const(other)
        if not isinstance(other, PointRational):
            return NotImplemented
        # the constructor reduces fully and the difference factors are prime,
        # so the representation is canonical and structural comparison is exact
        return self.den == other.den and self.num == other.num

    def __repr__(self) -> str:
        if not self.den:
            return repr(self.num)
        den_s = "*".join(
            "(w%d-w%d)" % pair + ("^%d" % e if e > 1 else "")
            for pair, e in sorted(self.den.items())
        )
        return "[%r] / %s" % (self.num, den_s)

    def as_json(self) -> dict:
        num = [
            {"mono": {"w%d" % v: e for v, e in m}, "coeff": self.num.terms[m].as_json()}
            for m in sorted(self.num.terms)
        ]
        den = [[a, b, e] for (a, b), e in sorted(self.den.items())]
        return {"num": num, "den": den}


def sum_over_common_denominator(
    parts: Iterable[tuple[MPoly, Mapping[tuple[int, int], int]]],
) -> PointRational:
    """Single-pass sum of (numerator, factored denominator) contributions.

    Equivalent to folding with +, but clears to the joint denominator once,
    so n contributions cost n clearings instead of n^2.  Denominator pairs
    must already be oriented (a < b).
    """
    parts = list(parts)
    den: dict[tuple[int, int], int] = {}
    for _, d in parts:
        for pair, e in d.items():
            if pair[0] >= pair[1] or e < 0:
                raise ValueError("denominator pair %r must be oriented" % (pair,))
            if e > den.get(pair, 0):
                den[pair] = e
    total = MPoly.zero()
    for num, d in parts:
        for pair, e in den.items():
            missing = e - d.get(pair, 0)
            if missing:
                diff = MPoly.diff(*pair)
                for _ in range(missing):
                    num = num * diff
        total = total + num
    return PointRational(total, den)


def invert_points(pr: PointRational, weights: Mapping[int, int]) -> PointRational:
    """Image of a correlator under w -> 1/w with covariance weight factors.

    Each label i picks up (d(1/w)/dw)^weight = (-1)^weight w^(-2 weight); the
    difference factors invert to (-1)^e w_a^e w_b^e (w_a - w_b)^(-e).  The net
    power of every label must come out nonnegative for the result to stay a
    difference-denominator rational; a negative net power raises.
    """
    labels = set(weights) | pr.num.labels()
    for pair in pr.den:
        labels.update(pair)
    # numerator monomials invert by reflecting each exponent at the max degree
    degs = {v: pr.num.degree_in(v) for v in labels}
    reflected: dict[PointMono, CPoly] = {}
    for m, co in pr.num.terms.items():
        d = dict(m)
        key = pmono({v: degs[v] - d.get(v, 0) for v in labels if degs[v] > 0})
        reflected[key] = reflected.get(key, CPoly.zero()) + co
    num = MPoly(reflected)
    sign = 1
    extra: dict[int, int] = {v: 0 for v in labels}
    for (a, b), e in pr.den.items():
        sign *= (-1) ** e
        extra[a] += e
        extra[b] += e
    for v in labels:
        power = extra[v] - max(degs[v], 0) - 2 * weights.get(v, 0)
        sign *= (-1) ** weights.get(v, 0)
        if power < 0:
            raise ValueError("net power of w%d is negative under inversion" % v)
        for _ in range(power):
            num = num * MPoly.var(v)
    return PointRational(num.scale(sign), pr.den)
