"""Exact scalar arithmetic: rationals, polynomials in the central charge, and
their fraction field.

Every algebraic result in this package is carried by these types; floats only
appear in the geometry and sampling layers.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction

RationalLike = Union[int, Fraction, str]


def rat(x: RationalLike) -> Fraction:
    """Coerce to an exact rational."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class CPoly:
    """Univariate polynomial in the central charge with rational coefficients.

    Sparse representation: {degree: coefficient}, zero coefficients never
    stored.  Instances are immutable in use; no method mutates self.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None):
        clean: dict[int, Fraction] = {}
        if coeffs:
            for deg, co in coeffs.items():
                if deg < 0:
                    raise ValueError("polynomial degree must be nonnegative, got %r" % (deg,))
                q = rat(co)
                if q != 0:
                    clean[int(deg)] = q
        self.coeffs = clean

    @classmethod
    def const(cls, value: RationalLike) -> "CPoly":
        return cls({0: rat(value)})

    @classmethod
    def zero(cls) -> "CPoly":
        return cls()

    @classmethod
    def one(cls) -> "CPoly":
        return cls({0: 1})

    @classmethod
    def gen(cls) -> "CPoly":
        """The central-charge variable itself."""
        return cls({1: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        return max(self.coeffs) if self.coeffs else -1

    def leading_coeff(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[max(self.coeffs)]

    def constant_part(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0))

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def __add__(self, other: "CPoly | RationalLike") -> "CPoly":
        other = _coerce(other)
        out = dict(self.coeffs)
        for deg, co in other.coeffs.items():
            s = out.get(deg, Fraction(0)) + co
            if s == 0:
                out.pop(deg, None)
            else:
                out[deg] = s
        return CPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "CPoly":
        return CPoly({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other: "CPoly | RationalLike") -> "CPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: RationalLike) -> "CPoly":
        return _coerce(other) - self

    def __mul__(self, other: "CPoly | RationalLike") -> "CPoly":
        other = _coerce(other)
        out: dict[int, Fraction] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                s = out.get(d, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(d, None)
                else:
                    out[d] = s
        return CPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = CPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "CPoly") -> tuple["CPoly", "CPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q: dict[int, Fraction] = {}
        rem = self
        dlead = other.degree()
        clead = other.leading_coeff()
        while not rem.is_zero() and rem.degree() >= dlead:
            shift = rem.degree() - dlead
            factor = rem.leading_coeff() / clead
            q[shift] = q.get(shift, Fraction(0)) + factor
            rem = rem - other * CPoly({shift: factor})
        return CPoly(q), rem

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CPoly.const(other)
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __call__(self, value: RationalLike) -> Fraction:
        v = rat(value)
        total = Fraction(0)
        for deg, co in self.coeffs.items():
            total += co * v**deg
        return total

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for deg in sorted(self.coeffs, reverse=True):
            co = self.coeffs[deg]
            if deg == 0:
                parts.append(str(co))
            elif deg == 1:
                parts.append("%s*c" % (co,) if co != 1 else "c")
            else:
                parts.append("%s*c^%d" % (co, deg) if co != 1 else "c^%d" % deg)
        return " + ".join(parts).replace("+ -", "- ")

    def as_json(self) -> dict[str, str]:
        """{degree: "num/den"} with string keys, stable for serialization."""
        return {str(d): str(self.coeffs[d]) for d in sorted(self.coeffs)}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "CPoly":
        return cls({int(d): Fraction(v) for d, v in data.items()})


def _coerce(x: "CPoly | RationalLike") -> CPoly:
    if isinstance(x, CPoly):
        return x
    return CPoly.const(rat(x))


def cpoly_arith(a: CPoly, b: CPoly, op: str) -> CPoly:
    """Ring arithmetic on central-charge polynomials: op in {add, sub, mul}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r, expected add|sub|mul" % (op,))


def cpoly_eval(a: CPoly, c0: RationalLike) -> Fraction:
    """Substitute a rational value for the central charge."""
    return a(rat(c0))


def cpoly_gcd(a: CPoly, b: CPoly) -> CPoly:
    """Monic gcd over the rationals (Euclid)."""
    while not b.is_zero():
        _, r = divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a * CPoly.const(Fraction(1) / a.leading_coeff())


class CRat:
    """Element of the fraction field of CPoly: num/den with monic denominator.

    Normalized on construction: gcd cancelled, denominator monic, zero stored
    as 0/1.  Supports the field operations needed for exact linear algebra.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: "CPoly | RationalLike", den: "CPoly | RationalLike" = 1):
        num = _coerce(num)
        den = _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = CPoly.zero()
            self.den = CPoly.one()
            return
        g = cpoly_gcd(num, den)
        if not g.is_zero() and g != CPoly.one():
            num, r1 = divmod(num, g)
            den, r2 = divmod(den, g)
            assert r1.is_zero() and r2.is_zero()
        lead = den.leading_coeff()
        if lead != 1:
            scale = CPoly.const(Fraction(1) / lead)
            num = num * scale
            den = den * scale
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "CRat":
        return cls(0)

    @classmethod
    def one(cls) -> "CRat":
        return cls(1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "CRat | CPoly | RationalLike") -> "CRat":
        other = _coerce_rat(other)
        return CRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "CRat":
        out = CRat.__new__(CRat)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other: "CRat | CPoly | RationalLike") -> "CRat":
        return self + (-_coerce_rat(other))

    def __rsub__(self, other: "CPoly | RationalLike") -> "CRat":
        return _coerce_rat(other) - self

    def __mul__(self, other: "CRat | CPoly | RationalLike") -> "CRat":
        other = _coerce_rat(other)
        return CRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "CRat | CPoly | RationalLike") -> "CRat":
        other = _coerce_rat(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero field element")
        return CRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: "CPoly | RationalLike") -> "CRat":
        return _coerce_rat(other) / self

    def inverse(self) -> "CRat":
        return CRat.one() / self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CPoly)):
            other = _coerce_rat(other)
        if not isinstance(other, CRat):
            return NotImplemented
        # cross-multiplication; representations are canonical but this stays robust
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, value: RationalLike) -> Fraction:
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this central charge")
        return self.num(value) / d

    def as_rational(self) -> Fraction:
        """Exact rational value when the element is constant."""
        if not (self.num.is_constant() and self.den.is_constant()):
            raise ValueError("not a constant: %r" % (self,))
        return self.num.constant_part() / self.den.constant_part()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __repr__(self) -> str:
        if self.den == CPoly.one():
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


def _coerce_rat(x: "CRat | CPoly | RationalLike") -> CRat:
    if isinstance(x, CRat):
        return x
    return CRat(x)
