"""Formal calculus of conformal-derivative operators.

Directions are differential polynomials in a single holomorphic field h,
written in symbols H_a standing for the a-th derivative of h.  Words of
directions compose derivative operators; sums of words with rational
coefficients form the operator algebra.  The two expansion towers (direct map
and inverse map) are produced by their recursions, normal-formed with the
Witt bracket, and specialized to the hypotrochoid direction family.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from .compositions import c_coeff, enumerate_compositions

# A direction monomial is a sorted tuple of (symbol index, exponent) pairs,
# H_a carrying exponent e meaning (d^a h)^e.  A direction polynomial maps
# monomials to rational coefficients.
Monomial = tuple[tuple[int, int], ...]
Poly = dict[Monomial, Fraction]
NablaWord = tuple[Monomial, ...]

H = ((0, 1),)  # the bare field h


def mono(pairs: Mapping[int, int]) -> Monomial:
    return tuple(sorted((a, e) for a, e in pairs.items() if e))


def h_ddh_power(n: int) -> Monomial:
    """h (dh)^(n-1), the direction family of the closed-form expansion."""
    if n < 1:
        raise ValueError("n must be >= 1, got %r" % (n,))
    if n == 1:
        return H
    return ((0, 1), (1, n - 1))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for sym, e in b:
        out[sym] = out.get(sym, 0) + e
    return mono(out)


def mono_h_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_deriv_weight(m: Monomial) -> int:
    return sum(a * e for a, e in m)


def mono_key(m: Monomial) -> tuple:
    # canonical order: h-degree, then derivative weight, then lexicographic
    return (mono_h_degree(m), mono_deriv_weight(m), m)


def poly_of(m: Monomial, coeff: "Fraction | int" = 1) -> Poly:
    return {m: Fraction(coeff)}


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, q in b.items():
        s = out.get(m, Fraction(0)) + q
        if s == 0:
            out.pop(m, None)
        else:
            out[m] = s
    return out


def poly_scale(a: Poly, q: "Fraction | int") -> Poly:
    q = Fraction(q)
    if q == 0:
        return {}
    return {m: co * q for m, co in a.items()}


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, q1 in a.items():
        for m2, q2 in b.items():
            m = mono_mul(m1, m2)
            s = out.get(m, Fraction(0)) + q1 * q2
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
    return out


def mono_derive(m: Monomial) -> Poly:
    """Formal Leibniz derivative: one factor H_a becomes H_{a+1} in each term."""
    out: Poly = {}
    base = dict(m)
    for a, e in m:
        lowered = dict(base)
        lowered[a] = e - 1
        lowered[a + 1] = lowered.get(a + 1, 0) + 1
        out = poly_add(out, poly_of(mono(lowered), e))
    return out


def poly_derive(p: Poly) -> Poly:
    out: Poly = {}
    for m, q in p.items():
        out = poly_add(out, poly_scale(mono_derive(m), q))
    return out


def witt_bracket(a: Monomial, b: Monomial) -> Poly:
    """[nabla_a, nabla_b] direction: a db - b da."""
    return poly_add(
        poly_mul(poly_of(a), mono_derive(b)),
        poly_scale(poly_mul(poly_of(b), mono_derive(a)), -1),
    )


class OperatorSum:
    """Rational linear combination of derivative words; immutable in use."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[NablaWord, "Fraction | int"] | None = None):
        clean: dict[NablaWord, Fraction] = {}
        if terms:
            for word, co in terms.items():
                q = Fraction(co)
                if q != 0:
                    clean[tuple(word)] = q
        self.terms = clean

    @classmethod
    def identity(cls) -> "OperatorSum":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "OperatorSum":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        out = dict(self.terms)
        for word, co in other.terms.items():
            s = out.get(word, Fraction(0)) + co
            if s == 0:
                out.pop(word, None)
            else:
                out[word] = s
        return OperatorSum(out)

    def __sub__(self, other: "OperatorSum") -> "OperatorSum":
        return self + other.scale(-1)

    def scale(self, q: "Fraction | int") -> "OperatorSum":
        q = Fraction(q)
        return OperatorSum({w: co * q for w, co in self.terms.items()})

    def __mul__(self, other: "OperatorSum") -> "OperatorSum":
        # operator composition: left factor outermost
        out: dict[NablaWord, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(w, None)
                else:
                    out[w] = s
        return OperatorSum(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        def mono_str(m: Monomial) -> str:
            return "*".join(
                ("H%d" % a) + ("^%d" % e if e > 1 else "") for a, e in m
            ) or "1"
        parts = []
        for word in sorted(self.terms, key=lambda w: (len(w), tuple(map(mono_key, w)))):
            label = "".join("N[%s]" % mono_str(m) for m in word) or "I"
            parts.append("%s*%s" % (self.terms[word], label))
        return " + ".join(parts)


def nabla(p: Poly) -> OperatorSum:
    """Single derivative along a direction polynomial, expanded multilinearly."""
    return OperatorSum({(m,): q for m, q in p.items()})


def operator_sum_to_json(s: OperatorSum) -> list[dict]:
    out = []
    for word in sorted(s.terms, key=lambda w: (len(w), tuple(map(mono_key, w)))):
        out.append(
            {
                "coeff": str(s.terms[word]),
                "word": [{"H%d" % a: e for a, e in m} for m in word],
            }
        )
    return out


def operator_sum_from_json(data: Iterable[Mapping]) -> OperatorSum:
    terms: dict[NablaWord, Fraction] = {}
    for entry in data:
        word = tuple(
            mono({int(sym[1:]): e for sym, e in m.items()}) for m in entry["word"]
        )
        terms[word] = terms.get(word, Fraction(0)) + Fraction(entry["coeff"])
    return OperatorSum(terms)


# ------------------------------------------------------------------ direct map

def _box_inter(args: tuple[Poly, ...]) -> OperatorSum:
    # intermediate multilinear recursion; slot m is the last tuple entry
    m = len(args)
    if m == 0:
        return OperatorSum.identity()
    if m == 1:
        return nabla(args[0])
    head, last = args[:-1], args[-1]
    total = nabla(last) * _box_inter(head)
    for j in range(1, m):
        merged = poly_mul(args[j], poly_derive(args[j - 1]))
        reduced = args[: j - 1] + (merged,) + args[j + 1:]
        total = total - _box_inter(reduced)
    return total


def derive_box(m: int, direction: Poly | None = None) -> OperatorSum:
    """Order-m coefficient operator of the direct-map expansion."""
    if m < 0:
        raise ValueError("m must be >= 0, got %r" % (m,))
    if direction is None:
        direction = poly_of(H)
    return _box_inter((direction,) * m)


# ----------------------------------------------------------------- inverse map

def _tbox_cells(m: int) -> list[tuple[int, tuple[frozenset, ...]]]:
    # words of cells over argument labels 1..m; a cell of size s reads
    # y^(s-1) times the product of its labels' arguments, so the y-exponent
    # is implied by the size and never stored
    if m == 1:
        return [(-1, (frozenset((1,)),))]
    out: list[tuple[int, tuple[frozenset, ...]]] = []
    prev = _tbox_cells(m - 1)
    for sign, word in prev:
        out.append((-sign, (frozenset((m,)),) + word))
    for j in range(1, m):
        mapping: dict[int, frozenset] = {}
        for i in range(1, m):
            if i < j:
                mapping[i] = frozenset((i,))
            elif i == j:
                mapping[i] = frozenset((j, j + 1))
            else:
                mapping[i] = frozenset((i + 1,))
        for sign, word in prev:
            new_word = tuple(
                frozenset().union(*(mapping[label] for label in cell)) for cell in word
            )
            out.append((-sign, new_word))
    return out


def derive_tbox(m: int) -> OperatorSum:
    """Order-m coefficient operator of the inverse-map expansion (cell route)."""
    if m < 0:
        raise ValueError("m must be >= 0, got %r" % (m,))
    if m == 0:
        return OperatorSum.identity()
    terms: dict[NablaWord, Fraction] = {}
    for sign, word in _tbox_cells(m):
        # diagonal substitution: a cell of size s becomes h (dh)^(s-1)
        key = tuple(h_ddh_power(len(cell)) for cell in word)
        terms[key] = terms.get(key, Fraction(0)) + sign
    return OperatorSum(terms)


def tbox_closed(m: int) -> OperatorSum:
    """Closed form of the inverse-map operator via composition coefficients."""
    if m < 1:
        raise ValueError("m must be >= 1, got %r" % (m,))
    sign = Fraction(-1) ** m
    terms: dict[NablaWord, Fraction] = {}
    for lam in enumerate_compositions(m):
        word = tuple(h_ddh_power(part) for part in reversed(lam))
        terms[word] = terms.get(word, Fraction(0)) + sign * c_coeff(lam)
    return OperatorSum(terms)


# ---------------------------------------------------------------- normal forms

def witt_normal_form(s: OperatorSum) -> OperatorSum:
    """Rewrite every word to nondecreasing direction order via the Witt bracket.

    Each swap appends a strictly shorter correction word, so the worklist
    terminates.
    """
    out: dict[NablaWord, Fraction] = {}
    work = list(s.terms.items())
    while work:
        word, co = work.pop()
        idx = None
        for i in range(len(word) - 1):
            if mono_key(word[i]) > mono_key(word[i + 1]):
                idx = i
                break
        if idx is None:
            s2 = out.get(word, Fraction(0)) + co
            if s2 == 0:
                out.pop(word, None)
            else:
                out[word] = s2
            continue
        swapped = word[:idx] + (word[idx + 1], word[idx]) + word[idx + 2:]
        work.append((swapped, co))
        for m2, q in witt_bracket(word[idx], word[idx + 1]).items():
            work.append((word[:idx] + (m2,) + word[idx + 2:], co * q))
    return OperatorSum(out)


def symmetrized_form(s: OperatorSum) -> OperatorSum:
    """Equal operator re-written so coefficients are permutation-symmetric.

    Ordered words are recursively replaced by their permutation average plus
    shorter Witt corrections; the output assigns one shared coefficient to
    every ordering of each word class.
    """
    result = OperatorSum.zero()
    pending = witt_normal_form(s)
    while not pending.is_zero():
        nxt: dict[NablaWord, Fraction] = {}
        for word, co in pending.terms.items():
            n = len(word)
            if n <= 1:
                result = result + OperatorSum({word: co})
                continue
            perms = set(itertools.permutations(word))
            # permutation-average block, emitted verbatim
            avg = OperatorSum({p: co * Fraction(1, len(perms)) for p in perms})
            result = result + avg
            # subtract the lower-order defect of the average
            defect = witt_normal_form(avg) - OperatorSum({word: co})
            for w2, c2 in defect.scale(-1).terms.items():
                nxt[w2] = nxt.get(w2, Fraction(0)) + c2
        pending = witt_normal_form(OperatorSum(nxt))
    return result


def sign_flipped(s: OperatorSum) -> OperatorSum:
    """Negate every single derivative factor: a length-j word picks up (-1)^j."""
    return OperatorSum({w: co * (-1) ** len(w) for w, co in s.terms.items()})


def composition_check(M: int) -> dict[int, OperatorSum]:
    """Residual of the two-sided expansion composition at each order 1..M.

    The contract is that every residual is exactly zero after Witt normal
    form; returning them lets callers see failures explicitly.
    """
    if M < 1:
        raise ValueError("M must be >= 1, got %r" % (M,))
    boxes = {m: derive_box(m) for m in range(0, M + 1)}
    tboxes = {m: derive_tbox(m) for m in range(0, M + 1)}
    residuals: dict[int, OperatorSum] = {}
    for order in range(1, M + 1):
        total = OperatorSum.zero()
        for m in range(0, order + 1):
            mp = order - m
            coeff = Fraction(1, _factorial(m) * _factorial(mp))
            total = total + (boxes[m] * tboxes[mp]).scale(coeff)
        residuals[order] = witt_normal_form(total)
    return residuals


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# -------------------------------------------------------------- specialization

DeltaWord = tuple[int, ...]


def specialize_hypotrochoid(m: int, k: int) -> dict[DeltaWord, int]:
    """Inverse-map operator evaluated on the k-arm direction family.

    Substituting the direction (z-w)^(1-k) turns each factor h (dh)^(n-1)
    into -(1-k)^(n-1) times the monomial direction labeled -kn, and every
    derivative becomes its holomorphic part.  Labels read left to right.
    """
    if m < 1:
        raise ValueError("m must be >= 1, got %r" % (m,))
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    out: dict[DeltaWord, int] = {}
    for word, co in tbox_closed(m).terms.items():
        labels = []
        factor = Fraction(1)
        for monomial in word:
            d = dict(monomial)
            if d.get(0) != 1 or set(d) - {0, 1}:
                raise AssertionError("unexpected direction %r" % (monomial,))
            n = d.get(1, 0) + 1
            labels.append(-k * n)
            factor *= -((1 - k) ** (n - 1))
        value = co * factor
        if value.denominator != 1:
            raise AssertionError("non-integer specialization coefficient")
        key = tuple(labels)
        total = out.get(key, 0) + int(value)
        if total == 0:
            out.pop(key, None)
        else:
            out[key] = total
    return out
