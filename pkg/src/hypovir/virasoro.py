"""The identity module of the Virasoro algebra, exactly.

Vectors are stored in a Poincare-Birkhoff-Witt normal form: words of modes,
all <= -2, nondecreasing left to right, applied to the vacuum (rightmost mode
acts first).  Coefficients live in CPoly, polynomials in the central charge.

Provides the bracket, normal ordering, the tower of deformation descendants,
the translation derivative, the Shapovalov pairing, re-expression of vectors
in the descendant basis, and the parameter dictionary linking the central
charge to the loop-model and SLE parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .compositions import c_coeff, enumerate_compositions
from .exact import CPoly, CRat, Rational, rat

ModeWord = tuple[int, ...]

CoeffLike = Union[CPoly, Fraction, int, str]


def _coeff(x: CoeffLike) -> CPoly:
    if isinstance(x, CPoly):
        return x
    return CPoly.const(rat(x))


class PBWVector:
    """Finite linear combination of canonical mode words with CPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ModeWord, CoeffLike] | None = None):
        clean: dict[ModeWord, CPoly] = {}
        if terms:
            for word, co in terms.items():
                co = _coeff(co)
                if not co.is_zero():
                    clean[tuple(word)] = co
        self.terms = clean

    @classmethod
    def zero(cls) -> "PBWVector":
        return cls()

    @classmethod
    def vacuum(cls) -> "PBWVector":
        return cls({(): CPoly.one()})

    @classmethod
    def from_word(cls, word: Iterable[int], coeff: CoeffLike = 1) -> "PBWVector":
        return cls({tuple(word): _coeff(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def get(self, word: Iterable[int]) -> CPoly:
        return self.terms.get(tuple(word), CPoly.zero())

    def vacuum_coeff(self) -> CPoly:
        return self.terms.get((), CPoly.zero())

    def __add__(self, other: "PBWVector") -> "PBWVector":
        out = dict(self.terms)
        for word, co in other.terms.items():
            s = out.get(word, CPoly.zero()) + co
            if s.is_zero():
                out.pop(word, None)
            else:
                out[word] = s
        return PBWVector(out)

    def __sub__(self, other: "PBWVector") -> "PBWVector":
        return self + other.scale(-1)

    def __neg__(self) -> "PBWVector":
        return self.scale(-1)

    def scale(self, factor: CoeffLike) -> "PBWVector":
        factor = _coeff(factor)
        return PBWVector({w: co * factor for w, co in self.terms.items()})

    def weights(self) -> list[int]:
        """Distinct L0 weights present, ascending; the weight of a word is -sum(modes)."""
        return sorted({-sum(w) for w in self.terms})

    def weight(self) -> int:
        """The weight of a homogeneous vector."""
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError("vector is not homogeneous, weights %r" % (ws,))
        return ws[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PBWVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms):
            label = "".join("L[%d]" % n for n in word) or "1"
            parts.append("(%r)*%s" % (self.terms[word], label))
        return " + ".join(parts)


def pbw_to_json(v: PBWVector) -> list[dict]:
    """Stable serialized form: sorted list of {word, coeff} entries."""
    return [
        {"word": list(word), "coeff": v.terms[word].as_json()}
        for word in sorted(v.terms)
    ]


def pbw_from_json(data: Iterable[Mapping]) -> PBWVector:
    return PBWVector(
        {tuple(entry["word"]): CPoly.from_json(entry["coeff"]) for entry in data}
    )


@dataclass(frozen=True)
class VirBracket:
    """[L_m, L_n] = coeff * L_mode + central * (central element)."""

    mode: int
    coeff: Fraction
    central: CPoly


def vir_bracket(m: int, n: int) -> VirBracket:
    """Commutator of two modes."""
    central = CPoly.zero()
    if m + n == 0:
        central = CPoly({1: Fraction(m * (m * m - 1), 12)})
    return VirBracket(mode=m + n, coeff=Fraction(m - n), central=central)


_apply_memo: dict[tuple[int, ModeWord], dict[ModeWord, CPoly]] = {}


def _apply_mode(m: int, word: ModeWord) -> dict[ModeWord, CPoly]:
    """L_m applied to a canonical word on the vacuum, as a canonical combination.

    Straightening: if the mode already fits on the left it is prepended;
    otherwise one commutator is taken and both pieces recurse.  Terminates
    because each step shortens the word being acted on or strictly lowers the
    leading mode at fixed length.
    """
    key = (m, word)
    cached = _apply_memo.get(key)
    if cached is not None:
        return cached

    out: dict[ModeWord, CPoly] = {}
    if not word:
        # vacuum annihilation: L_m 1 = 0 for m >= -1
        if m <= -2:
            out[(m,)] = CPoly.one()
    elif m <= word[0]:
        out[(m,) + word] = CPoly.one()
    else:
        head, rest = word[0], word[1:]
        inner = _apply_mode(m, rest)
        for w, co in inner.items():
            for w2, co2 in _apply_mode(head, w).items():
                _accumulate(out, w2, co * co2)
        br = vir_bracket(m, head)
        if br.coeff != 0:
            for w, co in _apply_mode(br.mode, rest).items():
                _accumulate(out, w, co * br.coeff)
        if not br.central.is_zero():
            _accumulate(out, rest, br.central)

    out = {w: co for w, co in out.items() if not co.is_zero()}
    _apply_memo[key] = out
    return out


def _accumulate(acc: dict[ModeWord, CPoly], word: ModeWord, co: CPoly) -> None:
    s = acc.get(word, CPoly.zero()) + co
    if s.is_zero():
        acc.pop(word, None)
    else:
        acc[word] = s


def apply_mode(m: int, v: PBWVector) -> PBWVector:
    """L_m acting on a canonical vector, result canonical."""
    out: dict[ModeWord, CPoly] = {}
    for word, co in v.terms.items():
        for w2, co2 in _apply_mode(m, word).items():
            _accumulate(out, w2, co * co2)
    return PBWVector(out)


def normal_order(combination: Mapping[ModeWord, CoeffLike] | PBWVector) -> PBWVector:
    """Canonical form of an arbitrary combination of mode words on the vacuum."""
    if isinstance(combination, PBWVector):
        items = combination.terms.items()
    else:
        items = [(tuple(w), _coeff(co)) for w, co in combination.items()]
    total = PBWVector.zero()
    for word, co in items:
        state = PBWVector.vacuum()
        for mode in reversed(tuple(word)):
            state = apply_mode(mode, state)
        total = total + state.scale(co)
    return total


def descendant_raw(k: int, m: int) -> dict[ModeWord, Fraction]:
    """Defining mode-word sum of the weight-km descendant, before ordering.

    Sum over compositions of m: coefficient C_lambda (k-1)^(m-len), word of
    modes -k*part with the first part rightmost.
    """
    if k < 2:
        raise ValueError("k must be >= 2, got %r" % (k,))
    if m < 1:
        raise ValueError("m must be >= 1, got %r" % (m,))
    combo: dict[ModeWord, Fraction] = {}
    for lam in enumerate_compositions(m):
        word = tuple(-k * part for part in reversed(lam))
        co = Fraction(c_coeff(lam) * (k - 1) ** (m - len(lam)))
        combo[word] = combo.get(word, Fraction(0)) + co
    return combo


def descendant(k: int, m: int) -> PBWVector:
    """The weight-km deformation descendant, normal-ordered."""
    combo = {
        word: CPoly.const(co) for word, co in descendant_raw(k, m).items()
    }
    return normal_order(combo)


def l_minus_one_derivative(v: PBWVector) -> PBWVector:
    """Translation derivative: L_{-1} acting on v; raises weight by one."""
    combo: dict[ModeWord, CPoly] = {}
    for word, co in v.terms.items():
        # [L_{-1}, L_m] = (-1-m) L_{m-1}; L_{-1} annihilates the vacuum
        for i, mode in enumerate(word):
            factor = Fraction(-1 - mode)
            if factor == 0:
                continue
            lifted = word[:i] + (mode - 1,) + word[i + 1:]
            _accumulate(combo, lifted, co * factor)
    return normal_order(combo)


def shapovalov(u: PBWVector, v: PBWVector) -> CPoly:
    """Invariant pairing with the vacuum normalized to 1 and L_n adjoint to L_{-n}."""
    total = CPoly.zero()
    for word, co in u.terms.items():
        state = v
        # adjoint of L_{m1}...L_{mr} is L_{-mr}...L_{-m1}; rightmost acts first
        for mode in word:
            state = apply_mode(-mode, state)
            if state.is_zero():
                break
        total = total + co * state.vacuum_coeff()
    return total


@dataclass(frozen=True, order=True)
class DescendantSymbol:
    """Symbol for the derivative_order-th translation derivative of a descendant."""

    k: int
    m: int
    derivative_order: int = 0

    def __str__(self) -> str:
        base = "T[%d,%d]" % (self.k, self.m)
        if self.derivative_order == 0:
            return base
        if self.derivative_order == 1:
            return "d" + base
        return "d^%d%s" % (self.derivative_order, base)

    def weight(self) -> int:
        return self.k * self.m + self.derivative_order


def expand_symbol(sym: DescendantSymbol) -> PBWVector:
    v = descendant(sym.k, sym.m)
    for _ in range(sym.derivative_order):
        v = l_minus_one_derivative(v)
    return v


def expand_combination(combo: Mapping[DescendantSymbol, "CRat | Fraction | int"]) -> PBWVector:
    total = PBWVector.zero()
    for sym, co in combo.items():
        if isinstance(co, CRat):
            if not co.is_constant():
                raise ValueError("cannot expand a c-dependent combination exactly: %s" % (sym,))
            co = co.as_rational()
        total = total + expand_symbol(sym).scale(rat(co))
    return total


def basis_candidates(weight: int) -> list[DescendantSymbol]:
    """Candidate symbols of a given weight, in the documented deterministic order.

    Pure descendants first with k descending, then derivative symbols with
    derivative order ascending and k descending within each order.
    """
    out: list[DescendantSymbol] = []
    for n in range(0, weight - 1):
        base_weight = weight - n
        syms = []
        for k in range(base_weight, 1, -1):
            if base_weight % k == 0:
                syms.append(DescendantSymbol(k, base_weight // k, n))
        out.extend(syms)
    return out


@dataclass
class BasisSolveResult:
    """Outcome of re-expressing a vector in the descendant basis.

    Non-representability is an ordinary outcome, not an exception.  When the
    solution needs coefficients that genuinely depend on the central charge,
    c_dependent is set and the CRat values carry the dependence.
    """

    ok: bool
    combination: dict[DescendantSymbol, CRat]
    c_dependent: bool = False
    reason: str | None = None

    def rational_combination(self) -> dict[DescendantSymbol, Fraction]:
        if not self.ok:
            raise ValueError("no combination: %s" % (self.reason,))
        if self.c_dependent:
            raise ValueError("combination has c-dependent coefficients")
        return {sym: co.as_rational() for sym, co in self.combination.items()}


def hypotrochoid_basis_solve(target: PBWVector, weight_cap: int = 24) -> BasisSolveResult:
    """Express a homogeneous vector as a combination of descendant symbols.

    Exact Gaussian elimination over the rational-function field in the central
    charge; free columns are set to zero, so the answer is the unique one
    supported on the greedy pivot set of the documented candidate order.
    """
    if target.is_zero():
        return BasisSolveResult(ok=True, combination={})
    weight = target.weight()
    if weight > weight_cap:
        raise ValueError("target weight %d exceeds weight_cap %d" % (weight, weight_cap))

    candidates = basis_candidates(weight)
    columns = [expand_symbol(sym) for sym in candidates]
    words = sorted({w for col in columns for w in col.terms} | set(target.terms))
    word_index = {w: i for i, w in enumerate(words)}

    ncols = len(candidates)
    rows: list[list[CRat]] = [[CRat.zero()] * (ncols + 1) for _ in words]
    for j, col in enumerate(columns):
        for w, co in col.terms.items():
            rows[word_index[w]][j] = CRat(co)
    for w, co in target.terms.items():
        rows[word_index[w]][ncols] = CRat(co)

    pivots: list[tuple[int, int]] = []  # (row, column)
    pivot_row = 0
    for col in range(ncols):
        pick = None
        for r in range(pivot_row, len(rows)):
            if not rows[r][col].is_zero():
                pick = r
                break
        if pick is None:
            continue
        rows[pivot_row], rows[pick] = rows[pick], rows[pivot_row]
        inv = rows[pivot_row][col].inverse()
        rows[pivot_row] = [entry * inv for entry in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivots.append((pivot_row, col))
        pivot_row += 1

    for r in range(pivot_row, len(rows)):
        if not rows[r][ncols].is_zero():
            return BasisSolveResult(
                ok=False,
                combination={},
                reason="weight-%d vector outside the descendant span" % weight,
            )

    combo: dict[DescendantSymbol, CRat] = {}
    c_dependent = False
    for r, col in pivots:
        value = rows[r][ncols]
        if value.is_zero():
            continue
        combo[candidates[col]] = value
        if not value.is_constant():
            c_dependent = True
    return BasisSolveResult(ok=True, combination=combo, c_dependent=c_dependent)


@dataclass(frozen=True)
class ParameterQuadruple:
    """Consistent loop-model / SLE / central-charge parameter set.

    Values are exact Fractions when the input pins them exactly, else floats.
    """

    kappa: "Fraction | float"
    n: "Fraction | float"
    y: "Fraction | float"
    c: "Fraction | float"


_EXACT_COSINES = {
    Fraction(1, 4): Fraction(0),  # cos(pi/2)
    Fraction(1, 3): Fraction(1),  # -2 cos(2pi/3)
    Fraction(1, 2): Fraction(2),  # -2 cos(pi)
}

_KAPPA_LO = Fraction(8, 3)
_KAPPA_HI = Fraction(4)


def kappa_c_map(kappa=None, n=None, y=None) -> ParameterQuadruple:
    """Fill in the parameter quadruple from exactly one of kappa, n, y.

    Admissible ranges: kappa in [8/3, 4], y in [1/4, 1/2], n in [0, 2]; the
    lower boundary (kappa = 8/3, central charge 0) is included.
    """
    given = [x is not None for x in (kappa, n, y)]
    if sum(given) != 1:
        raise ValueError("provide exactly one of kappa, n, y")

    if kappa is not None:
        kp = _as_number(kappa)
        if not (_KAPPA_LO <= kp <= _KAPPA_HI):
            raise ValueError("kappa out of range [8/3, 4]: %r" % (kappa,))
        yv = 1 - 2 / kp if isinstance(kp, Fraction) else 1.0 - 2.0 / kp
    elif y is not None:
        yv = _as_number(y)
        if not (Fraction(1, 4) <= yv <= Fraction(1, 2)):
            raise ValueError("y out of range [1/4, 1/2]: %r" % (y,))
    else:
        nv = _as_number(n)
        if not (0 <= nv <= 2):
            raise ValueError("n out of range [0, 2]: %r" % (n,))
        yv = None
        if isinstance(nv, Fraction):
            for y_exact, n_exact in _EXACT_COSINES.items():
                if nv == n_exact:
                    yv = y_exact
                    break
        if yv is None:
            yv = math.acos(-float(nv) / 2) / (2 * math.pi)

    if isinstance(yv, Fraction):
        kp = 2 / (1 - yv)
        cv = (2 - 3 * yv) * (4 * yv - 1) / (1 - yv)
        nv = _EXACT_COSINES.get(yv)
        if nv is None:
            nv = -2 * math.cos(2 * math.pi * float(yv))
    else:
        kp = 2.0 / (1.0 - yv)
        cv = (2 - 3 * yv) * (4 * yv - 1) / (1 - yv)
        nv = -2 * math.cos(2 * math.pi * yv)
    return ParameterQuadruple(kappa=kp, n=nv, y=yv, c=cv)


def _as_number(x) -> "Fraction | float":
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return float(x)
