"""Vacuum correlation functions on the sphere and the arm-field expansion.

The n-point function of identity-module states is computed by deforming the
contour of the outermost mode of one insertion onto all the others, which
trades it for finitely many lower-weight configurations.  Results are exact
rational functions of the insertion points and the central charge.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import CPoly, CRat
from .multipoint import MPoly, PointRational, sum_over_common_denominator
from .virasoro import (
    BasisSolveResult,
    DescendantSymbol,
    ModeWord,
    PBWVector,
    apply_mode,
    hypotrochoid_basis_solve,
    l_minus_one_derivative,
)


@dataclass(frozen=True)
class Insertion:
    """A module state placed at a labeled point."""

    state: PBWVector
    point: int


def vacuum_insertion(point: int) -> Insertion:
    return Insertion(PBWVector.vacuum(), point)


def _binom(top: int, p: int) -> Fraction:
    # binomial coefficient with arbitrary integer upper argument
    out = Fraction(1)
    for t in range(p):
        out *= Fraction(top - t, t + 1)
    return out


def _word_weight(word: ModeWord) -> int:
    return -sum(word)


# a configuration is a tuple of (mode word, point label) pairs, vacua dropped
Config = tuple[tuple[ModeWord, int], ...]


def _deform(config: Config, memo: dict) -> PointRational:
    if not config:
        return PointRational.const(1)
    if len(config) == 1:
        # a single non-vacuum insertion has nothing to deform onto
        return PointRational.zero()
    key = tuple(sorted(config))
    cached = memo.get(key)
    if cached is not None:
        return cached

    (word, w0), rest = config[0], config[1:]
    k = -word[0]
    remainder = word[1:]
    parts: list[tuple[MPoly, dict[tuple[int, int], int]]] = []
    for i, (u_word, wi) in enumerate(rest):
        for p in range(0, _word_weight(u_word) + 2):
            moved = apply_mode(p - 1, PBWVector.from_word(u_word))
            if moved.is_zero():
                continue
            factor = -_binom(1 - k, p)
            power = k + p - 1
            pair = (wi, w0) if wi < w0 else (w0, wi)
            sign = 1 if wi < w0 or power % 2 == 0 else -1
            for new_word, co in moved.terms.items():
                entries = []
                if remainder:
                    entries.append((remainder, w0))
                entries.extend(rest[:i])
                if new_word:
                    entries.append((new_word, wi))
                entries.extend(rest[i + 1:])
                sub = _deform(tuple(entries), memo)
                if sub.is_zero():
                    continue
                den = dict(sub.den)
                den[pair] = den.get(pair, 0) + power
                parts.append((sub.num.scale(co * (sign * factor)), den))
    total = sum_over_common_denominator(parts)
    memo[key] = total
    return total


def sphere_correlator(insertions: Sequence[Insertion]) -> PointRational:
    """Exact vacuum expectation of the given insertions; no insertions give 1."""
    points = [ins.point for ins in insertions]
    if len(set(points)) != len(points):
        raise ValueError("coincident insertion points: %r" % (sorted(points),))
    memo: dict = {}
    total = PointRational.zero()
    term_lists = [list(ins.state.terms.items()) for ins in insertions]
    for choice in itertools.product(*term_lists):
        coeff = CPoly.one()
        config = []
        for (word, co), ins in zip(choice, insertions):
            coeff = coeff * co
            if word:
                config.append((word, ins.point))
        value = _deform(tuple(config), memo)
        if not value.is_zero():
            total = total + value.scale(coeff)
    return total


def permutation_invariance(insertions: Sequence[Insertion]) -> bool:
    """Recompute the correlator under every insertion order and compare.

    Each order runs with a fresh memo, so the deformation genuinely anchors
    on a different insertion; the results must agree exactly.
    """
    base = sphere_correlator(list(insertions))
    for perm in set(itertools.permutations(insertions)):
        if sphere_correlator(list(perm)) != base:
            return False
    return True


# ------------------------------------------------------------- arm-field OPE

def stress_product_state(p: int) -> PBWVector:
    """Coefficient state of the mode-p term in the stress-stress product."""
    return apply_mode(p, PBWVector.from_word((-2,)))


@dataclass
class OpeTerm:
    """One Laurent coefficient of the product of two arm fields.

    identity_part is the vacuum channel; combination re-expresses the rest in
    descendant symbols when the solver succeeds (ok), and the raw state is
    kept either way.
    """

    pole_order: int
    identity_part: CRat
    state: PBWVector
    ok: bool
    combination: dict[DescendantSymbol, CRat] = field(default_factory=dict)
    c_dependent: bool = False
    reason: str | None = None

    def is_zero(self) -> bool:
        return self.identity_part.is_zero() and self.state.is_zero()


def ope_Tk1(k: int, k_prime: int, depth: int = 0) -> dict[int, OpeTerm]:
    """Laurent expansion of the product of two arm fields around the second.

    Keys are pole orders: n maps to the coefficient of (x - y)^(-n), from the
    leading pole k + k_prime down through `depth` regular orders.  Both fields
    are (k-2)-fold, resp. (k_prime-2)-fold, scaled derivatives of the stress
    field, so the expansion is the correspondingly differentiated
    stress-stress kernel.
    """
    if k < 2 or k_prime < 2:
        raise ValueError("arm indices must be >= 2, got %r, %r" % (k, k_prime))
    if depth < 0:
        raise ValueError("depth must be >= 0, got %r" % (depth,))
    top_power = (depth - 1) + (k - 2) + (k_prime - 2)
    series: dict[int, PBWVector] = {}
    p = 2
    while -p - 2 <= top_power:
        state = stress_product_state(p)
        if not state.is_zero():
            series[-p - 2] = state
        p -= 1
    for _ in range(k - 2):
        # d/dx lowers the relative power
        series = {
            a - 1: s.scale(Fraction(a)) for a, s in series.items() if a != 0
        }
    for _ in range(k_prime - 2):
        nxt: dict[int, PBWVector] = {}
        for a, s in series.items():
            if a != 0:
                prev = nxt.get(a - 1, PBWVector.zero())
                nxt[a - 1] = prev + s.scale(Fraction(-a))
            moved = l_minus_one_derivative(s)
            if not moved.is_zero():
                nxt[a] = nxt.get(a, PBWVector.zero()) + moved
        series = {a: s for a, s in nxt.items() if not s.is_zero()}
    norm = Fraction(1, _factorial(k - 2) * _factorial(k_prime - 2))

    out: dict[int, OpeTerm] = {}
    for n in range(k + k_prime, -depth, -1):
        state = series.get(-n, PBWVector.zero()).scale(norm)
        ident = CRat(state.vacuum_coeff())
        rest = state - PBWVector.vacuum().scale(state.vacuum_coeff())
        if rest.is_zero():
            out[n] = OpeTerm(n, ident, state, ok=True)
            continue
        solved = hypotrochoid_basis_solve(rest)
        out[n] = OpeTerm(
            n,
            ident,
            state,
            ok=solved.ok,
            combination=solved.combination,
            c_dependent=solved.c_dependent,
            reason=solved.reason,
        )
    return out


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out
