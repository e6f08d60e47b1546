"""Ordered partitions of an integer and their combinatorial coefficients.

A composition of m is a tuple of positive integers summing to m.  The two
coefficient routines implement independent recursions that must agree; one
recurses on weight, the other jointly on weight and length.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

Composition = tuple[int, ...]

# Memo entries are kept only up to this weight; larger inputs still compute,
# they just are not cached.
MEMO_WEIGHT_CAP = 16

_memo_weight: dict[Composition, Fraction] = {}
_memo_joint: dict[Composition, Fraction] = {}


def _validate(parts) -> Composition:
    lam = tuple(int(p) for p in parts)
    if not all(p >= 1 for p in lam):
        raise ValueError("composition parts must be positive integers, got %r" % (parts,))
    return lam


def enumerate_compositions(m: int) -> list[Composition]:
    """All compositions of m in lexicographic order; 2^(m-1) of them."""
    if m <= 0:
        raise ValueError("m must be a positive integer, got %r" % (m,))
    out: list[Composition] = []

    def build(prefix: list[int], remaining: int) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(1, remaining + 1):
            prefix.append(part)
            build(prefix, remaining - part)
            prefix.pop()

    build([], m)
    return out


def c_coeff(lam) -> Fraction:
    """Coefficient of a composition via the single recursion on weight.

    C of the empty composition is 1.  For (l_1..l_j): the last part being 1
    contributes C of the word with it dropped, and each part contributes
    (part - 1) times C of the word with that part lowered by one.
    """
    lam = _validate(lam)
    return _c_weight(lam)


def _c_weight(lam: Composition) -> Fraction:
    if lam == ():
        return Fraction(1)
    cached = _memo_weight.get(lam)
    if cached is not None:
        return cached
    total = Fraction(0)
    if lam[-1] == 1:
        total += _c_weight(lam[:-1])
    for i, part in enumerate(lam):
        if part > 1:
            lowered = lam[:i] + (part - 1,) + lam[i + 1:]
            total += (part - 1) * _c_weight(lowered)
    if sum(lam) <= MEMO_WEIGHT_CAP:
        _memo_weight[lam] = total
    return total


def c_coeff_alt(lam) -> Fraction:
    """Same coefficient via the joint recursion on weight and length.

    Length-one compositions seed the recursion with (n-1)!.  Longer words sum
    over pointwise reductions of all but the last part, the last reduction
    index pinned to 1, with multinomial weights.
    """
    lam = _validate(lam)
    return _c_joint(lam)


def _c_joint(lam: Composition) -> Fraction:
    j = len(lam)
    if j == 0:
        return Fraction(1)
    if j == 1:
        return Fraction(factorial(lam[0] - 1))
    cached = _memo_joint.get(lam)
    if cached is not None:
        return cached
    total = Fraction(0)
    ranges = [range(1, part + 1) for part in lam[:-1]]
    for ell_head in itertools.product(*ranges):
        ell = ell_head + (1,)
        dropped = sum(l0 - l1 for l0, l1 in zip(lam, ell))
        weight = Fraction(factorial(dropped))
        for l0, l1 in zip(lam, ell):
            weight *= Fraction(factorial(l0 - 1), factorial(l0 - l1) * factorial(l1 - 1))
        total += weight * _c_joint(ell_head)
    if sum(lam) <= MEMO_WEIGHT_CAP:
        _memo_joint[lam] = total
    return total


def clear_memo() -> None:
    _memo_weight.clear()
    _memo_joint.clear()
