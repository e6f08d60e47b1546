from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hypovir.exact import CPoly, CRat, cpoly_arith, cpoly_eval, cpoly_gcd, rat

C = CPoly.gen()


def rand_cpoly(rng: random.Random, max_deg: int = 4) -> CPoly:
    return CPoly(
        {
            d: Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            for d in range(rng.randint(0, max_deg) + 1)
        }
    )


def test_basic_construction():
    p = CPoly({2: 3, 0: Fraction(1, 2), 5: 0})
    assert p.degree() == 2
    assert p.coeffs == {2: Fraction(3), 0: Fraction(1, 2)}
    assert CPoly.zero().is_zero()
    assert CPoly.zero().degree() == -1


def test_arith_examples():
    half_c = CPoly({1: Fraction(1, 2)})
    assert cpoly_arith(half_c, CPoly.const(2), "mul") == C
    assert cpoly_arith(C, CPoly.zero(), "add") * CPoly.zero() == CPoly.zero()
    assert cpoly_eval(half_c, Fraction(1, 2)) == Fraction(1, 4)


def test_arith_rejects_unknown_op():
    with pytest.raises(ValueError):
        cpoly_arith(C, C, "div")


def test_ring_axioms_randomized():
    rng = random.Random(4221)
    for _ in range(40):
        a, b, d = (rand_cpoly(rng) for _ in range(3))
        assert (a + b) + d == a + (b + d)
        assert (a * b) * d == a * (b * d)
        assert a * (b + d) == a * b + a * d
        assert a + b == b + a
        assert a * b == b * a
        assert a - a == CPoly.zero()


def test_divmod_roundtrip():
    rng = random.Random(918)
    for _ in range(30):
        a = rand_cpoly(rng, 6)
        b = rand_cpoly(rng, 3)
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree() < b.degree()


def test_gcd_divides_both():
    a = (C + 1) * (C - 2) * (C - 2)
    b = (C - 2) * (3 * C + 5)
    g = cpoly_gcd(a, b)
    assert g == C - 2
    for p in (a, b):
        _, r = divmod(p, g)
        assert r.is_zero()


def test_eval_matches_horner_free_form():
    p = 2 * C**3 - C + CPoly.const(Fraction(7, 3))
    v = Fraction(5, 2)
    assert p(v) == 2 * v**3 - v + Fraction(7, 3)


def test_pow():
    assert (C + 1) ** 2 == C * C + 2 * C + 1
    assert (C + 1) ** 0 == CPoly.one()
    with pytest.raises(ValueError):
        (C + 1) ** -1


def test_json_roundtrip():
    p = CPoly({0: Fraction(-1, 24), 3: 2})
    assert CPoly.from_json(p.as_json()) == p


def test_crat_normalization():
    x = CRat((C - 2) * (C + 1), (C - 2) * CPoly.const(2))
    assert x == CRat(C + 1, 2)
    assert x.den.leading_coeff() == 1


def test_crat_field_axioms_randomized():
    rng = random.Random(5150)
    for _ in range(25):
        a_n, a_d = rand_cpoly(rng, 3), rand_cpoly(rng, 2)
        b_n, b_d = rand_cpoly(rng, 3), rand_cpoly(rng, 2)
        if a_d.is_zero() or b_d.is_zero():
            continue
        a = CRat(a_n, a_d)
        b = CRat(b_n, b_d)
        assert a + b == b + a
        assert a * b == b * a
        assert a - a == CRat.zero()
        if not b.is_zero():
            assert (a / b) * b == a
        if not a.is_zero():
            assert a * a.inverse() == CRat.one()


def test_crat_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        CRat(C, CPoly.zero())
    with pytest.raises(ZeroDivisionError):
        CRat.one() / CRat.zero()


def test_crat_constant_extraction():
    x = CRat(CPoly.const(Fraction(3, 4)))
    assert x.is_constant()
    assert x.as_rational() == Fraction(3, 4)
    y = CRat(C, 2)
    assert not y.is_constant()
    with pytest.raises(ValueError):
        y.as_rational()


def test_crat_evaluation():
    x = CRat(C * C - 1, C - 1)
    assert x(Fraction(3)) == 4  # reduces to c + 1
    with pytest.raises(ZeroDivisionError):
        CRat(CPoly.one(), C)(0)


def test_rat_coercion():
    assert rat(3) == Fraction(3)
    assert rat("2/5") == Fraction(2, 5)
    assert rat(Fraction(1, 7)) == Fraction(1, 7)
