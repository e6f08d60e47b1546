from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hypovir.exact import CPoly
from hypovir.virasoro import (
    DescendantSymbol,
    PBWVector,
    apply_mode,
    basis_candidates,
    descendant,
    expand_combination,
    expand_symbol,
    hypotrochoid_basis_solve,
    kappa_c_map,
    l_minus_one_derivative,
    normal_order,
    pbw_from_json,
    pbw_to_json,
    shapovalov,
    vir_bracket,
)

C = CPoly.gen()
HALF_C = CPoly({1: Fraction(1, 2)})


def rand_vector(rng: random.Random, n_words: int = 3) -> PBWVector:
    terms = {}
    for _ in range(n_words):
        length = rng.randint(0, 3)
        word = tuple(sorted(rng.randint(-6, -2) for _ in range(length)))
        terms[word] = CPoly({0: rng.randint(-5, 5), 1: rng.randint(-2, 2)})
    return PBWVector(terms)


# ---------------------------------------------------------------- bracket

def test_bracket_examples():
    b = vir_bracket(2, -2)
    assert (b.mode, b.coeff) == (0, 4)
    assert b.central == HALF_C

    b = vir_bracket(1, -1)
    assert (b.mode, b.coeff) == (0, 2)
    assert b.central == CPoly.zero()

    for k in range(2, 7):
        b = vir_bracket(-k, -2 * k)
        assert (b.mode, b.coeff) == (-3 * k, k)
        assert b.central == CPoly.zero()


def test_bracket_antisymmetry():
    for m in range(-6, 7):
        for n in range(-6, 7):
            a, b = vir_bracket(m, n), vir_bracket(n, m)
            assert a.coeff == -b.coeff
            assert a.central == -b.central


def test_bracket_jacobi_full_range():
    # [[a,b],c] + [[b,c],a] + [[c,a],b] = 0, the central element commuting
    modes = range(-6, 7)
    for a in modes:
        for b in modes:
            for c in modes:
                coeff = Fraction(0)
                central = CPoly.zero()
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = vir_bracket(x, y)
                    outer = vir_bracket(inner.mode, z)
                    coeff += inner.coeff * outer.coeff
                    central = central + outer.central * inner.coeff
                assert coeff == 0, (a, b, c)
                assert central == CPoly.zero(), (a, b, c)


# ---------------------------------------------------------------- normal order

def test_normal_order_examples():
    for k in range(2, 7):
        got = normal_order({(-k, -2 * k): 1})
        assert got == PBWVector({(-2 * k, -k): 1, (-3 * k,): k})

    assert normal_order({(1,): 1}).is_zero()
    assert normal_order({(2, -2): 1}) == PBWVector({(): HALF_C})


def test_normal_order_annihilation():
    for n in range(-1, 4):
        assert normal_order({(n,): 1}).is_zero()
    assert normal_order({(0, -3): 1}) == PBWVector({(-3,): 3})  # L0 eigenvalue


def test_normal_order_idempotent_and_weight_preserving():
    rng = random.Random(77)
    for _ in range(20):
        length = rng.randint(1, 4)
        word = tuple(rng.choice([-5, -4, -3, -2, 2, 3]) for _ in range(length))
        v = normal_order({word: 1})
        assert normal_order(v) == v
        in_weight = -sum(word)
        for w in v.terms:
            assert -sum(w) == in_weight
            assert all(m <= -2 for m in w)
            assert tuple(sorted(w)) == w


def test_pbw_json_roundtrip():
    v = normal_order({(-3, -2): C, (2, -2): Fraction(1, 3)})
    assert pbw_from_json(pbw_to_json(v)) == v


# ---------------------------------------------------------------- descendants

def test_descendant_small_displays():
    for k in range(2, 9):
        assert descendant(k, 1) == PBWVector({(-k,): 1})
        assert descendant(k, 2) == PBWVector({(-k, -k): 1, (-2 * k,): k - 1})
        assert descendant(k, 3) == PBWVector(
            {
                (-k, -k, -k): 1,
                (-2 * k, -k): 3 * (k - 1),
                (-3 * k,): 2 * (k - 1) * (2 * k - 1),
            }
        )


def test_descendant_rejects_bad_input():
    with pytest.raises(ValueError):
        descendant(1, 2)
    with pytest.raises(ValueError):
        descendant(0, 1)
    with pytest.raises(ValueError):
        descendant(3, 0)


def test_descendant_pure_weight():
    for k in range(2, 7):
        for m in range(1, 5):
            assert descendant(k, m).weight() == k * m


def test_descendant_coefficients_c_free():
    for k in range(2, 6):
        for m in range(1, 5):
            for co in descendant(k, m).terms.values():
                assert co.is_constant()


# ---------------------------------------------------------------- derivative

def test_derivative_examples():
    for k in range(2, 8):
        assert l_minus_one_derivative(PBWVector({(-k,): 1})) == PBWVector(
            {(-k - 1,): k - 1}
        )
    assert l_minus_one_derivative(PBWVector.vacuum()).is_zero()
    assert l_minus_one_derivative(PBWVector({(-2,): 1})) == PBWVector({(-3,): 1})


def test_derivative_raises_weight_by_one():
    rng = random.Random(3)
    for _ in range(10):
        v = rand_vector(rng)
        d = l_minus_one_derivative(v)
        for w in d.terms:
            assert -sum(w) - 1 in v.weights()


def test_derivative_mode_commutation():
    # d(L_{-k} v) - L_{-k} d(v) = (k-1) L_{-k-1} v
    rng = random.Random(41)
    for k in range(2, 7):
        for _ in range(5):
            v = rand_vector(rng)
            lhs = l_minus_one_derivative(apply_mode(-k, v)) - apply_mode(
                -k, l_minus_one_derivative(v)
            )
            rhs = apply_mode(-k - 1, v).scale(k - 1)
            assert lhs == rhs, k


# ---------------------------------------------------------------- shapovalov

def test_shapovalov_examples():
    one = PBWVector.vacuum()
    l2 = PBWVector({(-2,): 1})
    l3 = PBWVector({(-3,): 1})
    assert shapovalov(one, one) == CPoly.one()
    assert shapovalov(l2, l2) == HALF_C
    assert shapovalov(l2, l3) == CPoly.zero()
    assert shapovalov(l3, l3) == 2 * C


def test_shapovalov_symmetry_bilinearity():
    rng = random.Random(99)
    for _ in range(8):
        u, v, w = (rand_vector(rng, 2) for _ in range(3))
        assert shapovalov(u, v) == shapovalov(v, u)
        assert shapovalov(u + w, v) == shapovalov(u, v) + shapovalov(w, v)
        assert shapovalov(u.scale(3), v) == 3 * shapovalov(u, v)


def brute_pairing(uw: tuple, vw: tuple) -> CPoly:
    # independent route: normal-order the single concatenated word
    adjoint = tuple(-m for m in reversed(uw))
    return normal_order({adjoint + vw: 1}).vacuum_coeff()


def test_shapovalov_gram_weight_four():
    basis = [(-4,), (-2, -2)]
    gram = [
        [shapovalov(PBWVector({u: 1}), PBWVector({v: 1})) for v in basis]
        for u in basis
    ]
    assert gram[0][0] == 5 * C
    assert gram[0][1] == 3 * C
    assert gram[1][0] == 3 * C
    assert gram[1][1] == (8 + C) * HALF_C
    det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]
    assert det == C * C * (5 * C + 22) * CPoly.const(Fraction(1, 2))


def test_shapovalov_matches_brute_force_through_weight_four():
    words = [(), (-2,), (-3,), (-4,), (-2, -2)]
    for uw in words:
        for vw in words:
            assert shapovalov(PBWVector({uw: 1}), PBWVector({vw: 1})) == brute_pairing(
                uw, vw
            ), (uw, vw)


# ---------------------------------------------------------------- basis solve

def solve_map(target: PBWVector) -> dict[DescendantSymbol, Fraction]:
    res = hypotrochoid_basis_solve(target)
    assert res.ok and not res.c_dependent
    return res.rational_combination()


def test_solve_square_identity():
    for k in range(2, 7):
        got = solve_map(PBWVector({(-k, -k): 1}))
        assert got == {
            DescendantSymbol(k, 2): Fraction(1),
            DescendantSymbol(2 * k, 1): Fraction(-(k - 1)),
        }


def test_solve_adjacent_product_identity():
    for k in range(2, 7):
        got = solve_map(PBWVector({(-k - 1, -k): 1}))
        assert got == {
            DescendantSymbol(k, 2, 1): Fraction(1, 2 * (k - 1)),
            DescendantSymbol(2 * k + 1, 1): Fraction(-k),
        }


def test_solve_derivative_property():
    for k in range(2, 7):
        got = solve_map(l_minus_one_derivative(descendant(k, 1)))
        assert got == {DescendantSymbol(k + 1, 1): Fraction(k - 1)}


def test_solve_gap_two_product_identity():
    # 1/(2k(k-1)) (d^2 T_{k,2} - 2(k-1)^2 T_{k+1,2} - 2k(k+1)(k-1) T_{2k+2,1})
    for k in range(2, 7):
        target = PBWVector({(-k - 2, -k): 1})
        combo = {
            DescendantSymbol(k, 2, 2): Fraction(1, 2 * k * (k - 1)),
            DescendantSymbol(k + 1, 2): Fraction(-(k - 1), k),
            DescendantSymbol(2 * k + 2, 1): Fraction(-(k + 1)),
        }
        assert expand_combination(combo) == target, k
        res = hypotrochoid_basis_solve(target)
        assert res.ok and not res.c_dependent
        assert expand_combination(res.combination) == target, k


def test_solve_cube_identity():
    target = PBWVector({(-2, -2, -2): 1})
    combo = {
        DescendantSymbol(2, 3): Fraction(1),
        DescendantSymbol(2, 2, 2): Fraction(-3, 4),
        DescendantSymbol(3, 2): Fraction(3, 2),
        DescendantSymbol(6, 1): Fraction(3),
    }
    assert expand_combination(combo) == target
    assert solve_map(target) == combo


def test_solve_reconstruction_closure():
    for k in range(2, 7):
        for m in range(1, 4):
            got = solve_map(descendant(k, m))
            assert got == {DescendantSymbol(k, m): Fraction(1)}, (k, m)


def test_solve_weight_cap_enforced():
    with pytest.raises(ValueError):
        hypotrochoid_basis_solve(PBWVector({(-4, -4): 1}), weight_cap=6)


def test_solve_not_representable_is_reported():
    # the weight-8 descendant span has codimension 1; this word falls outside
    res = hypotrochoid_basis_solve(PBWVector({(-4, -2, -2): 1}))
    assert not res.ok
    assert res.reason
    with pytest.raises(ValueError):
        hypotrochoid_basis_solve(PBWVector({(): 1}) + PBWVector({(-2,): 1}))


def test_candidate_order_documented():
    # weight 5: pure first, then derivative orders ascending, k descending
    got = basis_candidates(5)
    assert got == [
        DescendantSymbol(5, 1, 0),
        DescendantSymbol(4, 1, 1),
        DescendantSymbol(2, 2, 1),
        DescendantSymbol(3, 1, 2),
        DescendantSymbol(2, 1, 3),
    ]


def test_expand_symbol_weights():
    assert expand_symbol(DescendantSymbol(2, 2, 2)).weight() == 6
    assert expand_symbol(DescendantSymbol(3, 1)).weight() == 3


# ---------------------------------------------------------------- parameter map

def test_parameter_map_exact_points():
    for kappa, c in ((Fraction(8, 3), 0), (3, Fraction(1, 2)), (4, 1)):
        got = kappa_c_map(kappa=kappa)
        assert got.c == c, kappa
    ising = kappa_c_map(kappa=3)
    assert ising.y == Fraction(1, 3)
    assert ising.n == 1


def test_parameter_map_round_trip():
    for kappa in (Fraction(8, 3), Fraction(14, 5), 3, Fraction(10, 3), Fraction(7, 2), 4):
        base = kappa_c_map(kappa=kappa)
        via_y = kappa_c_map(y=base.y)
        assert via_y.c == base.c
        via_n = kappa_c_map(n=base.n)
        assert abs(float(via_n.c) - float(base.c)) < 1e-12, kappa
        assert abs(float(via_n.kappa) - float(kappa)) < 1e-12, kappa


def test_parameter_map_domain_errors():
    for bad in (Fraction(5, 2), Fraction(9, 2), 0):
        with pytest.raises(ValueError):
            kappa_c_map(kappa=bad)
    with pytest.raises(ValueError):
        kappa_c_map(y=Fraction(1, 5))
    with pytest.raises(ValueError):
        kappa_c_map(n=3)
    with pytest.raises(ValueError):
        kappa_c_map()
    with pytest.raises(ValueError):
        kappa_c_map(kappa=3, y=Fraction(1, 3))
