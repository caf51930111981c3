import math
import random
from fractions import Fraction

import pytest
import sympy as sp
from helpers import random_alphas, random_params
from oracles import sym_delta

from lerchpade.determinant import (
    C_direct,
    C_via_det,
    CapExceeded,
    c_constant_product,
    delta_at,
    delta_constant,
    factorization_check,
    homogeneity_degree,
    integral_factor,
    integral_factor_r1,
    interpolated_degree,
    lemma3_check,
    predicted_product,
    r_vector,
)
from lerchpade.pade import LerchParams

A_VALUES = [Fraction(1, 2), Fraction(-3, 7), Fraction(5)]


def micro(a):
    return LerchParams(1, 1, 1, Fraction(0), (a,))


@pytest.mark.parametrize("a", A_VALUES)
def test_micro_case_determinant(a):
    for z0 in (0, Fraction(7), Fraction(-2, 3)):
        assert delta_at(micro(a), z0) == a**3 / 2
    rep = delta_constant(micro(a))
    assert rep.delta == a**3 / 2 and rep.constant_confirmed and rep.passed


def test_micro_case_at_one_is_constant():
    assert delta_at(micro(Fraction(1)), 0) == delta_at(micro(Fraction(1)), 7) == Fraction(1, 2)


@pytest.mark.parametrize("r, m, n, alphas, expected", [
    (1, 2, 1, ("1/2", "1/3"), Fraction(1, 1119744)),
    (2, 1, 1, ("1/2",), Fraction(-1, 24576)),
    (1, 1, 2, ("1/3",), Fraction(1, 729)),
])
def test_delta_against_frozen_oracle_values(r, m, n, alphas, expected):
    rep = delta_constant(LerchParams(r, m, n, Fraction(0), tuple(Fraction(a) for a in alphas)))
    assert rep.delta == expected
    assert rep.constant_confirmed and rep.interpolated_degree == 0 and rep.passed


def test_delta_against_calculus_oracle_live():
    alphas = ("2", "-1/3")
    params = LerchParams(1, 2, 1, Fraction(0), tuple(Fraction(a) for a in alphas))
    assert sp.Rational(delta_at(params, 3)) == sym_delta(1, 2, 1, alphas)


def test_duplicate_alphas_are_rejected_upstream():
    with pytest.raises(ValueError):
        LerchParams(1, 2, 1, Fraction(0), (Fraction(1), Fraction(1)))


def test_r_vector_examples():
    a = Fraction(2, 3)
    assert r_vector(micro(a), 0) == [-a**3 / 6]
    params = LerchParams(2, 3, 1, Fraction(0), (Fraction(1), Fraction(2), Fraction(-1)))
    assert all(len(r_vector(params, l)) == params.rm for l in range(params.rm))
    with pytest.raises(ValueError):
        r_vector(params, params.rm)


def test_r_vector_denominators_at_alpha_one():
    for r in (1, 2):
        params = LerchParams(r, 1, 2, Fraction(0), (Fraction(1),))
        for l in range(params.rm):
            top = r * 2 + l + 2 + 1
            for v in r_vector(params, l):
                assert (math.lcm(*range(1, top + 1)) ** r) % v.denominator == 0


@pytest.mark.parametrize("params", [
    LerchParams(1, 1, 1, Fraction(0), (Fraction(3, 5),)),
    LerchParams(1, 2, 1, Fraction(0), (Fraction(-4, 3), Fraction(2, 7))),
    LerchParams(2, 1, 2, Fraction(1, 2), (Fraction(1, 3),)),
    LerchParams(2, 2, 1, Fraction(2, 5), (Fraction(1, 3), Fraction(-3))),
])
def test_r_vector_presentation(params):
    assert lemma3_check(params)


def test_interpolated_degree():
    xs = [Fraction(k) for k in range(6)]
    assert interpolated_degree(xs, [Fraction(3)] * 6) == 0
    assert interpolated_degree(xs, [x**3 - x for x in xs]) == 3
    assert interpolated_degree(xs, [Fraction(0)] * 6) == -1


@pytest.mark.parametrize("u", range(4))
def test_C_direct_for_one_point(u):
    a = Fraction(-5, 3)
    assert C_direct(1, u, 1, 1, 0, (a,)) == -a ** (u + 2) / ((u + 1) * (u + 2))


def test_C_direct_two_depths_by_brute_force():
    a = Fraction(3, 4)
    t1, t2 = sp.symbols("t1 t2")
    A = sp.Rational(3, 4)
    poly = sp.Poly(sp.expand((t1 - A) ** 2 * (t2 - A) ** 2 * (t2 - t1)), t1, t2)
    value = sum(c * A ** (i + 1) / (i + 1) * A ** (j + 1) / (j + 1) ** 2 for (i, j), c in poly.terms())
    assert sp.Rational(C_direct(1, 0, 1, 2, 0, (a,))) == value


def test_C_routes_agree():
    rng = random.Random(31)
    for r, m in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2)]:
        for n in (1, 2):
            for u in (0, 1, n + 1):
                alphas = random_alphas(rng, m)
                x = Fraction(rng.randint(0, 4), 5)
                assert C_direct(n, u, m, r, x, alphas) == C_via_det(n, u, m, r, x, alphas)


@pytest.mark.parametrize("u", range(4))
def test_integral_factor_one_point(u):
    assert integral_factor(u, 1, 1, 0) == Fraction(-1, (u + 1) * (u + 2))
    assert c_constant_product(1, u, 1, 1, 0) == Fraction(-1, (u + 1) * (u + 2))


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(5, 6)])
def test_integral_factor_closed_form_and_alternating_sum(x):
    for n in range(5):
        for v in range(5):
            alt = sum(Fraction(math.comb(n, j) * (-1) ** (n - j)) / (v + j + x + 1) for j in range(n + 1))
            assert integral_factor(v, n, 1, x) == integral_factor_r1(v, n, x) == alt != 0


def test_two_point_product_is_a_shifted_product():
    for n in (1, 2):
        for u in (0, n):
            single = integral_factor(u, n, 1, 0) * integral_factor(u + n + 1, n, 1, 0)
            assert abs(c_constant_product(n, u, 2, 1, 0)) == abs(single)


@pytest.mark.parametrize("u", range(3))
def test_factorization_one_point(u):
    w = factorization_check(1, u, 1, 1, 0)
    assert w.factorization_ok
    assert w.c_constant == Fraction(-1, (u + 1) * (u + 2))
    assert w.to_json()["exponent_alpha"] == u + 2


def test_factorization_two_points_given_samples():
    w = factorization_check(1, 0, 2, 1, 0, [(1, 2), (Fraction(1, 2), Fraction(1, 3))])
    assert w.consistent and w.c_constant != 0 and w.factorization_ok


def test_factorization_exponent_two_depths():
    # r(u+1) + r^2 n + C(r,2) = 2 + 4 + 1, confirmed by scaling alpha
    assert factorization_check(1, 0, 1, 2, 0).to_json()["exponent_alpha"] == 7
    a = Fraction(3, 5)
    assert C_direct(1, 0, 1, 2, 0, (2 * a,)) == 2**7 * C_direct(1, 0, 1, 2, 0, (a,))


def test_factorization_needs_two_samples():
    with pytest.raises(ValueError):
        factorization_check(1, 0, 1, 1, 0, [(1,)])


def test_predicted_product_is_homogeneous():
    alphas = (Fraction(1, 2), Fraction(3), Fraction(-2, 5))
    lam = Fraction(7, 3)
    for n, u, r in [(1, 0, 1), (2, 1, 2), (1, 3, 1)]:
        scaled = predicted_product(n, u, r, [lam * a for a in alphas])
        assert scaled == lam ** homogeneity_degree(n, u, 3, r) * predicted_product(n, u, r, alphas)


def test_C_is_homogeneous_of_the_predicted_degree():
    alphas = (Fraction(1, 2), Fraction(-3))
    lam = Fraction(-2, 3)
    for n, u, r in [(1, 0, 1), (1, 1, 2), (2, 0, 1)]:
        lhs = C_direct(n, u, 2, r, Fraction(1, 3), [lam * a for a in alphas])
        assert lhs == lam ** homogeneity_degree(n, u, 2, r) * C_direct(n, u, 2, r, Fraction(1, 3), alphas)


def test_cap_on_variables():
    with pytest.raises(CapExceeded):
        C_direct(1, 0, 4, 2, 0, (1, 2, 3, 4))
    with pytest.raises(CapExceeded):
        factorization_check(1, 0, 2, 2, 0, max_terms=10)


def test_determinant_cross_check_with_factorization():
    rng = random.Random(32)
    for r, m, n in [(1, 2, 1), (2, 1, 2), (2, 2, 1)]:
        rep = delta_constant(random_params(rng, r, m, n))
        assert rep.factorization_ok is True and rep.passed
