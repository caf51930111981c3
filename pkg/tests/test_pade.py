import random
from dataclasses import replace
from fractions import Fraction

import pytest
import sympy as sp
from helpers import grid, random_params
from oracles import T as sT
from oracles import sym_P, sym_Q, z as sz

from lerchpade.operators import mult, phi
from lerchpade.pade import (
    LerchParams,
    PadeSystem,
    build_A,
    build_P,
    build_Q,
    build_system,
    lerch_family,
    lerch_series_coeffs,
    numerator_from,
    oracle_solve,
    proportional,
    remainder_by_series,
    remainder_tail,
    satisfies_conditions,
    tuple_to_vector,
    verify_order,
)
from lerchpade.poly import UniPoly

A_VALUES = [Fraction(1, 2), Fraction(-3, 7), Fraction(5)]
T = UniPoly.monomial(1)


def micro(a):
    return LerchParams(1, 1, 1, Fraction(0), (a,))


def _sym(poly, var):
    return sum((sp.Rational(c.numerator, c.denominator) * var**k for k, c in enumerate(poly.coeffs)), sp.Integer(0))


@pytest.mark.parametrize("bad", [
    dict(r=0), dict(n=0), dict(x=Fraction(1)), dict(x=Fraction(-1, 3)),
    dict(alphas=(Fraction(1), Fraction(1))), dict(alphas=(Fraction(0), Fraction(1))), dict(alphas=(Fraction(1),)),
])
def test_params_validation(bad):
    base = dict(r=1, m=2, n=1, x=Fraction(0), alphas=(Fraction(1), Fraction(2)))
    base.update(bad)
    with pytest.raises(ValueError):
        LerchParams(**base)


@pytest.mark.parametrize("a", A_VALUES)
def test_build_A_examples(a):
    assert build_A(micro(a), 0) == T - a
    b = a + 1
    p = LerchParams(1, 2, 1, Fraction(0), (a, b))
    assert build_A(p, 1) == T * (T - a) * (T - b)


def test_build_A_top_degree_is_monic():
    p = LerchParams(2, 3, 2, Fraction(0), (Fraction(1), Fraction(-2), Fraction(3)))
    A = build_A(p, p.rm)
    assert A.degree == 2 * 3 * 2 + p.rm and A.leading == 1
    with pytest.raises(ValueError):
        build_A(p, p.rm + 1)


@pytest.mark.parametrize("a", A_VALUES)
def test_build_P_and_Q_micro_case(a):
    p = micro(a)
    assert build_P(p, 0) == UniPoly([-a, 2])
    assert build_P(p, 1) == UniPoly([0, -2 * a, 3])
    assert build_P(p, 1).leading == 3
    assert build_Q(p, 0, 1, 1) == UniPoly([2 * a])
    assert build_Q(p, 1, 1, 1) == UniPoly([-a**2 / 2, 3 * a])


def test_numerator_of_a_constant_is_zero():
    assert not numerator_from(UniPoly([4]), [Fraction(1)])


def test_build_Q_range_check():
    with pytest.raises(ValueError):
        build_Q(micro(Fraction(1)), 0, 2, 1)


@pytest.mark.parametrize("r, m, n, alphas", [
    (1, 1, 2, ["1/3"]),
    (2, 1, 1, ["1/2"]),
    (1, 2, 1, ["1/2", "-1/3"]),
    (2, 2, 1, ["2", "1/3"]),
    (1, 3, 1, ["1", "2", "-1/2"]),
])
def test_system_matches_calculus_oracle(r, m, n, alphas):
    params = LerchParams(r, m, n, Fraction(0), tuple(Fraction(a) for a in alphas))
    system = build_system(params)
    for l in range(params.rm + 1):
        assert sp.expand(_sym(system.P[l], sT) - sym_P(r, m, n, alphas, l)) == 0
        for i, s in params.pairs():
            assert sp.expand(_sym(system.Q[l, i, s], sz) - sym_Q(r, m, n, alphas, l, i, s)) == 0


def test_series_coefficients():
    a = Fraction(2, 5)
    assert lerch_series_coeffs(0, a, 1, 3) == [a, a**2 / 2, a**3 / 3, a**4 / 4]
    assert lerch_series_coeffs(0, a, 2, 0) == [a]
    assert lerch_series_coeffs(Fraction(1, 2), 1, 1, 0) == [Fraction(2, 3)]


@pytest.mark.parametrize("a", A_VALUES)
def test_remainder_tail_micro_case(a):
    tail = remainder_tail(micro(a), 0, 1, 1, 3)
    assert tail.coeff(1) == 0 and tail.coeff(2) == a**3 / 6


def test_generic_polynomial_has_no_vanishing_moment():
    a = Fraction(3, 4)
    p = micro(a)
    for s in (1, 2, 3):
        assert remainder_tail(p, 0, 1, s, 0, P=T - a).coeff(1) != 0


def test_vanishing_moments_directly():
    rng = random.Random(21)
    for r, m, n in grid(4, 3):
        params = random_params(rng, r, m, n)
        for l in range(params.rm + 1):
            P = build_P(params, l)
            for i, s in params.pairs():
                for k in range(n):
                    assert phi(params.ctx, params.alphas[i - 1], s, mult(UniPoly.monomial(k), P)) == 0


def test_remainder_routes_agree():
    rng = random.Random(22)
    for r, m, n in [(1, 1, 3), (2, 2, 2), (3, 1, 2), (1, 3, 2)]:
        params = random_params(rng, r, m, n)
        system = build_system(params)
        K = n + 4
        for l in range(params.rm + 1):
            for i, s in params.pairs():
                series = lerch_series_coeffs(params.x, params.alphas[i - 1], s, system.P[l].degree + K + 1)
                poly_part, tail = remainder_by_series(system.P[l], system.Q[l, i, s], series, K)
                assert not poly_part
                assert tail == remainder_tail(params, l, i, s, K)


def test_degrees():
    rng = random.Random(23)
    for r, m, n in grid(6, 4):
        params = random_params(rng, r, m, n)
        system = build_system(params)
        for l in range(params.rm + 1):
            assert system.P[l].degree == r * m * n + l
            assert all(system.Q[l, i, s].degree <= r * m * n + l - 1 for i, s in params.pairs())


def test_verify_order_examples():
    rep = verify_order(micro(Fraction(1)), 4)
    assert rep.passed and all(o.value >= 2 for o in rep.orders.values())
    rep = verify_order(LerchParams(2, 2, 2, Fraction(0), (Fraction(1, 3), Fraction(1, 5))), 5)
    assert rep.passed and rep.degrees_ok and rep.polynomial_parts_ok


def test_verify_order_rejects_a_short_window():
    with pytest.raises(ValueError):
        verify_order(micro(Fraction(1)), 1)


def test_verify_order_detects_corruption():
    params = LerchParams(2, 2, 2, Fraction(1, 3), (Fraction(1, 3), Fraction(-1, 5)))
    system = build_system(params)
    Q = dict(system.Q)
    Q[1, 2, 1] = Q[1, 2, 1] + UniPoly.monomial(0, Fraction(1, 10**9))
    assert not verify_order(PadeSystem(params, system.P, Q), 5).passed
    P = list(system.P)
    P[0] = P[0] + UniPoly.monomial(1, 1)
    assert not verify_order(PadeSystem(params, tuple(P), system.Q), 5).passed


def test_scaling_covariance():
    params = LerchParams(2, 2, 1, Fraction(1, 4), (Fraction(1, 3), Fraction(-2)))
    lam = Fraction(-5, 2)
    scaled = replace(params, alphas=tuple(lam * a for a in params.alphas))
    a, b = build_system(params), build_system(scaled)
    for l in range(params.rm + 1):
        d = params.r * params.m * params.n + l
        rescale = lambda p: UniPoly([c * lam ** (d - k) for k, c in enumerate(p.coeffs)])  # noqa: E731
        assert b.P[l] == rescale(a.P[l])
        for i, s in params.pairs():
            assert b.Q[l, i, s] == rescale(a.Q[l, i, s])


def test_system_json_keys():
    data = build_system(LerchParams(1, 2, 1, Fraction(0), (Fraction(1, 2), Fraction(1, 3)))).to_json()
    assert data["P[0]"][0] and "Q[2][2][1]" in data
    assert data["params"]["alphas"] == ["1/2", "1/3"]


def test_oracle_reciprocal_function():
    basis = oracle_solve([[Fraction(1), Fraction(0), Fraction(0)]], [1], 1)
    assert len(basis) == 1
    P0, P1 = basis[0]
    assert proportional(list(P0.coeffs) + list(P1.coeffs), [0, 1, 1])


def test_oracle_existence_at_minimal_degree():
    rng = random.Random(24)
    for r, m, n in [(1, 2, 2), (2, 1, 2), (2, 2, 1)]:
        params = random_params(rng, r, m, n)
        N = r * m * n
        assert len(oracle_solve(lerch_family(params, N + n), [n] * params.rm, N)) >= 1


def test_oracle_dimension_grows_with_degree():
    params = LerchParams(1, 2, 1, Fraction(0), (Fraction(1, 2), Fraction(2)))
    fam = lerch_family(params, 12)
    for M in range(2, 8):
        assert len(oracle_solve(fam, [1, 1], M)) >= M - 2 + 1


def test_oracle_errors():
    with pytest.raises(ValueError):
        oracle_solve([[Fraction(1)] * 5], [3], 2)
    with pytest.raises(ValueError):
        oracle_solve([[Fraction(1)] * 2], [1], 3)


def test_constructed_columns_satisfy_the_linear_conditions():
    params = LerchParams(2, 2, 1, Fraction(1, 2), (Fraction(1, 3), Fraction(3)))
    system = build_system(params)
    for l in range(params.rm + 1):
        M = params.r * params.m * params.n + l
        fam = lerch_family(params, M + 1)
        assert satisfies_conditions(system.column(l), fam, [1] * params.rm, M)
        bad = list(system.column(l))
        bad[1] = bad[1] + UniPoly([1])
        assert not satisfies_conditions(bad, fam, [1] * params.rm, M)


def test_tuple_layout_rejects_oversized_polynomials():
    with pytest.raises(ValueError):
        tuple_to_vector([UniPoly.monomial(3), UniPoly()], 2)
