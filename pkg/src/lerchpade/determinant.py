"""The determinant of the stacked Padé columns and its factorization.

Delta_n(z) is the (rm+1) x (rm+1) determinant whose l-th column is
(P_l(z), Q_{l,1,1}(z), ..., Q_{l,m,r}(z)). It is a polynomial in z of degree at
most sum_l (rmn + l); evaluating it at one more point than that and
interpolating proves (for the given inputs) that it is constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arith import Q, fmt, pochhammer
from .linalg import det
from .operators import OperatorContext, phi, phi_monomial
from .pade import LerchParams, PadeSystem, build_A, build_system
from .poly import MultiPoly, UniPoly, product

MAX_VARS = 6
MAX_TERMS = 10**6


class CapExceeded(RuntimeError):
    """A multivariate expansion would exceed the configured size limits."""


def delta_matrix(system: PadeSystem, z0) -> list[list[Fraction]]:
    z0 = Q(z0)
    cols = [[p(z0) for p in system.column(l)] for l in range(system.params.rm + 1)]
    return [list(row) for row in zip(*cols)]


def delta_at(params: LerchParams, z0, system: PadeSystem | None = None) -> Fraction:
    if system is None:
        system = build_system(params)
    return det(delta_matrix(system, z0))


def newton_coefficients(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Divided-difference coefficients of the interpolating polynomial."""
    c = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j])
    return c


def interpolated_degree(xs, ys) -> int:
    c = newton_coefficients(xs, ys)
    return max((k for k, v in enumerate(c) if v), default=-1)


def r_vector(params: LerchParams, l: int) -> list[Fraction]:
    """Entries phi_{alpha_i,x,s}(T^n A_l(T)) in (i, s) row order."""
    if not 0 <= l <= params.rm - 1:
        raise ValueError(f"l must lie in [0, {params.rm - 1}], got {l}")
    TA = UniPoly.monomial(params.n) * build_A(params, l)
    ctx = params.ctx
    return [phi(ctx, params.alphas[i - 1], s, TA) for i, s in params.pairs()]


def delta_via_r_vectors(params: LerchParams) -> Fraction:
    """(-1)^{rmn} ((1 + rmn + rm + x)_n / n!)^r det(r_0 ... r_{rm-1})."""
    r, n, rm = params.r, params.n, params.rm
    cols = [r_vector(params, l) for l in range(rm)]
    rows = [list(row) for row in zip(*cols)]
    lead = (pochhammer(1 + rm * n + rm + params.x, n) / math.factorial(n)) ** r
    return (-1) ** (rm * n) * lead * det(rows)


def lemma3_check(params: LerchParams) -> bool:
    return delta_via_r_vectors(params) == delta_at(params, 0)


@dataclass
class DeltaReport:
    params: LerchParams
    delta: Fraction
    z_samples: list[Fraction]
    constant_confirmed: bool
    interpolated_degree: int
    delta_via_r_vectors: Fraction
    factorization_ok: bool | None

    @property
    def nonzero(self) -> bool:
        return self.delta != 0

    @property
    def r_vectors_ok(self) -> bool:
        return self.delta_via_r_vectors == self.delta

    @property
    def passed(self) -> bool:
        return self.constant_confirmed and self.nonzero and self.r_vectors_ok and self.factorization_ok is not False

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "delta": fmt(self.delta),
            "z_samples": len(self.z_samples),
            "interpolated_degree": self.interpolated_degree,
            "constant_confirmed": self.constant_confirmed,
            "nonzero": self.nonzero,
            "delta_via_r_vectors": fmt(self.delta_via_r_vectors),
            "r_vectors_ok": self.r_vectors_ok,
            "factorization_ok": self.factorization_ok,
            "pass": self.passed,
        }


def delta_constant(params: LerchParams, with_factorization: bool = True) -> DeltaReport:
    """Evaluate Delta_n(z) at enough points to pin its degree, and cross-check it."""
    system = build_system(params)
    rmn = params.r * params.m * params.n
    bound = sum(rmn + l for l in range(params.rm + 1))
    zs = [Fraction(k) for k in range(max(2, bound + 1))]
    values = [delta_at(params, z, system) for z in zs]
    deg = interpolated_degree(zs, values)
    constant = deg <= 0
    fact_ok = None
    if with_factorization and params.rm <= MAX_VARS:
        # det(r_0 ... r_{rm-1}) is psi applied to the u = n product polynomial
        rows = [list(row) for row in zip(*[r_vector(params, l) for l in range(params.rm)])]
        try:
            fact_ok = det(rows) == C_direct(params.n, params.n, params.m, params.r, params.x, params.alphas)
        except CapExceeded:
            fact_ok = None
    return DeltaReport(params, values[0], zs, constant, deg, delta_via_r_vectors(params), fact_ok)


# Multivariate functional psi and the product polynomials P_{u,n}.


def _vandermonde(nvars: int) -> MultiPoly:
    out = MultiPoly.constant(nvars)
    for a, b in combinations(range(nvars), 2):
        out = out * (MultiPoly.variable(nvars, b) - MultiPoly.variable(nvars, a))
    return out


def _check_cap(nvars: int, factor_sizes: Sequence[int], max_vars: int, max_terms: int):
    if nvars > max_vars:
        raise CapExceeded(f"{nvars} variables requested; the limit is {max_vars}. Use smaller r, m.")
    estimate = math.factorial(nvars) * math.prod(factor_sizes)
    if estimate > max_terms:
        raise CapExceeded(
            f"expansion would touch about {estimate} terms; the limit is {max_terms}. Use smaller (r, m, n, u)."
        )


def _product_with_vandermonde(factors: Sequence[UniPoly], max_vars: int, max_terms: int) -> MultiPoly:
    nvars = len(factors)
    _check_cap(nvars, [sum(1 for c in f.coeffs if c) for f in factors], max_vars, max_terms)
    out = _vandermonde(nvars)
    for v, f in enumerate(factors):
        out = out * MultiPoly.from_univariate(nvars, v, f)
    return out


def product_polynomial(n: int, u: int, r: int, alphas: Sequence, max_vars=MAX_VARS, max_terms=MAX_TERMS) -> MultiPoly:
    """P_{u,n} in the rm variables t_{i,s}, ordered (1,1), ..., (1,r), ..., (m,r)."""
    alphas = [Q(a) for a in alphas]
    base = UniPoly.monomial(u) * product(UniPoly.linear_root(a) ** (r * n) for a in alphas)
    return _product_with_vandermonde([base] * (r * len(alphas)), max_vars, max_terms)


def _psi_maps(r: int, x: Fraction, alphas: Sequence[Fraction]):
    ctx = OperatorContext(x)
    maps = []
    for a in alphas:
        for s in range(1, r + 1):
            maps.append(lambda k, a=a, s=s: phi_monomial(ctx, a, s, k))
    return maps


def C_direct(n: int, u: int, m: int, r: int, x, alphas: Sequence, max_vars=MAX_VARS, max_terms=MAX_TERMS) -> Fraction:
    """psi(P_{u,n}) by brute-force expansion of P_{u,n}."""
    alphas = [Q(a) for a in alphas]
    if len(alphas) != m:
        raise ValueError(f"expected {m} alphas")
    P = product_polynomial(n, u, r, alphas, max_vars, max_terms)
    return P.apply_monomial_maps(_psi_maps(r, Q(x), alphas))


def C_via_det(n: int, u: int, m: int, r: int, x, alphas: Sequence) -> Fraction:
    """psi(P_{u,n}) as det[phi_{alpha_i,x,s}(t^(u+j) prod_k (t - alpha_k)^(rn))], rows (i,s), columns j.

    Multilinearity turns the Vandermonde factor into this determinant; it is
    an independent route to the same value.
    """
    alphas = [Q(a) for a in alphas]
    ctx = OperatorContext(Q(x))
    base = product(UniPoly.linear_root(a) ** (r * n) for a in alphas)
    rm = r * m
    cols = [UniPoly.monomial(u + j) * base for j in range(rm)]
    rows = [[phi(ctx, a, s, c) for c in cols] for a in alphas for s in range(1, r + 1)]
    return det(rows)


def predicted_product(n: int, u: int, r: int, alphas: Sequence) -> Fraction:
    """prod alpha_i^{r(u+1) + r^2 n + C(r,2)} * prod_{i1<i2} (alpha_i2 - alpha_i1)^{(2n+1) r^2}."""
    alphas = [Q(a) for a in alphas]
    e = r * (u + 1) + r * r * n + math.comb(r, 2)
    out = Fraction(1)
    for a in alphas:
        out *= a**e
    for a, b in combinations(alphas, 2):
        out *= (b - a) ** ((2 * n + 1) * r * r)
    return out


def homogeneity_degree(n: int, u: int, m: int, r: int) -> int:
    return m * (r * (u + 1) + r * r * n + math.comb(r, 2)) + math.comb(m, 2) * (2 * n + 1) * r * r


def integral_factor(v: int, n: int, r: int, x, max_vars=MAX_VARS, max_terms=MAX_TERMS) -> Fraction:
    """Composite of phi_{1,x,s} over t_1..t_r applied to prod_s t_s^v (t_s - 1)^{rn} * Vandermonde(t)."""
    x = Q(x)
    f = UniPoly.monomial(v) * UniPoly.linear_root(1) ** (r * n)
    P = _product_with_vandermonde([f] * r, max_vars, max_terms)
    return P.apply_monomial_maps(_psi_maps(r, x, [Fraction(1)])[:r])


def integral_factor_r1(v: int, n: int, x) -> Fraction:
    """Closed form for r = 1: (-1)^n n! / prod_{j=0}^{n} (v + x + 1 + j)."""
    x = Q(x)
    return Fraction((-1) ** n * math.factorial(n)) / pochhammer(v + x + 1, n + 1)


def c_constant_product(n: int, u: int, m: int, r: int, x, max_vars=MAX_VARS, max_terms=MAX_TERMS) -> Fraction:
    """prod_{i=1}^m I(u + (i-1) r (n+1)), the unsigned value of c_{n,u,m}."""
    out = Fraction(1)
    for i in range(m):
        out *= integral_factor(u + i * r * (n + 1), n, r, x, max_vars, max_terms)
    return out


_SMALL_HEIGHT = [Fraction(p, q) for q in range(1, 6) for p in range(1, 2 * q + 1) if math.gcd(p, q) == 1]


def default_alpha_samples(m: int, count: int = 3) -> list[tuple[Fraction, ...]]:
    """Distinct m-tuples of small-height rationals (1, 2, 1/2, 3/2, 1/3, ...)."""
    pool = sorted(_SMALL_HEIGHT, key=lambda a: (a.denominator + a.numerator, a))
    out = []
    for start in range(count):
        out.append(tuple(pool[(start + k * (count + 1)) % len(pool)] for k in range(m)))
    return out


@dataclass
class FactorizationWitness:
    n: int
    u: int
    m: int
    r: int
    x: Fraction
    alphas: list[tuple[Fraction, ...]]
    C_values: list[Fraction]
    predicted_products: list[Fraction]
    quotients: list[Fraction]
    integral_product: Fraction
    sign: int | None
    extra: dict = field(default_factory=dict)

    @property
    def c_constant(self) -> Fraction:
        return self.quotients[0]

    @property
    def consistent(self) -> bool:
        return len(set(self.quotients)) == 1

    @property
    def factorization_ok(self) -> bool:
        return self.consistent and self.c_constant != 0 and self.sign is not None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "u": self.u,
            "m": self.m,
            "r": self.r,
            "x": fmt(self.x),
            "exponent_alpha": self.r * (self.u + 1) + self.r**2 * self.n + math.comb(self.r, 2),
            "exponent_difference": (2 * self.n + 1) * self.r**2,
            "samples": [
                {"alphas": [fmt(a) for a in al], "C": fmt(c), "predicted": fmt(p), "quotient": fmt(q)}
                for al, c, p, q in zip(self.alphas, self.C_values, self.predicted_products, self.quotients)
            ],
            "c_constant": fmt(self.c_constant),
            "integral_product": fmt(self.integral_product),
            "sign": self.sign,
            "consistent": self.consistent,
            "pass": self.factorization_ok,
        }


def factorization_check(n: int, u: int, m: int, r: int, x, alpha_samples=None,
                        max_vars=MAX_VARS, max_terms=MAX_TERMS) -> FactorizationWitness:
    """Divide psi(P_{u,n}) by the predicted monomial factors at several alpha tuples."""
    x = Q(x)
    if alpha_samples is None:
        alpha_samples = default_alpha_samples(m)
    alpha_samples = [tuple(Q(a) for a in al) for al in alpha_samples]
    if len(alpha_samples) < 2:
        raise ValueError("at least two alpha samples are needed")
    for al in alpha_samples:
        LerchParams(r, m, n, x, al)
    Cs, preds, quots = [], [], []
    for al in alpha_samples:
        c = C_direct(n, u, m, r, x, al, max_vars, max_terms)
        p = predicted_product(n, u, r, al)
        Cs.append(c)
        preds.append(p)
        quots.append(c / p)
    integ = c_constant_product(n, u, m, r, x, max_vars, max_terms)
    # the sign is not determined a priori; pin it from the first sample
    sign = None
    if integ != 0:
        ratio = quots[0] / integ
        if ratio in (1, -1):
            sign = int(ratio)
    return FactorizationWitness(n, u, m, r, x, alpha_samples, Cs, preds, quots, integ, sign)
