"""Explicit Padé-type approximants of the Lerch family Phi_s(x, alpha_i / z).

For 0 <= l <= rm the denominator-side polynomial is

    P_l(z) = S_{n,x}^r ( T^l * prod_i (T - alpha_i)^(rn) ) evaluated at T = z

and the numerators are Q_{l,i,s}(z) = phi_{alpha_i,x,s}((P_l(z) - P_l(T)) / (z - T)),
phi acting on T. The remainders R = P_l * Phi_s - Q_{l,i,s} have 1/z^(k+1)
coefficient phi_{alpha_i,x,s}(T^k P_l(T)), which vanishes for k < n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arith import Q, RationalLike, fmt, pochhammer
from .linalg import mat_vec, nullspace
from .operators import OperatorContext, phi_monomial
from .poly import LaurentTail, UniPoly, ord_infty, product


@dataclass(frozen=True)
class LerchParams:
    r: int
    m: int
    n: int
    x: Fraction
    alphas: tuple[Fraction, ...]

    def __post_init__(self):
        for name in ("r", "m", "n"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        x = Q(self.x)
        if not 0 <= x < 1:
            raise ValueError(f"x must lie in [0, 1), got {x}")
        alphas = tuple(Q(a) for a in self.alphas)
        if len(alphas) != self.m:
            raise ValueError(f"expected m = {self.m} alphas, got {len(alphas)}")
        if any(a == 0 for a in alphas):
            raise ValueError("alphas must be nonzero")
        if len(set(alphas)) != len(alphas):
            raise ValueError("alphas must be pairwise distinct")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "alphas", alphas)

    @property
    def rm(self) -> int:
        return self.r * self.m

    @property
    def ctx(self) -> OperatorContext:
        return OperatorContext(self.x)

    def pairs(self):
        """(i, s) in row order: (1,1), ..., (1,r), ..., (m,r); both 1-based."""
        return [(i, s) for i in range(1, self.m + 1) for s in range(1, self.r + 1)]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": self.m,
            "n": self.n,
            "x": fmt(self.x),
            "alphas": [fmt(a) for a in self.alphas],
        }


def _check_l(params: LerchParams, l: int):
    if not 0 <= l <= params.rm:
        raise ValueError(f"l must lie in [0, {params.rm}], got {l}")


@lru_cache(maxsize=256)
def _root_power(params: LerchParams) -> UniPoly:
    return product(UniPoly.linear_root(a) ** (params.r * params.n) for a in params.alphas)


def build_A(params: LerchParams, l: int) -> UniPoly:
    """T^l * prod_i (T - alpha_i)^(rn)."""
    _check_l(params, l)
    base = _root_power(params)
    return UniPoly._raw([Fraction(0)] * l + list(base.coeffs))


def divided_weight(params: LerchParams, k: int) -> Fraction:
    """Multiplier of T^k under S_{n,x}^r."""
    return (pochhammer(k + params.x + 1, params.n) / math.factorial(params.n)) ** params.r


@lru_cache(maxsize=1024)
def build_P(params: LerchParams, l: int) -> UniPoly:
    A = build_A(params, l)
    return A.map_coeffs(lambda k, c: c * divided_weight(params, k) if c else c)


def _phi_table(params: LerchParams, alpha: Fraction, s: int, upto: int) -> list[Fraction]:
    ctx = params.ctx
    return [phi_monomial(ctx, alpha, s, b) for b in range(upto)]


def numerator_from(P: UniPoly, phis: Sequence[Fraction]) -> UniPoly:
    """phi applied in T to (P(z) - P(T)) / (z - T), given phis[b] = phi(T^b)."""
    d = P.degree
    out = []
    for a in range(max(d, 0)):
        acc = Fraction(0)
        for b in range(d - a):
            c = P.coeffs[a + b + 1]
            if c:
                acc += c * phis[b]
        out.append(acc)
    return UniPoly._raw(out)


def build_Q(params: LerchParams, l: int, i: int, s: int) -> UniPoly:
    if not (1 <= i <= params.m and 1 <= s <= params.r):
        raise ValueError(f"(i, s) = ({i}, {s}) out of range")
    P = build_P(params, l)
    return numerator_from(P, _phi_table(params, params.alphas[i - 1], s, max(P.degree, 0)))


@dataclass(frozen=True)
class PadeSystem:
    params: LerchParams
    P: tuple[UniPoly, ...]
    Q: dict = field(hash=False)

    def column(self, l: int) -> list[UniPoly]:
        """The stacked column (P_l, Q_{l,1,1}, ..., Q_{l,m,r})."""
        return [self.P[l]] + [self.Q[l, i, s] for i, s in self.params.pairs()]

    def to_json(self) -> dict:
        out = {"params": self.params.to_json()}
        for l, p in enumerate(self.P):
            out[f"P[{l}]"] = p.to_json()
        for (l, i, s), q in sorted(self.Q.items()):
            out[f"Q[{l}][{i}][{s}]"] = q.to_json()
        return out


def build_system(params: LerchParams) -> PadeSystem:
    rm = params.rm
    Ps = tuple(build_P(params, l) for l in range(rm + 1))
    top = params.r * params.m * params.n + rm
    tables = {(i, s): _phi_table(params, params.alphas[i - 1], s, top) for i, s in params.pairs()}
    Qs = {}
    for l, P in enumerate(Ps):
        for i, s in params.pairs():
            Qs[l, i, s] = numerator_from(P, tables[i, s])
    return PadeSystem(params, Ps, Qs)


def lerch_series_coeffs(x: RationalLike, alpha: RationalLike, s: int, K: int) -> list[Fraction]:
    """Coefficients of 1/z^(k+1), k = 0..K, in Phi_s(x, alpha/z)."""
    ctx = OperatorContext(Q(x))
    alpha = Q(alpha)
    return [phi_monomial(ctx, alpha, s, k) for k in range(K + 1)]


def remainder_tail(params: LerchParams, l: int, i: int, s: int, K: int, P: UniPoly | None = None) -> LaurentTail:
    """Coefficients phi_{alpha_i,x,s}(T^k P_l(T)) of 1/z^(k+1), k = 0..K."""
    if P is None:
        P = build_P(params, l)
    ctx = params.ctx
    alpha = params.alphas[i - 1]
    phis = [phi_monomial(ctx, alpha, s, j) for j in range(P.degree + K + 1)]
    coeffs = []
    for k in range(K + 1):
        coeffs.append(sum((c * phis[j + k] for j, c in enumerate(P.coeffs) if c), Fraction(0)))
    return LaurentTail(1, tuple(coeffs))


def remainder_by_series(P: UniPoly, Qp: UniPoly, series: Sequence[Fraction], K: int) -> tuple[UniPoly, LaurentTail]:
    """Expand P(z) * f(z) - Qp(z) where f = sum series[k] / z^(k+1).

    Returns the polynomial part (zero for a genuine approximant) and the
    coefficients of 1/z, ..., 1/z^(K+1). Needs len(series) > deg P + K.
    """
    d = P.degree
    if len(series) <= d + K:
        raise ValueError(f"need {d + K + 1} series coefficients, got {len(series)}")
    poly = []
    for e in range(d):
        poly.append(sum((P.coeffs[j] * series[j - e - 1] for j in range(e + 1, d + 1)), Fraction(0)))
    poly_part = UniPoly._raw(poly) - Qp
    tail = []
    for k in range(K + 1):
        tail.append(sum((c * series[j + k] for j, c in enumerate(P.coeffs) if c), Fraction(0)))
    return poly_part, LaurentTail(1, tuple(tail))


@dataclass
class OrderReport:
    params: LerchParams
    window: int
    orders: dict
    degrees_ok: bool
    polynomial_parts_ok: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "window": self.window,
            "required_order": self.params.n + 1,
            "orders": {f"R[{l}][{i}][{s}]": str(o) for (l, i, s), o in sorted(self.orders.items())},
            "degrees_ok": self.degrees_ok,
            "polynomial_parts_ok": self.polynomial_parts_ok,
            "pass": self.passed,
        }


def verify_order(system: PadeSystem | LerchParams, K: int) -> OrderReport:
    """Check ord_inf(P_l Phi_s(x, alpha_i/z) - Q_{l,i,s}) >= n + 1 inside a window of K + 1 terms.

    The remainder is expanded directly from the system's polynomials, so a
    perturbation of any P or Q is detected.
    """
    if isinstance(system, LerchParams):
        system = build_system(system)
    params = system.params
    if K < params.n + 1:
        raise ValueError(f"window K = {K} is smaller than n + 1 = {params.n + 1}")
    rmn = params.r * params.m * params.n
    degrees_ok = all(P.degree == rmn + l for l, P in enumerate(system.P))
    top = rmn + params.rm + K + 1
    series = {(i, s): lerch_series_coeffs(params.x, params.alphas[i - 1], s, top) for i, s in params.pairs()}
    orders = {}
    polys_ok = True
    for l, P in enumerate(system.P):
        for i, s in params.pairs():
            poly_part, tail = remainder_by_series(P, system.Q[l, i, s], series[i, s], K)
            polys_ok &= not poly_part
            orders[l, i, s] = ord_infty(tail)
    passed = degrees_ok and polys_ok and all(o.at_least(params.n + 1) for o in orders.values())
    return OrderReport(params, K + 1, orders, degrees_ok, polys_ok, passed)


# Generic solver for the defining linear conditions of Padé-type approximants.


def approximant_system(fcoeffs: Sequence[Sequence[Fraction]], weights: Sequence[int], M: int):
    """Rows of the homogeneous system for (P_0, P_1, ..., P_r).

    Unknowns: the M + 1 coefficients of P_0, followed by M coefficients for
    each P_j (deg P_j <= M - 1). For each j the rows state that the
    polynomial part of P_0 f_j equals P_j and that the coefficients of
    1/z, ..., 1/z^{n_j} of P_0 f_j vanish.
    """
    if len(fcoeffs) != len(weights):
        raise ValueError("one weight per function is required")
    for c, nj in zip(fcoeffs, weights):
        if len(c) < M + nj:
            raise ValueError(f"need at least M + n_j = {M + nj} series coefficients, got {len(c)}")
    ncols = (M + 1) + M * len(fcoeffs)
    rows = []
    for j, (c, nj) in enumerate(zip(fcoeffs, weights)):
        off = (M + 1) + j * M
        for e in range(M):
            row = [Fraction(0)] * ncols
            for d in range(e + 1, M + 1):
                row[d] = c[d - e - 1]
            row[off + e] = Fraction(-1)
            rows.append(row)
        for k in range(1, nj + 1):
            row = [Fraction(0)] * ncols
            for d in range(M + 1):
                row[d] = c[d + k - 1]
            rows.append(row)
    return rows, ncols


def tuple_to_vector(polys: Sequence[UniPoly], M: int) -> list[Fraction]:
    P0, rest = polys[0], polys[1:]
    if P0.degree > M or any(p.degree > M - 1 for p in rest):
        raise ValueError("polynomial degrees exceed the layout")
    v = [P0.coeff(d) for d in range(M + 1)]
    for p in rest:
        v += [p.coeff(e) for e in range(M)]
    return v


def satisfies_conditions(polys: Sequence[UniPoly], fcoeffs, weights, M: int) -> bool:
    rows, _ = approximant_system(fcoeffs, weights, M)
    return not any(mat_vec(rows, tuple_to_vector(polys, M)))


def oracle_solve(fcoeffs: Sequence[Sequence[Fraction]], weights: Sequence[int], M: int) -> list[list[UniPoly]]:
    """Basis of all Padé-type approximant tuples of the given weights and degree M.

    Eliminates over P_0 only (the P_j are then the polynomial parts of P_0 f_j),
    which gives the same solution space as the full system.
    """
    N = sum(weights)
    if M < N:
        raise ValueError(f"degree M = {M} must be at least N = {N}")
    for c, nj in zip(fcoeffs, weights):
        if len(c) < M + nj:
            raise ValueError(f"need at least M + n_j = {M + nj} series coefficients, got {len(c)}")
    rows = []
    for c, nj in zip(fcoeffs, weights):
        for k in range(1, nj + 1):
            rows.append([c[d + k - 1] for d in range(M + 1)])
    basis = []
    for v in nullspace(rows, M + 1):
        P0 = UniPoly(v)
        tup = [P0]
        for c in fcoeffs:
            tup.append(UniPoly([sum((v[d] * c[d - e - 1] for d in range(e + 1, M + 1)), Fraction(0)) for e in range(M)]))
        basis.append(tup)
    return basis


def lerch_family(params: LerchParams, count: int) -> list[list[Fraction]]:
    """Series coefficient lists for Phi_s(x, alpha_i/z) in (i, s) row order."""
    return [lerch_series_coeffs(params.x, params.alphas[i - 1], s, count - 1) for i, s in params.pairs()]


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    """True when u = c v for some nonzero rational c."""
    pivot = next((k for k, b in enumerate(v) if b), None)
    if pivot is None:
        return not any(u)
    c = Fraction(u[pivot]) / v[pivot]
    return c != 0 and all(a == c * b for a, b in zip(u, v))
