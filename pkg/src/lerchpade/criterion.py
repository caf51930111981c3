"""The quantitative independence criterion over Q, and the size/error bounds behind it.

All logarithms are rational enclosures, so a verdict of "independent" is
sound: it is issued only when the lower end of the enclosure of V is
positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .arith import Q, RationalLike, den_of_set, fmt, lcm_upto, mu_of_x, pochhammer, prime_divisors
from .intervals import Enclosure, log_enclosure, log_power_enclosure
from .operators import OperatorContext, phi_monomial
from .pade import LerchParams, PadeSystem, build_system

DEFAULT_TOL = Fraction(1, 10**20)
# powers with more bits than this are never materialized
MATERIALIZE_BITS = 200_000
# 1.44 < log2(e), so e^-L <= 2^-floor(1.44 L) for L >= 0
_LOG2E_LOWER = Fraction(144, 100)


@dataclass(frozen=True)
class BigLogNumber:
    """|beta| for the criterion, in one of three forms.

    kind "rational": ``value`` holds beta exactly.
    kind "power":    |beta| = base ** exponent, never expanded when large.
    kind "log":      an integer beta with log|beta| >= log_value; the criterion
                     only gets stronger as |beta| grows, so certifying at the
                     bound certifies every such integer.
    """

    kind: str
    value: Fraction | None = None
    base: Fraction | None = None
    exponent: int | None = None
    log_value: Fraction | None = None

    @classmethod
    def rational(cls, v: RationalLike) -> "BigLogNumber":
        v = Q(v)
        if v == 0:
            raise ValueError("beta must be nonzero")
        return cls("rational", value=abs(v))

    @classmethod
    def power(cls, base: RationalLike, exponent: int) -> "BigLogNumber":
        base = abs(Q(base))
        if base == 0 or exponent < 0:
            raise ValueError("power form needs a nonzero base and a nonnegative exponent")
        return cls("power", base=base, exponent=int(exponent))

    @classmethod
    def integer_with_log(cls, log_value: RationalLike) -> "BigLogNumber":
        L = Q(log_value)
        if L < 0:
            raise ValueError("log|beta| of a nonzero integer is nonnegative")
        return cls("log", log_value=L)

    @classmethod
    def parse(cls, text: str) -> "BigLogNumber":
        """``"p/q"``, ``"base^exponent"`` or ``"e^L"`` (integer with log at least L)."""
        text = text.strip()
        if "^" in text:
            base, _, exp = text.partition("^")
            if base.strip() == "e":
                return cls.integer_with_log(exp)
            return cls.power(base, int(exp))
        return cls.rational(text)

    def exact(self) -> Fraction | None:
        if self.kind == "rational":
            return self.value
        if self.kind == "power":
            bits = (abs(self.base.numerator).bit_length() + self.base.denominator.bit_length()) * self.exponent
            if bits <= MATERIALIZE_BITS:
                return self.base**self.exponent
        return None

    def log_enclosure(self, tol: Fraction = DEFAULT_TOL) -> Enclosure:
        if self.kind == "rational":
            return log_enclosure(self.value, tol)
        if self.kind == "power":
            return log_power_enclosure(self.base, self.exponent, tol)
        return Enclosure.point(self.log_value)

    def den_log(self, others: Sequence[Fraction], tol: Fraction) -> tuple[int | None, Enclosure]:
        """D = den(others + [beta]) as an integer when small, and log D as an enclosure."""
        a = den_of_set(list(others) + [Fraction(0)])
        if self.kind == "log":
            return a, log_enclosure(a, tol)
        if self.kind == "rational":
            D = math.lcm(a, self.value.denominator)
            return D, log_enclosure(D, tol)
        b, e = self.base.denominator, self.exponent
        # lcm(a, b^e) = b^e * a / gcd(a, b^e); gcd stabilizes once e exceeds log2(a)
        g = math.gcd(a, b ** min(e, a.bit_length()))
        cofactor = a // g
        if b == 1 or e * b.bit_length() <= MATERIALIZE_BITS:
            D = b**e * cofactor
            return D, log_enclosure(D, tol)
        return None, log_power_enclosure(b, e, tol / 2) + log_enclosure(cofactor, tol / 2)

    def exceeds(self, bound: Fraction, tol: Fraction = DEFAULT_TOL) -> bool:
        """Certified |beta| > bound (False when it cannot be decided)."""
        ex = self.exact()
        if ex is not None:
            return ex > bound
        if bound <= 0:
            return True
        return self.log_enclosure(tol).lo > log_enclosure(bound, tol).hi

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational", "value": fmt(self.value)}
        if self.kind == "power":
            return {"kind": "power", "base": fmt(self.base), "exponent": self.exponent}
        return {"kind": "log", "log_at_least": fmt(self.log_value)}

    def __str__(self) -> str:
        if self.kind == "rational":
            return fmt(self.value)
        if self.kind == "power":
            return f"{fmt(self.base)}^{self.exponent}"
        return f"e^{fmt(self.log_value)}"


def _check_hypothesis(params: LerchParams, beta: BigLogNumber, tol):
    if not beta.exceeds(max(abs(a) for a in params.alphas), tol):
        raise ValueError("the criterion needs max|alpha_i| < |beta|")


def _exp_neg_upper(L: Fraction) -> Fraction:
    """A short rational upper bound for e^-L, L >= 0 (never below 2^-200)."""
    return Fraction(1, 2 ** min(200, math.floor(_LOG2E_LOWER * L)))


def _log_max_one_ratio(beta: BigLogNumber, amin: Fraction, log_beta: Enclosure, tol) -> Enclosure:
    """log max(1, |beta| / amin)."""
    ex = beta.exact()
    if ex is not None:
        ratio = ex / amin
        return log_enclosure(ratio, tol) if ratio > 1 else Enclosure.point(0)
    diff = log_beta - log_enclosure(amin, tol)
    return Enclosure(max(diff.lo, 0), max(diff.hi, 0))


def _log_size_term(r: int, a: Fraction, beta: BigLogNumber, log_beta: Enclosure, tol) -> Enclosure:
    """log(2^r |a| + 3^r max(|a|, |beta|))."""
    a = abs(a)
    ex = beta.exact()
    if ex is not None:
        return log_enclosure(2**r * a + 3**r * max(a, ex), tol)
    # beta > |a| here; log(3^r |beta|) + log(1 + 2^r a / (3^r |beta|)), the last term in [0, eps]
    eps = Fraction(2**r) * a / 3**r * _exp_neg_upper(log_beta.lo)
    return log_beta + log_enclosure(3**r, tol) + Enclosure(Fraction(0), eps)


@dataclass
class CriterionReport:
    params: LerchParams
    beta: BigLogNumber
    D: int | None
    log_D: Enclosure
    log_mu: Enclosure
    log_beta: Enclosure
    A_frak: Enclosure
    calA1: Enclosure
    V: Enclosure
    log_beta_threshold: Enclosure

    @property
    def verdict(self) -> str:
        return "independent" if self.V.lo > 0 else "inconclusive"

    def to_json(self) -> dict:
        p = self.params
        return {
            "r": p.r,
            "m": p.m,
            "x": fmt(p.x),
            "alphas": [fmt(a) for a in p.alphas] if p.m <= 20 else f"{p.m} values",
            "beta": self.beta.to_json(),
            "D": str(self.D) if self.D is not None else None,
            "log_D": self.log_D.to_json(),
            "log_mu": self.log_mu.to_json(),
            "log_beta": self.log_beta.to_json(),
            "A_frak": self.A_frak.to_json(),
            "calA1": self.calA1.to_json(),
            "V": self.V.to_json(),
            "V_approx": float(self.V.mid),
            "log_beta_threshold": self.log_beta_threshold.to_json(),
            "verdict": self.verdict,
        }


def _subtracted_part(params: LerchParams, log_D: Enclosure, log_mu: Enclosure, tol) -> Enclosure:
    """(rm+1) log max|alpha| + rm(log D + r[den(x) + log(5/2)]) + r(log 3 + log mu(x))."""
    r, rm = params.r, params.rm
    den_x = params.x.denominator
    amax = max(abs(a) for a in params.alphas)
    out = log_enclosure(amax, tol) * (rm + 1)
    out = out + (log_D + (log_enclosure(Fraction(5, 2), tol) + den_x) * r) * rm
    out = out + (log_enclosure(3, tol) + log_mu) * r
    return out


def compute_A_frak(params: LerchParams, beta: BigLogNumber, tol: Fraction = DEFAULT_TOL) -> Enclosure:
    _check_hypothesis(params, beta, tol)
    _, log_D = beta.den_log(params.alphas, tol)
    log_mu = mu_of_x(params.x).log_enclosure(tol)
    return beta.log_enclosure(tol) - _subtracted_part(params, log_D, log_mu, tol)


def compute_calA1(params: LerchParams, beta: BigLogNumber, tol: Fraction = DEFAULT_TOL) -> Enclosure:
    _check_hypothesis(params, beta, tol)
    r, rm = params.r, params.rm
    _, log_D = beta.den_log(params.alphas, tol)
    log_mu = mu_of_x(params.x).log_enclosure(tol)
    log_beta = beta.log_enclosure(tol)
    amin = min(abs(a) for a in params.alphas)
    first = log_D + _log_max_one_ratio(beta, amin, log_beta, tol) + (Enclosure.point(params.x.denominator) - log_enclosure(2, tol)) * r
    total = first * rm
    sizes = Enclosure.point(0)
    for a in params.alphas:
        sizes = sizes + _log_size_term(r, a, beta, log_beta, tol)
    total = total + (log_mu + sizes) * r + log_enclosure(3, tol)
    return total


def combine_V(A_frak: Enclosure, conjugate_terms: Sequence[Enclosure], k_inf_degree: int = 1) -> Enclosure:
    """A + A^(1) - sum_g A^(g) / [K_inf : Q], with the A^(1) coefficient collected first.

    Over Q there is one conjugate and the coefficient of A^(1) is exactly 0,
    so V is A itself and no width is added.
    """
    coeffs = [Fraction(-1, k_inf_degree)] * len(conjugate_terms)
    coeffs[0] += 1
    V = A_frak
    for c, term in zip(coeffs, conjugate_terms):
        if c:
            V = V + term * c
    return V


def verdict(params: LerchParams, beta: BigLogNumber, tol: Fraction = DEFAULT_TOL) -> CriterionReport:
    _check_hypothesis(params, beta, tol)
    D, log_D = beta.den_log(params.alphas, tol)
    log_mu = mu_of_x(params.x).log_enclosure(tol)
    log_beta = beta.log_enclosure(tol)
    sub = _subtracted_part(params, log_D, log_mu, tol)
    A = log_beta - sub
    calA1 = compute_calA1(params, beta, tol)
    V = combine_V(A, [calA1])
    return CriterionReport(params, beta, D, log_D, log_mu, log_beta, A, calA1, V, sub)


# Example fixtures


def example1_params() -> tuple[LerchParams, BigLogNumber]:
    alphas = tuple(Fraction(1, j) for j in range(1, 11))
    return LerchParams(10, 10, 1, Fraction(0), alphas), BigLogNumber.integer_with_log(2715)


def example2_params(k: int = 2) -> tuple[LerchParams, BigLogNumber]:
    if k < 2:
        raise ValueError("example 2 needs k >= 2")
    size = 10**k
    alphas = tuple(Fraction(j) for j in range(1, size + 1))
    return LerchParams(size, size, 1, Fraction(0), alphas), BigLogNumber.integer_with_log(2 * 10 ** (3 * k))


def example2_displayed_bound(k: int, tol: Fraction = DEFAULT_TOL) -> Enclosure:
    """k (10^{2k} + 1) log 10 + 10^{3k} (1 + log(5/2)) + 10^k log 3."""
    return (
        log_enclosure(10, tol) * (k * (10 ** (2 * k) + 1))
        + (log_enclosure(Fraction(5, 2), tol) + 1) * 10 ** (3 * k)
        + log_enclosure(3, tol) * 10**k
    )


# Size bounds on numerators and remainders


def _abs_alphas(params: LerchParams) -> list[Fraction]:
    return [abs(a) for a in params.alphas]


def coefficient_bound(params: LerchParams, beta: RationalLike, n: int | None = None) -> Enclosure:
    """Upper bound for max_{l,i,s} |Q_{l,i,s}(beta)|; exact rational, so a point enclosure."""
    n = params.n if n is None else n
    r, m, rm = params.r, params.m, params.rm
    al = _abs_alphas(params)
    amax, amin = max(al), min(al)
    b = abs(Q(beta))
    inner = Fraction(3, 2**rm)
    for a in al:
        inner *= 2**r * a + 3**r * amax
    out = amax**rm * Fraction(3, 2) ** (r * r * m + r) * inner ** (r * n)
    rho = b / amin
    if rho > 1:
        out *= rho ** (rm * (n + 1)) / (rho - 1)
    else:
        out *= rm * (n + 1)
    return Enclosure.point(out)


def error_bound(params: LerchParams, beta: RationalLike, n: int | None = None) -> Enclosure:
    """Upper bound for max_l |R_{l,i,s}(beta)|; needs |beta| > max|alpha_i|."""
    n = params.n if n is None else n
    r, m, rm = params.r, params.m, params.rm
    al = _abs_alphas(params)
    amax = max(al)
    b = abs(Q(beta))
    if b <= amax:
        raise ValueError("error bound needs |beta| > max|alpha_i|")
    out = max(Fraction(1), amax) ** (rm + 1) / (b - amax)
    out *= Fraction(3, 2) ** (r * r * m + r)
    out *= (amax ** (rm + 1) / b) ** n
    out *= (3 * Fraction(5, 2) ** rm) ** (r * n)
    return Enclosure.point(out)


def remainder_enclosure(system: PadeSystem, l: int, i: int, s: int, beta: RationalLike,
                        rel_tol: Fraction = Fraction(1, 10**6), max_terms: int = 2000) -> Enclosure:
    """Enclose R_{l,i,s}(beta) = sum_k phi(T^k P_l) / beta^(k+1) by a partial sum plus a tail bound.

    |phi(T^k P)| <= |alpha|^k * sum_j |p_j| |alpha|^(j+1) / (j+x+1)^s, so the tail
    after K terms is at most that constant times rho^(K+1) / (|beta| (1 - rho)),
    rho = |alpha / beta|.
    """
    params = system.params
    beta = Q(beta)
    alpha = params.alphas[i - 1]
    rho = abs(alpha / beta)
    if rho >= 1:
        raise ValueError("remainder series needs |alpha_i| < |beta|")
    P = system.P[l]
    ctx = params.ctx
    const = sum((abs(c) * abs(alpha) ** (j + 1) / ctx.weight(j) ** s for j, c in enumerate(P.coeffs)), Fraction(0))
    phis: dict[int, Fraction] = {}

    def ph(t):
        if t not in phis:
            phis[t] = phi_monomial(ctx, alpha, s, t)
        return phis[t]

    partial = Fraction(0)
    bpow = beta
    rho_pow = Fraction(1)
    for k in range(max_terms):
        ck = sum((c * ph(j + k) for j, c in enumerate(P.coeffs) if c), Fraction(0))
        partial += ck / bpow
        bpow *= beta
        rho_pow *= rho
        tail = const * rho_pow / (abs(beta) * (1 - rho))
        if k >= params.n and (tail <= rel_tol * abs(partial) or tail == 0):
            break
    return Enclosure(partial - tail, partial + tail)


def abs_upper(e: Enclosure) -> Fraction:
    return max(abs(e.lo), abs(e.hi))


def eval_phi_enclosure(x: RationalLike, w: RationalLike, s: int, tol: RationalLike) -> Enclosure:
    """Phi_s(x, w) = sum_k w^(k+1) / (k+x+1)^s for |w| < 1, to width <= tol."""
    x, w, tol = Q(x), Q(w), Q(tol)
    if abs(w) >= 1:
        raise ValueError("Phi_s(x, w) needs |w| < 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    ctx = OperatorContext(x)
    total = Fraction(0)
    power = w
    aw = abs(w)
    K = 0
    while True:
        total += power / ctx.weight(K) ** s
        power *= w
        tail = aw ** (K + 2) / (ctx.weight(K + 1) ** s * (1 - aw))
        if 2 * tail <= tol:
            break
        K += 1
    return Enclosure(total - tail, total + tail)


# Integrality


def _legendre(n: int, p: int) -> int:
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


def integrality_divisor(params: LerchParams) -> int:
    """A multiple of every denominator left in the alpha-cleared coefficients.

    The divided derivative contributes den(x)^n * prod_{q | den(x)} q^{v_q(n!)}
    per application; the evaluation functionals contribute
    lcm of (k + 1) den(x) + num(x) over the exponents that occur.
    """
    n, r = params.n, params.r
    d, a = params.x.denominator, params.x.numerator
    poch = d**n
    for q in prime_divisors(d):
        poch *= q ** _legendre(n, q)
    top = params.r * params.m * params.n + params.rm
    return (poch * lcm_upto(d * top + a)) ** r


@dataclass
class IntegralityReport:
    scale: int
    divisor: int
    alpha_den: int

    @property
    def divides(self) -> bool:
        return self.divisor % self.scale == 0

    def to_json(self) -> dict:
        return {"scale": str(self.scale), "divisor": str(self.divisor), "alpha_den": self.alpha_den, "divides": self.divides}


def integrality_normalization(params: LerchParams, system: PadeSystem | None = None) -> tuple[int, IntegralityReport]:
    """lcm of denominators of all coefficients after clearing den(alpha).

    A coefficient of z^k in P_l (or in Q_{l,i,s}) is homogeneous of degree
    rmn + l - k in the alphas, so it is multiplied by den(alpha)^(rmn+l-k).
    """
    if system is None:
        system = build_system(params)
    da = den_of_set(params.alphas)
    rmn = params.r * params.m * params.n
    dens = []
    for l in range(params.rm + 1):
        for p in system.column(l):
            for k, c in enumerate(p.coeffs):
                if c:
                    dens.append((c * Fraction(da) ** (rmn + l - k)).denominator)
    scale = reduce(math.lcm, dens, 1)
    return scale, IntegralityReport(scale, integrality_divisor(params), da)


def leading_weight(params: LerchParams, l: int) -> Fraction:
    """Leading coefficient of P_l: ((rmn + l + x + 1)_n / n!)^r."""
    k = params.r * params.m * params.n + l
    return (pochhammer(k + params.x + 1, params.n) / math.factorial(params.n)) ** params.r
