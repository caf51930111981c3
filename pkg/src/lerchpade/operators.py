"""Weighted primitive / derivative operators on Q[T] and the evaluation functionals.

Every operator here is diagonal on the monomial basis, so each one is just a
multiplier attached to T^k:

    Prim_x   : T^k -> T^k / (k + x + 1)
    Deri_x   : T^k -> (k + x + 1) T^k          (inverse of Prim_x)
    S_{n,x}  : T^k -> (k + x + 1)_n / n! T^k   (divided derivative, S_{1,x} = Deri_x)
    phi      : T^k -> alpha^(k+1) / (k + x + 1)^l

``phi`` with l = s >= 1 maps 1/(z - T) onto the Lerch series at alpha/z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Q, RationalLike, pochhammer
from .poly import UniPoly, poly_mul


@dataclass(frozen=True)
class OperatorContext:
    """Holds the shift x; x + k + 1 is never zero for x in [0, 1)."""

    x: Fraction

    def __post_init__(self):
        x = Q(self.x)
        if not 0 <= x < 1:
            raise ValueError(f"x must lie in [0, 1), got {x}")
        object.__setattr__(self, "x", x)

    def weight(self, k: int) -> Fraction:
        return k + self.x + 1


def eval_at(P: UniPoly, alpha) -> Fraction:
    return P(Q(alpha))


def mult(P: UniPoly, Q_: UniPoly) -> UniPoly:
    """The multiplication operator [P] applied to Q_."""
    return poly_mul(P, Q_)


def s_nx(ctx: OperatorContext, n: int, P: UniPoly) -> UniPoly:
    if n < 0:
        raise ValueError("S_{n,x} needs n >= 0")
    fact = math.factorial(n)
    return P.map_coeffs(lambda k, c: c * pochhammer(ctx.weight(k), n) / fact)


def deri_x(ctx: OperatorContext, P: UniPoly) -> UniPoly:
    return P.map_coeffs(lambda k, c: c * ctx.weight(k))


def prim_x(ctx: OperatorContext, P: UniPoly) -> UniPoly:
    return P.map_coeffs(lambda k, c: c / ctx.weight(k))


_INVERSES = {"prim": "deri", "deri": "prim"}


def op_iterate(ctx: OperatorContext, op: str, k: int, P: UniPoly) -> UniPoly:
    """k-fold composition of ``op`` ("prim" or "deri"); negative k iterates the inverse."""
    if op not in _INVERSES:
        raise ValueError(f"unknown operator {op!r}")
    if k < 0:
        op, k = _INVERSES[op], -k
    step = prim_x if op == "prim" else deri_x
    for _ in range(k):
        P = step(ctx, P)
    return P


def phi_monomial(ctx: OperatorContext, alpha: Fraction, l: int, k: int) -> Fraction:
    """phi_{alpha,x,l}(T^k) = alpha^(k+1) / (k+x+1)^l."""
    return alpha ** (k + 1) / ctx.weight(k) ** l


def phi(ctx: OperatorContext, alpha: RationalLike, l: int, P: UniPoly) -> Fraction:
    """phi_{alpha,x,l} = [alpha] o Eval_alpha o Prim_x^(l), computed on coefficients."""
    alpha = Q(alpha)
    total = Fraction(0)
    power = alpha
    for k, c in enumerate(P.coeffs):
        if c:
            total += c * power / ctx.weight(k) ** l
        power *= alpha
    return total


def s_nx_via_deri(ctx: OperatorContext, n: int, P: UniPoly) -> UniPoly:
    """(1/n!) S_1 o (S_1 + 1) o ... o (S_1 + n - 1), composed step by step."""
    for j in range(n):
        P = deri_x(ctx, P) + P * j
    return P * Fraction(1, math.factorial(n))
