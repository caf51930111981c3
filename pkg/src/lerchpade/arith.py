"""Exact rational scalars and the small number-theoretic helpers used everywhere.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from .intervals import Enclosure, log_enclosure

RationalLike = Union[int, Fraction, str]


def Q(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction; strings may be ``"p/q"`` or integers."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fmt(q: Fraction) -> str:
    """Canonical ``"p/q"`` string (``"p"`` when the denominator is 1)."""
    return str(Fraction(q))


def pochhammer(a: RationalLike, n: int) -> Fraction:
    """Rising factorial a(a+1)...(a+n-1); the empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    a = Q(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def den_of_set(values: Iterable[RationalLike]) -> int:
    """Least positive integer clearing every denominator in ``values``."""
    dens = [Q(v).denominator for v in values]
    if not dens:
        raise ValueError("den_of_set needs a nonempty collection")
    return reduce(math.lcm, dens, 1)


def lcm_upto(n: int) -> int:
    """lcm(1, 2, ..., n)."""
    if n < 1:
        raise ValueError("lcm_upto needs n >= 1")
    return reduce(math.lcm, range(1, n + 1), 1)


def prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class RadicalValue:
    """rational_part * prod(q ** e) for primes q and fractional exponents e.

    Integral parts of exponents are folded into ``rational_part`` on
    construction, so every stored exponent lies strictly between 0 and 1.
    """

    rational_part: Fraction
    radical_factors: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        rat = Q(self.rational_part)
        factors = []
        for q, e in sorted(self.radical_factors):
            e = Q(e)
            whole = math.floor(e)
            rat *= Fraction(q) ** whole
            e -= whole
            if e:
                if factors and factors[-1][0] == q:
                    raise ValueError("repeated prime in radical factors")
                factors.append((q, e))
        object.__setattr__(self, "rational_part", rat)
        object.__setattr__(self, "radical_factors", tuple(factors))

    @property
    def is_rational(self) -> bool:
        return not self.radical_factors

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.rational_part

    def log_enclosure(self, tol: Fraction = Fraction(1, 10**30)) -> Enclosure:
        """Guaranteed (lo, hi) bounds on the natural log; requires a positive value."""
        if self.rational_part <= 0:
            raise ValueError("log of a non-positive value")
        parts = 1 + len(self.radical_factors)
        out = log_enclosure(self.rational_part, tol / parts)
        for q, e in self.radical_factors:
            out = out + log_enclosure(Fraction(q), tol / (parts * e)) * e
        return out

    def __float__(self) -> float:
        v = float(self.rational_part)
        for q, e in self.radical_factors:
            v *= q ** float(e)
        return v

    def __str__(self) -> str:
        s = fmt(self.rational_part)
        for q, e in self.radical_factors:
            s += f"*{q}^({fmt(e)})"
        return s


def mu_of_x(x: RationalLike) -> RadicalValue:
    """den(x) * prod over primes q | den(x) of q ** (1/(q-1)), kept exact."""
    x = Q(x)
    if not 0 <= x < 1:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    d = x.denominator
    return RadicalValue(Fraction(d), tuple((q, Fraction(1, q - 1)) for q in prime_divisors(d)))
