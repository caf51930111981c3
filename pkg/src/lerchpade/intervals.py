"""Closed intervals with exact rational endpoints, and a sound natural log.

Every endpoint is a Fraction, so interval arithmetic is exact and never
needs a rounding mode. Transcendental values (only ``log`` is needed here)
are produced by summing an atanh series and adding an explicit bound for the
discarded tail; the partial sum is then rounded outward onto a dyadic grid
to keep the endpoints short.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty enclosure [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, v: Number) -> "Enclosure":
        return cls(Fraction(v), Fraction(v))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v) -> bool:
        if isinstance(v, Enclosure):
            return self.lo <= v.lo and v.hi <= self.hi
        return self.lo <= v <= self.hi

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        if isinstance(other, (int, Fraction)):
            return Enclosure.point(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ends = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Enclosure(min(ends), max(ends))

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.mid)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}

    def __repr__(self) -> str:
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _round_out(v: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    num = v.numerator * scale
    lo = Fraction(num // v.denominator, scale)
    hi = Fraction(-((-num) // v.denominator), scale)
    return lo, hi


def _atanh_enclosure(w: Fraction, tol: Fraction) -> Enclosure:
    """Enclose atanh(w) for |w| <= 1/2 to width <= tol."""
    if abs(w) > Fraction(1, 2):
        raise ValueError("atanh series used outside |w| <= 1/2")
    if w == 0:
        return Enclosure.point(0)
    w2 = w * w
    term = w
    total = Fraction(0)
    j = 0
    # Tail after the term w^(2j+1)/(2j+1) is at most |w|^(2j+3) / ((2j+3)(1-w^2)).
    while True:
        total += term / (2 * j + 1)
        term *= w2
        j += 1
        tail = abs(term) / ((2 * j + 1) * (1 - w2))
        if 8 * tail <= tol:
            break
    bits = max(8, tol.denominator.bit_length() - tol.numerator.bit_length() + 4)
    lo, _ = _round_out(total - tail, bits)
    _, hi = _round_out(total + tail, bits)
    return Enclosure(lo, hi)


@lru_cache(maxsize=64)
def _log2_enclosure(bits: int) -> Enclosure:
    # log 2 = 2 atanh(1/3)
    return _atanh_enclosure(Fraction(1, 3), Fraction(1, 1 << bits)) * 2


def log_enclosure(q: Number, tol: Fraction = Fraction(1, 10**30)) -> Enclosure:
    """Rational bounds lo <= log(q) <= hi with hi - lo <= tol, for rational q > 0."""
    q = Fraction(q)
    tol = Fraction(tol)
    if q <= 0:
        raise ValueError(f"log of non-positive value {q}")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if q == 1:
        return Enclosure.point(0)
    k = q.numerator.bit_length() - q.denominator.bit_length()
    y = q / Fraction(2) ** k
    # y in (1/2, 2); pull it into [2/3, 4/3] so |w| <= 1/7
    if y > Fraction(4, 3):
        y /= 2
        k += 1
    elif y < Fraction(2, 3):
        y *= 2
        k -= 1
    rest = _atanh_enclosure((y - 1) / (y + 1), tol / 4) * 2
    if k == 0:
        return rest
    need = tol / (2 * abs(k))
    bits = need.denominator.bit_length() - need.numerator.bit_length() + 2
    return _log2_enclosure(max(bits, 16)) * k + rest


def log_power_enclosure(base: Number, exponent: int, tol: Fraction = Fraction(1, 10**30)) -> Enclosure:
    """log(base ** exponent) without materializing the power."""
    if exponent == 0:
        return Enclosure.point(0)
    return log_enclosure(base, Fraction(tol) / abs(exponent)) * exponent

