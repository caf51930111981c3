"""Dense univariate and sparse multivariate polynomials over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import Q, fmt


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Dense polynomial; ``coeffs[k]`` is the coefficient of the k-th power.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([Q(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> "UniPoly":
        p = cls.__new__(cls)
        p.coeffs = _trim(coeffs)
        return p

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def linear_root(cls, a) -> "UniPoly":
        """The monic polynomial T - a."""
        return cls([-Q(a), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly._raw([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return poly_mul(self, other)
        c = Q(other)
        return UniPoly._raw([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = UniPoly([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, z):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def map_coeffs(self, f) -> "UniPoly":
        """Apply ``f(k, c)`` to every coefficient (diagonal operators)."""
        return UniPoly._raw([f(k, c) for k, c in enumerate(self.coeffs)])

    def to_json(self) -> list[str]:
        return [fmt(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        terms = [f"{fmt(c)}*T^{k}" for k, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(terms) + ")"


def poly_mul(a: UniPoly, b: UniPoly) -> UniPoly:
    if not a or not b:
        return UniPoly()
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return UniPoly._raw(out)


def product(polys: Iterable[UniPoly]) -> UniPoly:
    out = UniPoly([1])
    for p in polys:
        out = out * p
    return out


def divided_difference(p: UniPoly) -> dict[tuple[int, int], Fraction]:
    """Coefficients c[a, b] with (P(z) - P(T)) / (z - T) = sum c[a, b] z^a T^b.

    Only nonzero entries are stored; c[a, b] is the coefficient of P in
    degree a + b + 1.
    """
    out = {}
    for d in range(1, len(p.coeffs)):
        c = p.coeffs[d]
        if c:
            for a in range(d):
                out[a, d - 1 - a] = c
    return out


def eval_bivariate(table: dict[tuple[int, int], Fraction], z, t) -> Fraction:
    return sum((c * Fraction(z) ** a * Fraction(t) ** b for (a, b), c in table.items()), Fraction(0))


@dataclass(frozen=True)
class LaurentTail:
    """Window of coefficients of z^-k0, z^-(k0+1), ..., of a series in 1/z."""

    start_order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a Laurent tail needs a window of at least one coefficient")
        object.__setattr__(self, "coefficients", tuple(Q(c) for c in self.coefficients))

    @property
    def window(self) -> int:
        return len(self.coefficients)

    def coeff(self, k: int) -> Fraction:
        """Coefficient of z^-k; only indices inside the window are known."""
        i = k - self.start_order
        if not 0 <= i < self.window:
            raise IndexError(f"order {k} lies outside the computed window")
        return self.coefficients[i]


@dataclass(frozen=True)
class Order:
    """Result of ord_infty on a window: exact value, or only a lower bound."""

    value: int
    exact: bool

    def at_least(self, k: int) -> bool:
        return self.value >= k

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


def ord_infty(t: LaurentTail) -> Order:
    for i, c in enumerate(t.coefficients):
        if c:
            return Order(t.start_order + i, True)
    return Order(t.start_order + t.window, False)


class MultiPoly:
    """Sparse polynomial in a fixed number of variables.

    ``terms`` maps exponent tuples to nonzero Fractions.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have arity {nvars}")
            c = Q(c)
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, nvars: int, i: int, p: UniPoly) -> "MultiPoly":
        """Embed p(t_i)."""
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c:
                e = [0] * nvars
                e[i] = k
                terms[tuple(e)] = c
        return cls(nvars, terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        res = MultiPoly(self.nvars)
        res.terms = out
        return res

    def __neg__(self):
        res = MultiPoly(self.nvars)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Q(other)
            res = MultiPoly(self.nvars)
            res.terms = {e: c * v for e, v in self.terms.items()} if c else {}
            return res
        if other.nvars != self.nvars:
            raise ValueError("arity mismatch")
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        res = MultiPoly(self.nvars)
        res.terms = {e: c for e, c in out.items() if c}
        return res

    __rmul__ = __mul__

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def apply_monomial_maps(self, maps: Sequence) -> Fraction:
        """Sum of c * prod_i maps[i](e_i) over terms; ``maps[i]`` sends an exponent to a rational.

        This is a tensor product of one linear functional per variable.
        """
        cache: list[dict[int, Fraction]] = [{} for _ in range(self.nvars)]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                m = cache[i].get(k)
                if m is None:
                    m = cache[i][k] = Q(maps[i](k))
                v *= m
                if not v:
                    break
            total += v
        return total

    def __repr__(self) -> str:
        return f"MultiPoly(nvars={self.nvars}, terms={len(self.terms)})"
