"""Random inputs shared by the test modules."""

from fractions import Fraction

from lerchpade.pade import LerchParams


def random_rational(rng, lo=-3, hi=3, max_den=7, nonzero=True):
    while True:
        q = Fraction(rng.randint(lo * max_den, hi * max_den), rng.randint(1, max_den))
        if q or not nonzero:
            return q


def random_alphas(rng, m, **kw):
    out = []
    while len(out) < m:
        a = random_rational(rng, **kw)
        if a not in out:
            out.append(a)
    return tuple(out)


def random_params(rng, r, m, n, x=None):
    if x is None:
        x = Fraction(rng.randint(0, 3), 4) if rng.random() < 0.5 else Fraction(0)
    return LerchParams(r, m, n, x, random_alphas(rng, m))


def grid(max_rm=6, max_n=4):
    return [(r, m, n) for r in (1, 2, 3) for m in (1, 2, 3) for n in range(1, max_n + 1) if r * m <= max_rm]
