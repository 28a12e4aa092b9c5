"""Shared random generators for the exact-arithmetic test suites."""

from fractions import Fraction

from buchi.symbolic import RatFunc, UPoly


def rand_fraction(rng, max_num=9, max_den=5, nonzero=False):
    while True:
        q = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if q != 0 or not nonzero:
            return q


def rand_upoly(rng, max_deg=4, max_coeff=6, nonzero=False):
    while True:
        deg = rng.randint(0, max_deg)
        p = UPoly([rng.randint(-max_coeff, max_coeff) for _ in range(deg + 1)])
        if not (nonzero and p.is_zero):
            return p


def rand_ratfunc(rng, max_deg=4, max_coeff=6, nonzero=False):
    while True:
        f = RatFunc(rand_upoly(rng, max_deg, max_coeff),
                    rand_upoly(rng, max_deg, max_coeff, nonzero=True))
        if not (nonzero and f.is_zero):
            return f
