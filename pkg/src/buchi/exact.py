"""Exact integer and rational predicates used everywhere else: integer
square roots, perfect-square tests, and p-adic valuations.

All arithmetic in this package is arbitrary precision and exact.  Floats
are rejected at the boundaries rather than silently converted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class _PadicInfinity:
    """The valuation of zero.

    A tagged singleton rather than a sentinel integer: it compares above
    every finite valuation and absorbs addition, so valuation arithmetic
    is total.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("buchi.exact.INFINITY")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _PadicInfinity()

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every integer that fits in
    memory (the witness set covers n < 3.3e24; beyond that the test is
    still correct for every composite it rejects and we never need such
    primes in practice)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and 'num/den' strings; reject floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def isqrt(n: int) -> int:
    """Floor of the square root of a nonnegative integer, exact for
    arbitrarily large n."""
    if n < 0:
        raise ValueError("isqrt of a negative integer")
    return math.isqrt(n)


def is_square_int(n: int) -> bool:
    """True iff n = m**2 for some integer m."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def is_square_rat(q) -> Fraction | None:
    """Nonnegative rational square root of q when one exists, else None.

    A rational in lowest terms is a square exactly when its numerator and
    denominator are both perfect squares.
    """
    q = as_fraction(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    if rn * rn != q.numerator:
        return None
    rd = math.isqrt(q.denominator)
    if rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


def _int_valuation(n: int, p: int) -> int:
    # n != 0, p >= 2 assumed
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def valuation(q, p: int):
    """v_p(q) as a plain int, or INFINITY for q = 0.  p must be prime."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = as_fraction(q)
    if q == 0:
        return INFINITY
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


@dataclass(frozen=True)
class PValuation:
    """A p-adic valuation record: v_p(q) together with its prime.

    value is an int, or INFINITY exactly when the input was 0.
    """

    prime: int
    value: object

    @property
    def is_infinite(self) -> bool:
        return self.value is INFINITY

    def _check(self, other: "PValuation") -> None:
        if self.prime != other.prime:
            raise ValueError("valuations at different primes")

    def __add__(self, other):
        if not isinstance(other, PValuation):
            return NotImplemented
        self._check(other)
        return PValuation(self.prime, self.value + other.value)

    def __lt__(self, other: "PValuation") -> bool:
        self._check(other)
        return self.value < other.value

    def __le__(self, other: "PValuation") -> bool:
        self._check(other)
        return self.value <= other.value


def vp(q, p: int) -> PValuation:
    """p-adic valuation of a rational: v_p(a/b) = v_p(a) - v_p(b),
    v_p(0) = INFINITY."""
    return PValuation(p, valuation(q, p))
