"""Exact Nevanlinna-style calculator for rational functions over Q viewed
p-adically.

Conventions.  Radii are given on a logarithmic scale: a "radius" rho
means the closed ball of radius r = p**rho, and every returned quantity
is a log-base-p value, so everything is an exact Fraction.  For a
polynomial h = sum a_k z**k the Gauss norm is

    log_p |h|_rho = max_k ( -v_p(a_k) + k*rho )

over the nonzero coefficients, and it extends to quotients by
subtraction.  Newton polygon segments are stored as (slope, length)
where the slope IS the p-adic valuation of the corresponding roots:
`length` roots of h (in an algebraic closure) have |root|_p = p**(-slope).

The counting function n(rho) of zeros in the ball of radius p**rho and
its logarithmic height

    N(rho) = ord_0(h)*rho + sum over segments of length*max(0, rho + slope)

are piecewise linear in rho with kinks exactly at rho = -slope, which is
what makes every statement here checkable with zero tolerance.  The
ord_0(h)*rho term follows the classical definition literally, so N is
negative for rho < 0 when h vanishes at the origin; that sign behavior is
intentional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import as_fraction, is_prime, valuation
from .symbolic import RatFunc, UPoly


class _AtInfinity:
    """Marker for the target 'infinity' (poles rather than zeros)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"


INF = _AtInfinity()


@dataclass(frozen=True)
class PadicContext:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


@dataclass(frozen=True)
class LogRadius:
    """The ball B[p**rho]; any rational rho is a valid radius."""

    rho: Fraction

    def __init__(self, rho):
        object.__setattr__(self, "rho", as_fraction(rho))


@dataclass(frozen=True)
class NewtonSegment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    """Segments sorted by strictly increasing slope; total length equals
    the number of nonzero roots with multiplicity."""

    segments: tuple[NewtonSegment, ...]

    def __post_init__(self):
        slopes = [s.slope for s in self.segments]
        if any(s.length < 1 for s in self.segments):
            raise ValueError("segment lengths must be positive")
        if any(a >= b for a, b in zip(slopes, slopes[1:])):
            raise ValueError("slopes must be strictly increasing")

    @property
    def total_length(self) -> int:
        return sum(s.length for s in self.segments)


def _prime_of(ctx) -> int:
    if isinstance(ctx, PadicContext):
        return ctx.p
    if isinstance(ctx, int):
        return PadicContext(ctx).p
    raise TypeError("expected a PadicContext or a prime")


def _rho_of(rho) -> Fraction:
    if isinstance(rho, LogRadius):
        return rho.rho
    return as_fraction(rho)


def _as_ratfunc(f) -> RatFunc:
    if isinstance(f, RatFunc):
        return f
    return RatFunc(f)


def _poly_gauss(h: UPoly, p: int, rho: Fraction) -> Fraction:
    if h.is_zero:
        raise ValueError("Gauss norm of the zero polynomial")
    return max(-valuation(c, p) + k * rho
               for k, c in enumerate(h.coeffs) if c != 0)


def gauss_log_norm(h, ctx, rho) -> Fraction:
    """log_p of the sup norm on the ball of radius p**rho, for a UPoly or
    a RatFunc (quotient: numerator minus denominator)."""
    p = _prime_of(ctx)
    r = _rho_of(rho)
    if isinstance(h, RatFunc):
        if h.is_zero:
            raise ValueError("Gauss norm of the zero function")
        return _poly_gauss(h.num, p, r) - _poly_gauss(h.den, p, r)
    if isinstance(h, UPoly):
        return _poly_gauss(h, p, r)
    raise TypeError("expected a UPoly or RatFunc")


def newton_polygon(h: UPoly, ctx) -> NewtonPolygon:
    """Lower convex hull of (k, v_p(a_k)) over the nonzero coefficients,
    reported as root valuations: a slope-s segment of length l means l
    roots of valuation s (the root at 0, if any, is not part of the
    polygon)."""
    p = _prime_of(ctx)
    if not isinstance(h, UPoly):
        raise TypeError("expected a UPoly")
    if h.is_zero:
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(k, valuation(c, p)) for k, c in enumerate(h.coeffs) if c != 0]
    hull: list[tuple[int, int]] = []
    for x3, y3 in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append((x3, y3))
    segs = [NewtonSegment(Fraction(y1 - y2, x2 - x1), x2 - x1)
            for (x1, y1), (x2, y2) in zip(hull, hull[1:])]
    segs.sort(key=lambda s: s.slope)
    return NewtonPolygon(tuple(segs))


def count_zeros(h: UPoly, ctx, rho) -> int:
    """Zeros of h in the closed ball of radius p**rho, with multiplicity:
    the order of vanishing at 0 plus the polygon lengths over slopes
    >= -rho (roots with |root|_p <= p**rho)."""
    r = _rho_of(rho)
    poly = newton_polygon(h, ctx)
    return h.ord0 + sum(s.length for s in poly.segments if s.slope >= -r)


def _height_of_poly(h: UPoly, ctx, rho: Fraction) -> Fraction:
    poly = newton_polygon(h, ctx)
    total = h.ord0 * rho
    for s in poly.segments:
        shifted = rho + s.slope
        if shifted > 0:
            total += s.length * shifted
    return total


def _target_numerator(f: RatFunc, target) -> UPoly:
    if target is INF:
        return f.den
    a = as_fraction(target)
    g = f - a
    if g.is_zero:
        raise ValueError("f equals the target identically")
    return g.num


def height_N(f, target, ctx, rho) -> Fraction:
    """The height function N at radius p**rho, normalized at rho = 0.

    target 0 counts zeros of f, INF counts poles, and a rational a counts
    solutions of f = a.  Piecewise linear in rho; negative below rho = 0
    when the relevant function vanishes at the origin.
    """
    f = _as_ratfunc(f)
    if f.is_zero:
        raise ValueError("height of the zero function")
    h = _target_numerator(f, target)
    return _height_of_poly(h, ctx, _rho_of(rho))


def prox_m(f, target, ctx, rho) -> Fraction:
    """Proximity function: log+ of 1/|f - a| at the radius, or log+ |f|
    for the target INF."""
    f = _as_ratfunc(f)
    r = _rho_of(rho)
    if target is INF:
        value = gauss_log_norm(f, ctx, r)
    else:
        a = as_fraction(target)
        g = f - a
        if g.is_zero:
            raise ValueError("f equals the target identically")
        value = -gauss_log_norm(g, ctx, r)
    return value if value > 0 else Fraction(0)


def check_pjf(f, ctx, rhos) -> Fraction:
    """The constant log|f| - N(f,0) + N(f,inf), checked to be the same at
    every given radius (at least two).  Raises ArithmeticError naming the
    offending radius if the values ever disagreed."""
    f = _as_ratfunc(f)
    if f.is_zero:
        raise ValueError("zero function")
    grid = [_rho_of(r) for r in rhos]
    if len(grid) < 2:
        raise ValueError("need at least 2 radii")
    constants = [gauss_log_norm(f, ctx, r)
                 - height_N(f, 0, ctx, r)
                 + height_N(f, INF, ctx, r)
                 for r in grid]
    for r, c in zip(grid, constants):
        if c != constants[0]:
            raise ArithmeticError(f"constant mismatch at rho={r}: {c} != {constants[0]}")
    return constants[0]


def check_ldl(f, n: int, ctx, rho) -> bool:
    """Exact check of |f^(n)/f| <= p**(-n*rho) at the radius.  True
    vacuously when the n-th derivative vanishes identically."""
    if n < 1:
        raise ValueError("derivative order must be >= 1")
    f = _as_ratfunc(f)
    if f.is_zero:
        raise ValueError("zero function")
    fn = f.derivative(n)
    if fn.is_zero:
        return True
    r = _rho_of(rho)
    return gauss_log_norm(fn / f, ctx, r) <= -n * r


def _kinks(h: UPoly, ctx) -> list[Fraction]:
    return [-s.slope for s in newton_polygon(h, ctx).segments]


def _eventual_bound(ctx, polys, log_funcs) -> Fraction:
    """A radius beyond which every involved piecewise-linear function is
    affine and every positive-part clip has settled."""
    bound = Fraction(0)
    for h in polys:
        for k in _kinks(h, ctx):
            if k > bound:
                bound = k
    for fun in log_funcs:
        v1 = fun(bound + 1)
        v2 = fun(bound + 2)
        slope = v2 - v1
        if slope != 0:
            crossing = (bound + 1) - v1 / slope
            if crossing > bound:
                bound = crossing
    return bound


@dataclass(frozen=True)
class FmtReport:
    """Defect m(f,a) + N(f,a) - m(f,inf) - N(f,inf) over a radius grid.

    The defect is piecewise linear; beyond `stable_beyond` it is affine
    with slope `eventual_slope`, and the check passes exactly when that
    slope is zero (the defect is then the constant `eventual_value`)."""

    a: Fraction
    grid: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    spread: Fraction
    stable_beyond: Fraction
    eventual_slope: Fraction
    eventual_value: Fraction

    @property
    def passed(self) -> bool:
        return self.eventual_slope == 0


def check_fmt(f, a, ctx, rhos) -> FmtReport:
    f = _as_ratfunc(f)
    if f.is_constant:
        raise ValueError("f must be nonconstant")
    a = as_fraction(a)
    grid = tuple(sorted(_rho_of(r) for r in rhos))
    if not grid:
        raise ValueError("empty radius grid")

    def defect(r: Fraction) -> Fraction:
        return (prox_m(f, a, ctx, r) + height_N(f, a, ctx, r)
                - prox_m(f, INF, ctx, r) - height_N(f, INF, ctx, r))

    fa_num = (f - a).num
    polys = [f.num, f.den, fa_num]
    logs = [lambda r: gauss_log_norm(f, ctx, r),
            lambda r: gauss_log_norm(f - a, ctx, r)]
    bound = _eventual_bound(ctx, polys, logs)
    values = tuple(defect(r) for r in grid)
    v1 = defect(bound + 1)
    v2 = defect(bound + 2)
    return FmtReport(a=a, grid=grid, values=values,
                     spread=max(values) - min(values),
                     stable_beyond=bound,
                     eventual_slope=v2 - v1,
                     eventual_value=v1)


@dataclass(frozen=True)
class SmtReport:
    """sum_i m(f, a_i) - N(f, inf) over a radius grid.

    Beyond `stable_beyond` the quantity is affine; the check passes when
    its eventual slope is <= 0, so the grid supremum cannot be escaped to
    the right.  A finite grid cannot certify more."""

    targets: tuple[Fraction, ...]
    grid: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    sup: Fraction
    stable_beyond: Fraction
    eventual_slope: Fraction

    @property
    def passed(self) -> bool:
        return self.eventual_slope <= 0


def check_smt(f, targets, ctx, rhos) -> SmtReport:
    f = _as_ratfunc(f)
    if f.is_constant:
        raise ValueError("f must be nonconstant")
    ts = tuple(as_fraction(a) for a in targets)
    if len(set(ts)) != len(ts):
        raise ValueError("targets must be distinct")
    if not ts:
        raise ValueError("need at least one target")
    grid = tuple(sorted(_rho_of(r) for r in rhos))
    if not grid:
        raise ValueError("empty radius grid")

    def value(r: Fraction) -> Fraction:
        return (sum(prox_m(f, a, ctx, r) for a in ts)
                - height_N(f, INF, ctx, r))

    polys = [f.den] + [(f - a).num for a in ts]
    logs = [(lambda r, a=a: gauss_log_norm(f - a, ctx, r)) for a in ts]
    bound = _eventual_bound(ctx, polys, logs)
    values = tuple(value(r) for r in grid)
    v1 = value(bound + 1)
    v2 = value(bound + 2)
    return SmtReport(targets=ts, grid=grid, values=values,
                     sup=max(values),
                     stable_beyond=bound,
                     eventual_slope=v2 - v1)


def delta_identity(f, u, a) -> bool:
    """With g = (a + f)**2 - u**2 (so h = u satisfies h**2 = (a+f)**2 - g),
    checks the exact factorization

        g'**2 - 4*f'**2*g = 4*u*(u*f'**2 - u'**2*u - u'*g')

    which holds identically for every rational f, u and constant a."""
    f = _as_ratfunc(f)
    u = _as_ratfunc(u)
    a = as_fraction(a)
    g = (f + a) ** 2 - u ** 2
    fp = f.derivative()
    up = u.derivative()
    gp = g.derivative()
    delta = gp ** 2 - 4 * fp ** 2 * g
    delta_n = u * fp ** 2 - up ** 2 * u - up * gp
    return delta == 4 * u * delta_n


def difference_identity(f, a_i, a_j, h_i_sq, h_j_sq) -> bool:
    """Checks h_i**2 - h_j**2 = (a_i - a_j)*(2f + a_i + a_j), the linear
    relation forced when both squares equal (a + f)**2 - g for a common g."""
    f = _as_ratfunc(f)
    ai = as_fraction(a_i)
    aj = as_fraction(a_j)
    lhs = _as_ratfunc(h_i_sq) - _as_ratfunc(h_j_sq)
    rhs = (ai - aj) * (2 * f + ai + aj)
    return lhs == rhs
