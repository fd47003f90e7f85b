"""Independent numerical cross-checks for the exact engine.

Box-counting dimension estimates, cover premeasure sums, rigorous
quadrature, and brute-force recomputation by direct enumeration.  The
oracle consumes the catalog data types but reimplements every
computation from scratch: covers are built structurally from the atom
definitions (no sampling), quadrature carries an explicit error bound,
and enumeration sums values term by term.  Agreement with the exact
engine is evidence, not circularity.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .config import get_config
from .errors import (NotSupported, TooLarge, Unbounded, ValidationError)
from .hvalue import (CoefficientSeries, Dimension, ExtReal, HPair, Rational)
from .hintegral import Const, PiecewiseFunction, Poly
from .setalg import (HARMONIC, Atom, CantorAffine, CountableSeq,
                     FinitePoints, Interval, RepSet)
from ._numeric import RatInterval, log_interval, pow_interval

__all__ = [
    "CoverReport", "box_dim_estimate", "premeasure_estimate",
    "quadrature", "brute_recompute", "BRUTE_LIMIT",
]

BRUTE_LIMIT = 1000


@dataclass(frozen=True)
class CoverReport:
    """One depth of a structural cover: how many boxes, how large, and
    what their diameters sum to at the probed dimension."""

    depth: int
    box_count: int
    box_size: Fraction
    premeasure: RatInterval


# ---------------------------------------------------------------------------
# structural covers

def _interval_boxes(atom: Interval, delta: Fraction) -> int:
    if atom.lo is None or atom.hi is None:
        raise Unbounded(f"cannot cover the unbounded interval {atom!r}")
    return math.ceil((atom.hi - atom.lo) / delta)


def _points_boxes(atom: FinitePoints, delta: Fraction) -> int:
    count, edge = 0, None
    for p in atom.points:  # sorted on construction
        if edge is None or p > edge:
            count += 1
            edge = p + delta
    return count


def _sequence_boxes(atom: CountableSeq, delta: Fraction) -> int:
    """Points with gaps wider than delta get their own boxes; the rest
    crowd into a block at the accumulation point, covered like an
    interval.  Mirroring makes the down-going case match the up-going
    one, and deleting finitely many points never enlarges the cover."""
    b = abs(atom.b)
    if atom.family == HARMONIC:
        # gap between consecutive points is b / (n (n + 1))
        r = b / delta
        m = math.isqrt(max(int(r), 0))
        while m >= 1 and m * (m + 1) >= r:
            m -= 1
        while (m + 1) * (m + 2) < r:
            m += 1
        tail = b / (m + 1)
    else:
        # gap is b q^n (1 - q)
        threshold = delta / (b * (1 - atom.q))
        m, power = 0, atom.q
        while power > threshold:
            m += 1
            power *= atom.q
        tail = b * atom.q ** (m + 1)
    return m + math.ceil(tail / delta)


def _atom_cover(atom: Atom, depth: int) -> Tuple[int, Fraction]:
    """(box count, box diameter) for one atom at one depth."""
    delta = Fraction(1, 3 ** depth)
    if isinstance(atom, Interval):
        return _interval_boxes(atom, delta), delta
    if isinstance(atom, FinitePoints):
        return _points_boxes(atom, delta), delta
    if isinstance(atom, CountableSeq):
        return _sequence_boxes(atom, delta), delta
    if isinstance(atom, CantorAffine):
        # the depth-k construction stage: 2^k intervals of width s 3^-k
        return 2 ** depth, atom.s * delta
    raise ValidationError(f"no structural cover for {atom!r}")


def _covers(s: RepSet, depth: int) -> list:
    if s.is_empty():
        raise ValidationError("cannot cover the empty set")
    return [_atom_cover(atom, depth) for atom in s.atoms]


def _as_dimension(d) -> Dimension:
    if isinstance(d, Dimension):
        return d
    return Dimension.rational(d)


def _integer_power_of(x: Fraction, base: int):
    """Exponent e with x == base**e, or None."""
    if x == 1:
        return 0
    flip = x.numerator == 1 and x.denominator > 1
    n = x.denominator if flip else x.numerator
    if (x.denominator if not flip else x.numerator) != 1:
        return None
    e = 0
    while n % base == 0:
        n //= base
        e += 1
    if n != 1:
        return None
    return -e if flip else e


def _int_root(n: int, q: int):
    """Integer q-th root of n when n is a perfect power, else None."""
    if n == 0:
        return 0
    lo, hi = 1, 1 << (n.bit_length() // q + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** q <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** q == n else None


def _rational_pow(x: Fraction, r: Fraction):
    """x**r as an exact Fraction, or None when the root is irrational."""
    if r.denominator == 1:
        return x ** r
    num = _int_root(x.numerator, r.denominator)
    den = _int_root(x.denominator, r.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** r.numerator


def _pow_dim(x: Fraction, d: Dimension, prec: int) -> RatInterval:
    """Enclosure of x**d, exact whenever the arithmetic allows it."""
    if x <= 0:
        raise ValidationError("cover diameters must be positive")
    if d.is_rational():
        exact = _rational_pow(x, d.as_fraction())
        if exact is not None:
            return RatInterval.point(exact)
    elif d.rat == 0 and len(d.logs) == 1:
        # x = q^e turns x^(c log p / log q) into p^(c e)
        (p, q), coef = d.logs[0]
        e = _integer_power_of(x, q)
        if e is not None and (coef * e).denominator == 1:
            return RatInterval.point(Fraction(p) ** (coef * e))
    return pow_interval(x, d.enclosure(prec), prec)


def premeasure_estimate(s: RepSet, d, depth: int) -> RatInterval:
    """Sum of diameter**d over the depth-k structural cover: an upper
    view of the d-dimensional measure at that scale."""
    d = _as_dimension(d)
    prec = get_config().precision_bits
    total = RatInterval.point(0)
    for count, diam in _covers(s, depth):
        total = total + _pow_dim(diam, d, prec) * count
    return total


def _inverse(ivl: RatInterval) -> RatInterval:
    if ivl.lo <= 0:
        raise ValidationError("interval reciprocal needs a positive interval")
    return RatInterval(1 / ivl.hi, 1 / ivl.lo)


def box_dim_estimate(s: RepSet, depths: Sequence[int]):
    """Least-squares slope of log N(delta) against log(1/delta) over
    structural covers, as a certified interval, plus the per-depth
    reports.

    Box counting sees closure: a sequence crowding into its limit point
    fills boxes there, so accumulating sequences report a strictly
    larger slope than the dimension their measure pair carries.  The
    isolated atom kinds (intervals, finite point sets, Cantor pieces)
    agree with the exact dimension.
    """
    depths = sorted(set(int(k) for k in depths))
    if len(depths) < 2:
        raise ValidationError("slope estimation needs at least two depths")
    if any(k < 1 for k in depths):
        raise ValidationError("cover depths start at 1")
    prec = get_config().precision_bits
    sized = []
    for k in depths:
        covers = _covers(s, k)
        count = sum(c for c, _ in covers)
        mesh = max(diam for _, diam in covers)
        sized.append((k, count, mesh))
    xs = [log_interval(1 / mesh, prec) for _, _, mesh in sized]
    ys = [log_interval(count, prec) for _, count, _ in sized]
    n = len(sized)
    xbar = sum(xs, RatInterval.point(0)) * Fraction(1, n)
    ybar = sum(ys, RatInterval.point(0)) * Fraction(1, n)
    sxy = sum(((x - xbar) * (y - ybar) for x, y in zip(xs, ys)),
              RatInterval.point(0))
    sxx = sum(((x - xbar) * (x - xbar) for x in xs), RatInterval.point(0))
    slope = sxy * _inverse(sxx)
    reports = []
    for k, count, mesh in sized:
        pm = RatInterval.point(0)
        for c, diam in _covers(s, k):
            pm = pm + pow_interval(diam, slope, prec) * c
        reports.append(CoverReport(k, count, mesh, pm))
    return slope, reports


# ---------------------------------------------------------------------------
# quadrature

def _second_derivative_bound(coeffs: Sequence[Fraction],
                             lo: Fraction, hi: Fraction) -> Fraction:
    big = max(abs(lo), abs(hi))
    bound = Fraction(0)
    for j in range(2, len(coeffs)):
        bound += abs(coeffs[j]) * j * (j - 1) * big ** (j - 2)
    return bound


def _poly_value(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def quadrature(f: PiecewiseFunction, region: Interval, n: int) -> RatInterval:
    """Composite midpoint rule over the polynomial pieces meeting the
    region, with the textbook second-derivative error bound.  The
    returned interval contains the exact length integral; pieces of
    length zero (points, sequences, dust) contribute nothing to it."""
    if region.lo is None or region.hi is None:
        raise ValidationError("quadrature needs a bounded region")
    if n < 1:
        raise ValidationError("quadrature needs at least one panel")
    total = RatInterval.point(0)
    for atom, expr in f.terms:
        if not isinstance(atom, Interval):
            continue
        lo = region.lo if atom.lo is None else max(atom.lo, region.lo)
        hi = region.hi if atom.hi is None else min(atom.hi, region.hi)
        if lo >= hi:
            continue
        coeffs = expr.coeffs if isinstance(expr, Poly) else (expr.value,)
        h = Fraction(hi - lo, n)
        acc = Fraction(0)
        for i in range(n):
            acc += _poly_value(coeffs, lo + h * i + h / 2)
        mid_sum = acc * h
        err = (hi - lo) * h * h * _second_derivative_bound(coeffs, lo, hi) / 24
        total = total + RatInterval(mid_sum - err, mid_sum + err)
    return total


# ---------------------------------------------------------------------------
# brute-force recomputation

def _brute_pair_sum(pairs: Iterable[HPair]) -> HPair:
    pairs = list(pairs)
    if len(pairs) > BRUTE_LIMIT:
        raise TooLarge(f"brute sum capped at {BRUTE_LIMIT} pairs")
    top = None
    for p in pairs:
        if top is None or p.d.cmp(top) > 0:
            top = p.d
    if top is None:
        return HPair.of(0, 0)
    m = ExtReal.of(0)
    for p in pairs:
        if p.d.cmp(top) == 0:
            m = m + p.m
    return HPair(top, m)


def _brute_series(job) -> HPair:
    if isinstance(job, CoefficientSeries):
        total = Fraction(0)
        for k in range(BRUTE_LIMIT):
            total += job.term(k)
        return HPair.of(0, total)
    dims, coeffs = job
    per = BRUTE_LIMIT // max(len(coeffs), 1)
    pairs = [HPair.of(d, series.term(k))
             for d, series in zip(dims, coeffs) for k in range(per)]
    return _brute_pair_sum(pairs)


def _brute_integral(f: PiecewiseFunction) -> HPair:
    values = []
    for atom, expr in f.terms:
        if isinstance(atom, FinitePoints):
            for p in atom.points:
                values.append(_point_value(expr, None))
        elif isinstance(atom, CountableSeq):
            live = (k for k in range(1, 4 * BRUTE_LIMIT)
                    if atom.point(k) not in atom.deletions)
            for _, k in zip(range(BRUTE_LIMIT), live):
                values.append(_point_value(expr, k))
        else:
            raise NotSupported(
                "direct enumeration only covers countable supports")
        if len(values) > 2 * BRUTE_LIMIT:
            raise TooLarge("enumeration exceeded the brute-force budget")
    total = Fraction(0)
    for v in values:
        total += v
    return HPair.of(0, total)


def _point_value(expr, index) -> Fraction:
    if isinstance(expr, Const):
        return expr.value
    if index is None:
        raise NotSupported("series values need sequence indices")
    return expr.series.term(index - 1)


def brute_recompute(op: str, inputs) -> HPair:
    """Recompute a result by direct enumeration, sidestepping the main
    code paths.  Series are truncated at the brute-force budget, so
    geometric tails beyond it are the only slack."""
    if op == "hpair_sum":
        return _brute_pair_sum(inputs)
    if op == "hpair_series":
        return _brute_series(inputs)
    if op == "h_integral":
        return _brute_integral(inputs)
    raise ValidationError(f"unknown brute-force operation {op!r}")
