"""Distances between pairs, sets and functions, and the induced
convergence notions.

Each distance is a pair whose measure coordinate is nonnegative. The
triangle axiom compares against the coordinatewise sum of two distances
(dimension gaps add as reals, so a sum may leave [0, 2]; such values
exist only inside comparisons). Completeness is checked on generators
that present their terms and exact error masses, not for arbitrary
Cauchy sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from ._numeric import Rational
from .errors import NoLimitFound, NotInLH, ValidationError
from .hintegral import (PiecewiseFunction, SeriesValues, add, h_integral,
                        indicator, neg_part, pos_part, scalar_mul, support)
from .hvalue import (DIM_ZERO, EXT_ZERO, ZERO_PAIR, Dimension, ExtReal,
                     FiniteList, Geometric, HPair, PSeries, dim_abs_diff,
                     hpair_add, hpair_eq, hpair_leq, hpair_lt)
from .setalg import CountableSeq, FinitePoints, RepSet, hmeasure, symdiff


@dataclass(frozen=True)
class HDistance:
    """A distance value: a pair with nonnegative measure coordinate.

    For the true metrics below, (0, 0) means the two arguments agree;
    the projection onto the first coordinate alone is a pseudo-metric.
    """

    value: HPair

    def __init__(self, value: HPair):
        if value.m.sign() < 0:
            raise ValidationError(
                f"a distance cannot be negative: {value.render()}")
        object.__setattr__(self, "value", value)

    @staticmethod
    def of(d, m) -> "HDistance":
        return HDistance(HPair.of(d, m))

    def is_zero(self) -> bool:
        return hpair_eq(self.value, ZERO_PAIR)

    def plus(self, other: "HDistance") -> "HDistance":
        """Coordinatewise sum, the addition the metric axioms use."""
        d = self.value.d._sub(other.value.d._scale(Fraction(-1)))
        return HDistance(HPair(d, self.value.m + other.value.m))

    def render(self) -> str:
        return self.value.render()


def triangle_ok(ac: HDistance, ab: HDistance, bc: HDistance) -> bool:
    """Whether ac <= ab + bc in the lexicographic order."""
    return hpair_leq(ac.value, ab.plus(bc).value)


# ---------------------------------------------------------------------------
# the three metrics


def dH_pairs(a: HPair, b: HPair) -> HDistance:
    """The dimension gap when the dimensions differ, the measure gap at
    dimension zero when they coincide. Wants nonnegative measures."""
    if a.m.sign() < 0 or b.m.sign() < 0:
        raise ValidationError("dH_pairs compares pairs with m >= 0")
    if a.d.cmp(b.d) != 0:
        return HDistance(HPair(dim_abs_diff(a.d, b.d), EXT_ZERO))
    if a.m.cmp(b.m) == 0:
        return HDistance(ZERO_PAIR)
    return HDistance(HPair(DIM_ZERO, abs(a.m - b.m)))


def d_s(a: RepSet, b: RepSet) -> HDistance:
    """The measure of the symmetric difference."""
    return HDistance(hmeasure(symdiff(a, b)))


def abs_integral(f: PiecewiseFunction) -> HPair:
    """Integral of |f|, assembled from the two signed parts."""
    up = h_integral(pos_part(f))
    down = h_integral(neg_part(f))
    return hpair_add(up, HPair(down.d, down.m.scale(-1)))


def absolutely_integrable(f: PiecewiseFunction) -> bool:
    """Whether the integral of |f| is finite."""
    return abs_integral(f).m.is_finite()


def d_H(f: PiecewiseFunction, g: PiecewiseFunction) -> HDistance:
    """The integral of |f - g|. Both arguments must be absolutely
    integrable; the difference must stay in the catalog."""
    for name, fn in (("left", f), ("right", g)):
        if not absolutely_integrable(fn):
            raise NotInLH(f"the {name} argument has an infinite |f| integral")
    return HDistance(abs_integral(add(f, scalar_mul(-1, g))))


def ball_member(center, y, radius: HPair, metric: Callable) -> bool:
    """Whether y lies in the open ball around center, lexicographically."""
    if not hpair_lt(ZERO_PAIR, radius):
        raise ValidationError("the ball radius must exceed (0, 0)")
    dist = metric(center, y)
    value = dist.value if isinstance(dist, HDistance) else dist
    return hpair_lt(value, radius)


# ---------------------------------------------------------------------------
# sequences with decidable distances

DEFAULT_SCHEDULE = tuple(Fraction(1, 10 ** k) for k in range(7))


class CauchySeq:
    """A finitely presented function sequence, indexed from 1, whose
    pairwise distances admit exact bounds.

    cauchy_index(eps) returns an index N with d(x_n, x_m) < (0, eps)
    certified for all n, m >= N, or None when no index will do;
    limit_index(eps) does the same against the limit function.
    """

    def term(self, n: int) -> PiecewiseFunction:
        raise NotImplementedError

    def limit(self) -> PiecewiseFunction:
        raise NotImplementedError

    def cauchy_index(self, eps: Fraction) -> Optional[int]:
        raise NotImplementedError

    def limit_index(self, eps: Fraction) -> int:
        raise NotImplementedError


class PerturbationSeq(CauchySeq):
    """Base + a vanishing dimension-zero perturbation; subclasses
    provide the exact perturbation mass at each index."""

    def _mass(self, n: int) -> Fraction:
        raise NotImplementedError

    def tail_mass(self, n: int) -> Fraction:
        """max of _mass on [n, inf); the masses rise only finitely often."""
        k, best = n, self._mass(n)
        while self._mass(k + 1) > self._mass(k):
            k += 1
            best = max(best, self._mass(k))
        return best

    def cauchy_index(self, eps):
        # d(x_n, x_m) <= mass(n) + mass(m) <= 2 tail_mass(N)
        eps, n = Fraction(eps), 1
        while 2 * self.tail_mass(n) >= eps:
            n += 1
        return n

    def limit_index(self, eps):
        eps, n = Fraction(eps), 1
        while self.tail_mass(n) >= eps:
            n += 1
        return n


@dataclass(frozen=True)
class PointPerturbation(PerturbationSeq):
    """x_n = base + coeff * ratio^n at one point."""

    base: PiecewiseFunction
    site: Fraction
    coeff: Fraction
    ratio: Fraction

    def __init__(self, base, site, coeff=1, ratio=Fraction(1, 2)):
        site, coeff, ratio = Fraction(site), Fraction(coeff), Fraction(ratio)
        if coeff == 0:
            raise ValidationError("the perturbation coefficient is zero")
        if not 0 < ratio < 1:
            raise ValidationError("need 0 < ratio < 1")
        if not absolutely_integrable(base):
            raise NotInLH("the base function has an infinite |f| integral")
        for name, v in (("base", base), ("site", site), ("coeff", coeff),
                        ("ratio", ratio)):
            object.__setattr__(self, name, v)

    def term(self, n):
        bump = indicator(RepSet.of(FinitePoints([self.site])),
                         self.coeff * self.ratio ** n)
        return add(self.base, bump)

    def limit(self):
        return self.base

    def _mass(self, n):
        return abs(self.coeff) * self.ratio ** n


@dataclass(frozen=True)
class PrefixPerturbation(PerturbationSeq):
    """x_n = base + coeff * ratio^n on the first n points of a sequence
    atom; the added mass n |coeff| ratio^n is summable and dies out."""

    base: PiecewiseFunction
    atom: CountableSeq
    coeff: Fraction
    ratio: Fraction

    def __init__(self, base, atom, coeff=1, ratio=Fraction(1, 2)):
        coeff, ratio = Fraction(coeff), Fraction(ratio)
        if atom.deletions:
            raise ValidationError("prefix perturbation wants a full sequence")
        if coeff == 0:
            raise ValidationError("the perturbation coefficient is zero")
        if not 0 < ratio < 1:
            raise ValidationError("need 0 < ratio < 1")
        if not absolutely_integrable(base):
            raise NotInLH("the base function has an infinite |f| integral")
        for name, v in (("base", base), ("atom", atom), ("coeff", coeff),
                        ("ratio", ratio)):
            object.__setattr__(self, name, v)

    def term(self, n):
        pts = [self.atom.point(i) for i in range(1, n + 1)]
        bump = indicator(RepSet.of(FinitePoints(pts)),
                         self.coeff * self.ratio ** n)
        return add(self.base, bump)

    def limit(self):
        return self.base

    def _mass(self, n):
        return n * abs(self.coeff) * self.ratio ** n


@dataclass(frozen=True)
class ConstantFunctionSeq(CauchySeq):
    fn: PiecewiseFunction

    def term(self, n):
        return self.fn

    def limit(self):
        return self.fn

    def cauchy_index(self, eps):
        return 1

    def limit_index(self, eps):
        return 1


class AlternatingFunctionSeq(CauchySeq):
    """Terms hopping between two functions; Cauchy only if they agree."""

    def __init__(self, first: PiecewiseFunction, second: PiecewiseFunction):
        self.first = first
        self.second = second
        self.gap = d_H(first, second)

    def term(self, n):
        return self.first if n % 2 == 1 else self.second

    def limit(self):
        if self.gap.is_zero():
            return self.first
        raise NoLimitFound("the terms alternate at a positive distance")

    def cauchy_index(self, eps):
        bound = HPair(DIM_ZERO, ExtReal.of(Fraction(eps)))
        return 1 if hpair_lt(self.gap.value, bound) else None

    def limit_index(self, eps):
        self.limit()
        return 1


def _check_schedule(schedule) -> list[Fraction]:
    out = []
    for eps in schedule:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValidationError("tolerances must be positive")
        out.append(eps)
    if not out:
        raise ValidationError("the tolerance schedule is empty")
    return out


def is_cauchy(seq: CauchySeq,
              schedule: Sequence[Rational] = DEFAULT_SCHEDULE) -> bool:
    """Whether the generator certifies an index for every tolerance.

    Each certified index is spot-checked with exact pairwise distances;
    a failing certificate is a library bug, not a domain answer, so it
    raises instead of returning False.
    """
    for eps in _check_schedule(schedule):
        n = seq.cauchy_index(eps)
        if n is None:
            return False
        bound = HPair(DIM_ZERO, ExtReal.of(eps))
        for m in (n + 1, n + 5):
            got = d_H(seq.term(n), seq.term(m))
            if not hpair_lt(got.value, bound):
                raise ValidationError(
                    f"certified index {n} fails against term {m}")
    return True


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Per-tolerance indices: past entry (eps, n) the distance to the
    limit stays below (0, eps)."""

    entries: tuple[tuple[Fraction, int], ...]

    def index_for(self, eps) -> int:
        eps = Fraction(eps)
        for tol, n in self.entries:
            if tol == eps:
                return n
        raise KeyError(f"no certificate entry for {eps}")


def riesz_fischer_check(seq: CauchySeq,
                        schedule: Sequence[Rational] = DEFAULT_SCHEDULE
                        ) -> tuple[PiecewiseFunction, ConvergenceCertificate]:
    """The limit of a perturbation-style generator plus a certificate.

    The certificate lists, for each tolerance in the schedule, an index
    past which the distance to the limit is below (0, eps); the first
    and one later index are re-verified with exact distances.
    """
    limit = seq.limit()
    if not absolutely_integrable(limit):
        raise NotInLH("the limit has an infinite |f| integral")
    entries = []
    for eps in _check_schedule(schedule):
        n = seq.limit_index(eps)
        bound = HPair(DIM_ZERO, ExtReal.of(eps))
        for k in (n, n + 3):
            got = d_H(seq.term(k), limit)
            if not hpair_lt(got.value, bound):
                raise ValidationError(
                    f"certified index {n} fails at term {k}")
        entries.append((eps, n))
    return limit, ConvergenceCertificate(tuple(entries))


def finite_counting_mass(f: PiecewiseFunction) -> bool:
    """Whether the integral of |f| against the counting measure is
    finite: only finitely presented point masses with summable values."""
    for atom, expr in f.terms:
        if isinstance(atom, FinitePoints):
            continue
        if isinstance(atom, CountableSeq) and isinstance(expr, SeriesValues):
            s = expr.series
            if isinstance(s, FiniteList):
                continue
            if isinstance(s, Geometric):
                continue
            if isinstance(s, PSeries) and s.p > 1:
                continue
        # a nonzero value on an uncountable piece, or a sequence whose
        # values are not absolutely summable
        return False
    return True


def small_support_check(f: PiecewiseFunction) -> bool:
    """A finite counting-measure integral forces dimension-zero support."""
    if not finite_counting_mass(f):
        return True
    dom = support(f)
    return dom.is_empty() or hmeasure(dom).d.cmp(DIM_ZERO) == 0
