"""Piecewise functions over representable sets and their pair-valued integral.

A function is a finite list of (atom, expression) terms and vanishes off
their union. Its integral over a region is the pair (d, m): d is the
dimension of the support inside the region, m the d-dimensional measure
integral there. Terms of lower dimension are invisible in m, which is what
makes the examples of the pair calculus (sums of integrals exceeding the
integral of a sum, and so on) come out the way they do.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import sympy

from ._numeric import Rational
from .errors import (DisjointnessViolated, DoesNotConverge,
                     MonotonicityViolated, NotRepresentable, OrderNotVerified,
                     UndefinedSum, ValidationError)
from .hvalue import (DIM_ONE, DIM_ZERO, EXT_ZERO, NEG_INF, POS_INF, ZERO_PAIR,
                     CoefficientSeries, ConstantTail, Dimension, ExtReal,
                     FiniteList, Geometric, GrowthTail, HPair, HSeq,
                     InterleaveTail, MeasureTail, PSeries, dim_max, ext_sum,
                     hpair_eq, hpair_leq, hseq_liminf, hseq_limit)
from .setalg import (EMPTY_SET, Atom, CantorAffine, CountableSeq, FinitePoints,
                     Interval, RepSet, diff, hmeasure, intersect, normalize,
                     union)


# ---------------------------------------------------------------------------
# expressions


class Expression:
    """Value rule attached to one atom."""

    def is_zero(self) -> bool:
        raise NotImplementedError

    def scale(self, c: Fraction) -> "Expression":
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expression):
    value: Fraction

    def __init__(self, value: Rational):
        object.__setattr__(self, "value", Fraction(value))

    def is_zero(self):
        return self.value == 0

    def scale(self, c):
        return Const(self.value * Fraction(c))


@dataclass(frozen=True)
class Poly(Expression):
    """Polynomial in the ambient variable, coefficients by ascending power.
    Admitted on interval atoms only."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Rational]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def value_at(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(x) + c
        return acc

    def antiderivative(self) -> "Poly":
        return Poly([Fraction(0)]
                    + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def is_zero(self):
        return not self.coeffs

    def scale(self, c):
        k = Fraction(c)
        return Poly(v * k for v in self.coeffs)


@dataclass(frozen=True)
class SeriesValues(Expression):
    """Values bound to the indices of a CountableSeq atom: the point with
    index n carries the series term of rank n - 1."""

    series: CoefficientSeries

    def __init__(self, series: CoefficientSeries):
        if isinstance(series, PSeries) and series.p.denominator != 1:
            raise ValidationError(
                "fractional-power series values are irrational")
        object.__setattr__(self, "series", series)

    def is_zero(self):
        return self.series.sign() == 0

    def scale(self, c):
        return SeriesValues(self.series.scale(Fraction(c)))


# ---------------------------------------------------------------------------
# functions


class AllReals:
    """Sentinel region: the whole line."""

    def member(self, x) -> bool:
        return True

    def __repr__(self):
        return "AllReals()"


ALL_REALS = AllReals()
Region = Union[RepSet, AllReals]


def _expr_fits(atom: Atom, expr: Expression) -> None:
    if isinstance(expr, Poly) and not isinstance(atom, Interval):
        raise ValidationError("polynomial terms live on interval atoms only")
    if isinstance(expr, SeriesValues) and not isinstance(atom, CountableSeq):
        raise ValidationError("series values bind to sequence atoms only")


@dataclass(frozen=True)
class PiecewiseFunction:
    """Finitely many (atom, expression) terms, zero off their union.

    Term atoms must be pairwise disjoint and lie inside the declared
    domain. Identically zero terms are dropped on construction, so the
    zero function is the one with no terms at all.
    """

    terms: tuple[tuple[Atom, Expression], ...]
    domain: Region = ALL_REALS

    def __init__(self, terms, domain: Region = ALL_REALS,
                 trusted: bool = False):
        kept = []
        for atom, expr in terms:
            if atom.is_empty() or expr.is_zero():
                continue
            _expr_fits(atom, expr)
            kept.append((atom, expr))
        object.__setattr__(self, "terms", tuple(kept))
        object.__setattr__(self, "domain", domain)
        if trusted:
            return
        for i in range(len(kept)):
            for j in range(i + 1, len(kept)):
                both = intersect(RepSet.of(kept[i][0]), RepSet.of(kept[j][0]))
                if not both.is_empty():
                    raise ValidationError(
                        f"term atoms overlap: {kept[i][0]!r} and {kept[j][0]!r}")
        if isinstance(domain, RepSet):
            for atom, _ in kept:
                if not diff(RepSet.of(atom), domain).is_empty():
                    raise ValidationError(
                        f"term atom {atom!r} escapes the declared domain")

    def value_at(self, x: Rational) -> Fraction:
        x = Fraction(x)
        for atom, expr in self.terms:
            if atom.member(x):
                return _value_on(atom, expr, x)
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.terms


def _value_on(origin: Atom, expr: Expression, x: Fraction) -> Fraction:
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Poly):
        return expr.value_at(x)
    n = origin.index_of(x)
    if n is None:
        raise ValidationError(f"{x} is not a point of the value sequence")
    return expr.series.term(n - 1)


def indicator(s: RepSet, value: Rational = 1,
              domain: Region = ALL_REALS) -> PiecewiseFunction:
    v = Fraction(value)
    return PiecewiseFunction([(a, Const(v)) for a in s.atoms], domain,
                             trusted=True)


def zero_function(domain: Region = ALL_REALS) -> PiecewiseFunction:
    return PiecewiseFunction((), domain, trusted=True)


# ---------------------------------------------------------------------------
# polynomial root bookkeeping

_X = sympy.Symbol("x")


def _sympy_poly(p: Poly):
    coeffs = [sympy.Rational(c.numerator, c.denominator)
              for c in reversed(p.coeffs)]
    return sympy.Poly(coeffs, _X, domain="QQ")


def _as_bound(x: Fraction):
    return sympy.Rational(x.numerator, x.denominator)


def _roots_within(p: Poly, lo: Optional[Fraction],
                  hi: Optional[Fraction]) -> list:
    """Distinct real roots of p inside the closed range, increasing, as
    (root, multiplicity, fraction-or-None) triples."""
    grouped = []
    for r in _sympy_poly(p).real_roots():
        if lo is not None and bool(r < _as_bound(lo)):
            continue
        if hi is not None and bool(r > _as_bound(hi)):
            continue
        if grouped and r == grouped[-1][0]:
            grouped[-1][1] += 1
        else:
            grouped.append([r, 1])
    out = []
    for r, mult in grouped:
        exact = Fraction(int(r.p), int(r.q)) if r.is_Rational else None
        out.append((r, mult, exact))
    return out


def _rational_roots_within(p: Poly, lo, hi) -> list[Fraction]:
    return [f for _, _, f in _roots_within(p, lo, hi) if f is not None]


def _sample_between(p: Poly, lo: Optional[Fraction],
                    hi: Optional[Fraction]) -> Fraction:
    """A rational point strictly inside (lo, hi) where p does not vanish."""
    if lo is None and hi is None:
        x = Fraction(0)
    elif lo is None:
        x = hi - 1
    elif hi is None:
        x = lo + 1
    else:
        x = (lo + hi) / 2
    step = Fraction(1, 2) if (lo is None or hi is None) else (hi - lo) / 4
    for _ in range(64):
        if p.value_at(x) != 0:
            return x
        x += step
        step /= 2
        if lo is not None and x <= lo:
            x = lo + step
        if hi is not None and x >= hi:
            x = hi - step
    raise ValidationError("could not sample the polynomial sign")


def _sign_regions(p: Poly, lo: Optional[Fraction], hi: Optional[Fraction]):
    """Cut [lo, hi] at the sign changes of p: yields (a, b, sign) with
    constant sign on each open piece. Sign changes at irrational points
    cannot be cut exactly and raise NotRepresentable."""
    cuts = []
    for root, mult, exact in _roots_within(p, lo, hi):
        if mult % 2 == 0:
            continue
        if exact is None:
            raise NotRepresentable(
                "the sign of the polynomial changes at an irrational point")
        if (lo is None or exact > lo) and (hi is None or exact < hi):
            cuts.append(exact)
    bounds = [lo] + cuts + [hi]
    out = []
    for a, b in zip(bounds, bounds[1:]):
        x = _sample_between(p, a, b)
        out.append((a, b, 1 if p.value_at(x) > 0 else -1))
    return out


# ---------------------------------------------------------------------------
# support

def support(f: PiecewiseFunction) -> RepSet:
    """The exact set where f is nonzero.

    Rational polynomial roots are removed via deletions. An irrational
    root is left in place: a single point carries no length and no
    dimension, and naming it exactly would leave the rational endpoint
    algebra.
    """
    pieces = []
    for atom, expr in f.terms:
        pieces.extend(_support_pieces(atom, expr))
    return normalize(pieces)


def _support_pieces(atom: Atom, expr: Expression) -> list[Atom]:
    if isinstance(expr, Const):
        return [atom]
    if isinstance(expr, Poly):
        lo, hi = atom.hull()
        roots = [r for r in _rational_roots_within(expr, lo, hi)
                 if atom.member(r)]
        return [atom.with_deletions(roots)]
    return _series_support(atom, expr.series)


def _series_support(atom: CountableSeq, s: CoefficientSeries) -> list[Atom]:
    if isinstance(s, FiniteList):
        pts = [atom.point(i + 1) for i, v in enumerate(s.values)
               if v != 0 and atom.member(atom.point(i + 1))]
        return [FinitePoints(pts)] if pts else []
    if isinstance(s, Geometric) and s.r == 0:
        first = atom.point(1)
        return [FinitePoints([first])] if atom.member(first) else []
    # geometric and p-series terms never vanish
    return [atom]


# ---------------------------------------------------------------------------
# the integral

def _restricted_pieces(atom: Atom, expr: Expression, region: Region):
    """Pieces of atom inside the region, each tagged with the expression
    and the original atom (sequence indices are read off the original)."""
    if isinstance(region, AllReals):
        return [(atom, expr, atom)]
    inside = intersect(RepSet.of(atom), region)
    return [(piece, expr, atom) for piece in inside.atoms]


def _live_piece(piece: Atom, expr: Expression, origin: Atom):
    """Shrink a piece to where the expression is nonzero, for dimension
    purposes; returns None when nothing survives."""
    if isinstance(expr, Const):
        return piece
    if isinstance(expr, Poly):
        if isinstance(piece, Interval):
            return piece
        if not isinstance(piece, FinitePoints):
            raise NotRepresentable(
                "a polynomial restricted to a fractal or sequence piece "
                "has no catalog integral")
        pts = [x for x in piece.points if expr.value_at(x) != 0]
        return FinitePoints(pts) if pts else None
    s = expr.series
    if isinstance(piece, FinitePoints):
        pts = [x for x in piece.points
               if s.term(origin.index_of(x) - 1) != 0]
        return FinitePoints(pts) if pts else None
    survivors = _series_support(piece, s)
    if not survivors:
        return None
    live = survivors[0]
    return None if live.is_empty() else live


def _piece_measure(piece: Atom, expr: Expression, origin: Atom) -> ExtReal:
    if isinstance(expr, Const):
        return piece.mu().scale(expr.value)
    if isinstance(expr, Poly):
        if isinstance(piece, FinitePoints):
            return ExtReal.of(sum((expr.value_at(x) for x in piece.points),
                                  Fraction(0)))
        anti = expr.antiderivative()
        lo, hi = piece.hull()
        return _anti_at(anti, hi, +1) - _anti_at(anti, lo, -1)
    s = expr.series
    if isinstance(piece, FinitePoints):
        return ExtReal.of(sum((s.term(origin.index_of(x) - 1)
                               for x in piece.points), Fraction(0)))
    removed = sum((s.term(origin.index_of(x) - 1)
                   for x in piece.deletions), Fraction(0))
    return s.sum() - ExtReal.of(removed)


def _anti_at(anti: Poly, bound: Optional[Fraction], side: int) -> ExtReal:
    if bound is not None:
        return ExtReal.of(anti.value_at(bound))
    lead = anti.coeffs[-1]
    if side < 0 and anti.degree() % 2 == 1:
        lead = -lead
    return POS_INF if lead > 0 else NEG_INF


def h_integral(f: PiecewiseFunction, region: Region = ALL_REALS) -> HPair:
    """The pair (dimension of the support inside the region, integral of f
    against the measure of that dimension).

    Lower-dimensional terms contribute nothing to the second coordinate.
    Signed infinite masses of the top dimension raise UndefinedSum; a
    single signed infinity is a legitimate value, flagged as
    non-integrable by is_integrable.
    """
    live = []
    for atom, expr in f.terms:
        for piece, e, origin in _restricted_pieces(atom, expr, region):
            trimmed = _live_piece(piece, e, origin)
            if trimmed is not None:
                live.append((piece, e, origin, trimmed.dim()))
    if not live:
        return ZERO_PAIR
    top = live[0][3]
    for _, _, _, d in live[1:]:
        top = dim_max(top, d)
    total = ext_sum(_piece_measure(piece, e, origin)
                    for piece, e, origin, d in live if d.cmp(top) == 0)
    return HPair(top, total)


def is_integrable(f: PiecewiseFunction, region: Region = ALL_REALS) -> bool:
    try:
        return h_integral(f, region).m.is_finite()
    except UndefinedSum:
        return False


def restrict_to_support(f: PiecewiseFunction,
                        region: Region = ALL_REALS) -> tuple[HPair, HPair]:
    """Integral over the region and over the support inside it.

    The two agree: integrating where f vanishes adds nothing.
    """
    base = h_integral(f, region)
    dom = support(f)
    if isinstance(region, RepSet):
        dom = intersect(dom, region)
    return base, h_integral(f, dom)


def indicator_bridge(s: RepSet) -> HPair:
    """Integral of the indicator of s, checked against the measure of s."""
    got = h_integral(indicator(s))
    want = hmeasure(s)
    if not hpair_eq(got, want):
        raise ValidationError(
            f"indicator integral {got.render()} disagrees with "
            f"the measure {want.render()}")
    return got


# ---------------------------------------------------------------------------
# linear structure

def scalar_mul(c: Rational, f: PiecewiseFunction) -> PiecewiseFunction:
    """The function c*f on the same terms. The integral scales in the
    second coordinate only; the support does not move."""
    c = Fraction(c)
    if c == 0:
        raise ValidationError(
            "scaling by zero collapses the support; build the zero "
            "function directly")
    return PiecewiseFunction([(a, e.scale(c)) for a, e in f.terms],
                             f.domain, trusted=True)


def _domain_union(a: Region, b: Region) -> Region:
    if isinstance(a, RepSet) and isinstance(b, RepSet):
        return union(a, b)
    return ALL_REALS


def _localize(piece: Atom, origin: Atom, expr: Expression) -> Expression:
    """Re-express a term on a sub-piece of its atom."""
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, Poly):
        if isinstance(piece, Interval):
            return expr
        if expr.degree() == 0:
            return Const(expr.coeffs[0])
        raise NotRepresentable(
            "a polynomial is only constant enough for a fractal or "
            "sequence piece when it has degree zero")
    if isinstance(piece, CountableSeq):
        if (piece.family, piece.a, piece.b, piece.q) == \
                (origin.family, origin.a, origin.b, origin.q):
            return expr
        raise NotRepresentable(
            "series values cannot be rebased onto a different sequence")
    raise NotRepresentable("series values survive only on their sequence")


def _pointwise_terms(piece: FinitePoints, sources) -> list:
    """Per-point constant terms for a finite piece."""
    out = []
    for x in piece.points:
        v = sum((_value_on(origin, expr, x) for origin, expr in sources),
                Fraction(0))
        if v != 0:
            out.append((FinitePoints([x]), Const(v)))
    return out


def _combined_terms(piece: Atom, sources) -> list:
    """Terms valuing a refinement piece as the sum of its sources."""
    if isinstance(piece, FinitePoints):
        return _pointwise_terms(piece, sources)
    local = [_localize(piece, origin, expr) for origin, expr in sources]
    total = local[0]
    for nxt in local[1:]:
        total = _expr_add(total, nxt)
        if total is None:
            raise NotRepresentable(
                "the pointwise sum leaves the expression catalog "
                f"on {piece!r}")
    return [(piece, total)]


def _expr_add(a: Expression, b: Expression) -> Optional[Expression]:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if isinstance(a, (Const, Poly)) and isinstance(b, (Const, Poly)):
        pa = a.coeffs if isinstance(a, Poly) else (a.value,)
        pb = b.coeffs if isinstance(b, Poly) else (b.value,)
        n = max(len(pa), len(pb))
        pad = lambda t: tuple(t) + (Fraction(0),) * (n - len(t))
        return Poly(x + y for x, y in zip(pad(pa), pad(pb)))
    if isinstance(a, SeriesValues) and isinstance(b, SeriesValues):
        from .hvalue import series_add
        s = series_add(a.series, b.series)
        return SeriesValues(s) if s is not None else None
    # series values plus a nonzero constant leave the catalog
    return None


def add(f: PiecewiseFunction, g: PiecewiseFunction) -> PiecewiseFunction:
    """Pointwise sum on the common refinement of the term atoms.

    For nonnegative f and g the integral of the sum is the pair sum of
    the integrals; for signed summands no identity holds (a positive
    length and a negative length of equal size annihilate to dimension
    zero) and the sum is simply the pointwise function.
    """
    f_union = normalize([a for a, _ in f.terms])
    g_union = normalize([a for a, _ in g.terms])
    out = []
    for a, ea in f.terms:
        for piece in diff(RepSet.of(a), g_union).atoms:
            out.extend(_combined_terms(piece, [(a, ea)]))
    for b, eb in g.terms:
        for piece in diff(RepSet.of(b), f_union).atoms:
            out.extend(_combined_terms(piece, [(b, eb)]))
    for a, ea in f.terms:
        for b, eb in g.terms:
            for piece in intersect(RepSet.of(a), RepSet.of(b)).atoms:
                out.extend(_combined_terms(piece, [(a, ea), (b, eb)]))
    return PiecewiseFunction(out, _domain_union(f.domain, g.domain),
                             trusted=True)


# ---------------------------------------------------------------------------
# positive and negative parts

def pos_part(f: PiecewiseFunction) -> PiecewiseFunction:
    """max(f, 0). Together with neg_part this splits f additively:
    f = pos_part(f) + neg_part(f) pointwise."""
    return _signed_part(f, 1)


def neg_part(f: PiecewiseFunction) -> PiecewiseFunction:
    """min(f, 0), the signed lower part (not its absolute value)."""
    return _signed_part(f, -1)


def _signed_part(f: PiecewiseFunction, side: int) -> PiecewiseFunction:
    out = []
    for atom, expr in f.terms:
        out.extend(_signed_term(atom, expr, side))
    return PiecewiseFunction(out, f.domain, trusted=True)


def _signed_term(atom: Atom, expr: Expression, side: int) -> list:
    if isinstance(expr, Const):
        return [(atom, expr)] if (expr.value > 0) == (side > 0) else []
    if isinstance(expr, Poly):
        return _signed_poly(atom, expr, side)
    return _signed_series(atom, expr.series, side)


def _signed_poly(atom: Interval, p: Poly, side: int) -> list:
    lo, hi = atom.hull()
    out = []
    for a, b, sgn in _sign_regions(p, lo, hi):
        if sgn != side:
            continue
        dels = {d for d in atom.deletions
                if (a is None or d >= a) and (b is None or d <= b)}
        # region boundaries at sign changes carry the value zero
        if a is not None and (lo is None or a != lo):
            dels.add(a)
        if b is not None and (hi is None or b != hi):
            dels.add(b)
        out.append((Interval(a, b, dels), p))
    return out


def _signed_series(atom: CountableSeq, s: CoefficientSeries,
                   side: int) -> list:
    sg = s.sign()
    if sg is not None:
        return [(atom, SeriesValues(s))] if sg == side else []
    if isinstance(s, FiniteList):
        out = []
        for i, v in enumerate(s.values):
            x = atom.point(i + 1)
            if v != 0 and (v > 0) == (side > 0) and atom.member(x):
                out.append((FinitePoints([x]), Const(v)))
        return out
    # alternating geometric values: the even and odd index subsequences
    # have constant sign, and each is a sequence atom again
    assert isinstance(s, Geometric) and s.r < 0
    out = []
    for sub_atom, sub_series in _split_parity(atom, s):
        if sub_series.sign() == side:
            out.append((sub_atom, SeriesValues(sub_series)))
    return out


def _split_parity(atom: CountableSeq, s: Geometric):
    """Split a sequence atom and its value series by index parity."""
    from .setalg import GEOMETRIC, HARMONIC
    if atom.family == HARMONIC:
        odd = None  # points a + b/(2k-1) are not a harmonic sequence
    else:
        odd = CountableSeq(GEOMETRIC, atom.a, atom.b / atom.q, atom.q ** 2)
    if atom.family == HARMONIC:
        even = CountableSeq(HARMONIC, atom.a, atom.b / 2)
    else:
        even = CountableSeq(GEOMETRIC, atom.a, atom.b, atom.q ** 2)
    if odd is None:
        raise NotRepresentable(
            "odd-index points of a harmonic sequence are not a "
            "catalog sequence")
    odd_dels = [d for d in atom.deletions if atom.index_of(d) % 2 == 1]
    even_dels = [d for d in atom.deletions if atom.index_of(d) % 2 == 0]
    odd = odd.with_deletions(odd_dels)
    even = even.with_deletions(even_dels)
    # original index n = 2k-1 reads series rank 2k-2, n = 2k reads 2k-1
    return ((odd, Geometric(s.a, s.r ** 2)),
            (even, Geometric(s.a * s.r, s.r ** 2)))


# ---------------------------------------------------------------------------
# additivity

def additivity_over_region(f: PiecewiseFunction, region_a: RepSet,
                           region_b: RepSet) -> tuple[HPair, HPair, HPair]:
    """(integral over the union, over A, over B) for disjoint A and B.
    The first is the pair sum of the other two whenever all exist."""
    if not intersect(region_a, region_b).is_empty():
        raise DisjointnessViolated("the regions overlap")
    return (h_integral(f, union(region_a, region_b)),
            h_integral(f, region_a),
            h_integral(f, region_b))


@dataclass(frozen=True)
class SingletonTail:
    """The tail of a countable partition: one singleton per sequence point
    with index at or above start."""

    atom: CountableSeq
    start: int = 1

    def __init__(self, atom: CountableSeq, start: int = 1):
        if start < 1:
            raise ValidationError("indices start at 1")
        if atom.deletions:
            raise ValidationError(
                "a partition tail enumerates a full sequence; delete "
                "points from the head sets instead")
        object.__setattr__(self, "atom", atom)
        object.__setattr__(self, "start", start)

    def as_set(self) -> RepSet:
        skipped = [self.atom.point(n) for n in range(1, self.start)]
        return RepSet.of(self.atom.with_deletions(skipped))


def _tail_value_series(f: PiecewiseFunction,
                       tail: SingletonTail) -> CoefficientSeries:
    """f's values at the tail's points, as a catalog series indexed from
    the tail's start."""
    base = (tail.atom.family, tail.atom.a, tail.atom.b, tail.atom.q)
    for atom, expr in f.terms:
        if not isinstance(atom, CountableSeq):
            continue
        if (atom.family, atom.a, atom.b, atom.q) != base:
            continue
        for d in atom.deletions:
            if atom.index_of(d) >= tail.start:
                raise NotRepresentable(
                    "a deletion inside the tail breaks the value series")
        if not isinstance(expr, SeriesValues):
            raise NotRepresentable(
                "constant tail values are outside the series catalog")
        return _shift_series(expr.series, tail.start - 1)
    tail_set = tail.as_set()
    for atom, _ in f.terms:
        if not intersect(RepSet.of(atom), tail_set).is_empty():
            raise NotRepresentable(
                "tail values straddle several terms of the function")
    return FiniteList([])


def _shift_series(s: CoefficientSeries, k: int) -> CoefficientSeries:
    if k == 0:
        return s
    if isinstance(s, FiniteList):
        return FiniteList(s.values[k:])
    if isinstance(s, Geometric):
        return Geometric(s.a * s.r ** k, s.r)
    raise NotRepresentable("a shifted p-series leaves the catalog")


def countable_additivity(f: PiecewiseFunction, head: Sequence[RepSet],
                         tail: Optional[SingletonTail] = None
                         ) -> tuple[HPair, HPair]:
    """Integral over the union of the parts against the sum of the pair
    series of per-part integrals. Returns both; they must agree.

    The partition is finitely presented: explicit head sets plus an
    optional singleton tail running down a sequence atom.
    """
    parts = [p for p in head]
    if tail is not None:
        parts.append(tail.as_set())
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if not intersect(parts[i], parts[j]).is_empty():
                raise DisjointnessViolated(
                    f"partition parts {i} and {j} overlap")
    whole = EMPTY_SET
    for p in parts:
        whole = union(whole, p)
    lhs = h_integral(f, whole)

    head_pairs = [h_integral(f, p) for p in head]
    dims = [pr.d for pr in head_pairs]
    tail_series = None
    if tail is not None:
        tail_series = _tail_value_series(f, tail)
        if not (tail_series.abs_converges()
                or (tail_series.sign() or 0) >= 0):
            raise DoesNotConverge(
                "the tail of per-part integrals has no order-independent "
                "sum")
        dims.append(DIM_ZERO)
    if not dims:
        rhs = ZERO_PAIR
    else:
        top = dims[0]
        for d in dims[1:]:
            top = dim_max(top, d)
        masses = [pr.m for pr in head_pairs if pr.d.cmp(top) == 0]
        if tail is not None and top.cmp(DIM_ZERO) == 0:
            masses.append(tail_series.sum())
        rhs = HPair(top, ext_sum(masses))
    if not hpair_eq(lhs, rhs):
        raise ValidationError(
            f"partition sum {rhs.render()} disagrees with the whole "
            f"integral {lhs.render()}")
    return lhs, rhs


# ---------------------------------------------------------------------------
# order

def verify_nonneg(f: PiecewiseFunction, label: str = "f") -> None:
    """Certify f >= 0 everywhere or raise OrderNotVerified.

    The check is exact: constants by sign, polynomials by root isolation
    and sampling, series values by the sign of the series.
    """
    for atom, expr in f.terms:
        if isinstance(expr, Const):
            if expr.value < 0:
                raise OrderNotVerified(f"{label} is negative on {atom!r}")
            continue
        if isinstance(expr, Poly):
            lo, hi = atom.hull()
            try:
                regions = _sign_regions(expr, lo, hi)
            except NotRepresentable:
                # an odd-order irrational root is still a sign change
                raise OrderNotVerified(
                    f"{label} changes sign inside {atom!r}")
            for a, b, sgn in regions:
                if sgn < 0:
                    raise OrderNotVerified(
                        f"{label} is negative between {a} and {b}")
            continue
        s = expr.series
        sg = s.sign()
        if sg is None or sg < 0:
            raise OrderNotVerified(
                f"the value series of {label} on {atom!r} is not "
                "certifiably nonnegative")


def monotone_compare(f: PiecewiseFunction, g: PiecewiseFunction,
                     region: Region = ALL_REALS) -> bool:
    """For 0 <= f <= g (verified exactly), whether the integral of f is
    at most the integral of g. The theorem says always; the return value
    lets the caller see it happen."""
    verify_nonneg(f, "f")
    try:
        gap = add(g, scalar_mul(-1, f))
    except NotRepresentable as exc:
        raise OrderNotVerified(
            f"cannot refine g against f to compare them: {exc}") from exc
    verify_nonneg(gap, "g - f")
    return hpair_leq(h_integral(f, region), h_integral(g, region))


# ---------------------------------------------------------------------------
# generated sequences of functions

class FunctionSeq:
    """A generated sequence of piecewise functions, indexed from 1.

    Generators know their own sign, monotonicity, integral sequence and
    pointwise limit exactly, which is what makes the convergence
    theorems checkable at the desk.
    """

    def term(self, n: int) -> PiecewiseFunction:
        raise NotImplementedError

    def integral_seq(self) -> HSeq:
        raise NotImplementedError

    def limit_function(self) -> PiecewiseFunction:
        raise NotImplementedError

    def nonneg(self) -> bool:
        raise NotImplementedError

    def nondecreasing(self) -> bool:
        raise NotImplementedError

    def check_step(self, n: int) -> None:
        """Certify term(n) <= term(n+1) pointwise, or raise
        OrderNotVerified. The default subtracts and checks the sign;
        generators whose monotonicity is structural override it."""
        step = add(self.term(n + 1), scalar_mul(-1, self.term(n)))
        verify_nonneg(step, f"f_{n + 1} - f_{n}")


@dataclass(frozen=True)
class SupportGrowth(FunctionSeq):
    """f_n = value on [lo, hi - gap/n]: the support climbs to [lo, hi)."""

    lo: Fraction
    hi: Fraction
    value: Fraction
    gap: Fraction

    def __init__(self, lo, hi, value, gap):
        lo, hi = Fraction(lo), Fraction(hi)
        value, gap = Fraction(value), Fraction(gap)
        if not 0 < gap < hi - lo:
            raise ValidationError("need 0 < gap < hi - lo")
        if value == 0:
            raise ValidationError("the plateau value must be nonzero")
        for name, v in (("lo", lo), ("hi", hi), ("value", value),
                        ("gap", gap)):
            object.__setattr__(self, name, v)

    def term(self, n):
        return PiecewiseFunction(
            [(Interval(self.lo, self.hi - self.gap / n), Const(self.value))],
            trusted=True)

    def integral_seq(self):
        base = ExtReal.of(self.value * (self.hi - self.lo))
        return HSeq((), MeasureTail(DIM_ONE,
                                    PSeries(-self.value * self.gap, 1), base))

    def limit_function(self):
        return PiecewiseFunction(
            [(Interval(self.lo, self.hi, (self.hi,)), Const(self.value))],
            trusted=True)

    def nonneg(self):
        return self.value > 0

    def nondecreasing(self):
        return self.value > 0


@dataclass(frozen=True)
class ShrinkingPlateau(FunctionSeq):
    """f_n = value on [base, base + width/n]: the mass dies, one point
    survives. With a negative value this is the classic signed chain
    whose limit of integrals (d, 0) misses the integral of the limit."""

    base: Fraction
    width: Fraction
    value: Fraction

    def __init__(self, base, width, value):
        base, width, value = Fraction(base), Fraction(width), Fraction(value)
        if width <= 0:
            raise ValidationError("the plateau width must be positive")
        if value == 0:
            raise ValidationError("the plateau value must be nonzero")
        for name, v in (("base", base), ("width", width), ("value", value)):
            object.__setattr__(self, name, v)

    def term(self, n):
        return PiecewiseFunction(
            [(Interval(self.base, self.base + self.width / n),
              Const(self.value))], trusted=True)

    def integral_seq(self):
        return HSeq((), MeasureTail(DIM_ONE,
                                    PSeries(self.value * self.width, 1)))

    def limit_function(self):
        return PiecewiseFunction(
            [(FinitePoints([self.base]), Const(self.value))], trusted=True)

    def nonneg(self):
        return self.value > 0

    def nondecreasing(self):
        return self.value < 0


@dataclass(frozen=True)
class PrefixGrowth(FunctionSeq):
    """f_n = value on the first n points of a sequence atom."""

    atom: CountableSeq
    value: Fraction

    def __init__(self, atom, value):
        value = Fraction(value)
        if atom.deletions:
            raise ValidationError("prefix growth wants a full sequence")
        if value == 0:
            raise ValidationError("the value must be nonzero")
        object.__setattr__(self, "atom", atom)
        object.__setattr__(self, "value", value)

    def term(self, n):
        pts = [self.atom.point(i) for i in range(1, n + 1)]
        return PiecewiseFunction([(FinitePoints(pts), Const(self.value))],
                                 trusted=True)

    def integral_seq(self):
        return HSeq((), GrowthTail(DIM_ZERO, self.value))

    def limit_function(self):
        return PiecewiseFunction([(self.atom, Const(self.value))],
                                 trusted=True)

    def nonneg(self):
        return self.value > 0

    def nondecreasing(self):
        return self.value > 0


@dataclass(frozen=True)
class SlidingBump(FunctionSeq):
    """f_n = value on [n, n+1]: constant mass escaping to infinity; the
    pointwise limit is zero."""

    value: Fraction

    def __init__(self, value):
        value = Fraction(value)
        if value == 0:
            raise ValidationError("the value must be nonzero")
        object.__setattr__(self, "value", value)

    def term(self, n):
        return PiecewiseFunction(
            [(Interval(Fraction(n), Fraction(n + 1)), Const(self.value))],
            trusted=True)

    def integral_seq(self):
        return HSeq((), ConstantTail(HPair(DIM_ONE, ExtReal.of(self.value))))

    def limit_function(self):
        return zero_function()

    def nonneg(self):
        return self.value > 0

    def nondecreasing(self):
        return False


@dataclass(frozen=True)
class Alternating(FunctionSeq):
    """Terms alternating between two functions; no pointwise limit unless
    they coincide."""

    first: PiecewiseFunction
    second: PiecewiseFunction

    def term(self, n):
        return self.first if n % 2 == 1 else self.second

    def integral_seq(self):
        return HSeq((), InterleaveTail((
            ConstantTail(h_integral(self.first)),
            ConstantTail(h_integral(self.second)))))

    def limit_function(self):
        if self.first == self.second:
            return self.first
        raise DoesNotConverge("the terms alternate without settling")

    def nonneg(self):
        try:
            verify_nonneg(self.first)
            verify_nonneg(self.second)
            return True
        except OrderNotVerified:
            return False

    def nondecreasing(self):
        return self.first == self.second


@dataclass(frozen=True)
class StageClimb(FunctionSeq):
    """f_n = value on the n-th of finitely many nested stages, constant
    after the last. Stages with strictly growing dimension exercise the
    dimension-climb branch of monotone convergence."""

    stages: tuple[RepSet, ...]
    value: Fraction

    def __init__(self, stages, value):
        stages = tuple(stages)
        value = Fraction(value)
        if not stages:
            raise ValidationError("need at least one stage")
        if value <= 0:
            raise ValidationError("the value must be positive")
        for cur, nxt in zip(stages, stages[1:]):
            if not diff(cur, nxt).is_empty():
                raise ValidationError("stages must be nested increasingly")
        object.__setattr__(self, "stages", stages)
        object.__setattr__(self, "value", value)

    def term(self, n):
        stage = self.stages[min(n, len(self.stages)) - 1]
        return indicator(stage, self.value)

    def integral_seq(self):
        pairs = [h_integral(indicator(s, self.value)) for s in self.stages]
        return HSeq(tuple(pairs[:-1]), ConstantTail(pairs[-1]))

    def limit_function(self):
        return indicator(self.stages[-1], self.value)

    def nonneg(self):
        return True

    def nondecreasing(self):
        return True

    def check_step(self, n):
        # containment of stages is the pointwise order for indicators;
        # the subtraction form may leave the catalog (interval minus
        # a Cantor copy), so re-verify the inclusion instead
        cur = self.stages[min(n, len(self.stages)) - 1]
        nxt = self.stages[min(n + 1, len(self.stages)) - 1]
        if not diff(cur, nxt).is_empty():
            raise OrderNotVerified("stages are not nested")


@dataclass(frozen=True)
class ConstantSeq(FunctionSeq):
    fn: PiecewiseFunction

    def term(self, n):
        return self.fn

    def integral_seq(self):
        return HSeq((), ConstantTail(h_integral(self.fn)))

    def limit_function(self):
        return self.fn

    def nonneg(self):
        try:
            verify_nonneg(self.fn)
            return True
        except OrderNotVerified:
            return False

    def nondecreasing(self):
        return True


# ---------------------------------------------------------------------------
# convergence theorems

@dataclass(frozen=True)
class MonotoneLimitReport:
    """What monotone convergence produced on one chain."""

    integrals: HSeq
    limit_of_integrals: HPair
    integral_of_limit: HPair
    agrees: bool
    signed: bool


def beppo_levi_limit(seq: FunctionSeq,
                     verify_terms: int = 4) -> MonotoneLimitReport:
    """Monotone-convergence data for a generated nondecreasing chain.

    For nonnegative chains the limit of the integrals equals the
    integral of the limit in the lexicographic order topology. A signed
    chain is admitted but reported with signed=True and no equality
    claim: the nonnegativity hypothesis is sharp.
    """
    if not seq.nondecreasing():
        raise MonotonicityViolated("the chain must be pointwise nondecreasing")
    for n in range(1, verify_terms):
        try:
            seq.check_step(n)
        except OrderNotVerified as exc:
            raise MonotonicityViolated(str(exc)) from exc
    ints = seq.integral_seq()
    for n in range(1, verify_terms + 1):
        if not hpair_eq(ints.term(n), h_integral(seq.term(n))):
            raise ValidationError(
                "the declared integral sequence clashes with direct "
                f"integration at n = {n}")
    lim = hseq_limit(ints)
    il = h_integral(seq.limit_function())
    return MonotoneLimitReport(ints, lim, il, hpair_eq(lim, il),
                               not seq.nonneg())


def fatou_check(seq: FunctionSeq, verify_terms: int = 4) -> bool:
    """For a nonnegative generated sequence with a pointwise limit:
    integral of the limit <= liminf of the integrals."""
    if not seq.nonneg():
        raise ValidationError("fatou wants a nonnegative sequence")
    for n in range(1, verify_terms + 1):
        verify_nonneg(seq.term(n), f"f_{n}")
    limit = seq.limit_function()
    return hpair_leq(h_integral(limit), hseq_liminf(seq.integral_seq()))
