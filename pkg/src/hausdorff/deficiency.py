"""Deficiency measurements.

Each measurement asks how far an object is from having a property and
answers with a dimension-measure pair: the dimension locates the scale
of the obstruction, the measure weighs it.  Three flavours of distance
from continuity (integrated oscillation, repair distance, cluster-set
size), distance from evenness, and, for finite planar scenes, distance
from convexity.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .config import get_config
from .errors import NotRepresentable, NotSupported, ValidationError
from .hvalue import (DIM_ONE, DIM_TWO, Dimension, ExtReal, HPair,
                     Rational, ext_sum, hpair_add)
from .hintegral import (ALL_REALS, AllReals, Const, Expression,
                        PiecewiseFunction, Poly, Region, SeriesValues,
                        add, h_integral, scalar_mul)
from .metrics import abs_integral
from .setalg import (Atom, CantorAffine, CountableSeq, FinitePoints,
                     Interval, RepSet)
from ._numeric import exact_sqrt, sqrt_interval

__all__ = [
    "OscillationProfile", "oscillation",
    "defi_continuity_osc", "defi_continuity_dist", "defi_continuity_cluster",
    "cluster_set",
    "reflect_function", "defi_even",
    "Points2D", "Segment", "ConvexPolygon", "PlanarSet",
    "planar_measure", "convex_hull", "defi_convex",
]

ZERO = Fraction(0)
PAIR_ZERO = HPair.of(0, 0)


# ---------------------------------------------------------------------------
# oscillation

def _reject_cantor(f: PiecewiseFunction, op: str) -> None:
    for atom, _ in f.terms:
        if isinstance(atom, CantorAffine):
            raise NotRepresentable(
                f"{op}: a Cantor piece is discontinuous at uncountably "
                "many points, outside the supported class")


def _discontinuity_candidates(f: PiecewiseFunction) -> list:
    """Finitely many points where a piecewise function can fail to be
    continuous: piece endpoints, deleted points, isolated value points,
    and sequence accumulation points.  Points interior to a sequence are
    handled separately because there are infinitely many of them."""
    cands = set()
    for atom, _ in f.terms:
        if isinstance(atom, Interval):
            if atom.lo is not None:
                cands.add(atom.lo)
            if atom.hi is not None:
                cands.add(atom.hi)
            cands.update(atom.deletions)
        elif isinstance(atom, FinitePoints):
            cands.update(atom.points)
        elif isinstance(atom, CountableSeq):
            cands.add(atom.a)
    return sorted(cands)


def _one_side_values(f: PiecewiseFunction, x: Fraction, right: bool) -> set:
    """All limit values of f along sequences approaching x from one side.

    An interval piece covering that side contributes its polynomial
    value; a sequence accumulating at x from that side contributes the
    limit of its value series.  Ambient zero appears whenever the side
    is not entirely covered by an interval piece.
    """
    vals = set()
    covered = False
    for atom, expr in f.terms:
        if isinstance(atom, Interval):
            lo, hi = atom.lo, atom.hi
            if right:
                touches = (lo is None or lo <= x) and (hi is None or hi > x)
            else:
                touches = (lo is None or lo < x) and (hi is None or hi >= x)
            if touches:
                covered = True
                vals.add(_limit_value(expr, x))
        elif isinstance(atom, CountableSeq):
            if atom.a == x and (atom.b > 0) == right:
                vals.update(_tail_limits(expr))
    if not covered:
        vals.add(ZERO)
    return vals


def _limit_value(expr: Expression, x: Fraction) -> Fraction:
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Poly):
        return expr.value_at(x)
    raise ValidationError("series values never sit on an interval piece")


def _tail_limits(expr: Expression) -> set:
    # every catalog series decays, so only constant values survive
    if isinstance(expr, Const):
        return {expr.value}
    return {ZERO}


def _omega_at(f: PiecewiseFunction, x: Fraction) -> Fraction:
    cluster = {f.value_at(x)}
    cluster |= _one_side_values(f, x, right=True)
    cluster |= _one_side_values(f, x, right=False)
    return max(cluster) - min(cluster)


def _abs_expression(expr: Expression) -> Expression:
    if isinstance(expr, Const):
        return Const(abs(expr.value))
    return SeriesValues(expr.series.abs_series())


@dataclass(frozen=True)
class OscillationProfile:
    """The oscillation of a function, recorded where it is nonzero.

    point_values lists (x, omega(x)) at the finitely many exceptional
    points; seq_values carries |value| expressions on sequence atoms,
    where omega at an interior sequence point is just the absolute value
    the function takes there.
    """

    point_values: tuple
    seq_values: tuple

    def is_empty(self) -> bool:
        return not self.point_values and not self.seq_values

    def omega_at(self, x: Rational) -> Fraction:
        x = Fraction(x)
        for p, w in self.point_values:
            if p == x:
                return w
        for atom, expr in self.seq_values:
            if atom.member(x):
                n = atom.index_of(x)
                if isinstance(expr, Const):
                    return expr.value
                return expr.series.term(n - 1)
        return ZERO

    def as_function(self) -> PiecewiseFunction:
        by_value = {}
        for x, w in self.point_values:
            by_value.setdefault(w, []).append(x)
        terms = [(FinitePoints(xs), Const(w)) for w, xs in by_value.items()]
        terms.extend(self.seq_values)
        return PiecewiseFunction(terms, trusted=True)


def oscillation(f: PiecewiseFunction) -> OscillationProfile:
    """Pointwise oscillation omega(x) = lim sup - lim inf over shrinking
    neighbourhoods, collected into a representable profile.

    Supported class: interval, point, and sequence pieces.  Cantor
    pieces oscillate on an uncountable set and are rejected.
    """
    _reject_cantor(f, "oscillation")
    cands = _discontinuity_candidates(f)
    points = []
    for x in cands:
        w = _omega_at(f, x)
        if w != 0:
            points.append((x, w))
    seq_entries = []
    for atom, expr in f.terms:
        if not isinstance(atom, CountableSeq):
            continue
        # candidate points already carry their own omega entries
        owned = [x for x, _ in points if atom.member(x)]
        entry_atom = atom.with_deletions(owned) if owned else atom
        if entry_atom.is_empty():
            continue
        seq_entries.append((entry_atom, _abs_expression(expr)))
    return OscillationProfile(tuple(points), tuple(seq_entries))


def defi_continuity_osc(f: PiecewiseFunction) -> HPair:
    """Integrated oscillation: (0, 0) exactly when f is continuous."""
    return h_integral(oscillation(f).as_function())


# ---------------------------------------------------------------------------
# repair distance

def defi_continuity_dist(f: PiecewiseFunction) -> HPair:
    """Distance to the nearest continuous function, graded by kind.

    (0, 0) when f is continuous; (0, total repair) when every
    discontinuity is removable, the measure summing the pointwise value
    corrections; (1, 0) as soon as one jump is essential.  Only interval
    and point pieces keep the discontinuity set finite, so sequence
    pieces fall outside this trichotomy.
    """
    for atom, _ in f.terms:
        if isinstance(atom, CountableSeq):
            raise NotSupported(
                "repair distance needs finitely many discontinuities; "
                "a sequence piece has infinitely many")
    _reject_cantor(f, "repair distance")
    total = ZERO
    for x in _discontinuity_candidates(f):
        left = _one_side_values(f, x, right=False)
        right = _one_side_values(f, x, right=True)
        l, r = left.pop(), right.pop()
        if l != r:
            return HPair.of(1, 0)
        total += abs(f.value_at(x) - l)
    return HPair.of(0, total)


# ---------------------------------------------------------------------------
# cluster sets

def cluster_set(f: PiecewiseFunction, x: Rational) -> RepSet:
    """All limit values of f(x_n) over sequences x_n -> x, x_n allowed to
    sit still.  Finite for the supported class, hence a point set."""
    _reject_cantor(f, "cluster sets")
    x = Fraction(x)
    vals = {f.value_at(x)}
    vals |= _one_side_values(f, x, right=True)
    vals |= _one_side_values(f, x, right=False)
    return RepSet.of(FinitePoints(vals))


def defi_continuity_cluster(f: PiecewiseFunction) -> HPair:
    """(0, sup_x |cluster set at x|): 1 for continuous f, larger values
    count the distinct limits a worst point admits."""
    _reject_cantor(f, "cluster sets")
    best = 1
    for x in _discontinuity_candidates(f):
        vals = {f.value_at(x)}
        vals |= _one_side_values(f, x, right=True)
        vals |= _one_side_values(f, x, right=False)
        best = max(best, len(vals))
    for atom, expr in f.terms:
        # an interior sequence point with a nonzero value clusters to
        # both that value and the ambient zero
        if isinstance(atom, CountableSeq) and not expr.is_zero():
            best = max(best, 2)
    return HPair.of(0, best)


# ---------------------------------------------------------------------------
# evenness

def _reflect_atom(atom: Atom) -> Atom:
    if isinstance(atom, FinitePoints):
        return FinitePoints(-p for p in atom.points)
    dels = tuple(-d for d in atom.deletions)
    if isinstance(atom, Interval):
        lo = None if atom.hi is None else -atom.hi
        hi = None if atom.lo is None else -atom.lo
        return Interval(lo, hi, dels)
    if isinstance(atom, CountableSeq):
        return CountableSeq(atom.family, -atom.a, -atom.b, atom.q, dels)
    if isinstance(atom, CantorAffine):
        # the constructor renormalises the negative scale
        return CantorAffine(-atom.t, -atom.s, dels)
    raise ValidationError(f"cannot reflect {atom!r}")


def _reflect_expression(expr: Expression) -> Expression:
    if isinstance(expr, Poly):
        return Poly(c if i % 2 == 0 else -c
                    for i, c in enumerate(expr.coeffs))
    # constants are unchanged; sequence values follow their indices,
    # and reflection maps the n-th point to the n-th point
    return expr


def _reflect_region(region: Region) -> Region:
    if isinstance(region, AllReals):
        return ALL_REALS
    return RepSet.from_atoms(_reflect_atom(a) for a in region.atoms)


def reflect_function(f: PiecewiseFunction) -> PiecewiseFunction:
    """The function x |-> f(-x), staying inside the catalog."""
    terms = [(_reflect_atom(atom), _reflect_expression(expr))
             for atom, expr in f.terms]
    return PiecewiseFunction(terms, domain=_reflect_region(f.domain),
                             trusted=True)


def defi_even(f: PiecewiseFunction) -> HPair:
    """Integral of |f(x) - f(-x)|: the zero pair exactly for even f."""
    diff = add(f, scalar_mul(-1, reflect_function(f)))
    return abs_integral(diff)


# ---------------------------------------------------------------------------
# planar scenes

Point2 = tuple  # (Fraction, Fraction)


def _pt(p) -> Point2:
    x, y = p
    return (Fraction(x), Fraction(y))


def _cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return ((a[0] - o[0]) * (b[1] - o[1])
            - (a[1] - o[1]) * (b[0] - o[0]))


def _in_box(p: Point2, a: Point2, b: Point2) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _on_segment(p: Point2, a: Point2, b: Point2) -> bool:
    return _cross(a, b, p) == 0 and _in_box(p, a, b)


def _segments_meet(p1, p2, p3, p4) -> bool:
    """Closed-segment intersection, endpoints included."""
    d1 = _cross(p3, p4, p1)
    d2 = _cross(p3, p4, p2)
    d3 = _cross(p1, p2, p3)
    d4 = _cross(p1, p2, p4)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) \
            and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and _in_box(p1, p3, p4):
        return True
    if d2 == 0 and _in_box(p2, p3, p4):
        return True
    if d3 == 0 and _in_box(p3, p1, p2):
        return True
    if d4 == 0 and _in_box(p4, p1, p2):
        return True
    return False


class PlanarAtom:
    def points(self) -> tuple:
        raise NotImplementedError


@dataclass(frozen=True)
class Points2D(PlanarAtom):
    pts: tuple

    def __init__(self, pts: Iterable):
        seen = tuple(sorted({_pt(p) for p in pts}))
        if not seen:
            raise ValidationError("a planar point atom needs at least one point")
        object.__setattr__(self, "pts", seen)

    def points(self):
        return self.pts


@dataclass(frozen=True)
class Segment(PlanarAtom):
    a: Point2
    b: Point2

    def __init__(self, a, b):
        a, b = _pt(a), _pt(b)
        if a == b:
            raise ValidationError("degenerate segment")
        if b < a:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def points(self):
        return (self.a, self.b)

    def length_squared(self) -> Fraction:
        dx = self.b[0] - self.a[0]
        dy = self.b[1] - self.a[1]
        return dx * dx + dy * dy

    def length(self) -> ExtReal:
        return _sqrt_ext(self.length_squared())


@dataclass(frozen=True)
class ConvexPolygon(PlanarAtom):
    """Filled convex polygon, vertices in counterclockwise order.

    Strict convexity: no repeated or collinear consecutive vertices.
    """

    vertices: tuple

    def __init__(self, vertices: Iterable):
        verts = tuple(_pt(p) for p in vertices)
        n = len(verts)
        if n < 3:
            raise ValidationError("a polygon needs at least three vertices")
        # rotate so the listing starts at the smallest vertex; equality
        # is then independent of the caller's starting point
        k = verts.index(min(verts))
        verts = verts[k:] + verts[:k]
        for i in range(n):
            o, a, b = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            if _cross(o, a, b) <= 0:
                raise ValidationError(
                    "vertices must make strict counterclockwise turns")
        object.__setattr__(self, "vertices", verts)

    def points(self):
        return self.vertices

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n])
                for i in range(n)]

    def contains(self, p: Point2) -> bool:
        return all(_cross(a, b, p) >= 0 for a, b in self.edges())

    def area(self) -> Fraction:
        total = ZERO
        n = len(self.vertices)
        for i in range(n):
            x1, y1 = self.vertices[i]
            x2, y2 = self.vertices[(i + 1) % n]
            total += x1 * y2 - x2 * y1
        return total / 2


def _sqrt_ext(q: Fraction) -> ExtReal:
    root = exact_sqrt(q)
    if root is not None:
        return ExtReal.of(root)
    return ExtReal.interval(sqrt_interval(q, get_config().precision_bits))


def _atoms_disjoint(a: PlanarAtom, b: PlanarAtom) -> bool:
    if isinstance(b, Points2D) and not isinstance(a, Points2D):
        a, b = b, a
    if isinstance(b, Segment) and isinstance(a, ConvexPolygon):
        a, b = b, a
    if isinstance(a, Points2D):
        if isinstance(b, Points2D):
            return not set(a.pts) & set(b.pts)
        if isinstance(b, Segment):
            return not any(_on_segment(p, b.a, b.b) for p in a.pts)
        return not any(b.contains(p) for p in a.pts)
    if isinstance(a, Segment):
        if isinstance(b, Segment):
            return not _segments_meet(a.a, a.b, b.a, b.b)
        # b is a polygon: the segment misses it iff no endpoint lies
        # inside and no polygon edge touches it
        if b.contains(a.a) or b.contains(a.b):
            return False
        return not any(_segments_meet(a.a, a.b, u, v) for u, v in b.edges())
    # two convex polygons
    if any(b.contains(p) for p in a.vertices):
        return False
    if any(a.contains(p) for p in b.vertices):
        return False
    return not any(_segments_meet(u, v, s, t)
                   for u, v in a.edges() for s, t in b.edges())


@dataclass(frozen=True)
class PlanarSet:
    """A finite disjoint union of planar atoms."""

    atoms: tuple

    def __init__(self, atoms: Iterable[PlanarAtom]):
        atoms = tuple(atoms)
        for atom in atoms:
            if not isinstance(atom, PlanarAtom):
                raise ValidationError(f"not a planar atom: {atom!r}")
        for i in range(len(atoms)):
            for j in range(i + 1, len(atoms)):
                if not _atoms_disjoint(atoms[i], atoms[j]):
                    raise ValidationError(
                        f"planar atoms overlap: {atoms[i]!r} and {atoms[j]!r}")
        object.__setattr__(self, "atoms", atoms)


def planar_measure(H: PlanarSet) -> HPair:
    """Dimension-measure pair of a planar scene: total area if any
    polygon is present, else total length, else point count."""
    polys = [a for a in H.atoms if isinstance(a, ConvexPolygon)]
    segs = [a for a in H.atoms if isinstance(a, Segment)]
    pts = [a for a in H.atoms if isinstance(a, Points2D)]
    if polys:
        area = sum((p.area() for p in polys), ZERO)
        return HPair(DIM_TWO, ExtReal.of(area))
    if segs:
        return HPair(DIM_ONE, ext_sum(s.length() for s in segs))
    count = sum(len(p.pts) for p in pts)
    return HPair.of(0, count)


def convex_hull(H: PlanarSet) -> PlanarAtom:
    """Convex hull of a scene as a planar atom: a polygon in general
    position, degenerating to a segment or a single point."""
    pts = sorted({p for atom in H.atoms for p in atom.points()})
    if not pts:
        raise ValidationError("cannot take the hull of an empty scene")
    if len(pts) == 1:
        return Points2D(pts)
    # monotone chain with strict turns, so collinear points drop out
    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        return Segment(hull[0], hull[1])
    return ConvexPolygon(hull)


def defi_convex(H: PlanarSet) -> HPair:
    """Measure of hull(H) minus H; the zero pair exactly when H is a
    single convex atom.

    The hull's shape fixes the result's grade: a planar hull leaves an
    area, a collinear hull leaves a length, a single point leaves
    nothing.  A point-count answer would need the residual to be a
    finite nonempty point set, which a convex hull of disjoint atoms
    never produces.
    """
    hull = convex_hull(H)
    if isinstance(hull, Points2D):
        return PAIR_ZERO
    if isinstance(hull, Segment):
        dx = hull.b[0] - hull.a[0]
        dy = hull.b[1] - hull.a[1]
        denom = dx * dx + dy * dy
        covered = ZERO
        for atom in H.atoms:
            if isinstance(atom, Segment):
                sx = atom.b[0] - atom.a[0]
                sy = atom.b[1] - atom.a[1]
                # collinear with the hull, so one ratio determines it
                covered += abs(sx * dx + sy * dy) / denom
        gap = 1 - covered
        if gap == 0:
            return PAIR_ZERO
        return HPair(DIM_ONE, _sqrt_ext(gap * gap * denom))
    residual = hull.area()
    for atom in H.atoms:
        if isinstance(atom, ConvexPolygon):
            residual -= atom.area()
    if residual == 0:
        return PAIR_ZERO
    return HPair(DIM_TWO, ExtReal.of(residual))
