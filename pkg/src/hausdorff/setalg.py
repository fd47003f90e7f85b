"""Representable subsets of the real line and their Hausdorff measures.

A set is a finite disjoint union of atoms: finite point sets, convergent
rational sequences from a two-family catalog, closed intervals, and affine
copies of the middle-thirds Cantor set. Every atom may carry finitely many
deleted points. Unions, differences and symmetric differences stay inside
the fragment or fail loudly with NotRepresentable; nothing is silently
approximated.

Dimension-measure bookkeeping per atom: a finite point set has pair
(0, cardinality), a catalog sequence (0, +inf), an interval (1, length),
and the copy t + s*C the pair (log(2)/log(3), |s|**(log(2)/log(3))).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from ._numeric import Rational, pow_interval
from .config import get_config
from .errors import (NotRepresentable, NotSupported, TooLarge,
                     ValidationError)
from .hvalue import (DIM_CANTOR, DIM_ONE, DIM_ZERO, POS_INF, ZERO_PAIR,
                     Dimension, ExtReal, HPair, dim_max, ext_sum, hpair_add)

_ITER_GUARD = 100_000

Endpoint = Optional[Fraction]  # None encodes a missing (infinite) endpoint


def _frac(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# atoms


class Atom:
    """Base class; concrete atoms are frozen dataclasses."""

    deletions: frozenset

    def in_base(self, x: Fraction) -> bool:
        """Membership in the atom ignoring deletions."""
        raise NotImplementedError

    def member(self, x: Rational) -> bool:
        x = _frac(x)
        return x not in self.deletions and self.in_base(x)

    def hull(self) -> tuple[Endpoint, Endpoint]:
        """A closed interval containing the atom."""
        raise NotImplementedError

    def dim(self) -> Dimension:
        raise NotImplementedError

    def mu(self) -> ExtReal:
        """Hausdorff measure of the atom in its own dimension."""
        raise NotImplementedError

    def with_deletions(self, extra: Iterable[Fraction]) -> "Atom":
        raise NotImplementedError

    def is_empty(self) -> bool:
        return False


@dataclass(frozen=True)
class FinitePoints(Atom):
    points: tuple[Fraction, ...]
    deletions: frozenset = frozenset()  # always empty, kept for the interface

    def __init__(self, points: Iterable[Rational]):
        pts = tuple(sorted(set(_frac(p) for p in points)))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "deletions", frozenset())

    def in_base(self, x):
        return x in self.points

    def hull(self):
        if not self.points:
            return (Fraction(0), Fraction(0))
        return (self.points[0], self.points[-1])

    def dim(self):
        return DIM_ZERO

    def mu(self):
        return ExtReal.of(len(self.points))

    def with_deletions(self, extra):
        gone = set(_frac(d) for d in extra)
        return FinitePoints(p for p in self.points if p not in gone)

    def is_empty(self):
        return not self.points


HARMONIC = "harmonic"
GEOMETRIC = "geometric"


@dataclass(frozen=True)
class CountableSeq(Atom):
    """Catalog sequence: harmonic a + b/n or geometric a + b*q**n, n >= 1.

    Both accumulate at a, which is not itself a member. b is nonzero and
    the geometric ratio satisfies 0 < q < 1, so the terms are strictly
    monotone in distance from a and all lie on one side of it.
    """

    family: str
    a: Fraction
    b: Fraction
    q: Optional[Fraction] = None
    deletions: frozenset = frozenset()

    def __init__(self, family, a, b, q=None, deletions=()):
        a, b = _frac(a), _frac(b)
        if family not in (HARMONIC, GEOMETRIC):
            raise ValidationError(f"unknown sequence family {family!r}")
        if b == 0:
            raise ValidationError("sequence coefficient b must be nonzero")
        if family == GEOMETRIC:
            q = _frac(q)
            if not 0 < q < 1:
                raise ValidationError("geometric ratio must satisfy 0 < q < 1")
        elif q is not None:
            raise ValidationError("harmonic sequences take no ratio")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "q", q)
        dels = frozenset(_frac(d) for d in deletions)
        for d in dels:
            if not self._in_base_raw(d):
                raise ValidationError(f"deleted point {d} is not in the sequence")
        object.__setattr__(self, "deletions", dels)

    def point(self, n: int) -> Fraction:
        if n < 1:
            raise ValidationError("sequence indices start at 1")
        if self.family == HARMONIC:
            return self.a + self.b / n
        return self.a + self.b * self.q ** n

    def index_of(self, x: Rational) -> Optional[int]:
        """The n with point(n) == x, or None."""
        x = _frac(x)
        t = x - self.a
        if t == 0 or (t > 0) != (self.b > 0):
            return None
        if self.family == HARMONIC:
            n = self.b / t
            return int(n) if n.denominator == 1 and n >= 1 else None
        y = t / self.b  # must equal q**n for some n >= 1
        val, n = self.q, 1
        for _ in range(_ITER_GUARD):
            if val == y:
                return n
            if val < y:
                return None
            val *= self.q
            n += 1
        raise TooLarge("sequence index search exceeded the iteration guard")

    def _in_base_raw(self, x: Fraction) -> bool:
        return self.index_of(x) is not None

    def in_base(self, x):
        return self._in_base_raw(x)

    def hull(self):
        first = self.point(1)
        return (self.a, first) if self.b > 0 else (first, self.a)

    def dim(self):
        return DIM_ZERO

    def mu(self):
        return POS_INF

    def with_deletions(self, extra):
        extra = [d for d in map(_frac, extra) if self._in_base_raw(d)]
        return CountableSeq(self.family, self.a, self.b, self.q,
                            self.deletions | frozenset(extra))

    def indices_within(self, lo: Endpoint, hi: Endpoint,
                       lo_strict=False, hi_strict=False):
        """Indices n with point(n) in the given (closed by default) range.

        Returns ("finite", tuple of indices) or ("tail", first index) when
        every later index qualifies as well.
        """
        if self.b > 0:
            return self._indices_pos(lo, hi, lo_strict, hi_strict)
        mirror = CountableSeq(self.family, -self.a, -self.b, self.q)
        neg = lambda e: None if e is None else -e
        return mirror._indices_pos(neg(hi), neg(lo), hi_strict, lo_strict)

    def _indices_pos(self, lo, hi, lo_strict, hi_strict):
        # offsets t_n = point(n) - a are positive and strictly decreasing
        upper = None if hi is None else hi - self.a
        lower = None if lo is None else lo - self.a
        if upper is None:
            n_min = 1
        elif upper <= 0:
            return ("finite", ())
        else:
            n_min = self._first_index_below(upper, hi_strict)
        if lower is None or lower < 0 or lower == 0:
            n_max = None
        else:
            n_max = self._last_index_above(lower, lo_strict)
            if n_max is None or n_max < n_min:
                return ("finite", ())
        if n_max is None:
            return ("tail", n_min)
        return ("finite", tuple(range(n_min, n_max + 1)))

    def _first_index_below(self, bound: Fraction, strict: bool) -> int:
        if self.family == HARMONIC:
            n = max(1, _ceil(self.b / bound))
            if strict and self.b / n == bound:
                n += 1
            return n
        val, n = self.b * self.q, 1
        for _ in range(_ITER_GUARD):
            if val < bound or (val == bound and not strict):
                return n
            val *= self.q
            n += 1
        raise TooLarge("geometric index search exceeded the iteration guard")

    def _last_index_above(self, bound: Fraction, strict: bool):
        if self.family == HARMONIC:
            n = _floor(self.b / bound)
            if strict and n >= 1 and self.b / n == bound:
                n -= 1
            return n if n >= 1 else None
        val, n, best = self.b * self.q, 1, None
        for _ in range(_ITER_GUARD):
            if val < bound or (val == bound and strict):
                return best
            best = n
            val *= self.q
            n += 1
        raise TooLarge("geometric index search exceeded the iteration guard")


@dataclass(frozen=True)
class Interval(Atom):
    """Closed interval [lo, hi]; a missing endpoint means unbounded."""

    lo: Endpoint
    hi: Endpoint
    deletions: frozenset = frozenset()

    def __init__(self, lo, hi, deletions=()):
        lo = None if lo is None else _frac(lo)
        hi = None if hi is None else _frac(hi)
        if lo is not None and hi is not None and lo >= hi:
            raise ValidationError(f"interval endpoints out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        dels = frozenset(_frac(d) for d in deletions)
        for d in dels:
            if not self._contains_raw(d):
                raise ValidationError(f"deleted point {d} is outside the interval")
        object.__setattr__(self, "deletions", dels)

    def _contains_raw(self, x: Fraction) -> bool:
        return ((self.lo is None or x >= self.lo)
                and (self.hi is None or x <= self.hi))

    def in_base(self, x):
        return self._contains_raw(x)

    def hull(self):
        return (self.lo, self.hi)

    def dim(self):
        return DIM_ONE

    def mu(self):
        if self.lo is None or self.hi is None:
            return POS_INF
        return ExtReal.of(self.hi - self.lo)

    def with_deletions(self, extra):
        extra = [d for d in map(_frac, extra) if self._contains_raw(d)]
        return Interval(self.lo, self.hi, self.deletions | frozenset(extra))

    def is_bounded(self):
        return self.lo is not None and self.hi is not None


@dataclass(frozen=True)
class CantorAffine(Atom):
    """The set t + s*C for the middle-thirds Cantor set C.

    Normalised to s > 0: C is symmetric (1 - C = C), so a copy with a
    negative scale equals the copy anchored at its other endpoint.
    """

    t: Fraction
    s: Fraction
    deletions: frozenset = frozenset()

    def __init__(self, t, s, deletions=()):
        t, s = _frac(t), _frac(s)
        if s == 0:
            raise ValidationError("Cantor scale must be nonzero")
        if s < 0:
            t, s = t + s, -s
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)
        dels = frozenset(_frac(d) for d in deletions)
        for d in dels:
            if not self._in_base_raw(d):
                raise ValidationError(f"deleted point {d} is not in the set")
        object.__setattr__(self, "deletions", dels)

    def _in_base_raw(self, x: Fraction) -> bool:
        return in_cantor((x - self.t) / self.s)

    def in_base(self, x):
        return self._in_base_raw(x)

    def hull(self):
        return (self.t, self.t + self.s)

    def dim(self):
        return DIM_CANTOR

    def mu(self):
        return cantor_scale_measure(self.s)

    def with_deletions(self, extra):
        extra = [d for d in map(_frac, extra) if self._in_base_raw(d)]
        return CantorAffine(self.t, self.s, self.deletions | frozenset(extra))

    def children(self) -> tuple["CantorAffine", "CantorAffine"]:
        """The two sub-copies at one third of the scale."""
        third = self.s / 3
        lows, highs = [], []
        for d in self.deletions:
            (lows if d <= self.t + third else highs).append(d)
        return (CantorAffine(self.t, third, lows),
                CantorAffine(self.t + 2 * third, third, highs))


def in_cantor(y: Rational) -> bool:
    """Exact membership of a rational in the middle-thirds Cantor set.

    Uses the self-similarity C = C/3 u (2/3 + C/3): repeatedly map into
    the left or right third. A rational orbit either falls into the open
    middle gap (not a member) or revisits a state (member).
    """
    y = _frac(y)
    if y < 0 or y > 1:
        return False
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)
    seen = set()
    while y not in seen:
        seen.add(y)
        if y <= third:
            y = 3 * y
        elif y >= two_thirds:
            y = 3 * y - 2
        else:
            return False
        if len(seen) > _ITER_GUARD:
            raise TooLarge("ternary expansion exceeded the iteration guard")
    return True


def cantor_gap(y: Rational) -> tuple[Fraction, Fraction]:
    """For a rational y in [0,1] outside the Cantor set, an open interval
    around y containing no Cantor point."""
    y = _frac(y)
    if y < 0 or y > 1:
        raise ValidationError("point not inside the unit interval")
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)
    # the orbit value is always scale*y - shift
    cur, scale, shift = y, Fraction(1), Fraction(0)
    for _ in range(_ITER_GUARD):
        if third < cur < two_thirds:
            return ((third + shift) / scale, (two_thirds + shift) / scale)
        if cur <= third:
            cur, scale, shift = 3 * cur, 3 * scale, 3 * shift
        else:
            cur, scale, shift = 3 * cur - 2, 3 * scale, 3 * shift + 2
    raise ValidationError("point is in the Cantor set, no gap exists")


def cantor_scale_measure(s: Rational) -> ExtReal:
    """|s| ** (log 2 / log 3); exact whenever |s| is a power of 3."""
    s = abs(_frac(s))
    if s == 0:
        return ExtReal.of(0)
    # peel powers of 3: (3**k * u) ** d == 2**k * u**d for d = log2/log3
    k, num, den = 0, s.numerator, s.denominator
    while num % 3 == 0:
        num //= 3
        k += 1
    while den % 3 == 0:
        den //= 3
        k -= 1
    u = Fraction(num, den)
    factor = Fraction(2) ** k
    if u == 1:
        return ExtReal.of(factor)
    prec = get_config().precision_bits
    enc = pow_interval(u, DIM_CANTOR.enclosure(prec), prec)
    return ExtReal.interval(enc * factor)


# ---------------------------------------------------------------------------
# hull utilities


def _hull_overlap(h1, h2) -> bool:
    (a1, b1), (a2, b2) = h1, h2
    left_ok = a2 is None or b1 is None or a2 <= b1
    right_ok = a1 is None or b2 is None or a1 <= b2
    return left_ok and right_ok


def _hull_key(atom: "Atom"):
    lo, hi = atom.hull()
    lo_key = (0, lo) if lo is not None else (-1, Fraction(0))
    hi_key = (0, hi) if hi is not None else (1, Fraction(0))
    return (lo_key, hi_key, _rank(atom))


def _rank(atom: "Atom") -> int:
    return {FinitePoints: 0, CountableSeq: 1,
            Interval: 2, CantorAffine: 3}[type(atom)]


# ---------------------------------------------------------------------------
# representable sets


@dataclass(frozen=True)
class RepSet:
    """Canonical finite disjoint union of atoms."""

    atoms: tuple

    @staticmethod
    def of(*atoms: Atom) -> "RepSet":
        return normalize(atoms)

    @staticmethod
    def from_atoms(atoms: Iterable[Atom]) -> "RepSet":
        return normalize(atoms)

    def is_empty(self) -> bool:
        return not self.atoms

    def member(self, x: Rational) -> bool:
        x = _frac(x)
        return any(a.member(x) for a in self.atoms)

    def dim(self) -> Dimension:
        if not self.atoms:
            return DIM_ZERO
        d = self.atoms[0].dim()
        for a in self.atoms[1:]:
            d = dim_max(d, a.dim())
        return d

    def render(self) -> str:
        return " u ".join(_render_atom(a) for a in self.atoms) or "{}"


EMPTY_SET = RepSet(())


def _render_atom(a: Atom) -> str:
    dels = ""
    if a.deletions:
        dels = " \\ {" + ", ".join(str(d) for d in sorted(a.deletions)) + "}"
    if isinstance(a, FinitePoints):
        return "{" + ", ".join(str(p) for p in a.points) + "}"
    if isinstance(a, CountableSeq):
        if a.family == HARMONIC:
            return f"{{{a.a} + {a.b}/n}}{dels}"
        return f"{{{a.a} + {a.b}*({a.q})^n}}{dels}"
    if isinstance(a, Interval):
        lo = "-oo" if a.lo is None else str(a.lo)
        hi = "+oo" if a.hi is None else str(a.hi)
        return f"[{lo}, {hi}]{dels}"
    return f"({a.t} + {a.s}*C){dels}"


# ---------------------------------------------------------------------------
# normalization: pairwise overlap resolution until atoms are disjoint


def normalize(atoms: Iterable[Atom]) -> RepSet:
    """Resolve overlaps and adjacency until the atoms are pairwise disjoint
    and canonically ordered. Raises NotRepresentable when the union leaves
    the fragment."""
    work = [a for a in atoms if not a.is_empty()]
    budget = get_config().depth_cap
    for _ in range(_ITER_GUARD):
        changed = False
        n = len(work)
        for i in range(n):
            for j in range(i + 1, n):
                x, y = work[i], work[j]
                if _rank(x) > _rank(y):
                    x, y = y, x
                replacement = _resolve_pair(x, y, budget)
                if replacement is not None:
                    rest = [work[k] for k in range(n) if k not in (i, j)]
                    work = rest + [a for a in replacement if not a.is_empty()]
                    changed = True
                    break
            if changed:
                break
        if not changed:
            return RepSet(tuple(sorted(work, key=_hull_key)))
    raise TooLarge("set normalization did not stabilize")


def _resolve_pair(x: Atom, y: Atom, budget: int):
    """None when x and y are certified disjoint; otherwise a list of atoms
    whose union equals x u y. Expects _rank(x) <= _rank(y)."""
    if isinstance(x, FinitePoints):
        return _resolve_points(x, y)
    if isinstance(x, CountableSeq):
        if isinstance(y, CountableSeq):
            return _resolve_seq_seq(x, y)
        if isinstance(y, Interval):
            return _resolve_seq_interval(x, y)
        return _resolve_seq_cantor(x, y)
    if isinstance(x, Interval):
        if isinstance(y, Interval):
            return _resolve_interval_interval(x, y)
        return _resolve_interval_cantor(x, y, budget)
    return _resolve_cantor_cantor(x, y, budget)


def _undelete(atom: Atom, points: Iterable[Fraction]) -> Atom:
    pts = set(points)
    if not pts:
        return atom
    dels = atom.deletions - pts
    if isinstance(atom, CountableSeq):
        return CountableSeq(atom.family, atom.a, atom.b, atom.q, dels)
    if isinstance(atom, Interval):
        return Interval(atom.lo, atom.hi, dels)
    if isinstance(atom, CantorAffine):
        return CantorAffine(atom.t, atom.s, dels)
    raise NotSupported("cannot undelete from this atom")


def _resolve_points(x: FinitePoints, y: Atom):
    if isinstance(y, FinitePoints):
        return [FinitePoints(x.points + y.points)]
    keep, undelete = [], []
    for p in x.points:
        if y.member(p):
            continue  # covered by y
        if p in y.deletions:
            undelete.append(p)  # restore in y instead of keeping a stray point
        else:
            keep.append(p)
    if len(keep) == len(x.points):
        return None
    out = [_undelete(y, undelete)]
    if keep:
        out.append(FinitePoints(keep))
    return out


def _disjointize(x: Atom, y: Atom, commons: Iterable[Fraction]):
    """Given candidate common base points, delete from y those present in
    both sets; None when already disjoint."""
    to_delete = [p for p in commons if x.member(p) and y.member(p)]
    if not to_delete:
        return None
    return [x, y.with_deletions(to_delete)]


# -- sequence vs sequence -----------------------------------------------------


def _prime_exponents(n: int) -> dict:
    out = {}
    m = abs(n)
    for p in (2, 3, 5, 7, 11, 13):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    f = 17
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _frac_exponents(x: Fraction) -> dict:
    out = dict(_prime_exponents(x.numerator))
    for p, e in _prime_exponents(x.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e}


def _power_index(value: Fraction, base: Fraction):
    """Integer z with value == base**z, else None; base in (0,1)."""
    if value <= 0:
        return None
    if value == 1:
        return 0
    z, v = 0, Fraction(1)
    if value < 1:
        for _ in range(_ITER_GUARD):
            v *= base
            z += 1
            if v == value:
                return z
            if v < value:
                return None
    else:
        for _ in range(_ITER_GUARD):
            v /= base
            z -= 1
            if v == value:
                return z
            if v > value:
                return None
    raise TooLarge("power index search diverged")


def _primitive_ratio(q: Fraction) -> tuple[Fraction, int]:
    """Write q = rho**e with maximal e >= 1; rho is the primitive ratio."""
    expo = _frac_exponents(q)
    g = 0
    for e in expo.values():
        g = math.gcd(g, abs(e))
    if g <= 1:
        return q, 1
    num = den = 1
    for p, e in expo.items():
        step = e // g
        if step > 0:
            num *= p ** step
        else:
            den *= p ** (-step)
    return Fraction(num, den), g


def _solve_two_unknowns(rows):
    """Integer solution (n, m) of the system a*n + b*m = c, or None."""
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(rows, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        n = Fraction(c1 * b2 - c2 * b1, det)
        m = Fraction(a1 * c2 - a2 * c1, det)
        if n.denominator != 1 or m.denominator != 1:
            return None
        n, m = int(n), int(m)
        for (a, b, c) in rows:
            if a * n + b * m != c:
                return None
        return (n, m)
    return None


def _common_points_finite(x: CountableSeq, y: CountableSeq) -> list:
    """Common base points of sequences with distinct accumulation points:
    always finitely many. A common point is at least half the accumulation
    gap away from one of the two limits, so enumerating both heads down to
    that offset is exhaustive."""
    delta = abs(y.a - x.a)
    commons = []
    for seq, other in ((x, y), (y, x)):
        if seq.family == HARMONIC:
            n_stop = max(1, _ceil(2 * abs(seq.b) / delta))
            indices = range(1, n_stop + 1)
        else:
            indices = []
            n, val = 1, abs(seq.b) * seq.q
            while 2 * val >= delta:
                indices.append(n)
                n += 1
                val *= seq.q
                if n > _ITER_GUARD:
                    raise TooLarge("sequence intersection search diverged")
        for n in indices:
            p = seq.point(n)
            if other.in_base(p):
                commons.append(p)
    return sorted(set(commons))


def _seq_base_subset(x: CountableSeq, y: CountableSeq) -> bool:
    """Base-set containment x subset-of y (same accumulation, same side)."""
    if x.a != y.a or (x.b > 0) != (y.b > 0):
        return False
    if x.family == HARMONIC and y.family == HARMONIC:
        # x.b/n == y.b/m needs m = n * (y.b/x.b) integral for every n
        k = y.b / x.b
        return k.denominator == 1 and k >= 1
    if x.family == GEOMETRIC and y.family == GEOMETRIC:
        if x.q == y.q:
            z = _power_index(x.b / y.b, x.q)
            return z is not None and z >= 0
        k = _power_index(x.q, y.q)
        if k is None or k < 1:
            return False
        j = _power_index(x.b / y.b, y.q)
        return j is not None and j + k >= 1
    if x.family == GEOMETRIC and y.family == HARMONIC:
        # a + b*q^n == a + y.b/m needs m = (y.b/x.b) * (1/q)^n integral
        if x.q.numerator != 1:
            return False
        first = (y.b / x.b) * x.q.denominator
        return first.denominator == 1 and first >= 1
    return False  # a harmonic sequence is never inside a geometric one


def _geo_geo_commons(x: CountableSeq, y: CountableSeq):
    """Intersection structure of same-accumulation geometric sequences not
    in containment: "disjoint", ("finite", pts), or None when the
    intersection is infinite and interleaved."""
    ex, ey = _frac_exponents(x.q), _frac_exponents(y.q)
    parallel = (set(ex) == set(ey)
                and len({Fraction(ey[p], ex[p]) for p in ex}) == 1)
    if not parallel:
        # multiplicatively independent ratios: at most one common point
        target = _frac_exponents(y.b / x.b)
        primes = sorted(set(ex) | set(ey) | set(target))
        rows = [(ex.get(p, 0), -ey.get(p, 0), target.get(p, 0)) for p in primes]
        sol = _solve_two_unknowns(rows)
        if sol is None:
            return "disjoint"
        n, m = sol
        if n >= 1 and m >= 1 and x.b * x.q ** n == y.b * y.q ** m:
            return ("finite", [x.point(n)])
        return "disjoint"
    rho, e = _primitive_ratio(x.q)
    f = _power_index(y.q, rho)
    z = _power_index(y.b / x.b, rho)
    if f is None or z is None:
        return "disjoint"
    # common points need e*n - f*m == z: solvable iff gcd(e, f) divides z,
    # and then the solutions fill an infinite lattice line
    if z % math.gcd(e, f) != 0:
        return "disjoint"
    return None


def _harm_geo_commons(h: CountableSeq, g: CountableSeq):
    """Intersection structure of a harmonic and a geometric sequence with
    the same accumulation point and side, outside containment: "disjoint",
    ("finite", pts), or ("tail", (g, start)) when exactly the terms of g
    from index start onward are common."""
    # h.b/n == g.b * q^m  =>  n = (h.b/g.b) * (1/q)^m
    ratio = h.b / g.b  # positive: same side of the accumulation point
    u, v = g.q.numerator, g.q.denominator
    if u == 1:
        # n = ratio * v^m: the divisibility condition stabilises to a tail
        beta = ratio.denominator
        m0 = 1
        for p, e in _prime_exponents(beta).items():
            ev = _prime_exponents(v).get(p, 0)
            if ev == 0:
                return "disjoint"  # beta never divides v^m
            m0 = max(m0, _ceil(Fraction(e, ev)))
        while ratio * Fraction(v) ** m0 < 1:
            m0 += 1
        return ("tail", (g, m0))
    # u >= 2: u^m must divide the fixed numerator of ratio, so m is bounded
    pts = []
    m = 1
    while u ** m <= abs(ratio.numerator):
        n = ratio * Fraction(v, u) ** m
        if n.denominator == 1 and n >= 1:
            pts.append(g.point(m))
        m += 1
    return ("finite", pts) if pts else "disjoint"


def _same_accumulation_commons(x: CountableSeq, y: CountableSeq):
    """Dispatch for same-accumulation, same-side pairs not in containment."""
    if x.family == HARMONIC and y.family == HARMONIC:
        # common indices fill the lattice n = den*k, m = num*k of the
        # reduced coefficient ratio; outside containment both parts are
        # >= 2, so the intersection is infinite and co-infinite in both
        return None
    if x.family == GEOMETRIC and y.family == GEOMETRIC:
        return _geo_geo_commons(x, y)
    if x.family == HARMONIC:
        return _harm_geo_commons(x, y)
    return _harm_geo_commons(y, x)


def _resolve_seq_seq(x: CountableSeq, y: CountableSeq):
    if (x.family, x.a, x.b, x.q) == (y.family, y.a, y.b, y.q):
        return [CountableSeq(x.family, x.a, x.b, x.q,
                             x.deletions & y.deletions)]
    if x.a != y.a:
        return _disjointize(x, y, _common_points_finite(x, y))
    if (x.b > 0) != (y.b > 0):
        return None  # opposite sides of the shared accumulation point
    for inner, outer in ((x, y), (y, x)):
        if _seq_base_subset(inner, outer):
            dels = [d for d in outer.deletions if not inner.member(d)]
            return [CountableSeq(outer.family, outer.a, outer.b, outer.q, dels)]
    commons = _same_accumulation_commons(x, y)
    if commons is None:
        raise NotRepresentable(
            "the union of these sequences is not a catalog set")
    if commons == "disjoint":
        return None
    kind, payload = commons
    if kind == "finite":
        return _disjointize(x, y, payload)
    seq, start = payload  # the tail of seq from start onward lies in other
    other = y if seq is x else x
    rescued = [d for d in other.deletions if seq.member(d)]
    head = []
    for n in range(1, start):
        p = seq.point(n)
        if seq.member(p) and not other.in_base(p):
            head.append(p)
    out = [_undelete(other, rescued)]
    if head:
        out.append(FinitePoints(head))
    return out


# -- sequence vs interval -----------------------------------------------------


def _resolve_seq_interval(x: CountableSeq, y: Interval):
    kind, data = x.indices_within(y.lo, y.hi)
    if kind == "finite":
        moved, undelete = [], []
        for n in data:
            p = x.point(n)
            if not x.member(p):
                continue
            if p in y.deletions:
                undelete.append(p)
            moved.append(p)
        if not moved:
            return None
        return [x.with_deletions(moved), _undelete(y, undelete)]
    # an infinite tail lies inside the interval: the sequence dissolves
    start = data
    undelete = [d for d in y.deletions if x.member(d)]
    head = []
    for n in range(1, start):
        p = x.point(n)
        if x.member(p) and not y.in_base(p):
            head.append(p)
    out = [_undelete(y, undelete)]
    if head:
        out.append(FinitePoints(head))
    return out


# -- sequence vs Cantor copy ----------------------------------------------------


def _seq_cantor_commons(x: CountableSeq, y: CantorAffine) -> list:
    """Common base points of a sequence and a Cantor copy; finite, or
    NotRepresentable when the accumulation point sits inside the copy."""
    hlo, hhi = y.hull()
    kind, data = x.indices_within(hlo, hhi)
    if kind == "finite":
        return sorted(p for p in (x.point(n) for n in data) if y.in_base(p))
    # infinitely many terms in the hull, so the limit lies in it as well
    if y.in_base(x.a):
        raise NotRepresentable(
            "a sequence accumulating inside a Cantor copy cannot be combined with it")
    glo, ghi = cantor_gap((x.a - y.t) / y.s)
    glo, ghi = y.t + y.s * glo, y.t + y.s * ghi
    pts = []
    for lo, hi in ((None, glo), (ghi, None)):
        kind2, data2 = x.indices_within(lo, hi)
        if kind2 == "tail":  # cannot happen: the limit is inside the gap
            raise NotRepresentable("sequence does not settle inside the gap")
        for n in data2:
            p = x.point(n)
            if y.in_base(p):
                pts.append(p)
    return sorted(set(pts))


def _resolve_seq_cantor(x: CountableSeq, y: CantorAffine):
    commons = _seq_cantor_commons(x, y)
    moved, undelete = [], []
    for p in commons:
        if not x.member(p):
            continue
        if p in y.deletions:
            undelete.append(p)
        moved.append(p)
    if not moved:
        return None
    return [x.with_deletions(moved), _undelete(y, undelete)]


# -- interval vs interval -------------------------------------------------------


def _resolve_interval_interval(x: Interval, y: Interval):
    if not _hull_overlap(x.hull(), y.hull()):
        return None
    lo = None if (x.lo is None or y.lo is None) else min(x.lo, y.lo)
    hi = None if (x.hi is None or y.hi is None) else max(x.hi, y.hi)
    dels = [d for d in (x.deletions | y.deletions)
            if not x.member(d) and not y.member(d)]
    return [Interval(lo, hi, dels)]


# -- interval vs Cantor copy ------------------------------------------------------


def _ca_split_by_interval(ca: CantorAffine, lo: Endpoint, hi: Endpoint,
                          budget: int):
    """Partition ca into (covered, kept): pieces inside [lo, hi] and pieces
    disjoint from it. A single boundary touch becomes a point atom."""
    hlo, hhi = ca.hull()
    ilo = hlo if lo is None else max(hlo, lo)
    ihi = hhi if hi is None else min(hhi, hi)
    if ilo > ihi:
        return [], [ca]
    if ilo == hlo and ihi == hhi:
        return [ca], []
    if ilo == ihi:
        p = ilo
        if not ca.in_base(p):
            return [], [ca]
        covered = [] if p in ca.deletions else [FinitePoints([p])]
        return covered, [CantorAffine(ca.t, ca.s, ca.deletions | {p})]
    if budget <= 0:
        raise NotRepresentable(
            "interval cuts through a Cantor copy; the pieces are not catalog sets")
    left, right = ca.children()
    c1, k1 = _ca_split_by_interval(left, lo, hi, budget - 1)
    c2, k2 = _ca_split_by_interval(right, lo, hi, budget - 1)
    return c1 + c2, k1 + k2


def _resolve_interval_cantor(x: Interval, y: CantorAffine, budget: int):
    if not _hull_overlap(x.hull(), y.hull()):
        return None
    covered, kept = _ca_split_by_interval(y, x.lo, x.hi, budget)
    if not covered:
        return None
    undelete = [d for d in x.deletions if y.member(d)]
    return [_undelete(x, undelete)] + kept


# -- Cantor copy vs Cantor copy -----------------------------------------------------


def _ca_partition(base: CantorAffine, target: CantorAffine, budget: int):
    """Partition target against base: (common, rest), where common holds
    the points of target whose positions also lie in base's base set."""
    if not _hull_overlap(base.hull(), target.hull()):
        return [], [target]
    if (base.t, base.s) == (target.t, target.s):
        return [target], []
    hb, ht = base.hull(), target.hull()
    touch = None
    if hb[1] == ht[0]:
        touch = hb[1]
    elif ht[1] == hb[0]:
        touch = ht[1]
    if touch is not None:
        if base.in_base(touch) and target.in_base(touch):
            common = [] if touch in target.deletions else [FinitePoints([touch])]
            return common, [CantorAffine(target.t, target.s,
                                         target.deletions | {touch})]
        return [], [target]
    if budget <= 0:
        raise NotRepresentable(
            "overlapping distinct Cantor copies are not jointly representable")
    if target.s <= base.s:
        left, right = base.children()
        commons, rest = _ca_partition(left, target, budget - 1)
        out_rest = []
        for piece in rest:
            if isinstance(piece, CantorAffine):
                c2, r2 = _ca_partition(right, piece, budget - 1)
                commons += c2
                out_rest += r2
            else:
                inside = [p for p in piece.points if right.in_base(p)]
                outside = [p for p in piece.points if not right.in_base(p)]
                if inside:
                    commons.append(FinitePoints(inside))
                if outside:
                    out_rest.append(FinitePoints(outside))
        return commons, out_rest
    tl, tr = target.children()
    c1, r1 = _ca_partition(base, tl, budget - 1)
    c2, r2 = _ca_partition(base, tr, budget - 1)
    return c1 + c2, r1 + r2


def _resolve_cantor_cantor(x: CantorAffine, y: CantorAffine, budget: int):
    if (x.t, x.s) == (y.t, y.s):
        return [CantorAffine(x.t, x.s, x.deletions & y.deletions)]
    if not _hull_overlap(x.hull(), y.hull()):
        return None
    common, y_only = _ca_partition(x, y, budget)
    if not common:
        return None
    undelete = [d for d in x.deletions if y.member(d)]
    return [_undelete(x, undelete)] + y_only


# ---------------------------------------------------------------------------
# set operations


def union(a: RepSet, b: RepSet) -> RepSet:
    return normalize(a.atoms + b.atoms)


def diff(a: RepSet, b: RepSet) -> RepSet:
    pieces = []
    for atom in a.atoms:
        pieces.extend(_atom_minus_set(atom, b))
    return normalize(pieces)


def symdiff(a: RepSet, b: RepSet) -> RepSet:
    return union(diff(a, b), diff(b, a))


def intersect(a: RepSet, b: RepSet) -> RepSet:
    # a minus (a minus b); representability is not symmetric in the
    # two complements, so fall back to the mirror image
    try:
        return diff(a, diff(a, b))
    except NotRepresentable:
        return diff(b, diff(b, a))


def _atom_minus_set(atom: Atom, s: RepSet) -> list:
    pieces = [atom]
    for other in s.atoms:
        nxt = []
        for piece in pieces:
            nxt.extend(_atom_minus_atom(piece, other))
        pieces = nxt
    return pieces


def _atom_minus_atom(x: Atom, y: Atom) -> list:
    budget = get_config().depth_cap
    if x.is_empty():
        return []
    if isinstance(x, FinitePoints):
        keep = [p for p in x.points if not y.member(p)]
        return [FinitePoints(keep)] if keep else []
    if isinstance(y, FinitePoints):
        hit = [p for p in y.points if x.member(p)]
        return [x.with_deletions(hit)] if hit else [x]
    if isinstance(x, CountableSeq):
        return _seq_minus(x, y, budget)
    if isinstance(x, Interval):
        return _interval_minus(x, y, budget)
    return _cantor_minus(x, y, budget)


def _delete_commons(x: Atom, y: Atom, commons: Iterable[Fraction]) -> list:
    hit = [p for p in commons if x.member(p) and y.member(p)]
    return [x.with_deletions(hit)] if hit else [x]


def _seq_minus(x: CountableSeq, y: Atom, budget: int) -> list:
    if isinstance(y, CountableSeq):
        if (x.family, x.a, x.b, x.q) == (y.family, y.a, y.b, y.q):
            pts = [d for d in y.deletions if x.member(d)]
            return [FinitePoints(pts)] if pts else []
        if x.a != y.a:
            return _delete_commons(x, y, _common_points_finite(x, y))
        if (x.b > 0) != (y.b > 0):
            return [x]
        if _seq_base_subset(x, y):
            pts = [d for d in y.deletions if x.member(d)]
            return [FinitePoints(pts)] if pts else []
        if _seq_base_subset(y, x):
            raise NotRepresentable(
                "removing an interleaved subsequence leaves a non-catalog set")
        commons = _same_accumulation_commons(x, y)
        if commons is None:
            raise NotRepresentable(
                "the difference of these sequences is not a catalog set")
        if commons == "disjoint":
            return [x]
        kind, payload = commons
        if kind == "finite":
            return _delete_commons(x, y, payload)
        seq, start = payload
        if seq is x:
            # the whole tail of x is removed; only a finite head remains
            keep = set()
            for n in range(1, start):
                p = x.point(n)
                if x.member(p) and not y.member(p):
                    keep.add(p)
            keep |= {d for d in y.deletions if x.member(d)}
            return [FinitePoints(sorted(keep))] if keep else []
        raise NotRepresentable(
            "removing an interleaved subsequence leaves a non-catalog set")
    if isinstance(y, Interval):
        kind, data = x.indices_within(y.lo, y.hi)
        if kind == "finite":
            return _delete_commons(x, y, [x.point(n) for n in data])
        start = data
        keep = set()
        for n in range(1, start):
            p = x.point(n)
            if x.member(p) and not y.member(p):
                keep.add(p)
        keep |= {d for d in y.deletions if x.member(d)}
        return [FinitePoints(sorted(keep))] if keep else []
    if isinstance(y, CantorAffine):
        return _delete_commons(x, y, _seq_cantor_commons(x, y))
    raise NotSupported(f"difference against {type(y).__name__}")


def _interval_minus(x: Interval, y: Atom, budget: int) -> list:
    if isinstance(y, CountableSeq):
        kind, data = y.indices_within(x.lo, x.hi)
        if kind == "tail":
            raise NotRepresentable(
                "an interval minus an infinite sequence is not a catalog set")
        return _delete_commons(x, y, [y.point(n) for n in data])
    if isinstance(y, Interval):
        return _interval_minus_interval(x, y)
    if isinstance(y, CantorAffine):
        if not _hull_overlap(x.hull(), y.hull()):
            return [x]
        covered, _ = _ca_split_by_interval(y, x.lo, x.hi, budget)
        hits = []
        for piece in covered:
            if isinstance(piece, CantorAffine):
                raise NotRepresentable(
                    "an interval minus a Cantor copy is not a catalog set")
            hits.extend(p for p in piece.points if x.member(p))
        return [x.with_deletions(hits)] if hits else [x]
    raise NotSupported(f"difference against {type(y).__name__}")


def _interval_minus_interval(x: Interval, y: Interval) -> list:
    if not _hull_overlap(x.hull(), y.hull()):
        return [x]
    pieces = []
    if y.lo is not None and (x.lo is None or x.lo < y.lo):
        dels = {d for d in x.deletions if d <= y.lo}
        if y.lo not in y.deletions:
            dels.add(y.lo)
        pieces.append(Interval(x.lo, y.lo, dels))
    if y.hi is not None and (x.hi is None or x.hi > y.hi):
        dels = {d for d in x.deletions if d >= y.hi}
        if y.hi not in y.deletions:
            dels.add(y.hi)
        pieces.append(Interval(y.hi, x.hi, dels))
    # deleted positions of y interior to x survive the subtraction
    survivors = [d for d in y.deletions
                 if x.member(d) and not any(p.in_base(d) for p in pieces)]
    out = list(pieces)
    if survivors:
        out.append(FinitePoints(sorted(survivors)))
    return out


def _cantor_minus(x: CantorAffine, y: Atom, budget: int) -> list:
    if isinstance(y, CountableSeq):
        return _delete_commons(x, y, _seq_cantor_commons(y, x))
    if isinstance(y, Interval):
        if not _hull_overlap(x.hull(), y.hull()):
            return [x]
        _, kept = _ca_split_by_interval(x, y.lo, y.hi, budget)
        out = list(kept)
        survivors = [d for d in y.deletions if x.member(d)]
        if survivors:
            out.append(FinitePoints(sorted(survivors)))
        return out
    if isinstance(y, CantorAffine):
        if (x.t, x.s) == (y.t, y.s):
            pts = [d for d in y.deletions if x.member(d)]
            return [FinitePoints(pts)] if pts else []
        if not _hull_overlap(x.hull(), y.hull()):
            return [x]
        common, x_only = _ca_partition(y, x, budget)
        out = list(x_only)
        extra = set()
        for piece in common:
            if isinstance(piece, FinitePoints):
                extra |= {p for p in piece.points
                          if x.member(p) and not y.member(p)}
            else:
                # a shared sub-copy: positions deleted from y survive in x
                extra |= {d for d in y.deletions
                          if piece.member(d) and x.member(d)}
        if extra:
            out.append(FinitePoints(sorted(extra)))
        return out
    raise NotSupported(f"difference against {type(y).__name__}")


# ---------------------------------------------------------------------------
# measure and verification


def hmeasure(s: RepSet) -> HPair:
    """The dimension-measure pair of a representable set."""
    if s.is_empty():
        return ZERO_PAIR
    top = s.dim()
    parts = [a.mu() for a in s.atoms if a.dim().cmp(top) == 0]
    return HPair(top, ext_sum(parts))


def verify_monotone(a: RepSet, b: RepSet) -> tuple[HPair, HPair, bool]:
    """Confirm a is a subset of b, then compare the measures."""
    leftover = diff(a, b)
    if not leftover.is_empty():
        raise ValidationError("first set is not contained in the second")
    ma, mb = hmeasure(a), hmeasure(b)
    return ma, mb, ma.cmp(mb) <= 0


def verify_subadditive(a: RepSet, b: RepSet):
    u = union(a, b)
    mu_u, ma, mb = hmeasure(u), hmeasure(a), hmeasure(b)
    bound = hpair_add(ma, mb)
    return mu_u, ma, mb, mu_u.cmp(bound) <= 0
