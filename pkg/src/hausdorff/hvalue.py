"""Dimension-measure pairs and their order, algebra and limit theory.

The value space is [0, 2] x [-inf, +inf] under the lexicographic order.
Addition takes the maximum of the first coordinates and sums the second
coordinates of the summands that attain it; the pair (0, 0) is the
identity. Dimensions are kept symbolically (rational plus log-ratio
terms) so equality is decided by canonical form and comparisons fall
back to interval arithmetic with doubling precision.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from ._numeric import (RatInterval, Rational, log_interval, pow_interval,
                       render_rational)
from .config import get_config
from .errors import (DoesNotConverge, IncomparableDimensions, NotSupported,
                     UndefinedSum, ValidationError)

_START_PREC = 64
_POW_BIT_GUARD = 1 << 20  # largest big-int comparison we will attempt


# ---------------------------------------------------------------------------
# dimensions


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 1, by Newton iteration on integers."""
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _minimal_power_base(n: int) -> tuple[int, int]:
    """Write n >= 2 as base**exp with the smallest possible base."""
    for k in range(n.bit_length(), 1, -1):
        root = _iroot(n, k)
        if root >= 2 and root ** k == n:
            return root, k
    return n, 1


@dataclass(frozen=True)
class Dimension:
    """Value rat + sum(coef * log(P)/log(Q)) in canonical form.

    Keys (P, Q) use minimal bases (neither P nor Q is a perfect power,
    P != Q), so identities like log(4)/log(9) = log(2)/log(3) hold
    syntactically. Coefficients are nonzero rationals.
    """

    rat: Fraction = Fraction(0)
    logs: tuple[tuple[tuple[int, int], Fraction], ...] = ()

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(x: Rational) -> "Dimension":
        x = Fraction(x)
        if not 0 <= x <= 2:
            raise ValidationError(f"dimension {x} outside [0, 2]")
        return Dimension(rat=x)

    @staticmethod
    def log_ratio(p: int, q: int) -> "Dimension":
        """The number log(p)/log(q) for integers p, q >= 2, p < q."""
        if not (isinstance(p, int) and isinstance(q, int)):
            raise ValidationError("log_ratio arguments must be integers")
        if p < 2 or q < 2:
            raise ValidationError("log_ratio arguments must be at least 2")
        base_p, u = _minimal_power_base(p)
        base_q, v = _minimal_power_base(q)
        if base_p == base_q:
            return Dimension.rational(Fraction(u, v))
        if p >= q:
            raise ValidationError(
                f"log({p})/log({q}) is not in (0, 1); the pair must satisfy p < q")
        return Dimension(logs=(((base_p, base_q), Fraction(u, v)),))

    @staticmethod
    def cantor() -> "Dimension":
        return Dimension.log_ratio(2, 3)

    # -- helpers -------------------------------------------------------

    def is_rational(self) -> bool:
        return not self.logs

    def as_fraction(self) -> Fraction:
        if self.logs:
            raise NotSupported(f"{self.render()} is irrational")
        return self.rat

    def _sub(self, other: "Dimension") -> "Dimension":
        terms = dict(self.logs)
        for key, coef in other.logs:
            acc = terms.get(key, Fraction(0)) - coef
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return Dimension(rat=self.rat - other.rat,
                         logs=tuple(sorted(terms.items())))

    def _scale(self, c: Fraction) -> "Dimension":
        if not c:
            return Dimension()
        return Dimension(rat=self.rat * c,
                         logs=tuple((k, v * c) for k, v in self.logs))

    def enclosure(self, prec: Optional[int] = None) -> RatInterval:
        prec = prec or get_config().precision_bits
        return _dim_enclosure(self, prec)

    # -- comparison ----------------------------------------------------

    def cmp(self, other: "Dimension") -> int:
        diff = self._sub(other)
        if not diff.logs:
            return (diff.rat > 0) - (diff.rat < 0)
        if len(diff.logs) == 1:
            sign = _sign_single_log(diff.rat, *diff.logs[0])
            if sign is not None:
                return sign
        # interval separation with doubling precision
        prec = _START_PREC
        cap = get_config().precision_bits
        while True:
            sign = _dim_enclosure(diff, prec).sign()
            if sign is not None:
                return sign
            if prec >= cap:
                raise IncomparableDimensions(
                    f"cannot separate {self.render()} and {other.render()} "
                    f"within {cap} bits")
            prec = min(2 * prec, cap)

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        if not self.logs:
            return render_rational(self.rat)
        parts = []
        if self.rat:
            parts.append(render_rational(self.rat))
        for (base_p, base_q), coef in self.logs:
            parts.append(_render_log_term(base_p, base_q, coef))
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self):
        return f"Dimension({self.render()})"


def _render_log_term(base_p: int, base_q: int, coef: Fraction) -> str:
    sign = "-" if coef < 0 else ""
    coef = abs(coef)
    p = base_p ** coef.numerator
    q = base_q ** coef.denominator
    return f"{sign}log({p})/log({q})"


def _sign_single_log(rat: Fraction, key: tuple[int, int], coef: Fraction):
    """Exact sign of rat + coef*log(P)/log(Q) via integer power comparison."""
    base_p, base_q = key
    # compare coef*log(P)/log(Q) with -rat, i.e. log(P)/log(Q) with -rat/coef
    target = -rat / coef
    if target <= 0:
        value_sign = 1  # log(P)/log(Q) > 0 >= target
    else:
        a, b = target.numerator, target.denominator
        if (b * base_p.bit_length() > _POW_BIT_GUARD
                or a * base_q.bit_length() > _POW_BIT_GUARD):
            return None
        lhs, rhs = base_p ** b, base_q ** a
        value_sign = (lhs > rhs) - (lhs < rhs)
    return value_sign if coef > 0 else -value_sign


@functools.lru_cache(maxsize=4096)
def _dim_enclosure(dim: Dimension, prec: int) -> RatInterval:
    acc = RatInterval.point(dim.rat)
    for (base_p, base_q), coef in dim.logs:
        lp = log_interval(base_p, prec)
        lq = log_interval(base_q, prec)
        # both logs are positive, so the quotient bounds are monotone
        quotient = RatInterval(lp.lo / lq.hi, lp.hi / lq.lo)
        acc = acc + quotient * coef
    return acc


DIM_ZERO = Dimension()
DIM_ONE = Dimension(rat=Fraction(1))
DIM_TWO = Dimension(rat=Fraction(2))
DIM_CANTOR = Dimension.log_ratio(2, 3)


def dim_max(a: Dimension, b: Dimension) -> Dimension:
    return a if a.cmp(b) >= 0 else b


def dim_min(a: Dimension, b: Dimension) -> Dimension:
    return a if a.cmp(b) <= 0 else b


def dim_abs_diff(a: Dimension, b: Dimension) -> Dimension:
    diff = a._sub(b)
    if not diff.logs:
        return Dimension(rat=abs(diff.rat))
    return diff if a.cmp(b) >= 0 else diff._scale(Fraction(-1))


# ---------------------------------------------------------------------------
# extended reals


_NEG, _FIN, _IVL, _POS = "-inf", "finite", "interval", "+inf"


@dataclass(frozen=True)
class ExtReal:
    """A point of [-inf, +inf]: exact rational, certified enclosure, or
    one of the two infinities."""

    kind: str
    value: Union[Fraction, RatInterval, None] = None

    @staticmethod
    def of(x: Rational) -> "ExtReal":
        return ExtReal(_FIN, Fraction(x))

    @staticmethod
    def interval(enc: RatInterval) -> "ExtReal":
        if enc.is_point():
            return ExtReal(_FIN, enc.lo)
        return ExtReal(_IVL, enc)

    def is_finite(self) -> bool:
        return self.kind in (_FIN, _IVL)

    def is_exact(self) -> bool:
        return self.kind == _FIN

    def as_fraction(self) -> Fraction:
        if self.kind != _FIN:
            raise NotSupported(f"{self.render()} has no exact rational value")
        return self.value

    def enclosure(self) -> RatInterval:
        if self.kind == _FIN:
            return RatInterval.point(self.value)
        if self.kind == _IVL:
            return self.value
        raise NotSupported("infinite value has no finite enclosure")

    def __add__(self, other: "ExtReal") -> "ExtReal":
        a, b = self, other
        if _POS in (a.kind, b.kind) and _NEG in (a.kind, b.kind):
            raise UndefinedSum("(+inf) + (-inf) is undefined")
        if a.kind == _POS or b.kind == _POS:
            return POS_INF
        if a.kind == _NEG or b.kind == _NEG:
            return NEG_INF
        if a.kind == _FIN and b.kind == _FIN:
            return ExtReal(_FIN, a.value + b.value)
        return ExtReal.interval(a.enclosure() + b.enclosure())

    def __neg__(self) -> "ExtReal":
        if self.kind == _POS:
            return NEG_INF
        if self.kind == _NEG:
            return POS_INF
        if self.kind == _FIN:
            return ExtReal(_FIN, -self.value)
        return ExtReal(_IVL, -self.value)

    def __sub__(self, other: "ExtReal") -> "ExtReal":
        return self + (-other)

    def scale(self, c: Rational) -> "ExtReal":
        c = Fraction(c)
        if self.kind in (_POS, _NEG):
            if c == 0:
                raise ValidationError("0 * inf is undefined here")
            flip = (self.kind == _POS) == (c > 0)
            return POS_INF if flip else NEG_INF
        if self.kind == _FIN:
            return ExtReal(_FIN, self.value * c)
        return ExtReal.interval(self.value * c)

    def __abs__(self) -> "ExtReal":
        if self.kind in (_POS, _NEG):
            return POS_INF
        if self.kind == _FIN:
            return ExtReal(_FIN, abs(self.value))
        return ExtReal.interval(abs(self.value))

    def cmp(self, other: "ExtReal") -> int:
        """Trichotomy; overlapping enclosures compare as equal."""
        order = {_NEG: 0, _FIN: 1, _IVL: 1, _POS: 2}
        ra, rb = order[self.kind], order[other.kind]
        if ra != rb:
            return (ra > rb) - (ra < rb)
        if ra != 1:
            return 0
        ia, ib = self.enclosure(), other.enclosure()
        if ia.hi < ib.lo:
            return -1
        if ia.lo > ib.hi:
            return 1
        return 0

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def sign(self) -> int:
        if self.kind == _POS:
            return 1
        if self.kind == _NEG:
            return -1
        enc = self.enclosure()
        s = enc.sign()
        return 0 if s is None else s

    def render(self) -> str:
        if self.kind == _POS:
            return "inf"
        if self.kind == _NEG:
            return "-inf"
        if self.kind == _FIN:
            return render_rational(self.value)
        return repr(float(self.value.mid))

    def __repr__(self):
        return f"ExtReal({self.render()})"


POS_INF = ExtReal(_POS)
NEG_INF = ExtReal(_NEG)
EXT_ZERO = ExtReal.of(0)


def ext_sum(values: Iterable[ExtReal]) -> ExtReal:
    total = EXT_ZERO
    saw_pos = saw_neg = False
    for v in values:
        if v.kind == _POS:
            saw_pos = True
        elif v.kind == _NEG:
            saw_neg = True
        if saw_pos and saw_neg:
            raise UndefinedSum("measure sum mixes +inf and -inf")
        if v.kind in (_POS, _NEG):
            continue
        if total.is_finite():
            total = total + v
    if saw_pos:
        return POS_INF
    if saw_neg:
        return NEG_INF
    return total


# ---------------------------------------------------------------------------
# pairs


@dataclass(frozen=True)
class HPair:
    """A dimension-measure pair, ordered lexicographically."""

    d: Dimension
    m: ExtReal

    @staticmethod
    def of(d, m) -> "HPair":
        if not isinstance(d, Dimension):
            d = Dimension.rational(d)
        if not isinstance(m, ExtReal):
            m = ExtReal.of(m)
        return HPair(d, m)

    def cmp(self, other: "HPair") -> int:
        c = self.d.cmp(other.d)
        if c:
            return c
        return self.m.cmp(other.m)

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def render(self) -> str:
        return f"({self.d.render()}, {self.m.render()})"

    def __repr__(self):
        return f"HPair{self.render()}"


ZERO_PAIR = HPair(DIM_ZERO, EXT_ZERO)


def hpair_leq(a: HPair, b: HPair) -> bool:
    return a.cmp(b) <= 0


def hpair_lt(a: HPair, b: HPair) -> bool:
    return a.cmp(b) < 0


def hpair_eq(a: HPair, b: HPair) -> bool:
    return a.cmp(b) == 0


def hpair_add(a: HPair, b: HPair) -> HPair:
    c = a.d.cmp(b.d)
    if c > 0:
        return a
    if c < 0:
        return b
    return HPair(a.d, a.m + b.m)


def hpair_sum(items: Sequence[HPair]) -> HPair:
    """Sum with the max-dimension rule; the empty sum is (0, 0)."""
    items = list(items)
    if not items:
        return ZERO_PAIR
    top = items[0].d
    for h in items[1:]:
        top = dim_max(top, h.d)
    measures = [h.m for h in items if h.d.cmp(top) == 0]
    return HPair(top, ext_sum(measures))


def hpair_inf(items: Sequence[HPair]) -> HPair:
    items = list(items)
    if not items:
        # internal lattice corner: empty infimum is the top of [0,1]x[0,inf]
        return HPair(DIM_ONE, POS_INF)
    best = items[0]
    for h in items[1:]:
        if h.cmp(best) < 0:
            best = h
    return best


def hpair_sup(items: Sequence[HPair]) -> HPair:
    items = list(items)
    if not items:
        return ZERO_PAIR
    best = items[0]
    for h in items[1:]:
        if h.cmp(best) > 0:
            best = h
    return best


# ---------------------------------------------------------------------------
# coefficient series


class CoefficientSeries:
    """A summable description of countably many rational coefficients."""

    def term(self, i: int) -> Fraction:
        raise NotImplementedError

    def abs_converges(self) -> bool:
        raise NotImplementedError

    def sum(self) -> ExtReal:
        raise NotImplementedError

    def partial_sum(self, n: int) -> Fraction:
        return sum((self.term(i) for i in range(n)), Fraction(0))

    def scale(self, c: Rational) -> "CoefficientSeries":
        raise NotImplementedError

    def abs_series(self) -> "CoefficientSeries":
        raise NotImplementedError

    def sign(self) -> Optional[int]:
        """1 if every term >= 0, -1 if every term <= 0, 0 if all zero,
        None when signs are mixed."""
        raise NotImplementedError

    def remainders(self) -> Optional["CoefficientSeries"]:
        """Series whose i-th term is sum of terms after index i, or None
        when that tail has no closed form in the catalog."""
        return None


@dataclass(frozen=True)
class FiniteList(CoefficientSeries):
    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable[Rational]):
        object.__setattr__(self, "values",
                           tuple(Fraction(v) for v in values))

    def term(self, i: int) -> Fraction:
        return self.values[i] if 0 <= i < len(self.values) else Fraction(0)

    def abs_converges(self) -> bool:
        return True

    def sum(self) -> ExtReal:
        return ExtReal.of(sum(self.values, Fraction(0)))

    def scale(self, c):
        return FiniteList(v * Fraction(c) for v in self.values)

    def abs_series(self):
        return FiniteList(abs(v) for v in self.values)

    def sign(self):
        if all(v == 0 for v in self.values):
            return 0
        if all(v >= 0 for v in self.values):
            return 1
        if all(v <= 0 for v in self.values):
            return -1
        return None

    def remainders(self):
        total = sum(self.values, Fraction(0))
        acc, out = total, []
        for v in self.values:
            acc -= v
            out.append(acc)
        return FiniteList(out)


@dataclass(frozen=True)
class Geometric(CoefficientSeries):
    """Terms a * r**i for i = 0, 1, 2, ... with |r| < 1."""

    a: Fraction
    r: Fraction

    def __init__(self, a: Rational, r: Rational):
        a, r = Fraction(a), Fraction(r)
        if not abs(r) < 1:
            raise ValidationError(f"geometric ratio must satisfy |r| < 1, got {r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "r", r)

    def term(self, i: int) -> Fraction:
        return self.a * self.r ** i

    def abs_converges(self) -> bool:
        return True

    def sum(self) -> ExtReal:
        return ExtReal.of(self.a / (1 - self.r))

    def partial_sum(self, n: int) -> Fraction:
        if self.r == 0:
            return self.a if n >= 1 else Fraction(0)
        return self.a * (1 - self.r ** n) / (1 - self.r)

    def scale(self, c):
        return Geometric(self.a * Fraction(c), self.r)

    def abs_series(self):
        return Geometric(abs(self.a), abs(self.r))

    def sign(self):
        if self.a == 0:
            return 0
        if self.r >= 0:
            return 1 if self.a > 0 else -1
        return None

    def remainders(self):
        return Geometric(self.a * self.r / (1 - self.r), self.r)


_PSERIES_PARTIAL_TERMS = 1024


@dataclass(frozen=True)
class PSeries(CoefficientSeries):
    """Terms c / (i+1)**p for i = 0, 1, 2, ... with rational p > 0.

    Summable exactly when p > 1; for p <= 1 the sum is a signed infinity,
    which lets the same catalog describe vanishing but non-summable
    measure sequences such as -1/n.
    """

    c: Fraction
    p: Fraction

    def __init__(self, c: Rational, p: Rational):
        c, p = Fraction(c), Fraction(p)
        if p <= 0:
            raise ValidationError(f"power must be positive, got {p}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "p", p)

    def term(self, i: int) -> Fraction:
        if self.p.denominator != 1:
            raise NotSupported("terms of a fractional-power series are irrational")
        return self.c / Fraction(i + 1) ** self.p

    def abs_converges(self) -> bool:
        return self.c == 0 or self.p > 1

    def sum(self) -> ExtReal:
        if self.c == 0:
            return EXT_ZERO
        if self.p <= 1:
            return POS_INF if self.c > 0 else NEG_INF
        n = _PSERIES_PARTIAL_TERMS
        # integral test brackets the tail of sum 1/k**p after k = n;
        # the coefficient scales the whole bracket at the end
        if self.p.denominator == 1:
            partial = sum((Fraction(1) / Fraction(k) ** self.p
                           for k in range(1, n + 1)), Fraction(0))
            lo_tail = Fraction(1) / ((self.p - 1) * Fraction(n + 1) ** (self.p - 1))
            hi_tail = Fraction(1) / ((self.p - 1) * Fraction(n) ** (self.p - 1))
            tail = RatInterval(lo_tail, hi_tail)
        else:
            prec = get_config().precision_bits
            partial_enc = RatInterval.point(0)
            for i in range(n):
                partial_enc = partial_enc + pow_interval(
                    Fraction(i + 1), RatInterval.point(-self.p), prec)
            partial = partial_enc
            expo = RatInterval.point(1 - self.p)
            lo_pow = pow_interval(Fraction(n + 1), expo, prec)
            hi_pow = pow_interval(Fraction(n), expo, prec)
            inv = Fraction(1) / (self.p - 1)
            tail = RatInterval(lo_pow.lo * inv, hi_pow.hi * inv)
        enc = (RatInterval.point(partial) if isinstance(partial, Fraction)
               else partial) + tail
        return ExtReal.interval(enc * self.c)

    def partial_sum(self, n: int) -> Fraction:
        if self.p.denominator != 1:
            raise NotSupported("fractional-power partial sums are irrational")
        return sum((self.c / Fraction(i) ** self.p for i in range(1, n + 1)),
                   Fraction(0))

    def scale(self, k):
        return PSeries(self.c * Fraction(k), self.p)

    def abs_series(self):
        return PSeries(abs(self.c), self.p)

    def sign(self):
        if self.c == 0:
            return 0
        return 1 if self.c > 0 else -1


def series_add(a: CoefficientSeries, b: CoefficientSeries):
    """Termwise sum when it stays in the catalog, else None."""
    if isinstance(a, FiniteList) and isinstance(b, FiniteList):
        n = max(len(a.values), len(b.values))
        return FiniteList(a.term(i) + b.term(i) for i in range(n))
    if isinstance(a, Geometric) and isinstance(b, Geometric):
        if a.r == b.r:
            return Geometric(a.a + b.a, a.r)
        if a.a == 0:
            return b
        if b.a == 0:
            return a
        return None
    if isinstance(a, PSeries) and isinstance(b, PSeries) and a.p == b.p:
        return PSeries(a.c + b.c, a.p)
    for x, y in ((a, b), (b, a)):
        if isinstance(x, FiniteList) and all(v == 0 for v in x.values):
            return y
        if isinstance(x, Geometric) and x.a == 0:
            return y
        if isinstance(x, PSeries) and x.c == 0:
            return y
    return None


# ---------------------------------------------------------------------------
# sequences


class SeqTail:
    """Rule for the terms of a sequence after its explicit prefix.
    Index k counts from 0 at the first tail position."""

    def term(self, k: int) -> HPair:
        raise NotImplementedError

    def liminf(self) -> HPair:
        raise NotImplementedError

    def limsup(self) -> HPair:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantTail(SeqTail):
    value: HPair

    def term(self, k):
        return self.value

    def liminf(self):
        return self.value

    limsup = liminf


@dataclass(frozen=True)
class MeasureTail(SeqTail):
    """Terms (d, base + coeffs[k]); the coefficients vanish, so the tail
    converges to (d, base)."""

    d: Dimension
    coeffs: CoefficientSeries
    base: ExtReal = EXT_ZERO

    def term(self, k):
        return HPair(self.d, self.base + ExtReal.of(self.coeffs.term(k)))

    def liminf(self):
        return HPair(self.d, self.base)

    limsup = liminf


@dataclass(frozen=True)
class ClimbTail(SeqTail):
    """Terms (d_k, m_k) with d_k strictly below the limit dimension and
    d_k -> limit. Any bounded measure rule is allowed; the order-topology
    limit is (limit, 0) regardless."""

    limit_dim: Dimension
    measures: Optional[CoefficientSeries] = None

    def __post_init__(self):
        if self.limit_dim.cmp(DIM_ZERO) <= 0:
            raise ValidationError("a climb needs a positive limit dimension")

    def term(self, k):
        d = self.limit_dim._scale(1 - Fraction(1, 2 ** (k + 1)))
        m = self.measures.term(k) if self.measures is not None else Fraction(0)
        return HPair(d, ExtReal.of(m))

    def liminf(self):
        return HPair(self.limit_dim, EXT_ZERO)

    limsup = liminf


@dataclass(frozen=True)
class GrowthTail(SeqTail):
    """Terms (d, slope * (k+1)): measures drift monotonically to a signed
    infinity."""

    d: Dimension
    slope: Fraction

    def __post_init__(self):
        if self.slope == 0:
            raise ValidationError("growth slope must be nonzero")

    def term(self, k):
        return HPair(self.d, ExtReal.of(self.slope * (k + 1)))

    def liminf(self):
        return HPair(self.d, POS_INF if self.slope > 0 else NEG_INF)

    limsup = liminf


@dataclass(frozen=True)
class InterleaveTail(SeqTail):
    """Round-robin interleaving of component tails."""

    tails: tuple[SeqTail, ...]

    def __post_init__(self):
        if len(self.tails) < 2:
            raise ValidationError("interleave needs at least two rules")

    def term(self, k):
        n = len(self.tails)
        return self.tails[k % n].term(k // n)

    def liminf(self):
        return hpair_inf([t.liminf() for t in self.tails])

    def limsup(self):
        return hpair_sup([t.limsup() for t in self.tails])


@dataclass(frozen=True)
class HSeq:
    """A sequence of pairs: explicit prefix followed by a tail rule."""

    prefix: tuple[HPair, ...] = ()
    tail: SeqTail = ConstantTail(ZERO_PAIR)

    def term(self, n: int) -> HPair:
        """1-based term access."""
        if n < 1:
            raise ValidationError("sequence indices start at 1")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.tail.term(n - len(self.prefix) - 1)


def hseq_liminf(seq: HSeq) -> HPair:
    return seq.tail.liminf()


def hseq_limsup(seq: HSeq) -> HPair:
    return seq.tail.limsup()


def hseq_limit(seq: HSeq) -> HPair:
    lo, hi = seq.tail.liminf(), seq.tail.limsup()
    if not hpair_eq(lo, hi):
        raise DoesNotConverge(
            f"liminf {lo.render()} differs from limsup {hi.render()}")
    return lo


# ---------------------------------------------------------------------------
# series of pairs


def hpair_series(dims: Sequence[Dimension],
                 coeffs: Sequence[CoefficientSeries]) -> HPair:
    """Sum of the pair series with terms (dims[i], coeffs[i][k]).

    The value is (sup of dims, sum of the coefficient series attached to
    that top dimension): terms of lower dimension are absorbed. Requires
    absolute convergence or nonnegativity so the sum is order independent.
    """
    if len(dims) != len(coeffs):
        raise ValidationError("dims and coefficient series must pair up")
    if not dims:
        return ZERO_PAIR
    for i, a in enumerate(dims):
        for b in dims[i + 1:]:
            if a.cmp(b) == 0:
                raise ValidationError("dimensions must be distinct")
    ok = (all(s.abs_converges() for s in coeffs)
          or all(s.sign() is not None and s.sign() >= 0 for s in coeffs))
    if not ok:
        raise DoesNotConverge(
            "series must be absolutely convergent or have nonnegative terms")
    top = dims[0]
    for d in dims[1:]:
        top = dim_max(top, d)
    total = EXT_ZERO
    for d, s in zip(dims, coeffs):
        if d.cmp(top) == 0:
            total = total + s.sum()
    return HPair(top, total)
