"""Order, algebra and limit behaviour of dimension-measure pairs."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hausdorff.errors import (DoesNotConverge, IncomparableDimensions,
                              UndefinedSum, ValidationError)
from hausdorff.hvalue import (DIM_CANTOR, DIM_ONE, DIM_ZERO, NEG_INF,
                              POS_INF, ZERO_PAIR, ClimbTail, ConstantTail,
                              Dimension, ExtReal, FiniteList, Geometric,
                              GrowthTail, HPair, HSeq, InterleaveTail,
                              MeasureTail, PSeries, dim_abs_diff, dim_max,
                              ext_sum, hpair_add, hpair_eq, hpair_inf,
                              hpair_leq, hpair_lt, hpair_series, hpair_sum,
                              hpair_sup, hseq_liminf, hseq_limit,
                              hseq_limsup)


def pair(d, m):
    return HPair.of(d, m)


# --------------------------------------------------------------------------
# dimensions


def test_log_ratio_normalization():
    assert Dimension.log_ratio(4, 9) == Dimension.log_ratio(2, 3)
    assert Dimension.log_ratio(8, 27) == Dimension.log_ratio(2, 3)
    assert Dimension.log_ratio(16, 81) == Dimension.log_ratio(2, 3)
    # common base collapses to a rational
    assert Dimension.log_ratio(4, 8) == Dimension.rational(F(2, 3))
    assert Dimension.log_ratio(2, 4) == Dimension.rational(F(1, 2))


def test_log_ratio_validation():
    with pytest.raises(ValidationError):
        Dimension.log_ratio(9, 4)  # value above 1
    with pytest.raises(ValidationError):
        Dimension.log_ratio(1, 3)
    with pytest.raises(ValidationError):
        Dimension.rational(F(5, 2))  # outside [0, 2]


def test_dimension_compare_exact_power_trick():
    d = DIM_CANTOR
    # 0.63092975357 < log(2)/log(3) < 0.63092975358
    assert d.cmp(Dimension.rational(F(63092975357, 10**11))) == 1
    assert d.cmp(Dimension.rational(F(63092975358, 10**11))) == -1
    assert d.cmp(Dimension.log_ratio(4, 9)) == 0
    # a genuine rational hit: log(4)/log(8) = 2/3 exactly
    assert Dimension.log_ratio(4, 8).cmp(Dimension.rational(F(2, 3))) == 0


def test_dimension_lincomb_cancellation():
    # log(2)/log(3) - log(2)/log(9) equals log(2)/log(9) exactly
    gap = dim_abs_diff(DIM_CANTOR, Dimension.log_ratio(2, 9))
    assert gap.cmp(Dimension.log_ratio(2, 9)) == 0


def test_incomparable_raises_at_cap():
    import mpmath
    with mpmath.workprec(700):
        x = mpmath.log(2) / mpmath.log(3)
        approx = mpmath.nstr(x, 170)
    digits = approx.replace("0.", "")
    close = F(int(digits), 10 ** len(digits))
    # closer to log(2)/log(3) than 2^-256 but not equal
    with pytest.raises(IncomparableDimensions):
        DIM_CANTOR.cmp(Dimension.rational(close))


def test_lexicographic_order():
    assert hpair_lt(pair(0, 10**9), pair(F(1, 2), -(10**9)))
    assert hpair_lt(pair(DIM_CANTOR, POS_INF), pair(1, NEG_INF))
    assert hpair_lt(pair(1, -5), pair(1, -4))
    assert hpair_leq(pair(1, 3), pair(1, 3))
    assert not hpair_lt(pair(1, 3), pair(1, 3))


# --------------------------------------------------------------------------
# extended reals


def test_ext_arithmetic():
    assert (ExtReal.of(2) + ExtReal.of(F(1, 3))).as_fraction() == F(7, 3)
    assert (POS_INF + ExtReal.of(5)) == POS_INF
    assert (NEG_INF + ExtReal.of(5)) == NEG_INF
    with pytest.raises(UndefinedSum):
        POS_INF + NEG_INF
    assert abs(NEG_INF) == POS_INF
    assert NEG_INF.scale(-2) == POS_INF
    assert ext_sum([ExtReal.of(1), POS_INF, ExtReal.of(-7)]) == POS_INF
    with pytest.raises(UndefinedSum):
        ext_sum([POS_INF, ExtReal.of(1), NEG_INF])


# --------------------------------------------------------------------------
# pair algebra


def test_add_examples():
    assert hpair_eq(hpair_add(pair(1, -1), pair(0, 1)), pair(1, -1))
    assert hpair_eq(hpair_add(pair(1, 2), pair(1, 3)), pair(1, 5))
    assert hpair_eq(hpair_add(pair(DIM_CANTOR, 4), pair(0, 100)),
                    pair(DIM_CANTOR, 4))


def test_identity_element():
    for h in [pair(0, 0), pair(1, -7), pair(DIM_CANTOR, F(3, 2)),
              pair(F(1, 2), POS_INF)]:
        assert hpair_eq(hpair_add(h, ZERO_PAIR), h)
        assert hpair_eq(hpair_add(ZERO_PAIR, h), h)


def _random_pair(rng):
    d = rng.choice([DIM_ZERO, DIM_ONE, DIM_CANTOR,
                    Dimension.rational(F(rng.randrange(0, 5), 3))])
    kind = rng.randrange(4)
    if kind == 0:
        m = POS_INF
    elif kind == 1:
        m = NEG_INF
    else:
        m = ExtReal.of(F(rng.randrange(-50, 50), rng.randrange(1, 9)))
    return HPair(d, m)


def test_add_commutative_associative_seeded():
    rng = random.Random(20260818)
    for _ in range(2000):
        a, b, c = (_random_pair(rng) for _ in range(3))
        try:
            ab = hpair_add(a, b)
        except UndefinedSum:
            with pytest.raises(UndefinedSum):
                hpair_add(b, a)
            continue
        assert hpair_eq(ab, hpair_add(b, a))
        try:
            left = hpair_add(ab, c)
        except UndefinedSum:
            left = None
        try:
            right = hpair_add(a, hpair_add(b, c))
        except UndefinedSum:
            right = None
        if left is not None and right is not None:
            assert hpair_eq(left, right)


def test_sum_matches_any_fold_order():
    rng = random.Random(7)
    for _ in range(300):
        items = [_random_pair(rng) for _ in range(rng.randrange(1, 6))]
        try:
            total = hpair_sum(items)
        except UndefinedSum:
            continue
        shuffled = items[:]
        rng.shuffle(shuffled)
        assert hpair_eq(total, hpair_sum(shuffled))


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
@settings(max_examples=200, deadline=None)
def test_add_associative_same_dimension(x, y, z):
    a, b, c = pair(1, x), pair(1, y), pair(1, z)
    assert hpair_eq(hpair_add(hpair_add(a, b), c),
                    hpair_add(a, hpair_add(b, c)))


def test_inf_sup_finite_sets():
    n_max = 12
    items = [pair(1 - F(1, n), 0) for n in range(1, n_max + 1)]
    assert hpair_eq(hpair_sup(items), pair(1 - F(1, n_max), 0))
    assert hpair_eq(hpair_inf(items), pair(0, 0))
    mixed = [pair(DIM_CANTOR, -3), pair(DIM_CANTOR, 5), pair(F(1, 2), 100)]
    assert hpair_eq(hpair_sup(mixed), pair(DIM_CANTOR, 5))
    assert hpair_eq(hpair_inf(mixed), pair(F(1, 2), 100))


# --------------------------------------------------------------------------
# sequences


def test_constant_and_prefix():
    s = HSeq(prefix=(pair(0, 1), pair(0, 2)), tail=ConstantTail(pair(1, 5)))
    assert hpair_eq(s.term(1), pair(0, 1))
    assert hpair_eq(s.term(2), pair(0, 2))
    assert hpair_eq(s.term(3), pair(1, 5))
    assert hpair_eq(hseq_limit(s), pair(1, 5))


def test_vanishing_measure_limit():
    # s_n = (1, -1/n) -> (1, 0)
    s = HSeq(tail=MeasureTail(DIM_ONE, PSeries(-1, 1)))
    assert hpair_eq(s.term(4), pair(1, F(-1, 4)))
    assert hpair_eq(hseq_limit(s), pair(1, 0))


def test_measure_tail_with_base():
    # s_n = (1, 1 - 1/n) -> (1, 1)
    s = HSeq(tail=MeasureTail(DIM_ONE, PSeries(-1, 1), base=ExtReal.of(1)))
    assert hpair_eq(s.term(2), pair(1, F(1, 2)))
    assert hpair_eq(hseq_limit(s), pair(1, 1))


def test_dimension_climb_limit():
    s = HSeq(tail=ClimbTail(DIM_ONE, measures=FiniteList([9, -3, 7])))
    for n in range(1, 12):
        assert s.term(n).d.cmp(DIM_ONE) < 0
    assert hpair_eq(hseq_limit(s), pair(1, 0))
    irr = HSeq(tail=ClimbTail(DIM_CANTOR))
    assert hpair_eq(hseq_limit(irr), pair(DIM_CANTOR, 0))


def test_growth_tail():
    s = HSeq(tail=GrowthTail(DIM_ZERO, F(1)))
    assert hpair_eq(s.term(3), pair(0, 3))
    assert hpair_eq(hseq_limit(s), pair(0, POS_INF))


def test_interleaved_liminf_limsup():
    s = HSeq(tail=InterleaveTail((ConstantTail(pair(1, -1)),
                                  ConstantTail(pair(1, 1)))))
    assert hpair_eq(hseq_liminf(s), pair(1, -1))
    assert hpair_eq(hseq_limsup(s), pair(1, 1))
    with pytest.raises(DoesNotConverge):
        hseq_limit(s)


def test_monotone_limit_is_sup_of_range():
    rng = random.Random(99)
    for _ in range(40):
        base = F(rng.randrange(1, 30), rng.randrange(1, 9))
        tail = MeasureTail(DIM_ONE, Geometric(-base, F(1, 2)),
                           base=ExtReal.of(base))
        prefix = tuple(pair(0, k) for k in range(rng.randrange(0, 4)))
        s = HSeq(prefix=prefix, tail=tail)
        limit = hseq_limit(s)
        terms = [s.term(n) for n in range(1, 60)]
        for a, b in zip(terms, terms[1:]):
            assert hpair_leq(a, b)
        assert all(hpair_leq(t, limit) for t in terms)
        assert hpair_eq(hpair_sup(terms + [limit]), limit)


# --------------------------------------------------------------------------
# series of pairs


def test_series_single_dimension():
    out = hpair_series([DIM_ZERO], [Geometric(F(1, 2), F(1, 2))])
    assert hpair_eq(out, pair(0, 1))


def test_series_top_dimension_wins():
    out = hpair_series([DIM_ZERO, DIM_CANTOR],
                       [Geometric(5, F(1, 3)), Geometric(F(1, 4), F(1, 2))])
    assert hpair_eq(out, pair(DIM_CANTOR, F(1, 2)))


def test_series_empty_top_sum():
    # top dimension present with all-zero coefficients gives (d, 0)
    out = hpair_series([DIM_ONE, DIM_ZERO],
                       [FiniteList([]), Geometric(1, F(1, 2))])
    assert hpair_eq(out, pair(1, 0))


def test_series_nonnegative_divergent_is_allowed():
    out = hpair_series([DIM_ZERO], [PSeries(1, 1)])
    assert hpair_eq(out, pair(0, POS_INF))


def test_series_rejects_conditional():
    with pytest.raises(DoesNotConverge):
        hpair_series([DIM_ZERO], [PSeries(-1, 1)])


def test_series_matches_partial_sum_limit():
    rng = random.Random(13)
    for _ in range(50):
        a = F(rng.randrange(1, 20), rng.randrange(1, 7))
        r = F(rng.randrange(1, 9), 10)
        coeffs = Geometric(a, r)
        value = hpair_series([DIM_ONE], [coeffs])
        # partial sums: (1, partial_n); encode via remainders
        rem = coeffs.remainders()
        seq = HSeq(tail=MeasureTail(DIM_ONE, rem.scale(-1), base=coeffs.sum()))
        for n in (1, 2, 5, 9):
            expect = coeffs.partial_sum(n)
            assert seq.term(n).m.as_fraction() == expect
        assert hpair_eq(hseq_limit(seq), value)


def test_pseries_sum_encloses_basel_value():
    # independent check: sum 1/n^2 = pi^2/6
    import mpmath
    with mpmath.workprec(120):
        target = mpmath.pi ** 2 / 6
        lo = mpmath.mpf(target) * (1 - mpmath.mpf(2) ** -100)
    enc = PSeries(1, 2).sum().enclosure()
    assert float(enc.lo) < float(target) < float(enc.hi)
    assert float(enc.rad) < 1e-5


def test_pseries_tail_indexing():
    s = PSeries(3, 1)
    assert s.term(0) == 3
    assert s.term(3) == F(3, 4)
