"""Distances on pairs, sets and functions, and the convergence notions."""

import random
from fractions import Fraction as F

import pytest

from hausdorff.errors import (NoLimitFound, NotInLH, NotRepresentable,
                              ValidationError)
from hausdorff.hintegral import (PiecewiseFunction, Poly, indicator,
                                 zero_function)
from hausdorff.hvalue import (DIM_CANTOR, POS_INF, Dimension, HPair,
                              hpair_eq)
from hausdorff.metrics import (DEFAULT_SCHEDULE, AlternatingFunctionSeq,
                               ConstantFunctionSeq, HDistance,
                               PointPerturbation, PrefixPerturbation,
                               abs_integral, absolutely_integrable,
                               ball_member, dH_pairs, d_H, d_s,
                               finite_counting_mass, is_cauchy,
                               riesz_fischer_check, small_support_check,
                               triangle_ok)
from hausdorff.setalg import (HARMONIC, CantorAffine, CountableSeq,
                              FinitePoints, Interval, RepSet, diff, symdiff,
                              union)

I01 = RepSet.of(Interval(0, 1))
HARM = CountableSeq(HARMONIC, 0, 1)


def pair(d, m):
    return HPair.of(d, m)


# -- distance values ---------------------------------------------------------

def test_distance_rejects_negative_measure():
    with pytest.raises(ValidationError):
        HDistance.of(0, -1)


def test_distance_plus_is_coordinatewise():
    s = HDistance.of(F(1, 2), 3).plus(HDistance.of(F(1, 2), 4))
    assert s.value == pair(1, 7)
    t = HDistance.of(2, 0).plus(HDistance.of(2, 0))
    assert t.value.m.sign() == 0
    assert t.value.d.cmp(Dimension.rational(2)) > 0  # transient value 4


# -- the pair distance --------------------------------------------------------

def test_dH_pairs_equal_dimension_branch():
    assert dH_pairs(pair(1, 1), pair(1, 5)).value == pair(0, 4)


def test_dH_pairs_dimension_branch():
    assert dH_pairs(pair(0, 9), pair(1, 9)).value == pair(1, 0)


def test_dH_pairs_identity():
    assert dH_pairs(pair(F(1, 2), 3), pair(F(1, 2), 3)).is_zero()
    assert dH_pairs(pair(1, POS_INF), pair(1, POS_INF)).is_zero()


def test_dH_pairs_irrational_gap():
    gap = dH_pairs(pair(DIM_CANTOR, 1), pair(1, 2)).value
    assert gap.m.sign() == 0
    assert gap.d.cmp(Dimension.rational(0)) > 0
    assert gap.d.cmp(Dimension.rational(1)) < 0


def test_dH_pairs_canonical_dimension_equality():
    # log(4)/log(9) and log(2)/log(3) are the same dimension
    a = HPair(Dimension.log_ratio(4, 9), POS_INF.of(3))
    b = HPair(DIM_CANTOR, POS_INF.of(5))
    assert dH_pairs(a, b).value == pair(0, 2)


def test_dH_pairs_wants_nonnegative_measures():
    with pytest.raises(ValidationError):
        dH_pairs(pair(1, -1), pair(1, 1))


DIM_POOL = (Dimension.rational(0), Dimension.rational(F(1, 2)),
            Dimension.rational(1), Dimension.rational(F(3, 2)),
            Dimension.rational(2), DIM_CANTOR,
            Dimension.log_ratio(2, 5), Dimension.log_ratio(3, 5))


def _rand_pair(rng):
    d = rng.choice(DIM_POOL)
    if rng.random() < 0.08:
        return HPair(d, POS_INF)
    return HPair.of(d, F(rng.randrange(0, 40), rng.randrange(1, 7)))


def test_dH_pairs_axioms_random():
    rng = random.Random(2718)
    for _ in range(10_000):
        a, b, c = (_rand_pair(rng) for _ in range(3))
        ab, bc, ac = dH_pairs(a, b), dH_pairs(b, c), dH_pairs(a, c)
        assert hpair_eq(ab.value, dH_pairs(b, a).value)
        assert triangle_ok(ac, ab, bc)
        # first coordinates alone: the projection is a pseudo-metric
        assert triangle_ok(HDistance(HPair(ac.value.d, ab.value.m.of(0))),
                           HDistance(HPair(ab.value.d, ab.value.m.of(0))),
                           HDistance(HPair(bc.value.d, ab.value.m.of(0))))
    assert dH_pairs(_rand_pair(rng), _rand_pair(rng)).value.m.sign() >= 0


def test_second_projection_is_not_a_pseudo_metric():
    # distances (1,1), (2,0), (2,0) satisfy the pair triangle while the
    # second coordinates alone violate 1 <= 0 + 0
    xz, xy, yz = HDistance.of(1, 1), HDistance.of(2, 0), HDistance.of(2, 0)
    assert triangle_ok(xz, xy, yz)
    assert not xz.value.m.cmp(xy.value.m + yz.value.m) <= 0


# -- the set distance ----------------------------------------------------------

def test_d_s_point_difference():
    assert d_s(I01, RepSet.of(Interval(0, 1), FinitePoints([2]))).value == pair(0, 1)


def test_d_s_interval_difference():
    assert d_s(I01, RepSet.of(Interval(0, 2))).value == pair(1, 1)


def test_d_s_identity():
    assert d_s(I01, I01).is_zero()


def test_d_s_not_representable():
    with pytest.raises(NotRepresentable):
        d_s(I01, RepSet.of(CantorAffine(0, 1)))


def _rand_set(rng, cells):
    atoms = []
    for origin, kind in cells:
        if rng.random() < 0.25:
            continue
        if kind == "interval":
            lo = origin + F(rng.randrange(0, 4), 2)
            atoms.append(Interval(lo, lo + F(rng.randrange(1, 4), 2)))
        elif kind == "points":
            atoms.append(FinitePoints(
                {origin + F(rng.randrange(0, 9), 4)
                 for _ in range(rng.randrange(1, 4))}))
        elif kind == "cantor":
            base = CantorAffine(origin, 1)
            atoms.append(rng.choice(
                [base, base.children()[0], base.children()[1]]))
        else:
            atoms.append(CountableSeq(HARMONIC, origin, 1))
    out = RepSet.of(*atoms)
    if atoms and rng.random() < 0.3:
        probe = FinitePoints([cells[0][0] + F(1, 5)])
        out = diff(out, RepSet.of(probe))
    return out


def test_d_s_axioms_random():
    rng = random.Random(64901)
    done = 0
    while done < 500:
        cells = [(F(4 * k), rng.choice(("interval", "points", "cantor",
                                        "seq"))) for k in range(3)]
        a, b, c = (_rand_set(rng, cells) for _ in range(3))
        try:
            ab, bc, ac = d_s(a, b), d_s(b, c), d_s(a, c)
        except NotRepresentable:
            continue
        assert ab.is_zero() == (symdiff(a, b).is_empty())
        assert hpair_eq(ab.value, d_s(b, a).value)
        assert triangle_ok(ac, ab, bc)
        done += 1
    assert done == 500


# -- the function distance -----------------------------------------------------

def test_d_H_point_mass():
    f = indicator(RepSet.of(FinitePoints([0])))
    assert d_H(f, zero_function()).value == pair(0, 1)


def test_d_H_identity_function():
    f = PiecewiseFunction([(Interval(0, 1), Poly([0, 1]))])
    assert d_H(f, zero_function()).value == pair(1, F(1, 2))


def test_d_H_equal_functions():
    f = indicator(I01, 7)
    assert d_H(f, f).is_zero()


def test_d_H_needs_absolute_integrability():
    heavy = indicator(RepSet.of(HARM))
    with pytest.raises(NotInLH):
        d_H(heavy, zero_function())
    with pytest.raises(NotInLH):
        d_H(zero_function(), indicator(RepSet.of(Interval(0, None))))


def test_abs_integral_mixes_signs():
    f = PiecewiseFunction([(Interval(-1, 1), Poly([0, 1]))])
    assert abs_integral(f) == pair(1, 1)
    assert absolutely_integrable(f)


def _bump_points(rng, origin):
    pts = {origin + F(rng.randrange(0, 9), 4) for _ in range(rng.randrange(1, 4))}
    return indicator(RepSet.of(FinitePoints(pts)),
                     F(rng.randrange(1, 6), rng.randrange(1, 4)))


def _bump_interval(rng, origin):
    lo = origin + F(rng.randrange(0, 4), 2)
    atom = Interval(lo, lo + F(rng.randrange(1, 4), 2))
    v = F(rng.randrange(1, 6), rng.randrange(1, 4))
    if rng.random() < 0.5:
        v = -v
    return indicator(RepSet.of(atom), v)


def _bump_cantor(rng, origin):
    base = CantorAffine(origin, 1)
    atom = rng.choice([base, base.children()[0], base.children()[1]])
    return indicator(RepSet.of(atom), F(rng.randrange(1, 6), rng.randrange(1, 4)))


def _function_triple(rng, case):
    """Three functions whose pairwise differences stay in the catalog,
    steered toward one case of the metric proof's dimension split."""
    if case == "equal":
        return (_bump_interval(rng, F(0)), _bump_interval(rng, F(4)),
                _bump_interval(rng, F(8)))
    if case == "smaller":
        f = _bump_interval(rng, F(0))
        g = _bump_points(rng, F(0))
        h = _bump_interval(rng, F(4))
        return f, g, h
    return (_bump_points(rng, F(0)), _bump_cantor(rng, F(4)),
            _bump_interval(rng, F(8)))


def test_d_H_axioms_random():
    rng = random.Random(757575)
    cases = ("equal", "smaller", "distinct")
    for i in range(500):
        f, g, h = _function_triple(rng, cases[i % 3])
        fg, gh, fh = d_H(f, g), d_H(g, h), d_H(f, h)
        assert hpair_eq(fg.value, d_H(g, f).value)
        assert d_H(f, f).is_zero()
        assert triangle_ok(fh, fg, gh)
        zero = fg.value.m.of(0)
        assert triangle_ok(HDistance(HPair(fh.value.d, zero)),
                           HDistance(HPair(fg.value.d, zero)),
                           HDistance(HPair(gh.value.d, zero)))


# -- balls ---------------------------------------------------------------------

def test_ball_member_measure_radius():
    assert ball_member(pair(1, 1), pair(1, 2), pair(0, 2), dH_pairs)


def test_ball_member_lexicographic():
    assert ball_member(pair(1, 1), pair(1, 2), pair(1, 0), dH_pairs)


def test_ball_member_dimension_gap_escapes():
    assert not ball_member(pair(0, 1), pair(1, 1), pair(0, 5), dH_pairs)


def test_ball_member_rejects_zero_radius():
    with pytest.raises(ValidationError):
        ball_member(pair(1, 1), pair(1, 1), pair(0, 0), dH_pairs)


def test_ball_member_with_set_metric():
    assert ball_member(I01, RepSet.of(Interval(0, 1), FinitePoints([3])),
                       pair(0, 2), d_s)
    assert not ball_member(I01, RepSet.of(Interval(0, 3)), pair(0, 100), d_s)


# -- Cauchy sequences and completeness ------------------------------------------

def test_point_perturbation_is_cauchy():
    seq = PointPerturbation(indicator(I01), 0)
    assert is_cauchy(seq)


def test_prefix_perturbation_is_cauchy():
    seq = PrefixPerturbation(indicator(I01), CountableSeq(HARMONIC, 2, 1))
    assert is_cauchy(seq)


def test_constant_sequence_is_cauchy():
    assert is_cauchy(ConstantFunctionSeq(indicator(I01)))


def test_alternating_sequence_is_not_cauchy():
    seq = AlternatingFunctionSeq(indicator(I01),
                                 indicator(RepSet.of(Interval(2, 3))))
    assert not is_cauchy(seq)
    # a coarse schedule that the gap (1, ...) still defeats
    assert not is_cauchy(seq, [F(100)])


def test_schedule_validation():
    seq = ConstantFunctionSeq(indicator(I01))
    with pytest.raises(ValidationError):
        is_cauchy(seq, [])
    with pytest.raises(ValidationError):
        is_cauchy(seq, [F(0)])


def test_riesz_fischer_point_perturbation():
    base = indicator(I01)
    seq = PointPerturbation(base, 0)
    limit, cert = riesz_fischer_check(seq)
    assert limit == base
    assert len(cert.entries) == len(DEFAULT_SCHEDULE)
    for eps, n in cert.entries:
        assert d_H(seq.term(n), limit).value < pair(0, eps)
        assert d_H(seq.term(n + 10), limit).value < pair(0, eps)
    assert cert.index_for(F(1, 10 ** 6)) == 20


def test_riesz_fischer_prefix_perturbation():
    base = indicator(I01, 2)
    seq = PrefixPerturbation(base, HARM, coeff=3)
    limit, cert = riesz_fischer_check(seq)
    assert limit == base
    for eps, n in cert.entries:
        assert d_H(seq.term(n), limit).value < pair(0, eps)


def test_riesz_fischer_constant():
    base = indicator(RepSet.of(FinitePoints([5])), -2)
    limit, cert = riesz_fischer_check(ConstantFunctionSeq(base))
    assert limit == base
    assert cert.index_for(1) == 1


def test_riesz_fischer_alternating_has_no_limit():
    seq = AlternatingFunctionSeq(indicator(I01),
                                 indicator(RepSet.of(Interval(2, 3))))
    with pytest.raises(NoLimitFound):
        riesz_fischer_check(seq)


def test_riesz_fischer_slower_ratio():
    seq = PointPerturbation(indicator(I01), F(1, 2), coeff=5, ratio=F(2, 3))
    limit, cert = riesz_fischer_check(seq, [F(1, 100)])
    assert limit == indicator(I01)
    n = cert.index_for(F(1, 100))
    assert F(5) * F(2, 3) ** n < F(1, 100)
    with pytest.raises(KeyError):
        cert.index_for(F(1, 7))


def test_perturbation_validation():
    with pytest.raises(ValidationError):
        PointPerturbation(indicator(I01), 0, coeff=0)
    with pytest.raises(ValidationError):
        PointPerturbation(indicator(I01), 0, ratio=F(3, 2))
    with pytest.raises(NotInLH):
        PointPerturbation(indicator(RepSet.of(Interval(0, None))), 0)
    with pytest.raises(ValidationError):
        PrefixPerturbation(indicator(I01), CountableSeq(HARMONIC, 0, 1, deletions=(2,)))


def test_perturbation_overlapping_base_support():
    # bumping points inside the base's own support still cancels exactly
    seq = PrefixPerturbation(indicator(I01), HARM)
    limit, _ = riesz_fischer_check(seq, [F(1, 1000)])
    assert limit == indicator(I01)


# -- small supports --------------------------------------------------------------

def test_finite_counting_mass_examples():
    assert finite_counting_mass(indicator(RepSet.of(FinitePoints([1, 2])), 5))
    assert not finite_counting_mass(indicator(I01))
    assert not finite_counting_mass(indicator(RepSet.of(HARM)))


def test_small_support_check_random():
    rng = random.Random(90210)
    for _ in range(200):
        sets = _rand_set(rng, [(F(0), rng.choice(("interval", "points",
                                                  "cantor", "seq")))])
        if sets.is_empty():
            continue
        f = indicator(sets, F(rng.randrange(1, 5)))
        assert small_support_check(f)
