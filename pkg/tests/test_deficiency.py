"""Deficiency measurements: distance from continuity, evenness, convexity."""

import random
from fractions import Fraction as F

import pytest

from hausdorff.deficiency import (ConvexPolygon, PlanarSet, Points2D, Segment,
                                  cluster_set, convex_hull, defi_continuity_cluster,
                                  defi_continuity_dist, defi_continuity_osc,
                                  defi_convex, defi_even, oscillation,
                                  planar_measure, reflect_function)
from hausdorff.errors import NotRepresentable, NotSupported, ValidationError
from hausdorff.hintegral import (Const, PiecewiseFunction, Poly, SeriesValues,
                                 add, h_integral)
from hausdorff.hvalue import DIM_CANTOR, FiniteList, Geometric, HPair, PSeries
from hausdorff.setalg import (GEOMETRIC, HARMONIC, CantorAffine, CountableSeq,
                              FinitePoints, Interval, RepSet)


def pair(d, m):
    return HPair.of(d, m)


HARM = CountableSeq(HARMONIC, 0, 1)


# ---------------------------------------------------------------------------
# oscillation

def test_step_function_oscillation():
    step = PiecewiseFunction([(Interval(0, None), Const(1))])
    prof = oscillation(step)
    assert prof.point_values == ((F(0), F(1)),)
    assert defi_continuity_osc(step) == pair(0, 1)


def test_oscillation_of_continuous_ramp_vanishes():
    # x - x^2 is 0 at both endpoints, so gluing to the ambient is seamless
    tent = PiecewiseFunction([(Interval(0, 1), Poly([0, 1, -1]))])
    assert oscillation(tent).is_empty()
    assert defi_continuity_osc(tent) == pair(0, 0)


def test_ramp_with_cliff_oscillates_at_the_cliff():
    ramp = PiecewiseFunction([(Interval(0, 1), Poly([0, 1]))])
    prof = oscillation(ramp)
    assert prof.point_values == ((F(1), F(1)),)
    assert prof.omega_at(0) == 0


def test_geometric_values_on_harmonic_points():
    g = PiecewiseFunction([(HARM, SeriesValues(Geometric(F(1, 2), F(1, 2))))])
    prof = oscillation(g)
    # terms vanish toward the accumulation point, so omega(0) = 0
    assert prof.omega_at(0) == 0
    assert prof.omega_at(F(1, 3)) == F(1, 8)
    assert defi_continuity_osc(g) == pair(0, 1)


def test_constant_sequence_value_oscillates_at_the_limit():
    g = PiecewiseFunction([(HARM, Const(3))])
    prof = oscillation(g)
    assert prof.omega_at(0) == 3
    assert defi_continuity_osc(g).m.is_finite() is False


def test_interval_endpoint_owned_away_from_sequence():
    # the interval owns 1/2, so that index leaves the sequence entry and
    # gets a pointwise omega instead
    seq = CountableSeq(HARMONIC, 0, 1, deletions=[F(1, 2), 1])
    f = PiecewiseFunction([(seq, Const(3)), (Interval(F(1, 2), 2), Const(7))])
    prof = oscillation(f)
    assert prof.omega_at(F(1, 2)) == 7
    assert prof.omega_at(F(1, 3)) == 3
    (atom, _), = prof.seq_values
    assert F(1, 2) in atom.deletions
    # profile atoms stay disjoint, so integrating it is legal
    h_integral(prof.as_function())


def test_oscillation_rejects_cantor_pieces():
    dust = PiecewiseFunction([(CantorAffine(0, 1), Const(2))])
    with pytest.raises(NotRepresentable):
        oscillation(dust)


def test_profile_as_function_groups_equal_heights():
    f = PiecewiseFunction([(FinitePoints([0, 5]), Const(2)),
                           (FinitePoints([1]), Const(-2))])
    g = oscillation(f).as_function()
    assert g.value_at(0) == 2 and g.value_at(1) == 2 and g.value_at(5) == 2
    assert len(g.terms) == 1


# ---------------------------------------------------------------------------
# repair distance

def test_jump_is_an_essential_discontinuity():
    step = PiecewiseFunction([(Interval(0, None), Const(1))])
    assert defi_continuity_dist(step) == pair(1, 0)


def test_point_spikes_are_removable():
    f = PiecewiseFunction([(FinitePoints([0]), Const(5)),
                           (FinitePoints([2]), Const(-1))])
    assert defi_continuity_dist(f) == pair(0, 6)


def test_matching_side_limits_with_wrong_value():
    # 1 - x^2 vanishes at the cut points, so only the carved-out origin
    # with its stray value needs repair
    f = PiecewiseFunction([(Interval(-1, 1, deletions=[0]), Poly([1, 0, -1])),
                           (FinitePoints([0]), Const(9))])
    assert defi_continuity_dist(f) == pair(0, 8)


def test_continuous_function_needs_no_repair():
    tent = PiecewiseFunction([(Interval(0, 1), Poly([0, 1, -1]))])
    assert defi_continuity_dist(tent) == pair(0, 0)


def test_repair_distance_rejects_sequence_pieces():
    g = PiecewiseFunction([(HARM, SeriesValues(Geometric(F(1, 2), F(1, 2))))])
    with pytest.raises(NotSupported):
        defi_continuity_dist(g)


# ---------------------------------------------------------------------------
# cluster sets

def test_step_cluster_set_at_the_jump():
    step = PiecewiseFunction([(Interval(0, None), Const(1))])
    assert cluster_set(step, 0) == RepSet.of(FinitePoints([0, 1]))
    assert cluster_set(step, 7) == RepSet.of(FinitePoints([1]))
    assert defi_continuity_cluster(step) == pair(0, 2)


def test_three_way_cluster():
    f = PiecewiseFunction([(Interval(None, 0, deletions=[0]), Const(-1)),
                           (Interval(0, None, deletions=[0]), Const(1)),
                           (FinitePoints([0]), Const(5))])
    assert cluster_set(f, 0) == RepSet.of(FinitePoints([-1, 1, 5]))
    assert defi_continuity_cluster(f) == pair(0, 3)


def test_continuous_cluster_sets_are_singletons():
    tent = PiecewiseFunction([(Interval(0, 1), Poly([0, 1, -1]))])
    assert defi_continuity_cluster(tent) == pair(0, 1)
    assert cluster_set(tent, F(1, 2)) == RepSet.of(FinitePoints([F(1, 4)]))


def test_sequence_points_cluster_against_the_ambient():
    g = PiecewiseFunction([(HARM, Const(3))])
    assert defi_continuity_cluster(g) == pair(0, 2)


# ---------------------------------------------------------------------------
# evenness

def test_odd_ramp_even_deficiency():
    ramp = PiecewiseFunction([(Interval(0, 1), Poly([0, 1]))])
    assert defi_even(ramp) == pair(1, 1)


def test_single_point_even_deficiency():
    one = PiecewiseFunction([(FinitePoints([1]), Const(1))])
    assert defi_even(one) == pair(0, 2)


def test_even_polynomial_passes():
    sym = PiecewiseFunction([(Interval(-1, 1), Poly([0, 0, 1]))])
    assert defi_even(sym) == pair(0, 0)


def test_cantor_dust_reflection():
    asym = PiecewiseFunction([(CantorAffine(0, 1), Const(2))])
    assert defi_even(asym) == HPair.of(DIM_CANTOR, 4)
    sym = PiecewiseFunction([(CantorAffine(F(-1, 2), 1), Const(2))])
    assert defi_even(sym) == pair(0, 0)


def test_reflection_is_an_involution():
    f = PiecewiseFunction([
        (Interval(1, 3, deletions=[2]), Poly([1, -1, 2])),
        (FinitePoints([-5, 5]), Const(2)),
        (CountableSeq(GEOMETRIC, 1, -1, F(1, 3)), SeriesValues(PSeries(2, 2))),
        (CantorAffine(4, F(1, 2)), Const(1)),
    ])
    assert reflect_function(reflect_function(f)) == f


def test_reflection_preserves_values():
    rng = random.Random(20)
    f = PiecewiseFunction([
        (Interval(F(1, 2), 3), Poly([1, 2, -1])),
        (FinitePoints([-2, 5]), Const(4)),
        (HARM, SeriesValues(Geometric(1, F(1, 2)))),
    ], trusted=True)
    g = reflect_function(f)
    for _ in range(200):
        x = F(rng.randint(-12, 12), rng.randint(1, 9))
        assert g.value_at(-x) == f.value_at(x)


def test_symmetrised_function_is_even():
    f = PiecewiseFunction([(Interval(1, 2), Poly([0, 1])),
                           (FinitePoints([3]), Const(4))])
    h = add(f, reflect_function(f))
    assert defi_even(h) == pair(0, 0)


# ---------------------------------------------------------------------------
# brute-force agreement on step functions

def _rand_step(rng):
    """Step function on a half-integer grid; every interval piece deletes
    both endpoints and cut values ride on point atoms, so the pieces are
    disjoint by construction."""
    cuts = sorted(rng.sample([F(k, 2) for k in range(-12, 13)],
                             rng.randint(2, 6)))
    terms = []
    for lo, hi in zip(cuts, cuts[1:]):
        c = rng.randint(-3, 3)
        if c:
            terms.append((Interval(lo, hi, deletions=(lo, hi)), Const(c)))
    for x in cuts:
        v = rng.randint(-3, 3)
        if v:
            terms.append((FinitePoints([x]), Const(v)))
    return PiecewiseFunction(terms, trusted=True), cuts


DELTA = F(1, 8)  # clears the grid spacing, probes land inside the gaps


def test_random_steps_oscillation_matches_probes():
    rng = random.Random(101)
    for _ in range(120):
        f, cuts = _rand_step(rng)
        total = F(0)
        prof = oscillation(f)
        for x in cuts:
            vals = {f.value_at(x - DELTA), f.value_at(x), f.value_at(x + DELTA)}
            w = max(vals) - min(vals)
            assert prof.omega_at(x) == w
            total += w
        assert defi_continuity_osc(f) == pair(0, total)


def test_random_steps_repair_matches_probes():
    rng = random.Random(102)
    for _ in range(120):
        f, cuts = _rand_step(rng)
        if any(f.value_at(x - DELTA) != f.value_at(x + DELTA) for x in cuts):
            assert defi_continuity_dist(f) == pair(1, 0)
        else:
            repair = sum(abs(f.value_at(x) - f.value_at(x - DELTA))
                         for x in cuts)
            assert defi_continuity_dist(f) == pair(0, repair)


def test_random_steps_cluster_matches_probes():
    rng = random.Random(103)
    for _ in range(120):
        f, cuts = _rand_step(rng)
        best = 1
        for x in cuts:
            best = max(best, len({f.value_at(x - DELTA), f.value_at(x),
                                  f.value_at(x + DELTA)}))
        assert defi_continuity_cluster(f) == pair(0, best)


def test_random_steps_even_deficiency_matches_probes():
    rng = random.Random(104)
    for _ in range(120):
        f, cuts = _rand_step(rng)
        grid = sorted({c for c in cuts} | {-c for c in cuts})
        length = F(0)
        for lo, hi in zip(grid, grid[1:]):
            mid = (lo + hi) / 2
            length += (hi - lo) * abs(f.value_at(mid) - f.value_at(-mid))
        if length:
            assert defi_even(f) == pair(1, length)
        else:
            spikes = sum(abs(f.value_at(x) - f.value_at(-x)) for x in grid)
            assert defi_even(f) == pair(0, spikes)


# ---------------------------------------------------------------------------
# planar scenes

def test_planar_measure_grades_by_top_kind():
    scene = PlanarSet([ConvexPolygon([(0, 0), (2, 0), (1, 2)]),
                       Segment((5, 0), (5, 3)),
                       Points2D([(9, 9)])])
    assert planar_measure(scene) == pair(2, 2)
    assert planar_measure(PlanarSet([Segment((0, 0), (3, 4))])) == pair(1, 5)
    assert planar_measure(PlanarSet([Points2D([(0, 0), (1, 1)])])) == pair(0, 2)
    assert planar_measure(PlanarSet([])) == pair(0, 0)


def test_irrational_segment_length_is_enclosed():
    p = planar_measure(PlanarSet([Segment((0, 0), (1, 1))]))
    enc = p.m.enclosure()
    assert enc.lo ** 2 < 2 < enc.hi ** 2


def test_planar_atoms_must_be_disjoint():
    with pytest.raises(ValidationError):
        PlanarSet([Segment((0, 0), (2, 2)), Segment((0, 2), (2, 0))])
    with pytest.raises(ValidationError):
        PlanarSet([ConvexPolygon([(0, 0), (4, 0), (0, 4)]),
                   Points2D([(1, 1)])])
    with pytest.raises(ValidationError):
        PlanarSet([ConvexPolygon([(0, 0), (4, 0), (0, 4)]),
                   Segment((0, 0), (-1, -1))])  # touches at a vertex
    with pytest.raises(ValidationError):
        PlanarSet([ConvexPolygon([(0, 0), (4, 0), (4, 4), (0, 4)]),
                   ConvexPolygon([(2, 2), (6, 2), (6, 6), (2, 6)])])


def test_polygon_validation():
    with pytest.raises(ValidationError):
        ConvexPolygon([(0, 0), (1, 0)])
    with pytest.raises(ValidationError):
        ConvexPolygon([(0, 0), (0, 1), (1, 0)])  # clockwise
    with pytest.raises(ValidationError):
        ConvexPolygon([(0, 0), (1, 0), (2, 0), (1, 1)])  # collinear run
    with pytest.raises(ValidationError):
        Segment((1, 1), (1, 1))


def test_triangle_of_points():
    tri = PlanarSet([Points2D([(0, 0), (1, 0), (0, 1)])])
    assert defi_convex(tri) == pair(2, F(1, 2))


def test_parallel_segments_leave_the_strip():
    par = PlanarSet([Segment((0, 0), (1, 0)), Segment((0, 1), (1, 1))])
    assert defi_convex(par) == pair(2, 1)


def test_single_convex_atoms_have_no_deficiency():
    assert defi_convex(PlanarSet([ConvexPolygon([(0, 0), (2, 0), (1, 2)])])) \
        == pair(0, 0)
    assert defi_convex(PlanarSet([Segment((0, 0), (5, 5))])) == pair(0, 0)
    assert defi_convex(PlanarSet([Points2D([(3, 3)])])) == pair(0, 0)


def test_collinear_scene_leaves_a_gap():
    scene = PlanarSet([Segment((0, 0), (1, 0)), Points2D([(2, 0)])])
    assert defi_convex(scene) == pair(1, 1)
    diag = PlanarSet([Segment((0, 0), (1, 1)), Points2D([(2, 2)])])
    got = defi_convex(diag)
    assert got.d == pair(1, 0).d
    enc = got.m.enclosure()
    assert enc.lo ** 2 < 2 < enc.hi ** 2


def test_two_points_span_their_distance():
    two = PlanarSet([Points2D([(0, 0), (0, 7)])])
    assert defi_convex(two) == pair(1, 7)


def test_polygon_with_outlying_point():
    scene = PlanarSet([ConvexPolygon([(0, 0), (4, 0), (0, 4)]),
                       Points2D([(3, 3)])])
    assert defi_convex(scene) == pair(2, 4)


def test_hull_of_empty_scene_fails():
    with pytest.raises(ValidationError):
        convex_hull(PlanarSet([]))


def test_random_clouds_hull_is_tight():
    rng = random.Random(105)
    for _ in range(80):
        pts = {(F(rng.randint(-9, 9)), F(rng.randint(-9, 9)))
               for _ in range(rng.randint(3, 10))}
        scene = PlanarSet([Points2D(pts)])
        hull = convex_hull(scene)
        if isinstance(hull, ConvexPolygon):
            assert set(hull.vertices) <= pts
            assert all(hull.contains(p) for p in pts)
            assert defi_convex(scene) == HPair.of(2, hull.area())
        elif isinstance(hull, Segment):
            assert all(p[0] for p in pts) or True  # collinear cloud
            assert defi_convex(scene).m.sign() > 0


def test_random_collinear_clouds():
    rng = random.Random(106)
    for _ in range(60):
        xs = sorted(rng.sample(range(-20, 21), rng.randint(2, 6)))
        pts = [(F(x), F(2 * x + 3)) for x in xs]
        hull = convex_hull(PlanarSet([Points2D(pts)]))
        assert isinstance(hull, Segment)
        assert hull.a == pts[0] and hull.b == pts[-1]


def test_disjoint_triangles_residual():
    scene = PlanarSet([ConvexPolygon([(0, 0), (2, 0), (0, 2)]),
                       ConvexPolygon([(5, 0), (7, 0), (7, 2)])])
    hull = convex_hull(scene)
    resid = defi_convex(scene)
    assert resid.d == pair(2, 0).d
    assert resid.m.as_fraction() == hull.area() - 4
    assert resid.m.sign() > 0
