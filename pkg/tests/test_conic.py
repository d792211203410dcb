import random

import pytest
from hypothesis import given, settings, strategies as st

from bisectrix.conic import (
    CROSSING,
    DEGEN_FAMILY,
    DEGEN_NONE,
    DEGEN_UNIQUE,
    DOUBLE,
    ELLIPSE,
    HYPERBOLA,
    PARABOLA,
    ConicError,
    LinePair,
    Quadratic,
    center,
    classify,
    degenerations,
    is_reducible,
    mid,
    pairs_are_translates,
    points_at_infinity,
    product_quadratic,
    pullback,
)
from bisectrix.field import GF, rationals
from bisectrix.geometry import AffineMap, Line, Midpoint, ProjectivePoint
from bisectrix.textforms import parse_quadratic

Q = rationals()
F3 = GF(3)
F5 = GF(5)


def quad(text, spec=Q):
    return parse_quadratic(spec, text)


def line(u, v, w, spec=Q):
    return Line(spec.scalar(u), spec.scalar(v), spec.scalar(w))


def pt_inf(x, y, spec=Q):
    return ProjectivePoint.at_infinity(spec.scalar(x), spec.scalar(y))


XY = quad("x*y")
XY1 = quad("x*y-1")
CROSS = quad("x^2-y^2")
SIDES = quad("x^2-y^2-4*x-2*y+3")  # (x+y-1)(x-y-3) expanded


def test_quadratic_requires_degree_two():
    with pytest.raises(ConicError):
        Quadratic(*(Q.scalar(v) for v in (0, 0, 0, 1, 1, 1)))


class TestPointsAtInfinity:
    def test_two_points(self):
        assert points_at_infinity(XY1) == sorted(
            [pt_inf(1, 0), pt_inf(0, 1)], key=ProjectivePoint.sort_key
        )

    def test_double_direction(self):
        assert points_at_infinity(quad("x^2-y")) == [pt_inf(0, 1)]

    def test_circle_splits_mod_5(self):
        # Oracle: (x+2y)(x-2y) = x^2 - 4y^2 = x^2 + y^2 mod 5, so the circle
        # has the two directions [2:1] and [-2:1] = [3:1].
        pts = points_at_infinity(quad("x^2+y^2-1", F5))
        assert set(pts) == {pt_inf(2, 1, F5), pt_inf(3, 1, F5)}


class TestClassify:
    def test_examples(self):
        assert classify(XY1).kind == HYPERBOLA and not classify(XY1).degenerate
        circle = quad("x^2+y^2-1")
        assert classify(circle).kind == ELLIPSE and not circle.det3().is_zero
        assert classify(quad("x^2+y^2-1", F5)).kind == HYPERBOLA

    def test_degenerate_flags(self):
        assert classify(CROSS) == classify(XY).__class__(HYPERBOLA, True)
        assert classify(quad("x^2+y^2")).kind == ELLIPSE
        assert classify(quad("x^2+y^2")).degenerate  # point ellipse, det3 = 0
        assert classify(quad("x^2-2")).kind == PARABOLA
        assert not classify(quad("x^2-2")).degenerate  # irreducible over Q

    def test_partition_exhaustive_gf3(self):
        # Every coefficient tuple classifies into exactly one of the three
        # kinds, decided by its direction count.
        values = [F3.scalar(v) for v in range(3)]
        n = 0
        for a in values:
            for b in values:
                for c in values:
                    if a.is_zero and b.is_zero and c.is_zero:
                        continue
                    for d in values:
                        f = Quadratic(a, b, c, d, values[1], values[0])
                        kinds = {0: ELLIPSE, 1: PARABOLA, 2: HYPERBOLA}
                        npts = len(points_at_infinity(f))
                        assert classify(f).kind == kinds[npts]
                        n += 1
        assert n == 26 * 3


class TestAffineInvariance:
    MAPS = [
        lambda spec: AffineMap.identity(spec),
        lambda spec: AffineMap.translation(spec.scalar(1), spec.scalar(2)),
        lambda spec: AffineMap.linear(spec.scalar(0), spec.scalar(1),
                                      spec.scalar(1), spec.scalar(0)),
        lambda spec: AffineMap(spec.scalar(1), spec.scalar(1), spec.scalar(0),
                               spec.scalar(1), spec.scalar(2), spec.scalar(0)),
    ]

    def test_exhaustive_gf3(self):
        from bisectrix.oracle import enumerate_quadratics

        maps = [build(F3) for build in self.MAPS]
        for f in enumerate_quadratics(F3):
            expect = classify(f)
            for m in maps:
                assert classify(pullback(m, f)) == expect

    @given(coeffs=st.lists(st.integers(-5, 5), min_size=6, max_size=6))
    @settings(deadline=None, max_examples=60)
    def test_randomized_rationals(self, coeffs):
        if coeffs[0] == 0 and coeffs[1] == 0 and coeffs[2] == 0:
            coeffs[0] = 1
        f = Quadratic.from_ints(Q, coeffs)
        for build in self.MAPS:
            assert classify(pullback(build(Q), f)) == classify(f)


class TestPullback:
    def test_shift_example(self):
        shift = AffineMap.translation(Q.scalar(0), Q.scalar(1))
        assert pullback(shift, XY) == quad("x*y+x")

    def test_identity(self):
        assert pullback(AffineMap.identity(Q), SIDES) == SIDES

    def test_swap(self):
        swap = AffineMap.linear(Q.scalar(0), Q.scalar(1), Q.scalar(1), Q.scalar(0))
        assert pullback(swap, quad("x^2+y")) == quad("y^2+x")

    @given(coeffs=st.lists(st.integers(-4, 4), min_size=6, max_size=6))
    @settings(deadline=None, max_examples=40)
    def test_composition_law(self, coeffs):
        if coeffs[0] == 0 and coeffs[1] == 0 and coeffs[2] == 0:
            coeffs[2] = 2
        f = Quadratic.from_ints(Q, coeffs)
        m1 = AffineMap(Q.scalar(1), Q.scalar(2), Q.scalar(1), Q.scalar(3),
                       Q.scalar(-1), Q.scalar(4))
        m2 = AffineMap(Q.scalar(0), Q.scalar(1), Q.scalar(-1), Q.scalar(1),
                       Q.scalar(2), Q.scalar(0))
        assert pullback(m1.compose(m2), f) == pullback(m2, pullback(m1, f))


class TestReducibility:
    def test_xy_plus_constant_is_irreducible(self):
        assert is_reducible(XY1) is None
        assert is_reducible(XY) is not None

    def test_crossing_pair(self):
        pair = is_reducible(CROSS)
        assert pair.kind == CROSSING
        assert pair.line_set() == {line(1, -1, 0), line(1, 1, 0)}
        assert pair.center == ProjectivePoint.affine(Q.scalar(0), Q.scalar(0))

    def test_double_line_mod_5(self):
        # Oracle: 4*(x^2+xy-y^2) = 4x^2+4xy+y^2 = (2x+y)^2 mod 5.
        f = quad("x^2+x*y-y^2", F5)
        lhs = f.scale(F5.scalar(4))
        sq = quad("4*x^2+4*x*y+y^2", F5)
        assert lhs == sq
        pair = is_reducible(f)
        assert pair.kind == DOUBLE and pair.first == line(1, 3, 0, F5)

    def test_x_squared_minus_two_is_irreducible_over_q(self):
        assert is_reducible(quad("x^2-2")) is None
        assert quad("x^2-2").det3().is_zero

    def test_round_trip_exhaustive_gf5(self):
        # For every line pair over GF(5), factoring the product recovers it.
        from bisectrix.oracle import enumerate_line_pairs

        for pair in enumerate_line_pairs(F5):
            again = is_reducible(pair.product())
            assert again == pair

    def test_negative_side_against_table_gf5(self):
        # Any quadratic not among the canonical pair products is irreducible.
        from bisectrix.oracle import enumerate_quadratics, reducible_table

        table = reducible_table(F5)
        rng = random.Random(1)
        pool = enumerate_quadratics(F5)
        for f in rng.sample(pool, 400):
            got = is_reducible(f)
            expect = table.get(f.canonical().key())
            assert got == expect


class TestCenter:
    def test_examples(self):
        origin = ProjectivePoint.affine(Q.scalar(0), Q.scalar(0))
        assert center(XY1) == origin
        assert center(quad("x*y-2*x-y+2")) == ProjectivePoint.affine(
            Q.scalar(1), Q.scalar(2)
        )  # (x-1)(y-2)
        assert center(SIDES) == ProjectivePoint.affine(Q.scalar(2), Q.scalar(-1))

    def test_rejects_non_hyperbola(self):
        with pytest.raises(ConicError):
            center(quad("x^2-y"))


class TestDegenerations:
    def test_hyperbola_unique(self):
        d = degenerations(XY1)
        assert d.kind == DEGEN_UNIQUE
        assert d.shift.value == 1
        assert d.pair.line_set() == {line(1, 0, 0), line(0, 1, 0)}
        # The degeneration differs from the input by exactly a constant and
        # shares its center.
        g = XY1.add_constant(d.shift)
        assert d.pair.product().same_up_to_scalar(g)
        assert d.pair.center == center(XY1)

    def test_parallel_family(self):
        d = degenerations(quad("x^2-4*x"))  # x(x-4)
        assert d.kind == DEGEN_FAMILY
        assert d.family.midline == line(1, 0, -2)
        sample = d.family.pair_at(Q.scalar(1))
        assert sample.line_set() == {line(1, 0, -1), line(1, 0, -3)}
        # Exact degeneration: f - quadratic_at(r) is a constant.
        g = d.family.quadratic_at(Q.scalar(1))
        diff = [x - y for x, y in
                zip(quad("x^2-4*x").coefficients(), g.coefficients())]
        assert all(v.is_zero for v in diff[:5])

    def test_nondegenerate_parabola_has_none(self):
        assert degenerations(quad("x^2-y")).kind == DEGEN_NONE

    def test_ellipse_has_none(self):
        assert degenerations(quad("x^2+y^2-1")).kind == DEGEN_NONE
        assert degenerations(quad("x^2+y^2+1")).kind == DEGEN_NONE

    def test_rank_two_irreducible_parabola_gets_a_family(self):
        # x^2 - 2 is irreducible over GF(5) (2 is a non-residue) but its
        # constant shifts include (x-1)(x+1); all of them share midline x=0.
        f = quad("x^2-2", F5)
        assert is_reducible(f) is None
        d = degenerations(f)
        assert d.kind == DEGEN_FAMILY
        assert d.family.midline == line(1, 0, 0, F5)
        shifted = is_reducible(f.add_constant(F5.scalar(1)))
        assert shifted is not None and shifted.midline == line(1, 0, 0, F5)


def _mid_by_zero_scan(f, l, spec):
    """Independent midpoint oracle over GF(p): scan the line's points.

    Classifies by the affine zero count on the line, the at-infinity
    incidence of the direction, and the component test, sharing only field
    arithmetic with the production path.
    """
    zeros = []
    values = []
    for t in spec.elements():
        p = l.point_at(t)
        x, y = p.affine_xy()
        v = f.evaluate(x, y)
        values.append(v)
        if v.is_zero:
            zeros.append(p)
    direction_on_conic = f.homogeneous_at(*_direction(l)).is_zero
    if all(v.is_zero for v in values):
        return "meets-no-cross", None
    if len(zeros) == 2:
        from bisectrix.geometry import midpoint_of_points
        return "crosses", midpoint_of_points(zeros[0], zeros[1])
    if len(zeros) == 1:
        if direction_on_conic:
            from bisectrix.geometry import MID_INFINITE
            return "crosses", MID_INFINITE
        return "crosses", Midpoint.finite(zeros[0])  # tangency
    return ("meets-no-cross" if direction_on_conic else "no-meet"), None


def _direction(l):
    return (-l.v, l.u)


class TestMid:
    def test_two_affine_crossings(self):
        r = mid(SIDES, line(1, 0, 0))
        assert r.crosses
        assert r.midpoint == Midpoint.finite(
            ProjectivePoint.affine(Q.scalar(0), Q.scalar(-1))
        )

    def test_one_affine_one_infinite(self):
        r = mid(XY, line(0, 1, -1))
        assert r.crosses and r.midpoint.is_infinite

    def test_component(self):
        assert not mid(XY, line(1, 0, 0)).crosses
        assert mid(XY, line(1, 0, 0)).kind == "meets-no-cross"

    def test_no_meet(self):
        assert mid(quad("x^2+y^2+1"), line(0, 1, 0)).kind == "no-meet"

    def test_tangency_uses_the_double_root(self):
        # The sum-of-roots convention: a tangent line crosses with the
        # tangency point as midpoint (two coincident crossing points).
        r = mid(quad("x^2+y^2-1"), line(0, 1, -1))
        assert r.crosses
        assert r.midpoint == Midpoint.finite(
            ProjectivePoint.affine(Q.scalar(0), Q.scalar(1))
        )

    def test_against_zero_scan_oracle_gf5(self):
        from bisectrix.oracle import enumerate_lines, enumerate_quadratics

        rng = random.Random(3)
        lines = enumerate_lines(F5)
        for f in rng.sample(enumerate_quadratics(F5), 60):
            for l in lines:
                kind, midpoint = _mid_by_zero_scan(f, l, F5)
                got = mid(f, l)
                assert got.kind == kind
                if midpoint is not None:
                    assert got.midpoint == midpoint

    def test_crossing_points_reflect_through_midpoint(self):
        from bisectrix.geometry import reflect_through
        from bisectrix.oracle import enumerate_lines, enumerate_quadratics

        rng = random.Random(4)
        lines = enumerate_lines(F5)
        for f in rng.sample(enumerate_quadratics(F5), 30):
            for l in lines:
                r = mid(f, l)
                if not r.crosses or not r.midpoint.is_finite:
                    continue
                zeros = [l.point_at(t) for t in F5.elements()
                         if f.evaluate(*l.point_at(t).affine_xy()).is_zero]
                if len(zeros) == 2:
                    assert reflect_through(r.midpoint.point, zeros[0]) == zeros[1]


class TestProduct:
    def test_examples(self):
        assert LinePair(line(1, 0, 0), line(0, 1, 0)).product() == XY
        assert LinePair(line(1, 0, -1), line(1, 0, -3)).product() == quad("x^2-4*x+3")
        dbl = LinePair(line(1, 0, -2), line(1, 0, -2))
        assert product_quadratic(dbl) == quad("x^2-4*x+4")


class TestTranslates:
    def test_examples(self):
        p1 = LinePair(line(1, 0, 0), line(0, 1, 0))
        p2 = LinePair(line(1, 0, -1), line(0, 1, -1))
        assert pairs_are_translates(p1, p2)
        p3 = LinePair(line(1, 1, -1), line(1, -1, -3))
        assert not pairs_are_translates(p1, p3)

    def test_parallel_pairs_need_matching_offsets(self):
        a = LinePair(line(1, 0, 0), line(1, 0, -1))
        b = LinePair(line(1, 0, -2), line(1, 0, -3))
        c = LinePair(line(1, 0, -2), line(1, 0, -5))
        assert pairs_are_translates(a, b)
        assert not pairs_are_translates(a, c)
        dbl = LinePair(line(1, 0, 0), line(1, 0, 0))
        assert not pairs_are_translates(dbl, a)
        assert pairs_are_translates(dbl, LinePair(line(1, 0, 2), line(1, 0, 2)))
