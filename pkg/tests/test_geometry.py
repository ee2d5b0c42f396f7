"""Balls, images, root counting, and sampling in the completed field."""

from fractions import Fraction

import pytest

from padicglue import (
    Ball,
    FieldConfig,
    KElement,
    Poly,
    PoleInBallError,
    Radius,
    RationalMap,
    count_roots_in_ball,
    distance_exp,
    image_of_ball,
    pairwise_deltas,
    pole_free_on_ball,
    sample_points,
    sup_norm_exp_on_ball,
    wdeg,
)

K3 = FieldConfig(3)
Z = Poly.x(3)


def B(center, exp, closed=True):
    return Ball(K3(center), Radius(Fraction(exp)), closed=closed)


class TestRadius:
    def test_half_integer_grid(self):
        assert Radius(Fraction(3, 2)).exp == Fraction(3, 2)
        with pytest.raises(ValueError):
            Radius(Fraction(1, 4))

    def test_infinite_exponent_rejected(self):
        from padicglue import ValExp

        with pytest.raises(ValueError, match="positive"):
            Radius(ValExp.infinite())

    def test_ordering_is_by_magnitude(self):
        # bigger exponent means smaller radius
        assert Radius(3) < Radius(2)
        assert Radius(Fraction(5, 2)) > Radius(3)
        assert Radius(-1) > Radius(0)

    def test_divided_by_p(self):
        assert Radius(1).divided_by_p() == Radius(2)
        assert Radius(1).divided_by_p(3) == Radius(4)


class TestBallSetSemantics:
    def test_contains_point_boundary(self):
        closed, open_ = B(0, 1), B(0, 1, closed=False)
        on_boundary = K3(3)
        assert closed.contains_point(on_boundary)
        assert not open_.contains_point(on_boundary)
        assert open_.contains_point(K3(9))
        assert not closed.contains_point(K3(1))

    def test_same_set_depends_on_center_only_up_to_radius(self):
        assert B(0, 1).same_set(B(3, 1))
        assert not B(0, 1).same_set(B(1, 1))
        assert not B(0, 1).same_set(B(0, 2))
        # closed and open of equal radius are never the same set
        assert not B(0, 1).same_set(B(0, 1, closed=False))

    def test_open_ball_needs_strictly_closer_center(self):
        assert B(0, 1, closed=False).same_set(B(9, 1, closed=False))
        assert not B(0, 1, closed=False).same_set(B(3, 1, closed=False))

    def test_containment_kind_rules(self):
        assert B(0, 1).contains_ball(B(3, 2))
        assert B(0, 1).contains_ball(B(0, 1, closed=False))
        assert not B(0, 1, closed=False).contains_ball(B(0, 1))
        # open containing closed of equal radius fails; strictly smaller works
        assert B(0, 1, closed=False).contains_ball(B(0, 2))
        assert B(0, 1, closed=False).contains_ball(B(0, 2, closed=False))

    def test_properly_contains(self):
        assert B(0, 1).properly_contains(B(0, 2))
        assert not B(0, 1).properly_contains(B(3, 1))

    def test_intersecting_balls_are_nested(self):
        a, b = B(0, 1), B(3, 2)
        assert a.intersects(b) and a.contains_ball(b)
        assert B(0, 1).disjoint_from(B(1, 1))
        assert not B(0, 1).intersects(B(2, 3))

    def test_str_forms(self):
        assert str(B(0, 2)) == "B(0; 3^(-2))"
        assert str(B(3, 1, closed=False)) == "D(3; 3^(-1))"


def test_distance_exp():
    assert distance_exp(K3(9), K3(0)) == 2
    assert distance_exp(K3(1), K3(1)).is_infinite


class TestPairwiseDeltas:
    def test_three_centers_oracle(self):
        deltas = pairwise_deltas([K3(0), K3(3), K3(6)])
        assert [d.exp for d in deltas] == [1, 1, 1]

    def test_nearest_neighbor_wins(self):
        deltas = pairwise_deltas([K3(0), K3(9), K3(1)])
        # 0 and 9 are distance 3^-2 apart; 1 is at distance 1 from both
        assert [d.exp for d in deltas] == [2, 2, 0]

    def test_needs_two_and_rejects_duplicates(self):
        with pytest.raises(ValueError):
            pairwise_deltas([K3(0)])
        with pytest.raises(ValueError):
            pairwise_deltas([K3(0), K3(3), K3(0)])


class TestCountRootsInBall:
    def test_boundary_root_closed_vs_open(self):
        P = Z - 3
        assert count_roots_in_ball(P, B(0, 1)) == 1
        assert count_roots_in_ball(P, B(0, 1, closed=False)) == 0

    def test_center_root_and_multiplicity(self):
        P = (Z - 1) ** 2 * (Z - 4)
        assert count_roots_in_ball(P, B(1, 1)) == 3
        assert count_roots_in_ball(P, B(1, 2)) == 2

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            count_roots_in_ball(Poly.zero(3), B(0, 0))


class TestPoleFreedom:
    def test_polynomials_are_pole_free(self):
        assert pole_free_on_ball(RationalMap(Z**2), B(0, 0))

    def test_pole_inside_and_outside(self):
        f = RationalMap(Poly.one(3), Z)
        assert not pole_free_on_ball(f, B(0, 1))
        assert not pole_free_on_ball(f, B(9, 2))
        assert pole_free_on_ball(f, B(9, 3))
        assert pole_free_on_ball(f, B(1, 0, closed=False))


class TestSupNorm:
    def test_linear_map(self):
        assert sup_norm_exp_on_ball(RationalMap(3 * Z), B(0, 2)) == 3

    def test_constant_denominator_scaling(self):
        f = RationalMap(Poly.one(3), Z)
        # |z| is constantly 3^-2 on this ball, so |1/z| = 3^2
        assert sup_norm_exp_on_ball(f, B(9, 3)) == -2

    def test_pole_raises(self):
        with pytest.raises(PoleInBallError):
            sup_norm_exp_on_ball(RationalMap(Poly.one(3), Z), B(0, 1))


class TestImageOfBall:
    def test_contraction(self):
        img = image_of_ball(RationalMap(3 * Z), B(0, 2))
        assert img.same_set(B(0, 3))
        assert img.closed

    def test_expansion_with_shift(self):
        f = RationalMap(Z * Fraction(1, 3) + 2)
        assert image_of_ball(f, B(3, 2)).same_set(B(3, 1))

    def test_moebius_isometry(self):
        f = RationalMap(Z, Z - 1)
        assert image_of_ball(f, B(0, 1)).same_set(B(0, 1))

    def test_open_kind_preserved(self):
        img = image_of_ball(RationalMap(3 * Z), B(0, 2, closed=False))
        assert not img.closed
        assert img.same_set(B(0, 3, closed=False))

    def test_constant_map_rejected(self):
        with pytest.raises(ValueError, match="constant"):
            image_of_ball(RationalMap.constant(3, 5), B(0, 1))

    def test_square_map_drops_radius_by_degree(self):
        img = image_of_ball(RationalMap(Z**2), B(0, 1))
        assert img.same_set(B(0, 2))


class TestWdeg:
    def test_bijective_affine(self):
        assert wdeg(RationalMap(3 * Z), K3(0), B(0, 2)) == 1

    def test_square_counts_two(self):
        assert wdeg(RationalMap(Z**2), K3(0), B(0, 1)) == 2

    def test_boundary_root_excluded_on_open_disk(self):
        assert wdeg(RationalMap(Z**2), K3(1), B(1, 0)) == 2
        assert wdeg(RationalMap(Z**2), K3(1), B(1, 0, closed=False)) == 1

    def test_target_outside_image_rejected(self):
        with pytest.raises(ValueError, match="outside the image"):
            wdeg(RationalMap(3 * Z), K3(1), B(0, 2))


class TestSamplePoints:
    def test_closed_ball_oracle(self):
        pts = sample_points(B(0, 2), 5)
        assert [str(x) for x in pts] == ["0", "9", "18", "27", "54"]

    def test_open_ball_skips_boundary(self):
        pts = sample_points(B(0, 2, closed=False), 3)
        assert [str(x) for x in pts] == ["0", "27", "54"]

    def test_membership_and_distinctness(self):
        ball = B(5, 1)
        pts = sample_points(ball, 9)
        assert len(set(pts)) == 9
        assert all(ball.contains_point(z) for z in pts)
        assert any(distance_exp(z, ball.center) == ball.radius.exp for z in pts)
