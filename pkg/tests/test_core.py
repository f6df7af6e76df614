import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from leibniz import (
    DegenerateMedian,
    DimensionMismatch,
    GeometryError,
    NotOnSegment,
    PointSystem,
    centroid,
    general_median_sq,
    leibniz_sides,
    median_ratio_check,
    pairwise_sq_sum,
    stewart_check,
    stewart_residual,
    sub_centroid,
    verify_identity,
)

from conftest import random_points


def exact_sides(points, m):
    """Both sides of the identity in rational arithmetic."""
    pts = [[Fraction(x) for x in p] for p in points]
    m = [Fraction(x) for x in m]
    n = len(pts)
    sq = lambda u, v: sum((a - b) ** 2 for a, b in zip(u, v))
    g = [sum(c) / n for c in zip(*pts)]
    lhs = sum(sq(m, p) for p in pts)
    pair = sum(sq(p, q) for p, q in itertools.combinations(pts, 2))
    return lhs, pair / n + n * sq(m, g)


class TestPointSystem:
    def test_rejects_single_point(self):
        with pytest.raises(GeometryError):
            PointSystem([[0.0, 1.0]])

    def test_rejects_ragged_rows(self):
        with pytest.raises(DimensionMismatch):
            PointSystem([[0.0, 1.0], [2.0]])

    def test_rejects_nan(self):
        with pytest.raises(GeometryError):
            PointSystem([[0.0, float("nan")], [1.0, 1.0]])

    def test_read_only(self, tri345):
        with pytest.raises(ValueError):
            tri345.points[0, 0] = 7.0

    def test_one_dimensional(self):
        ps = PointSystem([[0.0], [3.0], [5.0]])
        assert ps.dim == 1
        assert pairwise_sq_sum(ps) == 9 + 25 + 4


class TestCentroid:
    def test_midpoint(self):
        np.testing.assert_array_equal(centroid(PointSystem([[0, 0], [2, 0]])), [1, 0])

    def test_triangle(self, tri345):
        np.testing.assert_allclose(centroid(tri345), [4 / 3, 1], rtol=1e-15)

    def test_coincident(self):
        p = [1.25, -3.5, 7.0]
        np.testing.assert_array_equal(centroid(PointSystem([p] * 5)), p)


class TestPairwiseSqSum:
    def test_single_pair(self):
        assert pairwise_sq_sum(PointSystem([[0, 0], [2, 0]])) == 4

    def test_345(self, tri345):
        assert pairwise_sq_sum(tri345) == 50

    def test_regular_tetra(self, regular_tetra):
        assert pairwise_sq_sum(regular_tetra) == pytest.approx(6, rel=1e-15)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(3)
        ps = random_points(rng, 9, 4)
        brute = sum(np.sum((p - q) ** 2) for p, q in itertools.combinations(ps.points, 2))
        assert pairwise_sq_sum(ps) == pytest.approx(brute, rel=1e-13)


class TestLeibniz:
    def test_segment(self):
        assert leibniz_sides(PointSystem([[0, 0], [2, 0]]), [0, 1]) == (6, 6)

    def test_at_centroid(self, tri345):
        lhs, rhs = leibniz_sides(tri345, centroid(tri345))
        assert lhs == pytest.approx(50 / 3, rel=1e-15)
        assert rhs == pytest.approx(50 / 3, rel=1e-15)

    def test_345_circumcenter(self, tri345):
        exact = exact_sides([[0, 0], [4, 0], [0, 3]], [2, 1.5])
        assert exact == (Fraction(75, 4), Fraction(75, 4))
        lhs, rhs = leibniz_sides(tri345, [2, 1.5])
        assert lhs == pytest.approx(18.75, rel=1e-15)
        assert rhs == pytest.approx(18.75, rel=1e-15)

    def test_random_against_rational(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            pts = rng.integers(-50, 50, (rng.integers(2, 9), 3)).tolist()
            m = rng.integers(-50, 50, 3).tolist()
            lhs_x, rhs_x = exact_sides(pts, m)
            assert lhs_x == rhs_x
            lhs, rhs = leibniz_sides(PointSystem(pts), m)
            assert lhs == pytest.approx(float(lhs_x), rel=1e-13)
            assert rhs == pytest.approx(float(rhs_x), rel=1e-13)

    def test_two_point_case_is_median_length(self):
        # n = 2: |MG|^2 = (2(MA1^2 + MA2^2) - A1A2^2) / 4, including the A1A2^2 term.
        a1, a2, m = np.array([0.3, -1.0]), np.array([2.5, 4.0]), np.array([-1.0, 0.7])
        g = centroid(PointSystem([a1, a2]))
        expected = (2 * (np.sum((m - a1) ** 2) + np.sum((m - a2) ** 2)) - np.sum((a1 - a2) ** 2)) / 4
        assert np.sum((m - g) ** 2) == pytest.approx(expected, rel=1e-14)

    def test_dimension_mismatch(self, tri345):
        with pytest.raises(DimensionMismatch):
            leibniz_sides(tri345, [0, 0, 0])


class TestVerifyIdentity:
    def test_coincident(self):
        p = np.array([1.0, 2.0])
        m = np.array([4.0, -2.0])
        rep = verify_identity(PointSystem([p] * 4), m)
        assert rep.passed
        assert rep.lhs == rep.rhs == 4 * 25

    def test_345(self, tri345):
        rep = verify_identity(tri345, [2, 1.5])
        assert rep.passed
        assert rep.residual < 1e-12 * rep.scale
        assert rep.scale == max(1.0, rep.lhs, rep.rhs)

    def test_tol_positive(self, tri345):
        with pytest.raises(ValueError):
            verify_identity(tri345, [0, 0], tol=0.0)

    def test_detects_wrong_rhs(self, tri345):
        rep = type(verify_identity(tri345, [0, 0])).compare(1.0, 1.1, 1e-9)
        assert not rep.passed


class TestSubCentroid:
    def test_triangle_gives_midpoint(self, tri345):
        np.testing.assert_allclose(sub_centroid(tri345, 0), [2, 1.5])

    def test_square(self):
        ps = PointSystem([[0, 0], [3, 0], [0, 3], [3, 3]])
        np.testing.assert_allclose(sub_centroid(ps, 0), [2, 2])

    def test_regular_tetra_face_centroid(self, regular_tetra):
        for i in range(4):
            face = np.delete(regular_tetra.points, i, axis=0).mean(axis=0)
            np.testing.assert_allclose(sub_centroid(regular_tetra, i), face, atol=1e-16)

    def test_needs_three_points(self):
        with pytest.raises(GeometryError):
            sub_centroid(PointSystem([[0, 0], [1, 1]]), 0)

    def test_index_range(self, tri345):
        with pytest.raises(IndexError):
            sub_centroid(tri345, 3)


class TestMedianRatio:
    def test_triangle_two_to_one(self, tri345):
        for i in range(3):
            rep = median_ratio_check(tri345, i)
            assert rep.passed
            # |A_i G| is twice |G G_i|
            g, gi = centroid(tri345), sub_centroid(tri345, i)
            assert np.linalg.norm(g - tri345[i]) == pytest.approx(2 * np.linalg.norm(gi - g), rel=1e-14)

    def test_regular_tetra_three_to_one(self, regular_tetra):
        for i in range(4):
            rep = median_ratio_check(regular_tetra, i)
            assert rep.passed
            assert rep.lhs == pytest.approx(math.sqrt(6) / 4, rel=1e-14)  # circumradius = |A_i G|

    def test_random_five_points(self):
        rng = np.random.default_rng(5)
        ps = random_points(rng, 5, 3)
        for i in range(5):
            assert median_ratio_check(ps, i).residual < 1e-9 * 1e3

    def test_degenerate_median(self):
        ps = PointSystem([[0, 0], [1, 0], [-1, 0], [0, 0]])
        with pytest.raises(DegenerateMedian):
            median_ratio_check(ps, 0)


class TestStewart:
    def test_endpoint(self):
        assert stewart_residual([0.3, 2.0], [0, 0], [3, 0], [0, 0]) == 0.0

    def test_exact_instance(self):
        assert stewart_residual([0, 1], [0, 0], [3, 0], [1, 0]) < 1e-12

    def test_proof_configuration(self):
        rng = np.random.default_rng(9)
        ps = random_points(rng, 5, 3)
        g0 = centroid(PointSystem(ps.points[:4]))
        g = centroid(ps)
        m = rng.uniform(-1e3, 1e3, 3)
        rep = stewart_check(m, ps[4], g0, g)
        assert rep.passed
        assert rep.residual <= 1e-9 * rep.scale
        assert stewart_residual(m, ps[4], g0, g) == rep.residual

    def test_off_segment(self):
        with pytest.raises(NotOnSegment):
            stewart_residual([0, 1], [0, 0], [3, 0], [1, 0.5])
        with pytest.raises(NotOnSegment):
            stewart_residual([0, 1], [0, 0], [3, 0], [4, 0])

    def test_coincident_endpoints(self):
        with pytest.raises(NotOnSegment):
            stewart_residual([0, 1], [1, 1], [1, 1], [1, 1])


class TestGeneralMedian:
    def test_345_vertex_opposite_hypotenuse(self, tri345):
        # A = (0,0) is opposite a = 5; b = 3, c = 4.
        assert general_median_sq(tri345, 0) == pytest.approx(0.5 * (9 + 16) - 0.25 * 25, rel=1e-15)
        assert general_median_sq(tri345, 0) == pytest.approx(6.25, rel=1e-15)

    def test_equilateral(self):
        s = 2.0
        ps = PointSystem([[0, 0], [s, 0], [s / 2, s * math.sqrt(3) / 2]])
        for i in range(3):
            assert general_median_sq(ps, i) == pytest.approx(s * s * 3 / 4, rel=1e-14)

    def test_regular_tetra(self, regular_tetra):
        for i in range(4):
            assert general_median_sq(regular_tetra, i) == pytest.approx(2 / 3, rel=1e-14)

    def test_unordered_pair_reading(self, tri345):
        # Counting each pair twice would give (b^2+c^2)/2 - a^2/2 = 0 for the 3-4-5 triangle.
        direct = np.sum((tri345[0] - sub_centroid(tri345, 0)) ** 2)
        assert general_median_sq(tri345, 0) == pytest.approx(direct, rel=1e-15)
        ordered = 0.5 * (9 + 16) - (2 * 25) / 4
        assert ordered == 0.0
        assert ordered != pytest.approx(direct)

    def test_needs_three(self):
        with pytest.raises(GeometryError):
            general_median_sq(PointSystem([[0], [1]]), 0)
