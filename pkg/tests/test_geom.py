import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgesym.errors import (
    CollinearPoints,
    DegeneratePolygon,
    DimensionMismatch,
    LengthMismatch,
    NonCoplanarPoints,
    PolygonInequality,
)
from edgesym.geom import (
    Isometry,
    Tolerance,
    UnderdeterminedFitWarning,
    apply_isometry,
    best_fit_isometry,
    circumradius_from_sides,
    diameter_of,
    fit_circle,
    is_inscribed,
    reconstruct_inscribed_polygon,
)
from oracles import heron_circumradius, random_inscribed_polygon, rotation2, side_lengths

UNIT_CUBE = np.array([[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)], float)

RHOMBUS_PI3 = np.array([(0, 0), (1, 0), (1.5, math.sqrt(3) / 2), (0.5, math.sqrt(3) / 2)])


def rotation3_z(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])


class TestTolerance:
    def test_positive_required(self):
        with pytest.raises(ValueError):
            Tolerance(abs_eps=0.0)
        with pytest.raises(ValueError):
            Tolerance(rel_eps=-1e-9)

    def test_scaled(self):
        t = Tolerance().scaled(10.0)
        assert t.abs_eps == pytest.approx(1e-8)
        assert t.fit_eps == pytest.approx(1e-5)
        with pytest.raises(ValueError):
            Tolerance().scaled(0.0)


class TestBestFitIsometry:
    def test_identity_on_cube(self):
        iso, rmsd = best_fit_isometry(UNIT_CUBE, UNIT_CUBE)
        assert rmsd == pytest.approx(0.0, abs=1e-14)
        assert np.allclose(iso.linear, np.eye(3), atol=1e-12)
        assert np.allclose(iso.translation, 0.0, atol=1e-12)

    def test_recovers_rotation_and_translation(self):
        R = rotation3_z(math.pi / 2)
        t = np.array([1.0, 2.0, 3.0])
        dst = UNIT_CUBE @ R.T + t
        iso, rmsd = best_fit_isometry(UNIT_CUBE, dst)
        assert rmsd < 1e-12
        assert np.allclose(iso.linear, R, atol=1e-12)
        assert np.allclose(iso.translation, t, atol=1e-12)

    def test_reflection_case(self):
        src = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0.3, 0.4, 1.7]], float)
        dst = src * np.array([1, 1, -1.0])
        iso, rmsd = best_fit_isometry(src, dst)
        assert rmsd < 1e-12
        assert iso.orientation == -1

    def test_reflection_branch_disabled(self):
        src = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0.3, 0.4, 1.7]], float)
        dst = src * np.array([1, 1, -1.0])
        iso, rmsd = best_fit_isometry(src, dst, allow_reflection=False)
        assert iso.orientation == 1
        assert rmsd > 0.1

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            best_fit_isometry(UNIT_CUBE, UNIT_CUBE[:-1])

    def test_underdetermined_warns_but_fits(self):
        with pytest.warns(UnderdeterminedFitWarning):
            iso, rmsd = best_fit_isometry(UNIT_CUBE[:2], UNIT_CUBE[:2])
        assert rmsd == pytest.approx(0.0, abs=1e-12)

    def test_orthogonality_defect(self, rng):
        for _ in range(25):
            src = rng.normal(size=(6, 3))
            dst = rng.normal(size=(6, 3))
            iso, _ = best_fit_isometry(src, dst)
            defect = np.abs(iso.linear.T @ iso.linear - np.eye(3)).max()
            assert defect < 1e-10

    def test_local_optimality_under_small_rotations(self, rng):
        # perturbing the optimal rotation by any 1e-3 test rotation must not
        # decrease the rmsd, even with the translation re-optimized
        axes = [np.array(a, float) for a in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]]
        for _ in range(5):
            src = rng.normal(size=(8, 3))
            dst = src @ rotation3_z(0.7).T + rng.normal(scale=0.05, size=(8, 3))
            iso, rmsd = best_fit_isometry(src, dst)
            ca, cb = src.mean(axis=0), dst.mean(axis=0)
            for axis in axes:
                axis = axis / np.linalg.norm(axis)
                K = np.array([
                    [0, -axis[2], axis[1]],
                    [axis[2], 0, -axis[0]],
                    [-axis[1], axis[0], 0],
                ])
                pert = np.eye(3) + math.sin(1e-3) * K + (1 - math.cos(1e-3)) * (K @ K)
                R2 = pert @ iso.linear
                t2 = cb - R2 @ ca
                resid = src @ R2.T + t2 - dst
                rmsd2 = math.sqrt((resid * resid).sum() / len(src))
                assert rmsd2 >= rmsd - 1e-15


class TestApplyIsometry:
    def test_identity(self):
        iso = Isometry.identity(3)
        assert np.allclose(apply_isometry(iso, [1, 2, 3]), [1, 2, 3])

    def test_half_turn_2d(self):
        iso = Isometry(rotation2(math.pi), [0.0, 0.0])
        assert np.allclose(apply_isometry(iso, [1, 0]), [-1, 0], atol=1e-15)

    def test_translation(self):
        iso = Isometry(np.eye(3), [0, 0, 5.0])
        assert np.allclose(apply_isometry(iso, [1, 1, 1]), [1, 1, 6])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_isometry(Isometry.identity(2), [1, 2, 3])


class TestFitCircle:
    def test_unit_square(self):
        fit = fit_circle([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert np.allclose(fit.center, [0.5, 0.5], atol=1e-12)
        assert fit.radius == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
        assert fit.max_residual < 1e-12

    def test_triangle_exact_circumcircle(self):
        # right triangle (0,0) (4,0) (0,3): circumcenter (2, 1.5), radius 2.5
        fit = fit_circle([(0, 0), (4, 0), (0, 3)])
        assert np.allclose(fit.center, [2.0, 1.5], atol=1e-10)
        assert fit.radius == pytest.approx(2.5, abs=1e-10)
        assert fit.max_residual < 1e-12

    def test_rhombus_residual(self):
        # opposite angles pi/3 + pi/3 != pi, so the rhombus is not concyclic
        fit = fit_circle(RHOMBUS_PI3)
        assert fit.max_residual > 0.05
        assert fit.max_residual == pytest.approx(0.1830127, abs=1e-6)

    def test_collinear_raises(self):
        with pytest.raises(CollinearPoints):
            fit_circle([(0, 0), (1, 0), (2, 0), (3, 0)])

    def test_3d_coplanar_circle(self):
        square = np.array([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)], float)
        axis = np.array([1.0, 1.0, 0.0]) / math.sqrt(2)
        K = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
        theta = 0.6
        R = np.eye(3) + math.sin(theta) * K + (1 - math.cos(theta)) * (K @ K)
        t = np.array([3.0, -1.0, 2.0])
        pts = square @ R.T + t
        fit = fit_circle(pts)
        assert fit.max_residual < 1e-12
        assert fit.radius == pytest.approx(math.sqrt(2) / 2, abs=1e-10)
        assert np.allclose(fit.center, R @ np.array([0.5, 0.5, 0.0]) + t, atol=1e-10)
        assert np.linalg.norm(fit.plane_normal) == pytest.approx(1.0, abs=1e-12)
        assert abs(float(fit.plane_normal @ (R @ np.array([0, 0, 1.0])))) == pytest.approx(1.0, abs=1e-10)

    def test_non_coplanar_raises(self):
        pts = [(0, 0, 0), (1, 0, 0), (1, 1, 0.3), (0, 1, 0)]
        with pytest.raises(NonCoplanarPoints):
            fit_circle(pts)


class TestIsInscribed:
    def test_any_triangle(self, rng):
        for _ in range(10):
            tri = rng.normal(size=(3, 2))
            u, v = tri[1] - tri[0], tri[2] - tri[0]
            if abs(u[0] * v[1] - u[1] * v[0]) < 1e-3:
                continue
            ok, _ = is_inscribed(tri)
            assert ok

    def test_unit_square(self):
        ok, fit = is_inscribed(np.array([(0, 0), (1, 0), (1, 1), (0, 1)], float))
        assert ok

    def test_rhombus_not_inscribed(self):
        ok, _ = is_inscribed(RHOMBUS_PI3)
        assert not ok

    def test_degenerate_raises(self):
        with pytest.raises(DegeneratePolygon):
            is_inscribed(np.array([(0, 0), (1, 0), (2, 0)], float))


class TestCircumradius:
    def test_equilateral(self):
        assert circumradius_from_sides([1, 1, 1]) == pytest.approx(1 / math.sqrt(3), abs=1e-9)

    def test_right_triangle(self):
        # hypotenuse is a diameter: exercises the branch boundary
        assert circumradius_from_sides([3, 4, 5]) == pytest.approx(2.5, abs=1e-9)

    def test_obtuse_against_heron(self):
        r = circumradius_from_sides([2, 1, 1.2])
        assert r == pytest.approx(heron_circumradius(2, 1, 1.2), rel=1e-12)
        assert r == pytest.approx(1.3159, abs=1e-4)

    def test_unit_square_sides(self):
        assert circumradius_from_sides([1, 1, 1, 1]) == pytest.approx(math.sqrt(2) / 2, abs=1e-12)

    def test_polygon_inequality(self):
        with pytest.raises(PolygonInequality):
            circumradius_from_sides([10, 1, 1])

    def test_too_few_sides(self):
        with pytest.raises(PolygonInequality):
            circumradius_from_sides([1, 1])

    def test_monotone_angle_sum(self, rng):
        # r -> sum(arcsin(l/2r)) is strictly decreasing past max(l)/2
        for _ in range(10):
            L = rng.uniform(0.2, 3.0, size=rng.integers(3, 9))
            if L.max() >= L.sum() - L.max():
                continue
            grid = np.linspace(L.max() / 2 * (1 + 1e-9), L.max() * 5, 200)
            vals = [sum(math.asin(min(1.0, l / (2 * r))) for l in L) for r in grid]
            assert all(a > b for a, b in zip(vals, vals[1:]))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=3, max_value=10), st.integers(min_value=0, max_value=10**6),
           st.booleans())
    def test_cyclic_rotation_and_reversal_invariance(self, n, seed, outside):
        rng = np.random.default_rng(seed)
        poly = random_inscribed_polygon(rng, n, force_outside=outside)
        L = list(side_lengths(poly))
        r0 = circumradius_from_sides(L)
        k = seed % n
        assert circumradius_from_sides(L[k:] + L[:k]) == pytest.approx(r0, rel=1e-12)
        assert circumradius_from_sides(L[::-1]) == pytest.approx(r0, rel=1e-12)


class TestReconstruction:
    def test_unit_square(self):
        poly = reconstruct_inscribed_polygon([1, 1, 1, 1])
        r = math.sqrt(2) / 2
        expected = np.array([(r, 0), (0, r), (-r, 0), (0, -r)])
        assert np.allclose(poly, expected, atol=1e-12)

    def test_345_against_coordinates(self):
        poly = reconstruct_inscribed_polygon([3, 4, 5])
        iso, rmsd = best_fit_isometry(poly, np.array([(0, 0), (3, 0), (3, 4.0)]))
        assert rmsd < 1e-9

    def test_first_vertex_and_orientation(self, rng):
        L = side_lengths(random_inscribed_polygon(rng, 6))
        poly = reconstruct_inscribed_polygon(L)
        r = circumradius_from_sides(L)
        assert np.allclose(poly[0], [r, 0], atol=1e-12)
        nxt = np.roll(poly, -1, axis=0)
        area = 0.5 * (poly[:, 0] * nxt[:, 1] - poly[:, 1] * nxt[:, 0]).sum()
        assert area > 0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=3, max_value=12), st.integers(min_value=0, max_value=10**6),
           st.booleans())
    def test_round_trip_congruence(self, n, seed, outside):
        rng = np.random.default_rng(seed)
        original = random_inscribed_polygon(rng, n, force_outside=outside)
        L = side_lengths(original)
        rebuilt = reconstruct_inscribed_polygon(L)
        # side lengths come back and all vertices share one circle
        assert np.allclose(side_lengths(rebuilt), L, rtol=1e-10, atol=1e-12)
        radii = np.linalg.norm(rebuilt, axis=1)
        assert np.allclose(radii, radii[0], rtol=1e-10)
        # and the polygon is congruent to the original
        _, rmsd = best_fit_isometry(rebuilt, original)
        assert rmsd < 1e-9 * diameter_of(original)
