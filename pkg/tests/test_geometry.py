"""Planar-loop geometry: Newell area, tilt, azimuth."""

import math
import random

import pytest

from plancheck.gbxml import geometry
from oracle_helpers import (
    apply_transform,
    random_star_polygon,
    rotation_matrix,
    shoelace_area,
)

UNIT_SQUARE = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]


def test_unit_square_area():
    assert geometry.loop_area(UNIT_SQUARE) == pytest.approx(1.0)


def test_right_triangle_area():
    triangle = [(0, 0, 0), (3, 0, 0), (0, 4, 0)]
    assert geometry.loop_area(triangle) == pytest.approx(6.0)


def test_rotated_square_keeps_area():
    # Oracle: planar shoelace area before the rigid transform.
    expected = shoelace_area([(p[0], p[1]) for p in UNIT_SQUARE])
    matrix = rotation_matrix(0.7, -1.2, 2.9)
    rotated = apply_transform(UNIT_SQUARE, matrix, translation=(5.0, -3.0, 11.0))
    assert geometry.loop_area(rotated) == pytest.approx(expected, abs=1e-9)


def test_area_scaling_is_quadratic():
    rng = random.Random(7)
    poly = random_star_polygon(rng, 6)
    base = geometry.loop_area(poly)
    for s in (0.25, 3.0, 17.5):
        scaled = [(x * s, y * s, z * s) for x, y, z in poly]
        assert geometry.loop_area(scaled) == pytest.approx(base * s * s, rel=1e-9)


def test_newell_matches_shoelace_in_plane():
    rng = random.Random(11)
    for _ in range(50):
        poly = random_star_polygon(rng, rng.randint(3, 12))
        expected = shoelace_area([(x, y) for x, y, _ in poly])
        assert geometry.loop_area(poly) == pytest.approx(expected, rel=1e-12)


def test_winding_reversal_keeps_area_and_flips_tilt():
    rng = random.Random(13)
    for _ in range(20):
        poly = random_star_polygon(rng, rng.randint(3, 8))
        matrix = rotation_matrix(
            rng.uniform(0, math.pi), rng.uniform(0, math.pi), rng.uniform(0, math.pi)
        )
        moved = apply_transform(poly, matrix)
        reversed_loop = list(reversed(moved))
        assert geometry.loop_area(reversed_loop) == pytest.approx(
            geometry.loop_area(moved), rel=1e-12
        )
        tilt = geometry.loop_tilt_deg(moved)
        assert geometry.loop_tilt_deg(reversed_loop) == pytest.approx(
            180.0 - tilt, abs=1e-9
        )


def test_tilt_conventions():
    wall = [(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)]  # normal (1,0,0)
    assert geometry.loop_tilt_deg(wall) == pytest.approx(90.0)
    roof = UNIT_SQUARE  # counterclockwise seen from above -> normal +z
    assert geometry.loop_tilt_deg(roof) == pytest.approx(0.0)
    floor = list(reversed(UNIT_SQUARE))  # wound so the normal points down
    assert geometry.loop_tilt_deg(floor) == pytest.approx(180.0)


def test_azimuth_conventions():
    north_facing = [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)]
    # Normal of that wall is (0,-1,0): check the math then the convention.
    nx, ny, nz = geometry.unit_normal(north_facing)
    assert (nx, ny, nz) == pytest.approx((0.0, -1.0, 0.0))
    assert geometry.loop_azimuth_deg(north_facing) == pytest.approx(180.0)

    south_wound = list(reversed(north_facing))  # normal (0,1,0) -> north
    assert geometry.loop_azimuth_deg(south_wound) == pytest.approx(0.0)

    east_facing = [(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)]  # normal (1,0,0)
    assert geometry.loop_azimuth_deg(east_facing) == pytest.approx(90.0)


def test_azimuth_undefined_for_horizontal():
    with pytest.raises(geometry.HorizontalSurface):
        geometry.loop_azimuth_deg(UNIT_SQUARE)


def test_degenerate_loops_rejected():
    with pytest.raises(geometry.DegenerateLoop):
        geometry.loop_area([(0, 0, 0), (1, 1, 1)])
    with pytest.raises(geometry.DegenerateLoop):
        geometry.loop_area([(0, 0, 0), (1, 0, 0), (2, 0, 0)])  # collinear
    with pytest.raises(geometry.DegenerateLoop):
        geometry.loop_area([(0, 0, 0), (0, 0, 0), (1, 0, 0), (1, 0, 0)])


def test_closing_vertex_and_duplicates_tolerated():
    closed = UNIT_SQUARE + [UNIT_SQUARE[0]]
    assert geometry.loop_area(closed) == pytest.approx(1.0)
    doubled = [(0, 0, 0), (1, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]
    assert geometry.loop_area(doubled) == pytest.approx(1.0)


def test_planarity_detection():
    assert geometry.is_planar(UNIT_SQUARE)
    bent = [(0, 0, 0), (1, 0, 0), (1, 1, 0.05), (0, 1, 0)]
    assert not geometry.is_planar(bent)
    assert geometry.planarity_deviation(bent) > 0.01


def test_nonplanar_loop_still_has_area():
    bent = [(0, 0, 0), (1, 0, 0), (1, 1, 0.01), (0, 1, 0)]
    assert geometry.loop_area(bent) == pytest.approx(1.0, rel=1e-3)
