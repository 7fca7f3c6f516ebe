"""Planar-loop geometry: Newell normal, area, tilt, and azimuth.

All functions operate on ordered vertex loops given as (x, y, z) triples in
an arbitrary right-handed frame with +Z up and +Y project north. Loops are
implicitly closed (last vertex connects back to the first).

Newell's method is used throughout because exported vertex loops are rarely
perfectly planar; it degrades gracefully instead of depending on any three
non-collinear points.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

Point = tuple[float, float, float]

# Loops whose Newell normal is shorter than this fraction of the squared
# loop diameter are treated as degenerate (collinear or repeated points).
_DEGENERATE_REL_TOL = 1e-12


class DegenerateLoop(ValueError):
    """Loop has fewer than 3 distinct vertices or is collinear."""


def _dedupe_closed(vertices: Sequence[Point]) -> list[Point]:
    """Drop consecutive duplicates and an explicit closing vertex."""
    pts: list[Point] = []
    for p in vertices:
        if not pts or p != pts[-1]:
            pts.append(p)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return pts


def loop_diameter(vertices: Sequence[Point]) -> float:
    """Largest pairwise vertex distance; 0 for fewer than 2 points."""
    best = 0.0
    for i, a in enumerate(vertices):
        for b in vertices[i + 1 :]:
            d = math.dist(a, b)
            if d > best:
                best = d
    return best


def newell_vector(vertices: Sequence[Point]) -> Point:
    """Sum of cross products v_i x v_{i+1} around the closed loop.

    Half its magnitude is the loop area; its direction follows the
    right-hand rule over the vertex winding.
    """
    nx = ny = nz = 0.0
    n = len(vertices)
    for i in range(n):
        x1, y1, z1 = vertices[i]
        x2, y2, z2 = vertices[(i + 1) % n]
        nx += y1 * z2 - z1 * y2
        ny += z1 * x2 - x1 * z2
        nz += x1 * y2 - y1 * x2
    return (nx, ny, nz)


def _checked_newell(vertices: Sequence[Point]) -> tuple[list[Point], Point, float]:
    pts = _dedupe_closed(vertices)
    if len(pts) < 3:
        raise DegenerateLoop(f"loop has {len(pts)} distinct vertices, need >= 3")
    nvec = newell_vector(pts)
    mag = math.hypot(*nvec)
    diam = loop_diameter(pts)
    if diam == 0.0 or mag <= _DEGENERATE_REL_TOL * diam * diam:
        raise DegenerateLoop("loop vertices are collinear")
    return pts, nvec, mag


def loop_area(vertices: Sequence[Point]) -> float:
    """Area of the vertex loop: half the Newell vector magnitude."""
    _, _, mag = _checked_newell(vertices)
    return 0.5 * mag


def unit_normal(vertices: Sequence[Point]) -> Point:
    """Unit Newell normal; orientation follows vertex winding."""
    _, (nx, ny, nz), mag = _checked_newell(vertices)
    return (nx / mag, ny / mag, nz / mag)


def loop_tilt_deg(vertices: Sequence[Point]) -> float:
    """Angle between the loop normal and +Z, in degrees [0, 180].

    0 = up-facing roof, 90 = vertical wall, 180 = down-facing floor.
    """
    _, _, nz = unit_normal(vertices)
    return math.degrees(math.acos(max(-1.0, min(1.0, nz))))


class HorizontalSurface(ValueError):
    """Azimuth is undefined for a horizontal surface."""


def loop_azimuth_deg(vertices: Sequence[Point]) -> float:
    """Clockwise angle in [0, 360) from +Y (project north) of the normal.

    Raises HorizontalSurface when the normal has no horizontal component
    (tilt of 0 or 180).
    """
    nx, ny, _ = unit_normal(vertices)
    if math.hypot(nx, ny) < 1e-12:
        raise HorizontalSurface("normal has no horizontal projection")
    return math.degrees(math.atan2(nx, ny)) % 360.0


def planarity_deviation(vertices: Sequence[Point]) -> float:
    """Max out-of-plane distance from the Newell best-fit plane.

    The plane passes through the vertex centroid with the unit Newell
    normal. Returns 0.0 for degenerate loops (nothing to measure).
    """
    try:
        pts, (nx, ny, nz), mag = _checked_newell(vertices)
    except DegenerateLoop:
        return 0.0
    ux, uy, uz = nx / mag, ny / mag, nz / mag
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    cz = sum(p[2] for p in pts) / len(pts)
    return max(
        abs((p[0] - cx) * ux + (p[1] - cy) * uy + (p[2] - cz) * uz) for p in pts
    )


def is_planar(vertices: Sequence[Point], rel_tol: float = 1e-6) -> bool:
    """True when out-of-plane deviation <= rel_tol x loop diameter."""
    pts = _dedupe_closed(vertices)
    diam = loop_diameter(pts)
    if diam == 0.0:
        return True
    return planarity_deviation(pts) <= rel_tol * diam
