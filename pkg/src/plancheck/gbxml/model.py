"""Normalized building model produced by the gbXML parser.

The model is a plain immutable snapshot of the recognized subset of a
gbXML document: spaces, surfaces with their vertex loops, constructions,
materials, and day/week schedules. It is safe to share across threads
once parsed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class LengthUnit(Enum):
    METERS = "meters"
    FEET = "feet"
    INCHES = "inches"
    MILLIMETERS = "millimeters"

    @property
    def meters_per_unit(self) -> float:
        return _METERS_PER_UNIT[self]


_METERS_PER_UNIT = {
    LengthUnit.METERS: 1.0,
    LengthUnit.FEET: 0.3048,
    LengthUnit.INCHES: 0.0254,
    LengthUnit.MILLIMETERS: 0.001,
}


class AreaUnit(Enum):
    SQUARE_METERS = "square_meters"
    SQUARE_FEET = "square_feet"

    @property
    def square_meters_per_unit(self) -> float:
        return 1.0 if self is AreaUnit.SQUARE_METERS else 0.3048 * 0.3048


class SurfaceType(Enum):
    EXTERIOR_WALL = "exterior_wall"
    INTERIOR_WALL = "interior_wall"
    ROOF = "roof"
    CEILING = "ceiling"
    RAISED_FLOOR = "raised_floor"
    SLAB_ON_GRADE = "slab_on_grade"
    SHADE = "shade"
    OTHER = "other"


# Surface types whose loop area counts as floor area in summaries.
FLOOR_TYPES = frozenset({SurfaceType.RAISED_FLOOR, SurfaceType.SLAB_ON_GRADE})


@dataclass(frozen=True)
class Vertex:
    """A point in model length units; +Z up, +Y project north."""

    x: float
    y: float
    z: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Surface:
    id: str
    surface_type: SurfaceType
    vertices: tuple[Vertex, ...]
    construction_id: str | None = None
    adjacent_space_ids: tuple[str, ...] = ()
    name: str = ""
    # Declared values from the document, kept for cross-checking only;
    # loop-derived values always win in queries.
    declared_tilt_deg: float | None = None
    declared_azimuth_deg: float | None = None

    def loop(self) -> tuple[tuple[float, float, float], ...]:
        return tuple(v.as_tuple() for v in self.vertices)


@dataclass(frozen=True)
class Space:
    id: str
    name: str = ""
    area: float | None = None  # in model area units


@dataclass(frozen=True)
class Construction:
    id: str
    layer_material_ids: tuple[str, ...]  # ordered outside -> inside


@dataclass(frozen=True)
class Material:
    """Either r_value_si is given, or thickness and conductivity are."""

    id: str
    r_value_si: float | None = None  # m2*K/W
    thickness_m: float | None = None
    conductivity_w_mk: float | None = None


@dataclass(frozen=True)
class NamedSchedule:
    """Hourly fractional schedule per day type (24 values each, in [0,1])."""

    id: str
    name: str
    hourly_values: tuple[tuple[str, tuple[float, ...]], ...]

    def day_types(self) -> tuple[str, ...]:
        return tuple(day for day, _ in self.hourly_values)

    def values_for(self, day_type: str) -> tuple[float, ...] | None:
        for day, values in self.hourly_values:
            if day == day_type:
                return values
        return None


@dataclass(frozen=True)
class BuildingModel:
    length_unit: LengthUnit = LengthUnit.METERS
    area_unit: AreaUnit = AreaUnit.SQUARE_METERS
    spaces: tuple[Space, ...] = ()
    surfaces: tuple[Surface, ...] = ()
    constructions: tuple[Construction, ...] = ()
    materials: tuple[Material, ...] = ()
    schedules: tuple[NamedSchedule, ...] = ()
    warnings: tuple[str, ...] = ()

    def surface(self, surface_id: str) -> Surface:
        for s in self.surfaces:
            if s.id == surface_id:
                return s
        raise UnknownSurface(surface_id)

    def construction(self, construction_id: str) -> Construction | None:
        for c in self.constructions:
            if c.id == construction_id:
                return c
        return None

    def material(self, material_id: str) -> Material | None:
        for m in self.materials:
            if m.id == material_id:
                return m
        return None


class GbxmlError(Exception):
    """Base for gbXML parsing and query failures."""


class MalformedXml(GbxmlError):
    pass


class MissingCampus(GbxmlError):
    pass


class UnknownUnit(GbxmlError):
    pass


class UnknownSurface(GbxmlError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its arg; keep it plain
        return str(self.args[0]) if self.args else ""


class NoConstruction(GbxmlError):
    pass


class UnresolvedMaterial(GbxmlError):
    pass
