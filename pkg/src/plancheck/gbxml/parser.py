"""gbXML document parsing into a BuildingModel.

Only the subset needed for geometry and attribute queries is recognized:
campus spaces and surfaces (with polygon loops), constructions, layers,
materials, and the schedule chain (Schedule -> YearSchedule ->
WeekSchedule -> DaySchedule). Everything else is skipped with a warning;
imperfect exports are the norm, so referential or planarity problems are
flagged rather than fatal.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from . import geometry
from .model import (
    AreaUnit,
    BuildingModel,
    Construction,
    LengthUnit,
    MalformedXml,
    Material,
    MissingCampus,
    NamedSchedule,
    Space,
    Surface,
    SurfaceType,
    UnknownUnit,
    Vertex,
)

GBXML_NS = "http://www.gbxml.org/schema"

_LENGTH_UNITS = {
    "Meters": LengthUnit.METERS,
    "Feet": LengthUnit.FEET,
    "Inches": LengthUnit.INCHES,
    "Millimeters": LengthUnit.MILLIMETERS,
}

_AREA_UNITS = {
    "SquareMeters": AreaUnit.SQUARE_METERS,
    "SquareFeet": AreaUnit.SQUARE_FEET,
}

_SURFACE_TYPES = {
    "ExteriorWall": SurfaceType.EXTERIOR_WALL,
    "InteriorWall": SurfaceType.INTERIOR_WALL,
    "Roof": SurfaceType.ROOF,
    "Ceiling": SurfaceType.CEILING,
    "RaisedFloor": SurfaceType.RAISED_FLOOR,
    "SlabOnGrade": SurfaceType.SLAB_ON_GRADE,
    "Shade": SurfaceType.SHADE,
}

# Elements we deliberately recognize at the levels where unknowns warn.
_KNOWN_ROOT_CHILDREN = {
    "Campus",
    "Construction",
    "Layer",
    "Material",
    "Schedule",
    "YearSchedule",
    "WeekSchedule",
    "DaySchedule",
    "DocumentHistory",
}
_KNOWN_CAMPUS_CHILDREN = {"Name", "Location", "Building", "Surface"}

# Declared Tilt/Azimuth differing from loop-derived values by more than
# this many degrees are flagged; derived values always win.
_DECLARED_ANGLE_TOL_DEG = 1.0


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _find(el: ET.Element, name: str) -> ET.Element | None:
    for child in el:
        if _local(child.tag) == name:
            return child
    return None


def _findall(el: ET.Element, name: str) -> list[ET.Element]:
    return [child for child in el if _local(child.tag) == name]


def _text(el: ET.Element | None) -> str:
    return (el.text or "").strip() if el is not None else ""


def _float_or_none(raw: str) -> float | None:
    try:
        return float(raw)
    except ValueError:
        return None


def parse_gbxml(document_text: str) -> BuildingModel:
    """Parse gbXML text into a normalized BuildingModel.

    Raises MalformedXml for unparseable input, MissingCampus when the
    document has no campus geometry, and UnknownUnit for unit attributes
    outside the supported set. All other irregularities become entries in
    the returned model's warnings.
    """
    try:
        root = ET.fromstring(document_text)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc

    warnings: list[str] = []

    length_unit = _parse_unit(root.get("lengthUnit"), _LENGTH_UNITS, LengthUnit.METERS)
    area_unit = _parse_unit(root.get("areaUnit"), _AREA_UNITS, AreaUnit.SQUARE_METERS)

    campus = None
    for child in root:
        name = _local(child.tag)
        if name == "Campus":
            campus = child
        elif name not in _KNOWN_ROOT_CHILDREN:
            warnings.append(f"ignored unrecognized element <{name}>")
    if campus is None:
        raise MissingCampus("document contains no <Campus> element")

    spaces: list[Space] = []
    surfaces: list[Surface] = []
    for child in campus:
        name = _local(child.tag)
        if name == "Building":
            for sp in _findall(child, "Space"):
                spaces.append(_parse_space(sp, warnings))
        elif name == "Surface":
            surface = _parse_surface(child, warnings)
            if surface is not None:
                surfaces.append(surface)
        elif name not in _KNOWN_CAMPUS_CHILDREN:
            warnings.append(f"ignored unrecognized element <Campus>/<{name}>")

    seen_ids: set[str] = set()
    for s in surfaces:
        if s.id in seen_ids:
            warnings.append(f"duplicate surface id {s.id!r}")
        seen_ids.add(s.id)

    materials = [_parse_material(el) for el in _findall(root, "Material")]
    layers = {
        el.get("id", ""): tuple(
            m.get("materialIdRef", "") for m in _findall(el, "MaterialId")
        )
        for el in _findall(root, "Layer")
    }
    constructions = [
        _parse_construction(el, layers, warnings)
        for el in _findall(root, "Construction")
    ]

    material_ids = {m.id for m in materials}
    construction_ids = {c.id for c in constructions}
    for c in constructions:
        for mid in c.layer_material_ids:
            if mid not in material_ids:
                warnings.append(
                    f"construction {c.id!r} references unknown material {mid!r}"
                )
    for s in surfaces:
        if s.construction_id and s.construction_id not in construction_ids:
            warnings.append(
                f"surface {s.id!r} references unknown construction"
                f" {s.construction_id!r}"
            )

    schedules = _parse_schedules(root, warnings)

    return BuildingModel(
        length_unit=length_unit,
        area_unit=area_unit,
        spaces=tuple(spaces),
        surfaces=tuple(surfaces),
        constructions=tuple(constructions),
        materials=tuple(materials),
        schedules=tuple(schedules),
        warnings=tuple(warnings),
    )


def _parse_unit(raw, table, default):
    if raw is None:
        return default
    try:
        return table[raw]
    except KeyError:
        raise UnknownUnit(f"unsupported unit attribute {raw!r}") from None


def _parse_space(el: ET.Element, warnings: list[str]) -> Space:
    area = None
    area_text = _text(_find(el, "Area"))
    if area_text:
        area = _float_or_none(area_text)
        if area is None:
            warnings.append(f"space {el.get('id')!r}: unreadable <Area> {area_text!r}")
    return Space(id=el.get("id", ""), name=_text(_find(el, "Name")), area=area)


def _parse_surface(el: ET.Element, warnings: list[str]) -> Surface | None:
    surface_id = el.get("id", "")
    raw_type = el.get("surfaceType", "")
    surface_type = _SURFACE_TYPES.get(raw_type)
    if surface_type is None:
        warnings.append(
            f"surface {surface_id!r}: unrecognized surfaceType {raw_type!r},"
            " treating as other"
        )
        surface_type = SurfaceType.OTHER

    vertices: list[Vertex] = []
    planar = _find(el, "PlanarGeometry")
    loop = _find(planar, "PolyLoop") if planar is not None else None
    if loop is not None:
        for point in _findall(loop, "CartesianPoint"):
            coords = [_float_or_none(_text(c)) for c in _findall(point, "Coordinate")]
            if len(coords) != 3 or any(c is None for c in coords):
                warnings.append(f"surface {surface_id!r}: unreadable coordinate")
                return None
            if not all(math.isfinite(c) for c in coords):  # type: ignore[arg-type]
                warnings.append(f"surface {surface_id!r}: non-finite coordinate")
                return None
            vertices.append(Vertex(*coords))  # type: ignore[arg-type]

    adjacent = tuple(
        a.get("spaceIdRef", "") for a in _findall(el, "AdjacentSpaceId")
    )[:2]

    declared_tilt = declared_azimuth = None
    rect = _find(el, "RectangularGeometry")
    if rect is not None:
        declared_tilt = _float_or_none(_text(_find(rect, "Tilt")) or "x")
        declared_azimuth = _float_or_none(_text(_find(rect, "Azimuth")) or "x")

    surface = Surface(
        id=surface_id,
        surface_type=surface_type,
        vertices=tuple(vertices),
        construction_id=el.get("constructionIdRef") or None,
        adjacent_space_ids=adjacent,
        name=_text(_find(el, "Name")),
        declared_tilt_deg=declared_tilt,
        declared_azimuth_deg=declared_azimuth,
    )
    _check_loop(surface, warnings)
    return surface


def _check_loop(surface: Surface, warnings: list[str]) -> None:
    loop = surface.loop()
    try:
        tilt = geometry.loop_tilt_deg(loop)
    except geometry.DegenerateLoop:
        warnings.append(f"surface {surface.id!r}: degenerate vertex loop")
        return
    if not geometry.is_planar(loop):
        warnings.append(
            f"surface {surface.id!r}: non-planar loop (deviation"
            f" {geometry.planarity_deviation(loop):.3g})"
        )
    if surface.declared_tilt_deg is not None:
        if abs(surface.declared_tilt_deg - tilt) > _DECLARED_ANGLE_TOL_DEG:
            warnings.append(
                f"surface {surface.id!r}: declared tilt {surface.declared_tilt_deg:g}"
                f" differs from loop-derived {tilt:.2f}"
            )
    if surface.declared_azimuth_deg is not None:
        try:
            azimuth = geometry.loop_azimuth_deg(loop)
        except geometry.HorizontalSurface:
            return
        diff = abs(surface.declared_azimuth_deg - azimuth) % 360.0
        if min(diff, 360.0 - diff) > _DECLARED_ANGLE_TOL_DEG:
            warnings.append(
                f"surface {surface.id!r}: declared azimuth"
                f" {surface.declared_azimuth_deg:g} differs from loop-derived"
                f" {azimuth:.2f}"
            )


def _parse_material(el: ET.Element) -> Material:
    def value_of(name: str) -> float | None:
        text = _text(_find(el, name))
        return _float_or_none(text) if text else None

    return Material(
        id=el.get("id", ""),
        r_value_si=value_of("R-value"),
        thickness_m=value_of("Thickness"),
        conductivity_w_mk=value_of("Conductivity"),
    )


def _parse_construction(
    el: ET.Element, layers: dict[str, tuple[str, ...]], warnings: list[str]
) -> Construction:
    material_ids: list[str] = []
    for layer_ref in _findall(el, "LayerId"):
        layer_id = layer_ref.get("layerIdRef", "")
        if layer_id in layers:
            material_ids.extend(layers[layer_id])
        else:
            warnings.append(
                f"construction {el.get('id')!r} references unknown layer"
                f" {layer_id!r}"
            )
    # Some exporters skip the Layer indirection entirely.
    for mat_ref in _findall(el, "MaterialId"):
        material_ids.append(mat_ref.get("materialIdRef", ""))
    return Construction(id=el.get("id", ""), layer_material_ids=tuple(material_ids))


def _parse_schedules(root: ET.Element, warnings: list[str]) -> list[NamedSchedule]:
    day_values: dict[str, tuple[float, ...]] = {}
    for el in _findall(root, "DaySchedule"):
        values = []
        for v in _findall(el, "ScheduleValue"):
            f = _float_or_none(_text(v))
            if f is None:
                f = 0.0
                warnings.append(
                    f"day schedule {el.get('id')!r}: unreadable schedule value"
                )
            if not 0.0 <= f <= 1.0:
                warnings.append(
                    f"day schedule {el.get('id')!r}: value {f:g} outside [0,1],"
                    " clamped"
                )
                f = min(1.0, max(0.0, f))
            values.append(f)
        if len(values) != 24:
            warnings.append(
                f"day schedule {el.get('id')!r}: expected 24 values,"
                f" got {len(values)}"
            )
            values = (values + [0.0] * 24)[:24]
        day_values[el.get("id", "")] = tuple(values)

    week_days: dict[str, tuple[tuple[str, str], ...]] = {}
    for el in _findall(root, "WeekSchedule"):
        week_days[el.get("id", "")] = tuple(
            (d.get("dayType", ""), d.get("dayScheduleIdRef", ""))
            for d in _findall(el, "Day")
        )

    year_weeks: dict[str, str] = {}
    for el in _findall(root, "YearSchedule"):
        ref = _find(el, "WeekScheduleId")
        if ref is not None:
            year_weeks[el.get("id", "")] = ref.get("weekScheduleIdRef", "")

    schedules: list[NamedSchedule] = []
    for el in _findall(root, "Schedule"):
        schedule_id = el.get("id", "")
        year_ref = _find(el, "YearScheduleId")
        week_id = None
        if year_ref is not None:
            week_id = year_weeks.get(year_ref.get("yearScheduleIdRef", ""))
        if week_id is None or week_id not in week_days:
            warnings.append(
                f"schedule {schedule_id!r}: could not resolve week schedule"
            )
            continue
        hourly: list[tuple[str, tuple[float, ...]]] = []
        for day_type, day_id in week_days[week_id]:
            if day_id not in day_values:
                warnings.append(
                    f"schedule {schedule_id!r}: unknown day schedule {day_id!r}"
                )
                continue
            hourly.append((day_type, day_values[day_id]))
        schedules.append(
            NamedSchedule(
                id=schedule_id,
                name=_text(_find(el, "Name")),
                hourly_values=tuple(hourly),
            )
        )
    return schedules
