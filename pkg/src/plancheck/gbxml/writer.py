"""Serialize the recognized gbXML subset of a BuildingModel.

Exists so the parse -> serialize -> parse round trip can be checked and so
normalized models can be re-exported. Only fields the parser understands
are written.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .model import AreaUnit, BuildingModel, LengthUnit, NamedSchedule
from .parser import GBXML_NS

_LENGTH_ATTR = {
    LengthUnit.METERS: "Meters",
    LengthUnit.FEET: "Feet",
    LengthUnit.INCHES: "Inches",
    LengthUnit.MILLIMETERS: "Millimeters",
}
_AREA_ATTR = {
    AreaUnit.SQUARE_METERS: "SquareMeters",
    AreaUnit.SQUARE_FEET: "SquareFeet",
}
_SURFACE_ATTR = {
    "exterior_wall": "ExteriorWall",
    "interior_wall": "InteriorWall",
    "roof": "Roof",
    "ceiling": "Ceiling",
    "raised_floor": "RaisedFloor",
    "slab_on_grade": "SlabOnGrade",
    "shade": "Shade",
    "other": "Other",
}


def write_gbxml(model: BuildingModel) -> str:
    """Render the model as a gbXML document string."""
    root = ET.Element(
        "gbXML",
        {
            "xmlns": GBXML_NS,
            "lengthUnit": _LENGTH_ATTR[model.length_unit],
            "areaUnit": _AREA_ATTR[model.area_unit],
        },
    )
    campus = ET.SubElement(root, "Campus", {"id": "campus-1"})
    building = ET.SubElement(campus, "Building", {"id": "building-1"})
    for space in model.spaces:
        el = ET.SubElement(building, "Space", {"id": space.id})
        if space.name:
            ET.SubElement(el, "Name").text = space.name
        if space.area is not None:
            ET.SubElement(el, "Area").text = str(space.area)

    for surface in model.surfaces:
        attrs = {
            "id": surface.id,
            "surfaceType": _SURFACE_ATTR[surface.surface_type.value],
        }
        if surface.construction_id:
            attrs["constructionIdRef"] = surface.construction_id
        el = ET.SubElement(campus, "Surface", attrs)
        if surface.name:
            ET.SubElement(el, "Name").text = surface.name
        for space_id in surface.adjacent_space_ids:
            ET.SubElement(el, "AdjacentSpaceId", {"spaceIdRef": space_id})
        if surface.declared_tilt_deg is not None or surface.declared_azimuth_deg is not None:
            rect = ET.SubElement(el, "RectangularGeometry")
            if surface.declared_azimuth_deg is not None:
                ET.SubElement(rect, "Azimuth").text = str(surface.declared_azimuth_deg)
            if surface.declared_tilt_deg is not None:
                ET.SubElement(rect, "Tilt").text = str(surface.declared_tilt_deg)
        planar = ET.SubElement(el, "PlanarGeometry")
        loop = ET.SubElement(planar, "PolyLoop")
        for vertex in surface.vertices:
            point = ET.SubElement(loop, "CartesianPoint")
            for coord in vertex.as_tuple():
                ET.SubElement(point, "Coordinate").text = str(coord)

    for construction in model.constructions:
        el = ET.SubElement(root, "Construction", {"id": construction.id})
        for material_id in construction.layer_material_ids:
            ET.SubElement(el, "MaterialId", {"materialIdRef": material_id})

    for material in model.materials:
        el = ET.SubElement(root, "Material", {"id": material.id})
        if material.r_value_si is not None:
            ET.SubElement(el, "R-value").text = str(material.r_value_si)
        if material.thickness_m is not None:
            ET.SubElement(el, "Thickness").text = str(material.thickness_m)
        if material.conductivity_w_mk is not None:
            ET.SubElement(el, "Conductivity").text = str(material.conductivity_w_mk)

    for schedule in model.schedules:
        _write_schedule(root, schedule)

    return ET.tostring(root, encoding="unicode")


def _write_schedule(root: ET.Element, schedule: NamedSchedule) -> None:
    week_id = f"{schedule.id}-week"
    year_id = f"{schedule.id}-year"
    el = ET.SubElement(root, "Schedule", {"id": schedule.id})
    if schedule.name:
        ET.SubElement(el, "Name").text = schedule.name
    ET.SubElement(el, "YearScheduleId", {"yearScheduleIdRef": year_id})

    year = ET.SubElement(root, "YearSchedule", {"id": year_id})
    ET.SubElement(year, "WeekScheduleId", {"weekScheduleIdRef": week_id})

    week = ET.SubElement(root, "WeekSchedule", {"id": week_id})
    for i, (day_type, values) in enumerate(schedule.hourly_values):
        day_id = f"{schedule.id}-day-{i}"
        ET.SubElement(week, "Day", {"dayType": day_type, "dayScheduleIdRef": day_id})
        day = ET.SubElement(root, "DaySchedule", {"id": day_id})
        for value in values:
            ET.SubElement(day, "ScheduleValue").text = str(value)
