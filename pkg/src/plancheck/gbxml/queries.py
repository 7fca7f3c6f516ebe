"""Geometry and attribute queries over a parsed BuildingModel.

All results are normalized to SI (m2, m2*K/W) regardless of the source
document's units; the unit scale is applied at the query boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geometry
from .model import (
    FLOOR_TYPES,
    BuildingModel,
    NoConstruction,
    Surface,
    UnresolvedMaterial,
)

# Re-exported so query callers can catch geometry faults from one place.
DegenerateLoop = geometry.DegenerateLoop
HorizontalSurface = geometry.HorizontalSurface


def surface_area(model: BuildingModel, surface_id: str) -> float:
    """Loop area of the surface in m2 (Newell's method)."""
    surface = model.surface(surface_id)
    scale = model.length_unit.meters_per_unit
    return geometry.loop_area(surface.loop()) * scale * scale


def surface_tilt(model: BuildingModel, surface_id: str) -> float:
    """Tilt of the surface normal vs vertical, degrees in [0, 180]."""
    surface = model.surface(surface_id)
    return geometry.loop_tilt_deg(surface.loop())


def surface_azimuth(model: BuildingModel, surface_id: str) -> float:
    """Clockwise angle from project north of the normal, degrees [0, 360)."""
    surface = model.surface(surface_id)
    return geometry.loop_azimuth_deg(surface.loop())


def surface_r_value(model: BuildingModel, surface_id: str) -> float:
    """Layer-sum thermal resistance in m2*K/W; air films excluded.

    Each layer contributes its r_value_si, or thickness/conductivity when
    no explicit resistance is given.
    """
    surface = model.surface(surface_id)
    if not surface.construction_id:
        raise NoConstruction(f"surface {surface_id!r} has no construction")
    construction = model.construction(surface.construction_id)
    if construction is None:
        raise NoConstruction(
            f"surface {surface_id!r} references unknown construction"
            f" {surface.construction_id!r}"
        )
    total = 0.0
    for material_id in construction.layer_material_ids:
        material = model.material(material_id)
        if material is None:
            raise UnresolvedMaterial(material_id)
        if material.r_value_si is not None:
            total += material.r_value_si
        elif (
            material.thickness_m
            and material.conductivity_w_mk
            and material.thickness_m > 0
            and material.conductivity_w_mk > 0
        ):
            total += material.thickness_m / material.conductivity_w_mk
        else:
            raise UnresolvedMaterial(
                f"material {material_id!r} has neither r-value nor"
                " thickness/conductivity"
            )
    return total


@dataclass(frozen=True)
class ModelSummary:
    space_count: int
    surface_count: int
    construction_count: int
    total_floor_area_m2: float


def model_summary(model: BuildingModel) -> ModelSummary:
    """Entity counts plus total floor area in m2.

    Floor area is the sum of declared space areas when any are present,
    otherwise the summed loop area of floor-type surfaces.
    """
    space_areas = [s.area for s in model.spaces if s.area is not None]
    if space_areas:
        total = sum(space_areas) * model.area_unit.square_meters_per_unit
    else:
        total = 0.0
        for surface in model.surfaces:
            if surface.surface_type in FLOOR_TYPES:
                try:
                    total += surface_area(model, surface.id)
                except geometry.DegenerateLoop:
                    continue
    return ModelSummary(
        space_count=len(model.spaces),
        surface_count=len(model.surfaces),
        construction_count=len(model.constructions),
        total_floor_area_m2=total,
    )


def _surface_attributes(model: BuildingModel, surface: Surface) -> dict:
    record: dict = {
        "id": surface.id,
        "name": surface.name,
        "type": surface.surface_type.value,
        "area_m2": None,
        "tilt_deg": None,
        "azimuth_deg": None,
        "r_value_si": None,
        "warnings": [],
    }
    try:
        record["area_m2"] = round(surface_area(model, surface.id), 6)
        record["tilt_deg"] = round(surface_tilt(model, surface.id), 6)
    except geometry.DegenerateLoop:
        record["warnings"].append("degenerate loop")
    if record["tilt_deg"] is not None:
        try:
            record["azimuth_deg"] = round(surface_azimuth(model, surface.id), 6)
        except geometry.HorizontalSurface:
            record["warnings"].append("horizontal surface: azimuth undefined")
    try:
        record["r_value_si"] = round(surface_r_value(model, surface.id), 6)
    except NoConstruction:
        record["warnings"].append("no construction")
    except UnresolvedMaterial as exc:
        record["warnings"].append(f"unresolved material: {exc}")
    return record


def extract_attributes(model: BuildingModel) -> dict:
    """Structured attribute document for every surface, for JSON output."""
    summary = model_summary(model)
    return {
        "length_unit": model.length_unit.value,
        "area_unit": model.area_unit.value,
        "summary": {
            "spaces": summary.space_count,
            "surfaces": summary.surface_count,
            "constructions": summary.construction_count,
            "total_floor_area_m2": round(summary.total_floor_area_m2, 6),
        },
        "surfaces": [_surface_attributes(model, s) for s in model.surfaces],
        "warnings": list(model.warnings),
    }
