"""gbXML building-model parsing and geometry/attribute queries."""

from .geometry import DegenerateLoop, HorizontalSurface
from .model import (
    AreaUnit,
    BuildingModel,
    Construction,
    GbxmlError,
    LengthUnit,
    MalformedXml,
    Material,
    MissingCampus,
    NamedSchedule,
    NoConstruction,
    Space,
    Surface,
    SurfaceType,
    UnknownSurface,
    UnknownUnit,
    UnresolvedMaterial,
    Vertex,
)
from .parser import parse_gbxml
from .queries import (
    ModelSummary,
    extract_attributes,
    model_summary,
    surface_area,
    surface_azimuth,
    surface_r_value,
    surface_tilt,
)
from .writer import write_gbxml

__all__ = [
    "AreaUnit",
    "BuildingModel",
    "Construction",
    "DegenerateLoop",
    "GbxmlError",
    "HorizontalSurface",
    "LengthUnit",
    "MalformedXml",
    "Material",
    "MissingCampus",
    "ModelSummary",
    "NamedSchedule",
    "NoConstruction",
    "Space",
    "Surface",
    "SurfaceType",
    "UnknownSurface",
    "UnknownUnit",
    "UnresolvedMaterial",
    "Vertex",
    "extract_attributes",
    "model_summary",
    "parse_gbxml",
    "surface_area",
    "surface_azimuth",
    "surface_r_value",
    "surface_tilt",
    "write_gbxml",
]
