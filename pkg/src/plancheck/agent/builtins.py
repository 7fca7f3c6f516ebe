"""Built-in tool registrations over the gbxml, rules, and retrieval modules.

The rules tools are always registered; geometry and provision-search
tools appear only when a building model or provision index is supplied,
so the roster reflects what the deployment actually loaded.
"""

from __future__ import annotations

from typing import Mapping

from .. import retrieval, rules
from ..gbxml import BuildingModel
from ..gbxml import queries as gbxml_queries
from .registry import ToolField, ToolRegistry, ToolSpec

_AREA_FIELDS = (
    ToolField("area", "number", description="floor area value"),
    ToolField("area_unit", "string", description="m2 or ft2"),
    ToolField("use_type", "string", description="building use type identifier"),
    ToolField("code_version", "string", description="energy code version identifier"),
)


def _area_unit(label: str) -> rules.AreaUnit:
    try:
        return rules.AreaUnit(label.lower())
    except ValueError:
        raise ValueError(f"unknown area unit {label!r}, expected m2 or ft2") from None


def build_registry(
    model: BuildingModel | None = None,
    index: retrieval.ProvisionIndex | None = None,
    tables: Mapping[str, rules.LpdTable] | None = None,
) -> ToolRegistry:
    registry = ToolRegistry()

    def lighting_allowed(args: dict) -> str:
        watts = rules.lighting_allowed_wattage(
            args["area"],
            _area_unit(args["area_unit"]),
            args["use_type"],
            args["code_version"],
            tables,
        )
        return str(watts)

    registry.register(
        ToolSpec(
            name="LightingAllowedWattage",
            description=(
                "Allowed interior lighting wattage for a whole building by"
                " the building area method; returns integer watts."
            ),
            input_schema=_AREA_FIELDS,
            handler=lighting_allowed,
        )
    )

    def check_lighting(args: dict) -> str:
        import json

        result = rules.check_interior_lighting(
            rules.ComplianceInput(
                floor_area=args["area"],
                area_unit=_area_unit(args["area_unit"]),
                use_type=args["use_type"],
                code_version=args["code_version"],
                designed_wattage=args.get("designed_watts"),
            ),
            tables,
        )
        return json.dumps(result.to_dict())

    registry.register(
        ToolSpec(
            name="CheckInteriorLighting",
            description=(
                "Pass/fail interior lighting compliance check: compares a"
                " designed wattage against the building-area-method allowance."
            ),
            input_schema=_AREA_FIELDS
            + (
                ToolField(
                    "designed_watts",
                    "number",
                    required=False,
                    description="designed interior lighting load in watts",
                ),
            ),
            handler=check_lighting,
        )
    )

    if model is not None:
        _register_geometry_tools(registry, model)
    if index is not None:
        _register_retrieval_tools(registry, index)
    return registry


def _register_geometry_tools(registry: ToolRegistry, model: BuildingModel) -> None:
    surface_field = (ToolField("surface_id", "string", description="surface id"),)

    registry.register(
        ToolSpec(
            name="get_surface_area",
            description="Area of a named surface in square meters.",
            input_schema=surface_field,
            handler=lambda args: f"{gbxml_queries.surface_area(model, args['surface_id']):.2f} m2",
        )
    )
    registry.register(
        ToolSpec(
            name="get_surface_tilt",
            description="Tilt of a named surface in degrees (0 roof, 90 wall, 180 floor).",
            input_schema=surface_field,
            handler=lambda args: f"{gbxml_queries.surface_tilt(model, args['surface_id']):.2f} deg",
        )
    )
    registry.register(
        ToolSpec(
            name="get_surface_azimuth",
            description="Azimuth of a named surface in degrees clockwise from north.",
            input_schema=surface_field,
            handler=lambda args: f"{gbxml_queries.surface_azimuth(model, args['surface_id']):.2f} deg",
        )
    )
    registry.register(
        ToolSpec(
            name="get_surface_r_value",
            description="Thermal resistance of a named surface's construction in m2*K/W.",
            input_schema=surface_field,
            handler=lambda args: f"{gbxml_queries.surface_r_value(model, args['surface_id']):.3f} m2*K/W",
        )
    )


def _register_retrieval_tools(
    registry: ToolRegistry, index: retrieval.ProvisionIndex
) -> None:
    def search(args: dict) -> str:
        k = int(args.get("k", retrieval.DEFAULT_K))
        results = retrieval.retrieve(index, args["query"], k=k)
        if not results:
            return "no matching provisions"
        lines = []
        for r in results:
            p = index.provisions[r.provision_id]
            lines.append(f"[{p.section_label}] {p.heading}: {p.body}")
        return "\n".join(lines)

    registry.register(
        ToolSpec(
            name="SearchCodeProvisions",
            description="Retrieve the code provisions most relevant to a query.",
            input_schema=(
                ToolField("query", "string", description="search query"),
                ToolField("k", "integer", required=False, description="result count"),
            ),
            handler=search,
        )
    )
