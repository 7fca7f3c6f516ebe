"""Deterministic energy-code rule evaluation for interior lighting.

Implements the building-area method: whole-building floor area times a
use-type lighting power density (LPD) gives the allowed lighting wattage,
compared against the designed load for a pass/fail verdict.

LPD tables are loaded from versioned JSON data files and are IP-native
(W/ft2, the basis of the governing table); areas given in m2 are
converted at the boundary with the fixed factor below. Note that the IP
and SI editions of the standard use nominal thresholds that are not exact
conversions of each other (the IP edition's 25,000 ft2 appears as a
nominal 2,300 m2 in the SI edition); this module performs exact unit
conversion only and deliberately does not reconcile nominal SI values.

Space-by-space lighting, envelope, and HVAC rules are out of scope; the
table schema carries a `method` slot so other methods can be added.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Mapping

SQFT_PER_SQM = 10.763910417


class RuleError(Exception):
    pass


class NegativeArea(RuleError):
    pass


class UnknownUseType(RuleError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class UnknownCodeVersion(RuleError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class AreaUnit(Enum):
    M2 = "m2"
    FT2 = "ft2"


class ComplianceStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BuildingUseType:
    identifier: str
    display_name: str


@dataclass(frozen=True)
class LpdEntry:
    use_type: BuildingUseType
    lpd_w_per_ft2: float
    placeholder: bool = False


@dataclass(frozen=True)
class LpdTable:
    code_version: str
    method: str
    source_label: str
    entries: Mapping[str, LpdEntry]

    def entry(self, use_type: str) -> LpdEntry:
        try:
            return self.entries[use_type]
        except KeyError:
            raise UnknownUseType(use_type) from None


def load_lpd_table(path: str | Path) -> LpdTable:
    """Load a building-area-method LPD table from a JSON data file."""
    return _table_from_dict(json.loads(Path(path).read_text()))


def _table_from_dict(raw: dict) -> LpdTable:
    entries = {}
    for item in raw["entries"]:
        lpd = float(item["lpd_w_per_ft2"])
        if lpd <= 0:
            raise RuleError(f"non-positive LPD for {item['use_type']!r}")
        use = BuildingUseType(item["use_type"], item.get("display_name", item["use_type"]))
        entries[use.identifier] = LpdEntry(use, lpd, bool(item.get("placeholder", False)))
    return LpdTable(
        code_version=raw["code_version"],
        method=raw.get("method", "building_area"),
        source_label=raw.get("source_label", ""),
        entries=entries,
    )


def _builtin_tables() -> dict[str, LpdTable]:
    tables = {}
    data_dir = resources.files("plancheck") / "data"
    for entry in data_dir.iterdir():
        if entry.name.startswith("lpd_") and entry.name.endswith(".json"):
            table = _table_from_dict(json.loads(entry.read_text()))
            tables[table.code_version] = table
    return tables


_TABLES: dict[str, LpdTable] | None = None


def default_tables() -> dict[str, LpdTable]:
    global _TABLES
    if _TABLES is None:
        _TABLES = _builtin_tables()
    return _TABLES


def convert_area(value: float, from_unit: AreaUnit, to_unit: AreaUnit) -> float:
    """Convert between m2 and ft2 (factor 10.763910417); identity if equal."""
    if value < 0:
        raise NegativeArea(f"area must be >= 0, got {value!r}")
    if from_unit == to_unit:
        return value
    if from_unit is AreaUnit.M2:
        return value * SQFT_PER_SQM
    return value / SQFT_PER_SQM


def lpd_lookup(
    use_type: str,
    code_version: str,
    tables: Mapping[str, LpdTable] | None = None,
) -> float:
    """LPD in W/ft2 for a use type under a code version's table."""
    tables = tables if tables is not None else default_tables()
    try:
        table = tables[code_version]
    except KeyError:
        raise UnknownCodeVersion(code_version) from None
    return table.entry(use_type).lpd_w_per_ft2


def _round_half_away_from_zero(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


def lighting_allowed_wattage(
    area: float,
    area_unit: AreaUnit,
    use_type: str,
    code_version: str,
    tables: Mapping[str, LpdTable] | None = None,
) -> int:
    """Allowed interior lighting wattage, building-area method.

    allowance = round_half_away_from_zero(area_ft2 x LPD), integer watts.
    """
    area_ft2 = convert_area(area, area_unit, AreaUnit.FT2)
    lpd = lpd_lookup(use_type, code_version, tables)
    return _round_half_away_from_zero(area_ft2 * lpd)


@dataclass(frozen=True)
class ComplianceInput:
    floor_area: float
    area_unit: AreaUnit
    use_type: str
    code_version: str
    designed_wattage: float | None = None


@dataclass(frozen=True)
class ComplianceResult:
    allowance_w: int
    designed_w: float | None
    status: ComplianceStatus
    deficiencies: tuple[str, ...] = ()
    citations: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "allowance_w": self.allowance_w,
            "designed_w": self.designed_w,
            "status": self.status.value,
            "deficiencies": list(self.deficiencies),
            "citations": [
                {"source": source, "detail": detail} for source, detail in self.citations
            ],
        }


def check_interior_lighting(
    inputs: ComplianceInput,
    tables: Mapping[str, LpdTable] | None = None,
) -> ComplianceResult:
    """Evaluate an interior-lighting compliance input.

    Status is `unknown` exactly when no designed wattage was supplied,
    `pass` when designed <= allowance, otherwise `fail` with a deficiency
    stating the excess watts. Citations name the governing table entry.
    """
    tables = tables if tables is not None else default_tables()
    if inputs.designed_wattage is not None and inputs.designed_wattage < 0:
        raise RuleError("designed wattage must be >= 0")
    allowance = lighting_allowed_wattage(
        inputs.floor_area, inputs.area_unit, inputs.use_type, inputs.code_version, tables
    )
    table = tables[inputs.code_version]
    entry = table.entry(inputs.use_type)
    citation_detail = (
        f"{entry.use_type.display_name}: {entry.lpd_w_per_ft2:g} W/ft2"
        f" ({inputs.code_version}, building area method)"
    )
    if entry.placeholder:
        citation_detail += " [placeholder value]"
    citations = ((table.source_label, citation_detail),)

    deficiencies: list[str] = []
    if inputs.designed_wattage is None:
        status = ComplianceStatus.UNKNOWN
        deficiencies.append(
            "designed interior lighting wattage not provided; compliance undetermined"
        )
    elif inputs.designed_wattage <= allowance:
        status = ComplianceStatus.PASS
    else:
        status = ComplianceStatus.FAIL
        excess = inputs.designed_wattage - allowance
        deficiencies.append(
            f"designed interior lighting power {inputs.designed_wattage:g} W"
            f" exceeds the {allowance} W allowance; exceeds by {excess:g} W"
        )
    return ComplianceResult(
        allowance_w=allowance,
        designed_w=inputs.designed_wattage,
        status=status,
        deficiencies=tuple(deficiencies),
        citations=citations,
    )
