"""Design-document text parsing: fixture schedules and operating hours.

Input is plain text as produced by upstream OCR, so the grammar is
regex-lenient: headings of the form `Type "S" - Description` open a
fixture record, and indented `Key: value` lines fill it in. Numbers are
taken as the first numeric token after the key; `a-b` ranges are
recognized with flexible dashes and spacing. Anything that cannot be
attributed to a record lands in unrecognized_lines so nothing is silently
dropped, and fixtures missing their wattage are listed for human review.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class DocparseError(Exception):
    pass


class BadTimeRange(DocparseError):
    pass


class UnknownDayType(DocparseError):
    pass


class MissingWattage(DocparseError):
    pass


@dataclass
class FixtureRecord:
    type_code: str
    description: str = ""
    voltage_min: float | None = None
    voltage_max: float | None = None
    wattage_w: float | None = None
    source: str | None = None
    mounting: str | None = None
    battery_minutes: float | None = None
    manufacturer: str | None = None
    # Key/value lines with no dedicated field (Finish/Style, Housing, ...).
    extra: dict[str, str] = field(default_factory=dict)


class DayType(Enum):
    WEEKDAY = "weekday"
    WEEKEND = "weekend"


@dataclass
class OperatingSchedule:
    day_type: DayType
    intervals: list[tuple[float, float]]  # fractional hours, sorted, disjoint


@dataclass
class ParseReport:
    fixtures: list[FixtureRecord]
    schedules: list[OperatingSchedule] = field(default_factory=list)
    missing: list[tuple[str, str]] = field(default_factory=list)
    unrecognized_lines: list[tuple[int, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


_HEADING = re.compile(
    r"""^\s*[-*]?\s*Type\s+["'“”]\s*(?P<code>[^"'“”]+?)\s*["'“”]
        \s*[-–—]\s*(?P<description>.*\S)?\s*$""",
    re.IGNORECASE | re.VERBOSE,
)
_KEY_LINE = re.compile(
    r"^\s*[-*]?\s*(?P<key>[A-Za-z][A-Za-z /]*?)\s*:\s*(?P<value>.*\S)\s*$"
)
_NUMBER = re.compile(r"\d+(?:\.\d+)?")
_RANGE = re.compile(r"(\d+(?:\.\d+)?)\s*[-–—]\s*(\d+(?:\.\d+)?)")


def _first_number(text: str) -> float | None:
    m = _NUMBER.search(text)
    return float(m.group()) if m else None


def parse_fixture_schedule(document_text: str) -> ParseReport:
    """Extract fixture records from a lighting schedule document.

    Never raises on content problems: a document with no `Type` headings
    yields an empty report with a warning, and every unattributed line is
    reported in unrecognized_lines.
    """
    fixtures: list[FixtureRecord] = []
    unrecognized: list[tuple[int, str]] = []
    current: FixtureRecord | None = None

    for lineno, raw in enumerate(document_text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip():
            continue
        heading = _HEADING.match(line)
        if heading:
            current = FixtureRecord(
                type_code=heading.group("code").strip(),
                description=(heading.group("description") or "").strip(),
            )
            fixtures.append(current)
            continue
        key_match = _KEY_LINE.match(line)
        if key_match and current is not None:
            _apply_key(current, key_match.group("key"), key_match.group("value"))
        else:
            current = None  # prose after the records ends the current block
            unrecognized.append((lineno, line.strip()))

    missing = [(f.type_code, "wattage_w") for f in fixtures if f.wattage_w is None]
    warnings = [] if fixtures else ["no fixture headings found"]
    return ParseReport(
        fixtures=fixtures,
        missing=missing,
        unrecognized_lines=unrecognized,
        warnings=warnings,
    )


def _apply_key(record: FixtureRecord, key: str, value: str) -> None:
    name = key.strip().lower()
    if name == "voltage":
        span = _RANGE.search(value)
        if span:
            lo, hi = float(span.group(1)), float(span.group(2))
            record.voltage_min, record.voltage_max = min(lo, hi), max(lo, hi)
        else:
            single = _first_number(value)
            if single is not None:
                record.voltage_min = record.voltage_max = single
    elif name == "wattage":
        number = _first_number(value)
        if number is not None and number > 0:
            record.wattage_w = number
    elif name == "battery":
        record.battery_minutes = _first_number(value)
        record.extra.setdefault("Battery", value)
    elif name == "manufacturer":
        record.manufacturer = value
    elif name == "mounting":
        record.mounting = value
    elif name == "source":
        record.source = value
    else:
        record.extra[key.strip()] = value


_DAY_TYPES = {
    "weekday": DayType.WEEKDAY,
    "weekdays": DayType.WEEKDAY,
    "weekend": DayType.WEEKEND,
    "weekends": DayType.WEEKEND,
}
_TIME_RANGE = re.compile(
    r"^\s*(\d{1,2}):(\d{2})\s*[-–—]\s*(\d{1,2}):(\d{2})\s*$"
)


def _parse_time(hours: str, minutes: str, original: str) -> float:
    h, m = int(hours), int(minutes)
    if m >= 60 or h > 24 or (h == 24 and m != 0):
        raise BadTimeRange(f"invalid time of day in {original!r}")
    return h + m / 60.0


def parse_operating_schedule(document_text: str) -> list[OperatingSchedule]:
    """Parse `<DayType>: HH:MM-HH:MM[, ...]` lines into merged schedules.

    Intervals for the same day type are unioned (overlapping or touching
    ranges merge) and sorted. Wrap-around ranges are rejected with
    BadTimeRange; day labels outside weekday/weekend raise UnknownDayType.
    """
    collected: dict[DayType, list[tuple[float, float]]] = {}
    for raw in document_text.splitlines():
        line = raw.strip()
        if not line:
            continue
        label, _, rest = line.partition(":")
        if not rest:
            raise UnknownDayType(f"expected '<DayType>: ranges' in {line!r}")
        day = _DAY_TYPES.get(label.strip().lower())
        if day is None:
            raise UnknownDayType(label.strip())
        for chunk in rest.split(","):
            m = _TIME_RANGE.match(chunk)
            if not m:
                raise BadTimeRange(f"expected HH:MM-HH:MM, got {chunk.strip()!r}")
            start = _parse_time(m.group(1), m.group(2), chunk)
            end = _parse_time(m.group(3), m.group(4), chunk)
            if end <= start:
                raise BadTimeRange(f"end {end:g} not after start {start:g}")
            collected.setdefault(day, []).append((start, end))

    schedules = []
    for day in DayType:
        if day in collected:
            schedules.append(OperatingSchedule(day, _merge(collected[day])))
    return schedules


def _merge(intervals: list[tuple[float, float]]) -> list[tuple[float, float]]:
    merged: list[tuple[float, float]] = []
    for start, end in sorted(intervals):
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return merged


def total_connected_wattage(fixtures: list[tuple[FixtureRecord, int]]) -> float:
    """Sum of wattage x quantity over all fixtures."""
    total = 0.0
    for record, quantity in fixtures:
        if record.wattage_w is None:
            raise MissingWattage(record.type_code)
        total += record.wattage_w * quantity
    return total


def render_fixture_schedule(fixtures: list[FixtureRecord]) -> str:
    """Render records back into the parsed grammar.

    parse -> render -> parse is a fixed point for recognized content;
    unrecognized input lines are not carried through.
    """
    out: list[str] = []
    for f in fixtures:
        out.append(f'- Type "{f.type_code}" - {f.description}'.rstrip())
        if f.voltage_min is not None and f.voltage_max is not None:
            if f.voltage_min == f.voltage_max:
                out.append(f"  - Voltage: {f.voltage_min:g} V")
            else:
                out.append(f"  - Voltage: {f.voltage_min:g}-{f.voltage_max:g} V")
        if f.wattage_w is not None:
            out.append(f"  - Wattage: {f.wattage_w:g} W")
        if f.source is not None:
            out.append(f"  - Source: {f.source}")
        if f.mounting is not None:
            out.append(f"  - Mounting: {f.mounting}")
        battery_text = f.extra.get("Battery")
        if battery_text is not None:
            out.append(f"  - Battery: {battery_text}")
        elif f.battery_minutes is not None:
            out.append(f"  - Battery: minimum {f.battery_minutes:g}-minute operation")
        if f.manufacturer is not None:
            out.append(f"  - Manufacturer: {f.manufacturer}")
        for key, value in f.extra.items():
            if key != "Battery":
                out.append(f"  - {key}: {value}")
    return "\n".join(out) + ("\n" if out else "")


def report_to_dict(report: ParseReport) -> dict:
    """JSON-ready view of a report, missing-information list first."""
    return {
        "missing": [
            {"record": code, "field": field_name} for code, field_name in report.missing
        ],
        "fixtures": [
            {
                "type_code": f.type_code,
                "description": f.description,
                "voltage_min": f.voltage_min,
                "voltage_max": f.voltage_max,
                "wattage_w": f.wattage_w,
                "source": f.source,
                "mounting": f.mounting,
                "battery_minutes": f.battery_minutes,
                "manufacturer": f.manufacturer,
                "extra": dict(f.extra),
            }
            for f in report.fixtures
        ],
        "schedules": [
            {
                "day_type": s.day_type.value,
                "intervals": [[start, end] for start, end in s.intervals],
            }
            for s in report.schedules
        ],
        "unrecognized_lines": [
            {"line": number, "text": text} for number, text in report.unrecognized_lines
        ],
        "warnings": list(report.warnings),
    }
