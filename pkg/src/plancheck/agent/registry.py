"""Tool registry: named tool specs with schemas and handlers.

Handlers take an argument map and return text; any exception they raise
is converted to an error outcome so callers (agent loop, MCP server) can
surface faults as content instead of crashing the session.

Action Input from an agent is free text. Tools with multiple fields
accept a `key=value, key=value` mini-grammar; a tool with a single input
field also accepts the raw text as that field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping


class RegistryError(Exception):
    pass


class DuplicateTool(RegistryError):
    pass


class UnknownTool(RegistryError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class InvalidArguments(RegistryError):
    pass


@dataclass(frozen=True)
class ToolField:
    name: str
    type: str = "string"  # "string" | "number" | "integer"
    required: bool = True
    description: str = ""


@dataclass(frozen=True)
class ToolSpec:
    name: str
    description: str
    input_schema: tuple[ToolField, ...]
    handler: Callable[[dict], str]

    def field_named(self, name: str) -> ToolField | None:
        for f in self.input_schema:
            if f.name == name:
                return f
        return None


@dataclass(frozen=True)
class ToolOutcome:
    text: str
    is_error: bool = False


@dataclass
class ToolRegistry:
    _tools: dict[str, ToolSpec] = field(default_factory=dict)

    def register(self, spec: ToolSpec) -> None:
        if spec.name in self._tools:
            raise DuplicateTool(spec.name)
        self._tools[spec.name] = spec

    def get(self, name: str) -> ToolSpec:
        try:
            return self._tools[name]
        except KeyError:
            raise UnknownTool(name) from None

    def names(self) -> list[str]:
        return sorted(self._tools)

    def specs(self) -> list[ToolSpec]:
        return [self._tools[name] for name in self.names()]

    def __len__(self) -> int:
        return len(self._tools)

    def __contains__(self, name: str) -> bool:
        return name in self._tools

    def validate_arguments(self, spec: ToolSpec, arguments: Mapping) -> dict:
        """Check required fields and coerce numeric types.

        Raises InvalidArguments listing every problem at once.
        """
        problems = []
        coerced: dict = {}
        for f in spec.input_schema:
            if f.name not in arguments or arguments[f.name] in (None, ""):
                if f.required:
                    problems.append(f"missing required field {f.name!r}")
                continue
            value = arguments[f.name]
            if f.type in ("number", "integer"):
                try:
                    value = float(value)
                except (TypeError, ValueError):
                    problems.append(f"field {f.name!r} must be a number")
                    continue
                if f.type == "integer":
                    value = int(value)
            else:
                value = str(value)
            coerced[f.name] = value
        for name in arguments:
            if spec.field_named(name) is None:
                problems.append(f"unknown field {name!r}")
        if problems:
            raise InvalidArguments("; ".join(problems))
        return coerced

    def invoke(self, name: str, arguments: Mapping) -> ToolOutcome:
        """Validate and run a tool; handler faults become error outcomes."""
        spec = self.get(name)
        try:
            coerced = self.validate_arguments(spec, arguments)
        except InvalidArguments as exc:
            return ToolOutcome(text=f"invalid arguments: {exc}", is_error=True)
        try:
            return ToolOutcome(text=spec.handler(coerced))
        except Exception as exc:  # tool faults are content, not crashes
            return ToolOutcome(text=f"{type(exc).__name__}: {exc}", is_error=True)

    def invoke_free_text(self, name: str, input_text: str) -> ToolOutcome:
        spec = self.get(name)
        return self.invoke(name, parse_tool_input(spec, input_text))


def parse_tool_input(spec: ToolSpec, input_text: str) -> dict:
    """Decode an Action Input string into an argument map.

    `key=value` pairs separated by commas or newlines win when present;
    otherwise the whole text is handed to a single-field tool verbatim.
    """
    text = input_text.strip()
    pairs: dict[str, str] = {}
    if "=" in text:
        for chunk in text.replace("\n", ",").split(","):
            key, eq, value = chunk.partition("=")
            if eq and key.strip():
                pairs[key.strip()] = value.strip()
    if pairs:
        return pairs
    if len(spec.input_schema) == 1:
        return {spec.input_schema[0].name: text}
    return {"text": text} if text else {}


def register_tool(registry: ToolRegistry, spec: ToolSpec) -> ToolRegistry:
    registry.register(spec)
    return registry
