"""ReAct-style agent orchestration: directives, tool registry, episode loop."""

from .builtins import build_registry
from .directives import DirectiveKind, ParsedDirective, parse_directive
from .loop import (
    AgentError,
    AgentResult,
    MaxStepsExceeded,
    RepeatedInvalidDirective,
    RunMetrics,
    Step,
    StepRole,
    Transcript,
    run_agent,
    system_prompt,
)
from .registry import (
    DuplicateTool,
    InvalidArguments,
    ToolField,
    ToolOutcome,
    ToolRegistry,
    ToolSpec,
    UnknownTool,
    parse_tool_input,
    register_tool,
)

__all__ = [
    "AgentError",
    "AgentResult",
    "DirectiveKind",
    "DuplicateTool",
    "InvalidArguments",
    "MaxStepsExceeded",
    "ParsedDirective",
    "RepeatedInvalidDirective",
    "RunMetrics",
    "Step",
    "StepRole",
    "ToolField",
    "ToolOutcome",
    "ToolRegistry",
    "ToolSpec",
    "Transcript",
    "UnknownTool",
    "build_registry",
    "parse_directive",
    "parse_tool_input",
    "register_tool",
    "run_agent",
    "system_prompt",
]
