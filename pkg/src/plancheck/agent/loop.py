"""The agent episode loop: prompt, parse directive, act, observe, repeat.

One episode sends the tool-caller system prompt plus the running history
to the generator each turn. Action directives invoke registry tools and
feed the tool's real output back as an observation; the loop never
synthesizes a result. Final Answer stops the loop. Tool faults are
observations (the agent may recover); two consecutive invalid directives
or running out of turns are errors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from ..llm import LlmClient, Message, approx_tokens
from .directives import parse_directive
from .registry import ToolRegistry, UnknownTool

DEFAULT_MAX_STEPS = 8


class AgentError(Exception):
    pass


class MaxStepsExceeded(AgentError):
    pass


class RepeatedInvalidDirective(AgentError):
    pass


class StepRole(Enum):
    SYSTEM = "system"
    USER = "user"
    ASSISTANT = "assistant"
    OBSERVATION = "observation"


@dataclass(frozen=True)
class Step:
    role: StepRole
    text: str


@dataclass
class RunMetrics:
    wall_time_ms: float = 0.0
    prompt_tokens: int = 0
    completion_tokens: int = 0

    def to_dict(self) -> dict:
        return {
            "wall_time_ms": self.wall_time_ms,
            "prompt_tokens": self.prompt_tokens,
            "completion_tokens": self.completion_tokens,
            "token_counting": "whitespace proxy",
        }


@dataclass
class Transcript:
    steps: list[Step] = field(default_factory=list)
    tools_used: list[str] = field(default_factory=list)
    metrics: RunMetrics = field(default_factory=RunMetrics)

    def add(self, role: StepRole, text: str) -> None:
        self.steps.append(Step(role, text))

    def to_dict(self) -> dict:
        return {
            "steps": [{"role": s.role.value, "text": s.text} for s in self.steps],
            "tools_used": list(self.tools_used),
            "metrics": self.metrics.to_dict(),
        }


@dataclass
class AgentResult:
    input: str
    output: str
    tools_used: list[str]
    transcript: Transcript

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "output": self.output,
            "tools_used": list(self.tools_used),
            "chain_log": self.transcript.to_dict()["steps"],
            "metrics": self.transcript.metrics.to_dict(),
        }


def system_prompt() -> str:
    """The tool-caller directive prompt, shipped as a versioned resource."""
    return (resources.files("plancheck") / "data" / "agent_system_prompt.txt").read_text()


def _system_message(registry: ToolRegistry) -> str:
    roster = "\n".join(
        f"- {spec.name}: {spec.description}" for spec in registry.specs()
    )
    return f"{system_prompt()}\nAvailable tools:\n{roster}"


def run_agent(
    registry: ToolRegistry,
    llm: LlmClient,
    query: str,
    max_steps: int = DEFAULT_MAX_STEPS,
    history: list[Message] | None = None,
) -> AgentResult:
    """Run one agent episode over the registry; returns the final answer.

    `history` carries prior conversation turns (chat sessions); they are
    replayed into the prompt but not into this episode's transcript.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")

    transcript = Transcript()
    start = time.perf_counter()
    system_text = _system_message(registry)
    transcript.add(StepRole.SYSTEM, system_text)
    messages: list[Message] = [{"role": "system", "content": system_text}]
    messages.extend(history or [])
    messages.append({"role": "user", "content": query})
    transcript.add(StepRole.USER, query)

    invalid_streak = 0
    for _ in range(max_steps):
        transcript.metrics.prompt_tokens += sum(
            approx_tokens(m["content"]) for m in messages
        )
        assistant_text = llm.generate(messages)
        transcript.metrics.completion_tokens += approx_tokens(assistant_text)
        transcript.add(StepRole.ASSISTANT, assistant_text)
        messages.append({"role": "assistant", "content": assistant_text})

        directive = parse_directive(assistant_text)
        if directive.is_final:
            transcript.metrics.wall_time_ms = (time.perf_counter() - start) * 1000
            return AgentResult(
                input=query,
                output=directive.answer or "",
                tools_used=list(transcript.tools_used),
                transcript=transcript,
            )
        if directive.is_action:
            invalid_streak = 0
            if directive.tool_name in registry:
                transcript.tools_used.append(directive.tool_name)
            observation = _observe(registry, directive.tool_name, directive.input_text)
            transcript.add(StepRole.OBSERVATION, observation)
            messages.append({"role": "user", "content": f"Observation: {observation}"})
        else:
            invalid_streak += 1
            if invalid_streak >= 2:
                transcript.metrics.wall_time_ms = (time.perf_counter() - start) * 1000
                raise RepeatedInvalidDirective(directive.reason or "invalid directive")
            messages.append(
                {
                    "role": "user",
                    "content": (
                        f"Invalid directive ({directive.reason}). Respond with"
                        " either an Action/Action Input pair or a Final Answer."
                    ),
                }
            )

    transcript.metrics.wall_time_ms = (time.perf_counter() - start) * 1000
    raise MaxStepsExceeded(f"no final answer after {max_steps} steps")


def _observe(registry: ToolRegistry, tool_name: str, input_text: str) -> str:
    try:
        outcome = registry.invoke_free_text(tool_name, input_text)
    except UnknownTool:
        return f"unknown tool: {tool_name}"
    return outcome.text
