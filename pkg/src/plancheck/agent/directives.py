"""The assistant directive grammar: Action / Action Input / Final Answer.

An assistant turn is either a tool call (an `Action:` line naming the
tool plus an `Action Input:` line with free text for it), a terminal
`Final Answer:`, or invalid. A turn containing both an action and a
final answer is invalid by rule, never disambiguated. Leading free text
("Thought: ..." and the like) is tolerated and ignored.

Parsing is line-anchored and case/whitespace tolerant, since generators
are sloppy about both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class DirectiveKind(Enum):
    ACTION = "action"
    FINAL_ANSWER = "final_answer"
    INVALID = "invalid"


@dataclass(frozen=True)
class ParsedDirective:
    kind: DirectiveKind
    tool_name: str | None = None
    input_text: str | None = None
    answer: str | None = None
    reason: str | None = None

    @property
    def is_action(self) -> bool:
        return self.kind is DirectiveKind.ACTION

    @property
    def is_final(self) -> bool:
        return self.kind is DirectiveKind.FINAL_ANSWER

    @property
    def is_invalid(self) -> bool:
        return self.kind is DirectiveKind.INVALID


# Horizontal whitespace only: a marker and its payload share a line.
_ACTION = re.compile(
    r"^[ \t]*action[ \t]*:[ \t]*(?P<name>.*)$", re.IGNORECASE | re.MULTILINE
)
_ACTION_INPUT = re.compile(
    r"^[ \t]*action[ \t]+input[ \t]*:[ \t]*(?P<text>.*)$", re.IGNORECASE | re.MULTILINE
)
_FINAL = re.compile(r"^[ \t]*final[ \t]+answer[ \t]*:[ \t]*", re.IGNORECASE | re.MULTILINE)


def parse_directive(assistant_text: str) -> ParsedDirective:
    """Classify one assistant turn. Invalid is a value, not an error."""
    action = _ACTION.search(assistant_text)
    final = _FINAL.search(assistant_text)

    if action and final:
        return ParsedDirective(
            DirectiveKind.INVALID, reason="both action and final answer"
        )
    if final:
        return ParsedDirective(
            DirectiveKind.FINAL_ANSWER,
            answer=assistant_text[final.end() :].strip(),
        )
    if action:
        name = action.group("name").strip()
        if not name:
            return ParsedDirective(DirectiveKind.INVALID, reason="empty tool name")
        input_match = _ACTION_INPUT.search(assistant_text)
        return ParsedDirective(
            DirectiveKind.ACTION,
            tool_name=name,
            input_text=input_match.group("text").strip() if input_match else "",
        )
    return ParsedDirective(DirectiveKind.INVALID, reason="no directive")
