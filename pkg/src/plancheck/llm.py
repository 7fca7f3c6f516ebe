"""Generator abstraction shared by the retrieval, agent, and service layers.

A generator is anything with `generate(messages, **params) -> str`. Live
model adapters are deployment configuration; the deterministic stubs here
are the test surface, so every pipeline runs offline.
"""

from __future__ import annotations

from typing import Protocol, Sequence

Message = dict[str, str]  # {"role": ..., "content": ...}


class GeneratorUnavailable(Exception):
    """The configured generator cannot produce a completion."""


class LlmClient(Protocol):
    def generate(self, messages: Sequence[Message], **params) -> str: ...


class ScriptedLlm:
    """Replays a fixed list of assistant turns, recording every prompt.

    Raises GeneratorUnavailable when the script runs out, which keeps
    runaway loops from silently spinning.
    """

    def __init__(self, turns: Sequence[str]):
        self.turns = list(turns)
        self.calls: list[list[Message]] = []
        self._cursor = 0

    def generate(self, messages: Sequence[Message], **params) -> str:
        self.calls.append(list(messages))
        if self._cursor >= len(self.turns):
            raise GeneratorUnavailable("scripted generator exhausted")
        turn = self.turns[self._cursor]
        self._cursor += 1
        return turn


class EchoLlm:
    """Returns the last user message verbatim; handy for grounding tests."""

    def generate(self, messages: Sequence[Message], **params) -> str:
        for message in reversed(messages):
            if message.get("role") == "user":
                return message.get("content", "")
        return ""


def approx_tokens(text: str) -> int:
    """Whitespace token proxy, used whenever a generator reports no usage."""
    return len(text.split())
