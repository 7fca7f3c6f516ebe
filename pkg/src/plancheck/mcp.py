"""MCP server: the tool registry over JSON-RPC 2.0 on stdio.

Transport is newline-delimited JSON, one message per line, UTF-8.
Protocol responses are the only bytes ever written to standard output;
diagnostics go to standard error. The surface is initialize, tools/list,
tools/call, and ping; resources/prompts capabilities are advertised as
absent. Tool faults are returned as `isError` content so a client agent
can feed them back into its reasoning, while protocol violations use the
reserved JSON-RPC error codes.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from typing import IO

from .agent.registry import InvalidArguments, ToolRegistry, ToolSpec, UnknownTool

logger = logging.getLogger(__name__)

PARSE_ERROR = -32700
INVALID_REQUEST = -32600
METHOD_NOT_FOUND = -32601
INVALID_PARAMS = -32602
INTERNAL_ERROR = -32603

PROTOCOL_REVISION = "2025-03-26"
SERVER_NAME = "plancheck-mcp"
SERVER_VERSION = "0.1.0"


def tool_descriptor(spec: ToolSpec) -> dict:
    properties = {}
    required = []
    for f in spec.input_schema:
        properties[f.name] = {"type": f.type, "description": f.description}
        if f.required:
            required.append(f.name)
    return {
        "name": spec.name,
        "description": spec.description,
        "inputSchema": {
            "type": "object",
            "properties": properties,
            "required": required,
        },
    }


def _result(msg_id, result: dict) -> dict:
    return {"jsonrpc": "2.0", "id": msg_id, "result": result}


def _error(msg_id, code: int, message: str, data=None) -> dict:
    error: dict = {"code": code, "message": message}
    if data is not None:
        error["data"] = data
    return {"jsonrpc": "2.0", "id": msg_id, "error": error}


@dataclass
class McpSession:
    """Protocol state machine for one stdio session."""

    registry: ToolRegistry
    initialized: bool = field(default=False)

    def handle_line(self, line: str) -> dict | None:
        """One inbound line -> one response object, or None (notification)."""
        try:
            message = json.loads(line)
        except json.JSONDecodeError as exc:
            return _error(None, PARSE_ERROR, f"parse error: {exc.msg}")
        if not isinstance(message, dict):
            return _error(None, INVALID_REQUEST, "request must be an object")

        msg_id = message.get("id")
        is_request = "id" in message and msg_id is not None
        if message.get("jsonrpc") != "2.0":
            return _error(msg_id, INVALID_REQUEST, "jsonrpc must be '2.0'") if is_request else None
        method = message.get("method")
        if not isinstance(method, str):
            return _error(msg_id, INVALID_REQUEST, "missing method") if is_request else None

        response = self._dispatch(method, message.get("params") or {}, msg_id)
        return response if is_request else None

    def _dispatch(self, method: str, params: dict, msg_id) -> dict:
        if method == "initialize":
            return self._initialize(params, msg_id)
        if method == "ping":
            return _result(msg_id, {})
        if method == "tools/list":
            return self._tools_list(msg_id)
        if method == "tools/call":
            return self._tools_call(params, msg_id)
        if method.startswith("notifications/"):
            return _result(msg_id, {})  # only reached when sent with an id
        return _error(msg_id, METHOD_NOT_FOUND, f"method not found: {method}")

    def _initialize(self, params: dict, msg_id) -> dict:
        if self.initialized:
            return _error(msg_id, INVALID_REQUEST, "already initialized")
        self.initialized = True
        revision = params.get("protocolVersion", PROTOCOL_REVISION)
        return _result(
            msg_id,
            {
                "protocolVersion": revision,
                "serverInfo": {"name": SERVER_NAME, "version": SERVER_VERSION},
                "capabilities": {"tools": {}},
            },
        )

    def _require_initialized(self, msg_id) -> dict | None:
        if not self.initialized:
            return _error(msg_id, INVALID_REQUEST, "invalid request", data="not initialized")
        return None

    def _tools_list(self, msg_id) -> dict:
        failure = self._require_initialized(msg_id)
        if failure:
            return failure
        descriptors = [tool_descriptor(spec) for spec in self.registry.specs()]
        return _result(msg_id, {"tools": descriptors})

    def _tools_call(self, params: dict, msg_id) -> dict:
        failure = self._require_initialized(msg_id)
        if failure:
            return failure
        name = params.get("name")
        arguments = params.get("arguments") or {}
        if not isinstance(name, str):
            return _error(msg_id, INVALID_PARAMS, "invalid params", data="missing tool name")
        try:
            spec = self.registry.get(name)
        except UnknownTool:
            return _error(msg_id, INVALID_PARAMS, "invalid params", data="unknown tool")
        try:
            coerced = self.registry.validate_arguments(spec, arguments)
        except InvalidArguments as exc:
            return _error(msg_id, INVALID_PARAMS, "invalid params", data=str(exc))
        try:
            text = spec.handler(coerced)
            is_error = False
        except Exception as exc:  # tool fault -> content, not protocol error
            text = f"{type(exc).__name__}: {exc}"
            is_error = True
        return _result(
            msg_id,
            {"content": [{"type": "text", "text": text}], "isError": is_error},
        )


def serve_stdio(
    registry: ToolRegistry,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
) -> None:
    """Serve newline-delimited JSON-RPC until the input stream closes."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    session = McpSession(registry)
    logger.info("mcp server ready (%d tools)", len(registry))
    for line in stdin:
        if not line.strip():
            continue
        response = session.handle_line(line)
        if response is not None:
            stdout.write(json.dumps(response) + "\n")
            stdout.flush()
    logger.info("input closed, shutting down")
