"""plancheck: building energy-code compliance toolkit.

Parses building geometry (gbXML) and design-document text, evaluates
building-area-method lighting power allowances, retrieves code provisions
for grounded QA, and exposes every capability to LLM agents through a
ReAct loop, an MCP (JSON-RPC 2.0) stdio server, an HTTP chat service, and
a CLI.
"""

__version__ = "0.1.0"
