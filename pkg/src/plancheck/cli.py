"""Command-line interface for every pipeline stage.

Machine-readable JSON goes to standard output; human prose and logs go
to standard error. Exit codes: 0 success, 1 operation failure (with a
structured error document on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import comcheck, docparse, retrieval, rules
from .agent import build_registry, run_agent
from .agent.loop import AgentError
from .gbxml import GbxmlError, extract_attributes, parse_gbxml
from .llm import EchoLlm, GeneratorUnavailable, ScriptedLlm


def _emit(document: dict) -> None:
    sys.stdout.write(json.dumps(document, indent=2) + "\n")


def _say(text: str) -> None:
    sys.stderr.write(text + "\n")


def _fail(exc: Exception) -> int:
    _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
    _say(f"error: {exc}")
    return 1


def _load_tables(path: str | None):
    if path is None:
        return None
    table = rules.load_lpd_table(path)
    tables = dict(rules.default_tables())
    tables[table.code_version] = table
    return tables


def _load_scripted(path: str | None, fallback_echo: bool = False):
    if path:
        turns = json.loads(Path(path).read_text())
        if not isinstance(turns, list) or not all(isinstance(t, str) for t in turns):
            raise ValueError("script file must be a JSON array of strings")
        return ScriptedLlm(turns)
    if fallback_echo:
        return EchoLlm()
    raise GeneratorUnavailable(
        "no generator configured; pass --script with scripted assistant turns"
    )


def _registry_from_args(args) -> "ToolRegistry":  # noqa: F821
    model = None
    index = None
    if getattr(args, "gbxml", None):
        model = parse_gbxml(Path(args.gbxml).read_text())
    if getattr(args, "corpus", None):
        index = retrieval.ingest_provisions(retrieval.load_corpus(args.corpus))
    tables = _load_tables(getattr(args, "lpd_table", None))
    return build_registry(model=model, index=index, tables=tables)


def cmd_extract(args) -> int:
    try:
        model = parse_gbxml(Path(args.file).read_text())
    except FileNotFoundError as exc:
        return _fail(exc)
    except GbxmlError as exc:
        return _fail(exc)
    document = extract_attributes(model)
    _emit(document)
    _say(
        f"extracted {document['summary']['surfaces']} surfaces,"
        f" {len(document['warnings'])} warnings"
    )
    return 0


def cmd_parse_docs(args) -> int:
    try:
        report = docparse.parse_fixture_schedule(Path(args.file).read_text())
        if args.hours:
            report.schedules = docparse.parse_operating_schedule(
                Path(args.hours).read_text()
            )
    except (FileNotFoundError, docparse.DocparseError) as exc:
        return _fail(exc)
    _emit(docparse.report_to_dict(report))
    if report.missing:
        _say("missing information requiring manual input:")
        for record, field_name in report.missing:
            _say(f"  - {record}: {field_name}")
    else:
        _say("no missing fields")
    return 0


def cmd_check(args) -> int:
    try:
        tables = _load_tables(args.lpd_table)
        result = rules.check_interior_lighting(
            rules.ComplianceInput(
                floor_area=args.area,
                area_unit=rules.AreaUnit(args.unit),
                use_type=args.use,
                code_version=args.code,
                designed_wattage=args.designed,
            ),
            tables,
        )
    except (rules.RuleError, FileNotFoundError, ValueError) as exc:
        return _fail(exc)
    _emit(result.to_dict())
    _say(
        f"allowance {result.allowance_w} W, status {result.status.value}"
        + (f", designed {result.designed_w:g} W" if result.designed_w is not None else "")
    )
    return 0


def cmd_index(args) -> int:
    try:
        corpus = retrieval.load_corpus(args.corpus)
        index = retrieval.ingest_provisions(corpus)
    except (FileNotFoundError, retrieval.RetrievalError, json.JSONDecodeError) as exc:
        return _fail(exc)
    Path(args.out).write_text(json.dumps(index.to_dict()))
    _emit(
        {
            "provisions": len(index),
            "average_chunk_length": index.average_chunk_length,
            "index_file": args.out,
        }
    )
    _say(f"indexed {len(index)} provisions -> {args.out}")
    return 0


def cmd_ask(args) -> int:
    try:
        if args.index:
            index = retrieval.ProvisionIndex.from_dict(
                json.loads(Path(args.index).read_text())
            )
        elif args.corpus:
            index = retrieval.ingest_provisions(retrieval.load_corpus(args.corpus))
        else:
            raise ValueError("provide --corpus or --index")
        generator = _load_scripted(args.script, fallback_echo=True)
        answer, cited = retrieval.answer_with_rag(index, args.query, generator, k=args.k)
    except (FileNotFoundError, retrieval.RetrievalError, GeneratorUnavailable, ValueError) as exc:
        return _fail(exc)
    _emit({"answer": answer, "citations": cited})
    _say(f"cited: {', '.join(cited) if cited else '(none)'}")
    return 0


def cmd_agent(args) -> int:
    try:
        registry = _registry_from_args(args)
        llm = _load_scripted(args.script)
        result = run_agent(registry, llm, args.query, max_steps=args.max_steps)
    except (FileNotFoundError, GeneratorUnavailable, AgentError, GbxmlError, ValueError) as exc:
        return _fail(exc)
    _emit(result.to_dict())
    _say(json.dumps({"input": result.input, "output": result.output}))
    _say("Tools Used:")
    for name in result.tools_used:
        _say(f"  - {name}")
    return 0


def cmd_comcheck(args) -> int:
    try:
        store = comcheck.FixtureStore(args.fixtures) if args.fixtures else None
        client = comcheck.ComcheckClient(
            mode=comcheck.TransportMode(args.mode),
            store=store,
            tables=_load_tables(args.lpd_table),
        )
        watts = client.allowed_wattage(
            comcheck.AllowanceRequest(
                floor_area_ft2=args.area_ft2,
                use_type=args.use,
                code_version=args.code,
            )
        )
    except (comcheck.ComcheckError, rules.RuleError, FileNotFoundError, ValueError) as exc:
        return _fail(exc)
    _emit({"allowed_watts": watts, "mode": args.mode})
    _say(f"allowed wattage: {watts} W ({args.mode} mode)")
    return 0


def cmd_mcp_serve(args) -> int:
    from .mcp import serve_stdio

    try:
        registry = _registry_from_args(args)
    except (FileNotFoundError, GbxmlError, retrieval.RetrievalError) as exc:
        return _fail(exc)
    serve_stdio(registry)
    return 0


def cmd_chat_serve(args) -> int:
    import uvicorn

    from .service import create_app

    try:
        registry = _registry_from_args(args)
        if args.script:
            script = json.loads(Path(args.script).read_text())
            make_llm = lambda: ScriptedLlm(script)
        else:
            make_llm = lambda: EchoLlm()
        app = create_app(
            registry, make_llm, journal_path=args.journal, static_dir=args.ui
        )
    except (FileNotFoundError, GbxmlError, retrieval.RetrievalError, ValueError) as exc:
        return _fail(exc)
    _say(f"chat service on http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_bench(args) -> int:
    from .service import BenchPrompt, default_bench_prompts, run_bench

    try:
        if args.prompts:
            raw = json.loads(Path(args.prompts).read_text())
            prompts = [BenchPrompt(item["id"], item["text"]) for item in raw]
        else:
            prompts = default_bench_prompts()
        generator = _load_scripted(args.script, fallback_echo=True)
        records, summary = run_bench(
            prompts,
            generator,
            repetitions=args.reps,
            model_label=args.label,
            temperature=args.temperature,
        )
    except (FileNotFoundError, GeneratorUnavailable, ValueError) as exc:
        return _fail(exc)
    _emit({"records": [r.to_dict() for r in records], "summary": summary})
    for row in summary:
        stats = row["wall_time_ms"]
        _say(
            f"{row['prompt_id']}: runs={row['runs']}"
            f" mean={stats['mean']:.2f}ms min={stats['min']:.2f}ms"
            f" max={stats['max']:.2f}ms"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plancheck",
        description="Building energy-code compliance toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="gbXML file -> per-surface attribute JSON")
    p.add_argument("file", help="gbXML document")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("parse-docs", help="design-document text -> fixture report")
    p.add_argument("file", help="fixture schedule text (post-OCR)")
    p.add_argument("--hours", help="operating-hours text file")
    p.set_defaults(func=cmd_parse_docs)

    p = sub.add_parser("check", help="interior lighting compliance check")
    p.add_argument("--area", type=float, required=True)
    p.add_argument("--unit", choices=["m2", "ft2"], default="m2")
    p.add_argument("--use", required=True, help="building use type identifier")
    p.add_argument("--code", default="ashrae_90_1_2022")
    p.add_argument("--designed", type=float, help="designed lighting wattage")
    p.add_argument("--lpd-table", help="custom LPD table JSON")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("index", help="build and persist a provision index")
    p.add_argument("corpus", help="provision corpus JSON")
    p.add_argument("--out", default="provisions.index.json")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("ask", help="RAG answer over a provision corpus")
    p.add_argument("query")
    p.add_argument("--corpus", help="provision corpus JSON")
    p.add_argument("--index", help="previously built index JSON")
    p.add_argument("--k", type=int, default=retrieval.DEFAULT_K)
    p.add_argument("--script", help="scripted generator turns (JSON array)")
    p.set_defaults(func=cmd_ask)

    p = sub.add_parser("agent", help="run one agent episode")
    p.add_argument("query")
    p.add_argument("--script", help="scripted generator turns (JSON array)")
    p.add_argument("--gbxml", help="gbXML file to expose geometry tools over")
    p.add_argument("--corpus", help="provision corpus for the search tool")
    p.add_argument("--lpd-table", help="custom LPD table JSON")
    p.add_argument("--max-steps", type=int, default=8)
    p.set_defaults(func=cmd_agent)

    p = sub.add_parser("comcheck", help="allowance via the external-service client")
    p.add_argument("--area-ft2", type=float, required=True)
    p.add_argument("--use", required=True)
    p.add_argument("--code", default="ashrae_90_1_2022")
    p.add_argument("--mode", choices=["local", "replay", "live"], default="local")
    p.add_argument("--fixtures", help="fixture directory for replay/recording")
    p.add_argument("--lpd-table", help="custom LPD table JSON")
    p.set_defaults(func=cmd_comcheck)

    p = sub.add_parser("mcp-serve", help="serve the tool registry over MCP stdio")
    p.add_argument("--gbxml")
    p.add_argument("--corpus")
    p.add_argument("--lpd-table")
    p.set_defaults(func=cmd_mcp_serve)

    p = sub.add_parser("chat-serve", help="run the HTTP chat service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--port", type=int, default=int(os.environ.get("PORT", "8080"))
    )
    p.add_argument("--script", help="scripted generator turns (JSON array)")
    p.add_argument("--journal", help="append-only session journal file")
    p.add_argument("--ui", help="static directory with the web chat UI")
    p.add_argument("--gbxml")
    p.add_argument("--corpus")
    p.add_argument("--lpd-table")
    p.set_defaults(func=cmd_chat_serve)

    p = sub.add_parser("bench", help="latency/token benchmark over a generator")
    p.add_argument("--prompts", help="prompt set JSON [{id, text}]")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--script", help="scripted generator turns (JSON array)")
    p.add_argument("--label", default="stub")
    p.add_argument("--temperature", type=float, default=0.0)
    p.set_defaults(func=cmd_bench)

    return parser


def cli_dispatch(argv: list[str]) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
