"""Agent episode loop, tool registry, and observation provenance."""

import pytest

from plancheck import gbxml
from plancheck.agent import (
    DuplicateTool,
    MaxStepsExceeded,
    RepeatedInvalidDirective,
    StepRole,
    ToolField,
    ToolOutcome,
    ToolRegistry,
    ToolSpec,
    UnknownTool,
    build_registry,
    parse_tool_input,
    run_agent,
    system_prompt,
)
from plancheck.llm import GeneratorUnavailable, ScriptedLlm

BANK_ACTION = (
    "Action: LightingAllowedWattage\n"
    "Action Input: area=500, area_unit=m2,"
    " use_type=bank_financial_institution, code_version=ashrae_90_1_2022"
)
BANK_QUERY = (
    "What is the lighting power allowance for a 500-square-meter bank"
    " according to ASHRAE 90.1-2022?"
)


def test_system_prompt_rules_present():
    text = system_prompt()
    assert "Action: <tool name>" in text
    assert "NEVER return both Action and Final Answer" in text
    assert "NEVER invent tool results" in text


def test_scripted_bank_episode():
    registry = build_registry()
    stub = ScriptedLlm([BANK_ACTION, "Final Answer: 3019 W"])
    result = run_agent(registry, stub, BANK_QUERY)
    assert result.output == "3019 W"
    assert result.tools_used == ["LightingAllowedWattage"]
    assert result.input == BANK_QUERY
    observations = [s for s in result.transcript.steps if s.role is StepRole.OBSERVATION]
    assert [s.text for s in observations] == ["3019"]


def test_immediate_final_answer_uses_no_tools():
    result = run_agent(build_registry(), ScriptedLlm(["Final Answer: done"]), "hi")
    assert result.output == "done"
    assert result.tools_used == []


def test_unknown_tool_becomes_observation_then_recovery():
    stub = ScriptedLlm(
        ["Action: Nonexistent\nAction Input: x", "Final Answer: gave up"]
    )
    result = run_agent(build_registry(), stub, "q")
    assert result.output == "gave up"
    assert result.tools_used == []
    observation = next(
        s for s in result.transcript.steps if s.role is StepRole.OBSERVATION
    )
    assert "unknown tool" in observation.text


def test_unknown_tool_never_recovering_hits_max_steps():
    stub = ScriptedLlm(["Action: Nonexistent\nAction Input: x"] * 3)
    with pytest.raises(MaxStepsExceeded):
        run_agent(build_registry(), stub, "q", max_steps=3)


def test_tool_error_fed_back_as_observation():
    registry = build_registry()
    stub = ScriptedLlm(
        [
            "Action: LightingAllowedWattage\nAction Input: area=500",
            "Final Answer: missing info",
        ]
    )
    result = run_agent(registry, stub, "q")
    observation = next(
        s for s in result.transcript.steps if s.role is StepRole.OBSERVATION
    )
    assert "invalid arguments" in observation.text
    assert "area_unit" in observation.text


def test_two_consecutive_invalid_directives_abort():
    stub = ScriptedLlm(["thinking...", "still thinking..."])
    with pytest.raises(RepeatedInvalidDirective):
        run_agent(build_registry(), stub, "q")


def test_single_invalid_then_recovery():
    stub = ScriptedLlm(["hmm", "Final Answer: recovered"])
    result = run_agent(build_registry(), stub, "q")
    assert result.output == "recovered"


def test_observation_provenance():
    # Instrumented handler: every observation in the transcript must be
    # exactly what the handler returned, never synthesized.
    returned: list[str] = []

    def handler(args):
        value = f"measured-{len(returned)}"
        returned.append(value)
        return value

    registry = ToolRegistry()
    registry.register(
        ToolSpec(
            name="probe",
            description="test probe",
            input_schema=(ToolField("text", required=False),),
            handler=handler,
        )
    )
    stub = ScriptedLlm(
        [
            "Action: probe\nAction Input: one",
            "Action: probe\nAction Input: two",
            "Final Answer: ok",
        ]
    )
    result = run_agent(registry, stub, "q")
    observations = [
        s.text for s in result.transcript.steps if s.role is StepRole.OBSERVATION
    ]
    assert observations == returned
    # Every observation is immediately preceded by an assistant action.
    steps = result.transcript.steps
    for i, step in enumerate(steps):
        if step.role is StepRole.OBSERVATION:
            assert steps[i - 1].role is StepRole.ASSISTANT
            assert "Action:" in steps[i - 1].text


def test_determinism_of_scripted_episodes():
    script = [BANK_ACTION, "Final Answer: 3019 W"]
    a = run_agent(build_registry(), ScriptedLlm(script), BANK_QUERY)
    b = run_agent(build_registry(), ScriptedLlm(script), BANK_QUERY)
    assert a.output == b.output
    assert a.tools_used == b.tools_used
    assert [s.text for s in a.transcript.steps] == [s.text for s in b.transcript.steps]


def test_metrics_populated():
    result = run_agent(
        build_registry(), ScriptedLlm([BANK_ACTION, "Final Answer: 3019 W"]), BANK_QUERY
    )
    metrics = result.transcript.metrics
    assert metrics.prompt_tokens > 0
    assert metrics.completion_tokens > 0
    assert metrics.wall_time_ms >= 0


def test_exhausted_script_raises_generator_unavailable():
    with pytest.raises(GeneratorUnavailable):
        run_agent(build_registry(), ScriptedLlm([]), "q")


def test_registry_register_and_list():
    registry = ToolRegistry()
    spec = ToolSpec("alpha", "a tool", (ToolField("x"),), lambda a: "ok")
    registry.register(spec)
    assert "alpha" in registry
    assert registry.names() == ["alpha"]
    with pytest.raises(DuplicateTool):
        registry.register(spec)


def test_registry_descriptor_count():
    registry = build_registry()
    assert len(registry.specs()) == len(registry)


def test_registry_unknown_tool():
    with pytest.raises(UnknownTool):
        ToolRegistry().get("ghost")


def test_invoke_validates_and_coerces():
    registry = build_registry()
    outcome = registry.invoke(
        "LightingAllowedWattage",
        {
            "area": "500",
            "area_unit": "m2",
            "use_type": "bank_financial_institution",
            "code_version": "ashrae_90_1_2022",
        },
    )
    assert outcome == ToolOutcome(text="3019", is_error=False)

    missing = registry.invoke("LightingAllowedWattage", {"area": 500})
    assert missing.is_error
    assert "missing required field" in missing.text


def test_handler_fault_is_error_outcome():
    model = gbxml.parse_gbxml(
        "<gbXML xmlns='http://www.gbxml.org/schema'><Campus id='c'/></gbXML>"
    )
    registry = build_registry(model=model)
    outcome = registry.invoke("get_surface_area", {"surface_id": "nope"})
    assert outcome.is_error
    assert "UnknownSurface" in outcome.text


def test_parse_tool_input_forms():
    spec = ToolSpec(
        "t",
        "",
        (ToolField("area", "number"), ToolField("area_unit")),
        lambda a: "",
    )
    assert parse_tool_input(spec, "area=500, area_unit=m2") == {
        "area": "500",
        "area_unit": "m2",
    }
    single = ToolSpec("s", "", (ToolField("surface_id"),), lambda a: "")
    assert parse_tool_input(single, "ceiling_unit1_Reversed") == {
        "surface_id": "ceiling_unit1_Reversed"
    }
