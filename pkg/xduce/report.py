"""Text and JSON renderings of results. JSON models all carry a `verdict` field."""

from __future__ import annotations

from collections.abc import Sequence

from pydantic import BaseModel, Field

from xduce.analysis.witness import TrailingWitness, VariationWitness
from xduce.harness.oracle import Counterexample
from xduce.words import Symbol, Word, format_word


class Report(BaseModel):
    verdict: str


class MembershipReport(Report):
    input: str
    output: str
    run: list[str] | None = None


class OutputsReport(Report):
    input: str
    outputs: list[str]
    overflow: bool


class AnalyzeReport(Report):
    states: int
    transitions: int
    output_speed: int
    shortcut_guarantee: int
    co_reachable: list[str]


class TraceReport(Report):
    steps: list[str]
    final_state: str
    annotations: dict[str, str] = Field(default_factory=dict)


class DeterminizeReport(Report):
    s: int
    t: int
    r: int
    states: int
    overflow_drops: int
    annotations: dict[str, str]


class EquivalenceReport(Report):
    max_input: int
    max_output: int
    counterexample: dict[str, str | bool] | None = None


class WitnessReport(Report):
    kind: str
    bound: int
    max_input: int
    witness: dict[str, str | int] | None = None


class CountReport(Report):
    k: int
    overflow: bool
    input: str | None = None
    output: str | None = None


class TrailingProfileReport(Report):
    max_input: int
    longest: int
    witness: dict[str, str | int] | None = None


class TmRunReport(Report):
    status: str
    steps: int
    configurations: list[str]


class WordReport(Report):
    word: str
    output: str | None = None


class CorpusEntryReport(BaseModel):
    name: str
    kind: str
    summary: str
    relation: str | None = None
    trailing_bound: int | None = None


class CorpusReport(Report):
    entries: list[CorpusEntryReport]


# ── Witness blocks ────────────────────────────────────────────────────────────

def trailing_fields(w: TrailingWitness, sigma: Sequence[Symbol], gamma: Sequence[Symbol]) -> dict[str, str | int]:
    def i(x: Word) -> str:
        return format_word(x, sigma)

    def o(x: Word) -> str:
        return format_word(x, gamma)

    return {
        "a": i(w.a), "u": o(w.u), "v": o(w.v), "v_len": len(w.v),
        "q1": w.q1, "b1": i(w.b1), "w1": o(w.w1), "f1": w.f1,
        "q2": w.q2, "b2": i(w.b2), "w2": o(w.w2), "f2": w.f2,
    }


def variation_fields(w: VariationWitness, sigma: Sequence[Symbol], gamma: Sequence[Symbol]) -> dict[str, str | int]:
    return {
        "a": format_word(w.a, sigma),
        "o1": format_word(w.o1, gamma),
        "o2": format_word(w.o2, gamma),
        "q1": w.q1,
        "q2": w.q2,
        "d": w.d_value,
    }


def counterexample_fields(c: Counterexample, sigma: Sequence[Symbol], gamma: Sequence[Symbol]) -> dict[str, str | bool]:
    return {
        "a": format_word(c.a, sigma),
        "u": format_word(c.u, gamma),
        "first": c.first,
        "second": c.second,
    }


def render_block(fields: dict) -> str:
    """`key=value` lines in field order."""
    lines = []
    for key, value in fields.items():
        if isinstance(value, bool):
            value = "accept" if value else "reject"
        lines.append(f"{key}={value}")
    return "\n".join(lines)
