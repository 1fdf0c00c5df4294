"""Tests for the machine text format and construction-time validation."""

import pytest

from xduce.errors import MachineFormatError, MachineValidationError
from xduce.harness import default_corpus, random_nft
from xduce.machines import Direction, Move, Nft, Tdfa, TuringMachine, parse_machine, serialize_machine


def corpus(name: str):
    return default_corpus().machine(name)


TDFA_HEAD = """machine tdfa
states s0 s1
input a
output b
initial s0
accept s1
"""


# ── Parsing ───────────────────────────────────────────────────────────────────

def test_constr_parses():
    T = corpus("constr.nft")
    assert isinstance(T, Nft)
    assert T.states == ("q0", "q1", "q2", "q3")
    assert T.entry_count() == 7, f"expected 7 options, got {T.entry_count()}"
    assert T.options("q3", "b") == frozenset({("q0", ("a", "a"))})
    assert T.accepting == frozenset({"q0"})


def test_every_corpus_file_parses():
    entries = default_corpus().list_all()
    assert len(entries) == 7, f"corpus has {[e.name for e in entries]}"
    for entry in entries:
        m = entry.load()
        assert entry.kind in ("nft", "tdfa", "tm")
        assert type(m) is {"nft": Nft, "tdfa": Tdfa, "tm": TuringMachine}[entry.kind]


def test_minimal_tm():
    M = parse_machine("machine tm\nstates q0\nalphabet 1\ninitial q0\naccept\nt q0 . q0 1 R\n")
    assert isinstance(M, TuringMachine)
    assert M.transitions == {("q0", "."): ("q0", "1", Direction.RIGHT)}
    assert M.accepting == frozenset()


def test_tdfa_moves_parse():
    A = parse_machine(TDFA_HEAD + "t s0 a b s1 A A\nt s1 . b s1 S A\n")
    assert A.transitions[("s1", ".", "b")] == ("s1", Move.STAY, Move.ADVANCE)


def test_comments_and_blank_lines_ignored():
    text = "# header\n\nmachine nft   # kind\nstates q\ninput a\noutput b\ninitial q\naccept q\n\nt q a q bb # loop\n"
    T = parse_machine(text)
    assert T.options("q", "a") == frozenset({("q", ("b", "b"))})


# ── Format errors carry a position ────────────────────────────────────────────

def test_tdfa_without_advance_rejected():
    with pytest.raises(MachineFormatError, match="no head advances") as info:
        parse_machine(TDFA_HEAD + "t s0 . . s1 S S\n")
    assert info.value.line == 7


def test_tdfa_head_past_blank_rejected():
    with pytest.raises(MachineFormatError, match="past the blank"):
        parse_machine(TDFA_HEAD + "t s0 . b s1 A A\n")


def test_duplicate_tdfa_key_rejected():
    with pytest.raises(MachineFormatError, match="duplicate transition"):
        parse_machine(TDFA_HEAD + "t s0 a b s1 A A\nt s0 a b s0 A S\n")


def test_undeclared_state_reports_column():
    text = "machine nft\nstates q0\ninput a\noutput a\ninitial q0\naccept q0\nt q0 a q9 a\n"
    with pytest.raises(MachineFormatError) as info:
        parse_machine(text)
    err = info.value
    assert (err.line, err.column) == (7, 8), f"got line {err.line}, column {err.column}"
    assert "q9" in err.reason


def test_missing_header_rejected():
    with pytest.raises(MachineFormatError, match="missing 'accept'"):
        parse_machine("machine nft\nstates q0\ninput a\noutput a\ninitial q0\n")


def test_bad_arity_rejected():
    text = "machine nft\nstates q0\ninput a\noutput a\ninitial q0\naccept q0\nt q0 a q0\n"
    with pytest.raises(MachineFormatError, match="takes 4 fields"):
        parse_machine(text)


def test_tm_cannot_write_blank():
    text = "machine tm\nstates q0\nalphabet 1\ninitial q0\naccept\nt q0 . q0 . R\n"
    with pytest.raises(MachineFormatError, match="blank"):
        parse_machine(text)


def test_unknown_kind_rejected():
    with pytest.raises(MachineFormatError, match="unknown machine kind"):
        parse_machine("machine pda\n")


# ── Direct construction ───────────────────────────────────────────────────────

def test_nft_rejects_undeclared_output():
    with pytest.raises(MachineValidationError):
        Nft(["q"], ["a"], ["a"], "q", {"q"}, {("q", "a"): {("q", ("b",))}})


def test_nft_drops_empty_entries():
    T = Nft(["q"], ["a"], ["a"], "q", {"q"}, {("q", "a"): set()})
    assert T.transitions == {}
    assert T.options("q", "a") == frozenset()


def test_reserved_state_name_rejected():
    with pytest.raises(MachineValidationError):
        Nft(["q,1"], ["a"], ["a"], "q,1", set())


# ── Serialization ─────────────────────────────────────────────────────────────

def test_serialize_constr_is_canonical():
    T = corpus("constr.nft")
    text = serialize_machine(T)
    rules = [line for line in text.splitlines() if line.startswith("t ")]
    assert rules == [
        "t q0 a q1 aba",
        "t q0 a q2 abab",
        "t q0 a q3 abab",
        "t q1 a q0 ba",
        "t q1 a q0 bab",
        "t q2 a q0 ab",
        "t q3 b q0 aa",
    ], f"got {rules}"
    assert parse_machine(text) == T


@pytest.mark.parametrize("params", [(1, 3, 2, 2, 0.5), (1, 4, 2, 3, 0.6)])
def test_serialize_random_nft_round_trips(params):
    T = random_nft(*params)
    assert parse_machine(serialize_machine(T)) == T


@pytest.mark.parametrize("name", ["le2n.tdfa", "lastsym.tdfa", "walker.tm", "stopper.tm"])
def test_serialize_round_trips_corpus(name):
    m = corpus(name)
    assert parse_machine(serialize_machine(m, ["regenerated"])) == m


def test_empty_accept_line_written():
    text = serialize_machine(corpus("walker.tm"))
    assert "\naccept\n" in text
