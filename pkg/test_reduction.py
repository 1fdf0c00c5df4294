"""Tests for the Turing machine to NFT reduction."""

import functools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xduce.errors import MachineValidationError, RunTooShort
from xduce.harness import default_corpus
from xduce.machines import TuringMachine, parse_machine
from xduce.reduction import (
    Mode,
    build_reduction_input,
    encode_configuration,
    expected_output,
    format_reduction_word,
    successor_configuration,
    tm_to_nft,
)
from xduce.semantics import Configuration, HeadCell, PlainCell, initial_configuration, nft_membership, nft_outputs, tm_run


def corpus(name: str):
    return default_corpus().machine(name)


def toks(text: str) -> tuple:
    return tuple(text.split())


@functools.cache
def walker_reduction():
    return tm_to_nft(corpus("walker.tm")).nft


# ── Configurations ────────────────────────────────────────────────────────────

def test_encode_initial_configuration():
    for name in ("walker.tm", "stopper.tm"):
        M = corpus(name)
        assert encode_configuration(M, initial_configuration(M)) == (f"{M.initial}@.",)


def test_encode_walker_after_two_steps():
    M = corpus("walker.tm")
    assert encode_configuration(M, tm_run(M, 2).configs[-1]) == toks("1 1 p@.")


def test_encode_rejects_unknown_state():
    M = corpus("walker.tm")
    with pytest.raises(MachineValidationError):
        encode_configuration(M, Configuration((HeadCell("zz", "."),)))


def test_successor():
    M = corpus("walker.tm")
    nxt = successor_configuration(M, initial_configuration(M))
    assert nxt == Configuration((PlainCell("1"), HeadCell("p", ".")))
    assert successor_configuration(corpus("stopper.tm"), initial_configuration(corpus("stopper.tm"))) is None


def test_no_successor_in_accepting_state():
    M = TuringMachine(["q0"], ["1"], "q0", {"q0"}, {("q0", "."): ("q0", "1", "R")})
    assert successor_configuration(M, initial_configuration(M)) is None


# ── Reduction NFT ─────────────────────────────────────────────────────────────

def test_walker_copy_mode():
    R = tm_to_nft(corpus("walker.tm")).nft
    assert nft_membership(R, toks("p@. ;; copy"), toks("p@. ;;"))
    assert not nft_membership(R, toks("p@. ;; copy"), toks("p@. ;; copy"))
    assert nft_outputs(R, toks("p@. ;; 1 p@. ;; copy"), 10).words == (toks("p@. ;; 1 p@. ;;"),)


def test_walker_step_mode():
    R = tm_to_nft(corpus("walker.tm")).nft
    assert nft_membership(R, toks("p@. ;; step"), toks("p@. ;; 1 p@. ;;"))
    assert nft_outputs(R, toks("p@. ;; 1 p@. ;; step"), 10).words == (toks("p@. ;; 1 p@. ;; 1 1 p@. ;;"),)


def test_copy_mode_needs_one_head_per_configuration():
    R = tm_to_nft(corpus("walker.tm")).nft
    assert not nft_membership(R, toks("1 ;; copy"), toks("1 ;;"))
    assert not nft_membership(R, toks("p@. p@1 ;; copy"), toks("p@. p@1 ;;"))


def test_stopper_step_mode_rejects():
    R = tm_to_nft(corpus("stopper.tm")).nft
    assert nft_outputs(R, toks("q0@. ;; step"), 10).words == ()
    assert nft_membership(R, toks("q0@. ;; copy"), toks("q0@. ;;"))


LEFT_WALKER = """machine tm
states a b
alphabet 1 2
initial a
accept
t a . b 1 L
t b . a 2 R
t a 1 a 2 L
t b 2 b 1 R
t a 2 b 1 R
t b 1 a 2 L
"""


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_step_mode_matches_simulation(k):
    M = parse_machine(LEFT_WALKER)
    R = tm_to_nft(M).nft
    a = build_reduction_input(M, k, Mode.STEP)
    want = expected_output(M, k, Mode.STEP)
    assert nft_outputs(R, a, 10).words == (want,), f"k={k}: input {format_reduction_word(a, True)}"


@pytest.mark.parametrize("k", [0, 3])
def test_copy_mode_matches_simulation(k):
    M = parse_machine(LEFT_WALKER)
    R = tm_to_nft(M).nft
    a = build_reduction_input(M, k, "copy")
    assert nft_outputs(R, a, 10).words == (expected_output(M, k, "copy"),)


def test_reserved_tape_symbol_rejected():
    M = TuringMachine(["q"], ["copy"], "q", set())
    with pytest.raises(MachineValidationError):
        tm_to_nft(M)


def test_serialized_reduction_has_legend():
    text = tm_to_nft(corpus("walker.tm")).serialize()
    assert "# legend: p@. = head in state p scanning blank" in text
    assert "# legend: ;; = configuration separator" in text
    assert parse_machine(text) == tm_to_nft(corpus("walker.tm")).nft


# ── Input generation ──────────────────────────────────────────────────────────

def test_build_reduction_input():
    M = corpus("walker.tm")
    assert build_reduction_input(M, 0, Mode.COPY) == toks("p@. ;; copy")
    assert build_reduction_input(M, 2, Mode.STEP) == toks("p@. ;; 1 p@. ;; 1 1 p@. ;; step")


def test_run_too_short():
    with pytest.raises(RunTooShort) as info:
        build_reduction_input(corpus("stopper.tm"), 1, Mode.COPY)
    assert (info.value.wanted, info.value.available) == (1, 0)


def test_format_reduction_word():
    word = toks("p@. ;; 1 p@. ;; copy")
    assert format_reduction_word(word) == "[p@.,;;,1,p@.,;;,copy]"
    assert format_reduction_word(word, spaced=True) == "p@. ;; 1 p@. ;; copy"
    assert format_reduction_word(()) == "_"


# ── Copy and step consistency ─────────────────────────────────────────────────

@pytest.mark.parametrize("k", range(4))
def test_walker_copy_and_step_membership(k):
    M = corpus("walker.tm")
    R = walker_reduction()
    for mode in Mode:
        a = build_reduction_input(M, k, mode)
        assert nft_membership(R, a, expected_output(M, k, mode)), f"k={k} {mode.value}: {format_reduction_word(a, True)}"


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_corrupted_inputs_are_rejected(data):
    word = list(toks("p@. ;; 1 p@. ;; 1 1 p@. ;; copy"))
    heads = [i for i, tok in enumerate(word) if "@" in tok]
    plain = [i for i, tok in enumerate(word) if tok == "1"]
    mode = data.draw(st.sampled_from([m.value for m in Mode]))
    kind = data.draw(st.sampled_from(["no head", "two heads", "mode inside", "extra mode"]))
    if kind == "no head":
        word[data.draw(st.sampled_from(heads))] = "1"
    elif kind == "two heads":
        word[data.draw(st.sampled_from(plain))] = "p@1"
    elif kind == "mode inside":
        word[data.draw(st.integers(0, len(word) - 2))] = mode
    else:
        word.insert(data.draw(st.integers(0, len(word) - 1)), mode)
    corrupted = tuple(word)
    assert nft_outputs(walker_reduction(), corrupted, 100).words == (), (
        f"{kind}: accepted {format_reduction_word(corrupted, True)}"
    )
