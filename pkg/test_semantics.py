"""Tests for the NFT, 2DFA and Turing machine runners."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xduce.errors import MachineValidationError
from xduce.harness import default_corpus
from xduce.machines import Direction, Nft, TuringMachine
from xduce.semantics import (
    Configuration,
    HeadCell,
    PlainCell,
    TmStatus,
    format_trace,
    initial_configuration,
    nft_accepting_run_count,
    nft_find_run,
    nft_membership,
    nft_outputs,
    tdfa_accepts,
    tdfa_outputs,
    tdfa_run,
    tm_run,
    tm_step,
)


def corpus(name: str):
    return default_corpus().machine(name)


def w(text: str) -> tuple:
    return tuple(text)


# ── NFT ───────────────────────────────────────────────────────────────────────

def test_constr_membership():
    T = corpus("constr.nft")
    assert nft_membership(T, w("aa"), w("ababab"))
    assert nft_membership(T, w("aa"), w("ababa"))
    assert nft_membership(T, w("ab"), w("ababaa"))
    assert not nft_membership(T, w("aa"), w("ababaa"))
    assert nft_membership(T, (), ())


def test_empty_pair_needs_accepting_initial():
    T = Nft(["q0", "q1"], ["a"], ["a"], "q0", {"q1"}, {("q0", "a"): {("q1", ())}})
    assert not nft_membership(T, (), ())
    assert nft_membership(T, w("a"), ())
    assert nft_outputs(T, (), 10).words == ()


def test_constr_outputs():
    T = corpus("constr.nft")
    assert nft_outputs(T, w("aa"), 10).words == (w("ababa"), w("ababab"))
    assert nft_outputs(T, w("a"), 10).words == ()
    assert nft_outputs(T, (), 10).words == ((),)


def test_outputs_cap_sets_overflow():
    T = corpus("le2n.nft")
    result = nft_outputs(T, w("00"), 3)
    assert result.overflow
    assert result.words == ((), w("0"), w("00")), f"got {result.words}"
    assert not nft_outputs(T, w("00"), 5).overflow


def test_outputs_max_len():
    T = corpus("le2n.nft")
    assert nft_outputs(T, w("000"), 100, max_len=2).words == ((), w("0"), w("00"))


def test_outputs_stop_once_cap_is_settled():
    # every word over {a, b} up to length 30 is an output; only the shortest are explored
    T = Nft(["q"], ["x"], ["a", "b"], "q", {"q"}, {("q", "x"): {("q", ()), ("q", ("a",)), ("q", ("b",))}})
    result = nft_outputs(T, ("x",) * 30, 3)
    assert result.words == ((), w("a"), w("b")), f"got {result.words}"
    assert result.overflow


def test_constr_run_counts():
    T = corpus("constr.nft")
    # q1 then (ba or bab) and q2 then ab both produce ababab
    assert nft_accepting_run_count(T, w("aa"), w("ababab"), 100) == (2, False)
    assert nft_accepting_run_count(T, w("aa"), w("ababa"), 100) == (1, False)
    assert nft_accepting_run_count(T, w("aa"), w("aaaaaa"), 100) == (0, False)
    assert nft_accepting_run_count(T, (), (), 100) == (1, False)


def test_run_count_saturates():
    T = corpus("le2n.nft")
    # 0^4 -> 0^4 has many decompositions into outputs of length 0..2
    count, overflow = nft_accepting_run_count(T, w("0000"), w("0000"), 3)
    assert (count, overflow) == (3, True)


def test_find_run_replays():
    T = corpus("constr.nft")
    run = nft_find_run(T, T.initial, w("aa"), w("ababab"), T.accepting)
    assert run is not None
    assert run.total_output == w("ababab")
    assert run.end == "q0"
    assert [s.target for s in run.steps] == ["q1", "q0"]
    assert nft_find_run(T, T.initial, w("aa"), w("ababaa"), T.accepting) is None


# ── 2DFA ──────────────────────────────────────────────────────────────────────

def test_lastsym_relation():
    A = corpus("lastsym.tdfa")
    assert tdfa_accepts(A, w("010"), w("000"))
    assert not tdfa_accepts(A, w("01"), w("00"))
    assert tdfa_accepts(A, w("01"), w("11"))
    assert tdfa_accepts(A, (), ())
    assert not tdfa_accepts(A, w("0"), w("00"))


def test_le2n_tdfa():
    A = corpus("le2n.tdfa")
    assert not tdfa_accepts(A, w("0"), w("000"))
    assert tdfa_accepts(A, w("0"), w("00"))
    assert tdfa_accepts(A, w("000"), ())


def test_tdfa_dead_end_trace():
    A = corpus("le2n.tdfa")
    trace = tdfa_run(A, w("0"), w("000"))
    assert not trace.accepted
    assert trace.dead_end
    lines = format_trace(trace)
    assert lines[-2].endswith("move=dead"), f"got {lines[-2]}"
    assert lines[-1].startswith("result: reject")


def test_tdfa_trace_format():
    A = corpus("lastsym.tdfa")
    trace = tdfa_run(A, w("0"), w("0"))
    assert format_trace(trace, {"c0x0": "note"}) == [
        "step 0: state=st in=0 out=0 read=(0,0) move=(A,A)",
        "result: accept state=c0x0  note",
    ]


def test_tdfa_outputs():
    assert tdfa_outputs(corpus("le2n.tdfa"), w("0"), 5) == [(), w("0"), w("00")]
    assert tdfa_outputs(corpus("lastsym.tdfa"), w("10"), 3) == [w("00")]


def test_tdfa_outputs_long_input():
    a = ("1",) * 1999 + ("0",)
    assert tdfa_outputs(corpus("lastsym.tdfa"), a, 2000) == [("0",) * 2000]


# ── Turing machines ───────────────────────────────────────────────────────────

def test_walker_runs_to_step_limit():
    run = tm_run(corpus("walker.tm"), 3)
    assert run.status is TmStatus.STEP_LIMIT
    assert [len(c.cells) for c in run.configs] == [1, 2, 3, 4]
    assert run.configs[2].render() == "1 1 p@."


def test_stopper_halts_immediately():
    run = tm_run(corpus("stopper.tm"), 10)
    assert run.status is TmStatus.HALTED
    assert len(run.configs) == 1


def test_zero_steps():
    run = tm_run(corpus("walker.tm"), 0)
    assert run.status is TmStatus.STEP_LIMIT
    assert len(run.configs) == 1


def test_write_then_accept():
    M = TuringMachine(["q0", "qf"], ["1"], "q0", {"qf"}, {("q0", "."): ("qf", "1", "R")})
    run = tm_run(M, 10)
    assert run.status is TmStatus.HALTED
    assert [c.render() for c in run.configs] == ["q0@.", "1 qf@."]


def test_left_moves_grow_the_tape():
    M = TuringMachine(["q0", "q1"], ["1"], "q0", set(), {("q0", "."): ("q1", "1", "L")})
    c = tm_step(M, initial_configuration(M))
    assert c.render() == "q1@. 1"


def test_looping_detected():
    M = TuringMachine(
        ["q0", "q1"], ["1"], "q0", set(),
        {("q0", "."): ("q1", "1", "R"), ("q1", "."): ("q0", "1", "L"), ("q0", "1"): ("q1", "1", "R"),
         ("q1", "1"): ("q0", "1", "L")},
    )
    run = tm_run(M, 100)
    assert run.status is TmStatus.LOOPING, f"got {run.status} after {len(run.configs)} configurations"


def test_configuration_needs_one_head():
    with pytest.raises(MachineValidationError):
        Configuration((HeadCell("p", "."), HeadCell("p", "1")))
    with pytest.raises(MachineValidationError):
        Configuration((PlainCell("1"),))


# ── Properties ────────────────────────────────────────────────────────────────

@settings(max_examples=300, deadline=None)
@given(name=st.sampled_from(["constr.nft", "exbt.nft", "le2n.nft"]), data=st.data())
def test_membership_agrees_with_outputs(name, data):
    T = corpus(name)
    a = tuple(data.draw(st.lists(st.sampled_from(T.input_alphabet), max_size=4)))
    u = tuple(data.draw(st.lists(st.sampled_from(T.output_alphabet), max_size=8)))
    outs = nft_outputs(T, a, 10_000).words
    assert nft_membership(T, a, u) == (u in outs), f"{name}: disagreement on ({a}, {u})"
    assert all(nft_membership(T, a, o) for o in outs)


@settings(max_examples=300, deadline=None)
@given(name=st.sampled_from(["le2n.tdfa", "lastsym.tdfa"]), data=st.data())
def test_tdfa_trace_advances_every_step(name, data):
    A = corpus(name)
    a = tuple(data.draw(st.lists(st.sampled_from(A.input_alphabet), max_size=6)))
    u = tuple(data.draw(st.lists(st.sampled_from(A.output_alphabet), max_size=12)))
    trace = tdfa_run(A, a, u)
    assert len(trace.steps) <= len(a) + len(u)
    positions = [(s.input_pos, s.output_pos) for s in trace.steps]
    assert all(i1 <= i2 and j1 <= j2 for (i1, j1), (i2, j2) in zip(positions, positions[1:])), positions
    assert tdfa_run(A, a, u) == trace


tm_rules = st.dictionaries(
    st.tuples(st.sampled_from(["a", "b"]), st.sampled_from([".", "1", "2"])),
    st.tuples(st.sampled_from(["a", "b"]), st.sampled_from(["1", "2"]), st.sampled_from(["L", "R"])),
)


@settings(max_examples=200, deadline=None)
@given(tm_rules)
def test_tm_steps_are_local(rules):
    M = TuringMachine(["a", "b"], ["1", "2"], "a", set(), rules)
    run = tm_run(M, 12)
    for before, after in zip(run.configs, run.configs[1:]):
        h = before.head_index
        _, _, direction = M.transitions[(before.head.state, before.head.symbol)]
        shift = 1 if direction is Direction.LEFT and h == 0 else 0
        assert len(after.cells) - len(before.cells) in (0, 1)
        assert abs(after.head_index - shift - h) == 1
        for k, cell in enumerate(before.cells):
            if abs(k - h) > 1:
                assert after.cells[k + shift] == cell, f"{before.render()} -> {after.render()}"
    assert tm_run(M, 12) == run
