"""Compile a Turing machine into an unambiguous NFT with a copy mode and a step mode.

Inputs are configuration sequences `enc(c1) ;; enc(c2) ;; ... ;; enc(ck) ;;`
closed by a mode token. In copy mode the NFT echoes the sequence and drops the
mode token. In step mode it first emits the machine's initial configuration and
then, for every input configuration, its successor. The step branch holds the
last plain cell back in its state, because a left move turns that cell into
the new head cell.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from xduce.errors import MachineValidationError, RunTooShort
from xduce.machines.model import Direction, Nft, StateId, TuringMachine
from xduce.machines.textfmt import serialize_machine
from xduce.semantics.tm import Configuration, HeadCell, initial_configuration, tm_step
from xduce.words import BLANK, SEPARATOR, Symbol, Word, format_word

log = logging.getLogger(__name__)


class Mode(str, Enum):
    COPY = "copy"
    STEP = "step"


RESERVED = frozenset({SEPARATOR, Mode.COPY.value, Mode.STEP.value})

INIT = "init"
COPY_START = "copy_start"
COPY_PLAIN = "copy_plain"
COPY_HEAD = "copy_head"
COPY_DONE = "copy_done"
STEP_START = "step_start"
STEP_TAIL = "step_tail"
STEP_DONE = "step_done"


def _hold(x: Symbol) -> StateId:
    return f"step_hold_{x}"


def _right(q: StateId) -> StateId:
    return f"step_right_{q}"


@dataclass(frozen=True)
class ReductionNft:
    nft: Nft
    machine: TuringMachine
    legend: dict[str, str]

    @property
    def vocabulary(self) -> tuple[Symbol, ...]:
        return self.nft.input_alphabet

    def serialize(self) -> str:
        comments = ["legend:"] + [f"legend: {tok} = {desc}" for tok, desc in self.legend.items()]
        return serialize_machine(self.nft, comments)


def check_reducible(M: TuringMachine) -> None:
    for y in M.alphabet:
        if y in RESERVED or "@" in y:
            raise MachineValidationError(f"tape symbol '{y}' collides with reduction tokens")
    for q in M.states:
        if "@" in q:
            raise MachineValidationError(f"state '{q}' contains '@'")


def encode_configuration(M: TuringMachine, c: Configuration) -> Word:
    tape = set(M.alphabet)
    for cell in c.cells:
        if isinstance(cell, HeadCell):
            if cell.state not in M.state_order:
                raise MachineValidationError(f"unknown state '{cell.state}' in configuration")
            if cell.symbol != BLANK and cell.symbol not in tape:
                raise MachineValidationError(f"unknown tape symbol '{cell.symbol}' in configuration")
        elif cell.symbol not in tape:
            raise MachineValidationError(f"unknown tape symbol '{cell.symbol}' in configuration")
    return tuple(cell.render() for cell in c.cells)


def successor_configuration(M: TuringMachine, c: Configuration) -> Configuration | None:
    return tm_step(M, c)


def tm_to_nft(M: TuringMachine) -> ReductionNft:
    check_reducible(M)
    plain = list(M.alphabet)
    heads = [HeadCell(q, y) for q in M.states for y in plain + [BLANK]]
    vocab = plain + [h.render() for h in heads] + [SEPARATOR, Mode.COPY.value, Mode.STEP.value]
    right_targets = [q for q in M.states if any(
        d is Direction.RIGHT and p == q for p, _, d in M.transitions.values()
    )]

    table: dict[tuple[StateId, Symbol], set[tuple[StateId, Word]]] = {}

    def add(src: StateId, sym: Symbol, dst: StateId, out: Word) -> None:
        table.setdefault((src, sym), set()).add((dst, out))

    # copy mode: echo, one head cell per configuration
    for y in plain:
        for src in (INIT, COPY_START, COPY_PLAIN):
            add(src, y, COPY_PLAIN, (y,))
        add(COPY_HEAD, y, COPY_HEAD, (y,))
    for h in heads:
        for src in (INIT, COPY_START, COPY_PLAIN):
            add(src, h.render(), COPY_HEAD, (h.render(),))
    add(COPY_HEAD, SEPARATOR, COPY_START, (SEPARATOR,))
    add(COPY_START, Mode.COPY.value, COPY_DONE, ())

    # step mode: pending is the plain cell held back, None at a configuration start
    def head_read(pending: Symbol | None, h: HeadCell) -> tuple[StateId, Word] | None:
        if h.state in M.accepting or (h.state, h.symbol) not in M.transitions:
            return None
        target, written, direction = M.transitions[(h.state, h.symbol)]
        if direction is Direction.LEFT:
            left = pending if pending is not None else BLANK
            return STEP_TAIL, (HeadCell(target, left).render(), written)
        before = (pending,) if pending is not None else ()
        return _right(target), before + (written,)

    for src, pending in [(STEP_START, None)] + [(_hold(x), x) for x in plain]:
        for y in plain:
            add(src, y, _hold(y), (pending,) if pending is not None else ())
        for h in heads:
            move = head_read(pending, h)
            if move is not None:
                add(src, h.render(), *move)
    add(STEP_START, Mode.STEP.value, STEP_DONE, ())
    for q in right_targets:
        for z in plain:
            add(_right(q), z, STEP_TAIL, (HeadCell(q, z).render(),))
        add(_right(q), SEPARATOR, STEP_START, (HeadCell(q, BLANK).render(), SEPARATOR))
    for z in plain:
        add(STEP_TAIL, z, STEP_TAIL, (z,))
    add(STEP_TAIL, SEPARATOR, STEP_START, (SEPARATOR,))

    # the step branch announces c0 on the first token
    c0 = encode_configuration(M, initial_configuration(M)) + (SEPARATOR,)
    for (src, sym), opts in list(table.items()):
        if src == STEP_START and sym != Mode.STEP.value:
            for dst, out in opts:
                add(INIT, sym, dst, c0 + out)

    states = (
        [INIT, COPY_START, COPY_PLAIN, COPY_HEAD, COPY_DONE, STEP_START]
        + [_hold(x) for x in plain]
        + [_right(q) for q in right_targets]
        + [STEP_TAIL, STEP_DONE]
    )
    nft = Nft(states, vocab, vocab, INIT, {COPY_DONE, STEP_DONE}, table)

    legend = {y: f"tape symbol {y}" for y in plain}
    for h in heads:
        legend[h.render()] = f"head in state {h.state} scanning {'blank' if h.symbol == BLANK else h.symbol}"
    legend[SEPARATOR] = "configuration separator"
    legend[Mode.COPY.value] = "copy mode indicator"
    legend[Mode.STEP.value] = "step mode indicator"
    log.info(f"reduction NFT: {len(states)} states, {nft.entry_count()} transition options")
    return ReductionNft(nft, M, legend)


def _run_prefix(M: TuringMachine, steps: int) -> list[Configuration]:
    configs = [initial_configuration(M)]
    for _ in range(steps):
        nxt = tm_step(M, configs[-1])
        if nxt is None:
            raise RunTooShort(steps, len(configs) - 1)
        configs.append(nxt)
    return configs


def _join(M: TuringMachine, configs: list[Configuration]) -> Word:
    return tuple(tok for c in configs for tok in encode_configuration(M, c) + (SEPARATOR,))


def build_reduction_input(M: TuringMachine, k: int, mode: Mode | str) -> Word:
    """`enc(c0) ;; enc(c1) ;; ... ;; enc(ck) ;; <mode>` from the machine's own run."""
    mode = Mode(mode)
    return _join(M, _run_prefix(M, k)) + (mode.value,)


def expected_output(M: TuringMachine, k: int, mode: Mode | str) -> Word:
    """The output paired with build_reduction_input(M, k, mode)."""
    mode = Mode(mode)
    if mode is Mode.COPY:
        return _join(M, _run_prefix(M, k))
    return _join(M, _run_prefix(M, k + 1))


def format_reduction_word(word: Word, spaced: bool = False) -> str:
    if spaced:
        return " ".join(word) if word else "_"
    return format_word(word, RESERVED)
