"""Machine types: NFT, two-tape DFA and Turing machine, validated on construction."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from xduce.errors import MachineValidationError, WordSyntaxError
from xduce.words import BLANK, Symbol, Word, check_symbol, symbol_order, word_key

StateId = str


class Move(str, Enum):
    STAY = "S"
    ADVANCE = "A"


class Direction(str, Enum):
    LEFT = "L"
    RIGHT = "R"


def _check_tokens(kind: str, tokens: Iterable[str]) -> None:
    seen: set[str] = set()
    for tok in tokens:
        try:
            check_symbol(tok)
        except WordSyntaxError as e:
            raise MachineValidationError(f"bad {kind}: {e}") from None
        if tok in seen:
            raise MachineValidationError(f"{kind} '{tok}' declared twice")
        seen.add(tok)


def _check_common(states: tuple, initial: str, accepting: frozenset) -> None:
    if not states:
        raise MachineValidationError("a machine needs at least one state")
    _check_tokens("state", states)
    if initial not in states:
        raise MachineValidationError(f"initial state '{initial}' is not declared")
    unknown = sorted(accepting - set(states))
    if unknown:
        raise MachineValidationError(f"accepting state '{unknown[0]}' is not declared")


@dataclass(frozen=True)
class Nft:
    states: tuple[StateId, ...]
    input_alphabet: tuple[Symbol, ...]
    output_alphabet: tuple[Symbol, ...]
    initial: StateId
    accepting: frozenset[StateId]
    transitions: Mapping[tuple[StateId, Symbol], frozenset[tuple[StateId, Word]]] = field(
        default_factory=dict
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", tuple(self.output_alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        _check_common(self.states, self.initial, self.accepting)
        if not self.input_alphabet or not self.output_alphabet:
            raise MachineValidationError("NFT alphabets must be non-empty")
        _check_tokens("input symbol", self.input_alphabet)
        _check_tokens("output symbol", self.output_alphabet)

        states, sigma, gamma = set(self.states), set(self.input_alphabet), set(self.output_alphabet)
        table: dict[tuple[StateId, Symbol], frozenset[tuple[StateId, Word]]] = {}
        for (q, a), options in self.transitions.items():
            if q not in states:
                raise MachineValidationError(f"transition from undeclared state '{q}'")
            if a not in sigma:
                raise MachineValidationError(f"transition on undeclared input symbol '{a}'")
            opts = frozenset((p, tuple(w)) for p, w in options)
            for p, w in opts:
                if p not in states:
                    raise MachineValidationError(f"transition to undeclared state '{p}'")
                for g in w:
                    if g not in gamma:
                        raise MachineValidationError(f"output symbol '{g}' not in the output alphabet")
            if opts:
                table[(q, a)] = opts
        object.__setattr__(self, "transitions", table)

    def options(self, q: StateId, a: Symbol) -> frozenset[tuple[StateId, Word]]:
        return self.transitions.get((q, a), frozenset())

    def sorted_options(self, q: StateId, a: Symbol) -> list[tuple[StateId, Word]]:
        """Options in canonical order: target declaration order, then output word order."""
        return self._sorted_table.get((q, a), [])

    def entry_count(self) -> int:
        return sum(len(opts) for opts in self.transitions.values())

    @cached_property
    def state_order(self) -> dict[StateId, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def input_order(self) -> dict[Symbol, int]:
        return symbol_order(self.input_alphabet)

    @cached_property
    def output_order(self) -> dict[Symbol, int]:
        return symbol_order(self.output_alphabet)

    @cached_property
    def _sorted_table(self) -> dict[tuple[StateId, Symbol], list[tuple[StateId, Word]]]:
        return {
            key: sorted(opts, key=lambda o: (self.state_order[o[0]], word_key(o[1], self.output_order)))
            for key, opts in self.transitions.items()
        }


@dataclass(frozen=True)
class Tdfa:
    """Two one-way tapes, one head each; `.` marks the end of either tape.

    A missing table entry is an implicit rejecting dead end.
    """

    states: tuple[StateId, ...]
    input_alphabet: tuple[Symbol, ...]
    output_alphabet: tuple[Symbol, ...]
    initial: StateId
    accepting: frozenset[StateId]
    transitions: Mapping[tuple[StateId, Symbol, Symbol], tuple[StateId, Move, Move]] = field(
        default_factory=dict
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", tuple(self.output_alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        _check_common(self.states, self.initial, self.accepting)
        if not self.input_alphabet or not self.output_alphabet:
            raise MachineValidationError("2DFA alphabets must be non-empty")
        _check_tokens("input symbol", self.input_alphabet)
        _check_tokens("output symbol", self.output_alphabet)

        states = set(self.states)
        sigma = set(self.input_alphabet) | {BLANK}
        gamma = set(self.output_alphabet) | {BLANK}
        table: dict[tuple[StateId, Symbol, Symbol], tuple[StateId, Move, Move]] = {}
        for (q, x, y), (p, m1, m2) in self.transitions.items():
            if q not in states or p not in states:
                raise MachineValidationError(f"transition ({q}, {x}, {y}) uses an undeclared state")
            if x not in sigma:
                raise MachineValidationError(f"undeclared input symbol '{x}'")
            if y not in gamma:
                raise MachineValidationError(f"undeclared output symbol '{y}'")
            m1, m2 = Move(m1), Move(m2)
            check_moves(x, y, m1, m2)
            table[(q, x, y)] = (p, m1, m2)
        object.__setattr__(self, "transitions", table)

    @cached_property
    def state_order(self) -> dict[StateId, int]:
        return {q: i for i, q in enumerate(self.states)}


def check_moves(x: Symbol, y: Symbol, m1: Move, m2: Move) -> None:
    """Raise MachineValidationError unless the moves are legal on the read pair (x, y)."""
    if x == BLANK and m1 is Move.ADVANCE:
        raise MachineValidationError("input head cannot advance past the blank")
    if y == BLANK and m2 is Move.ADVANCE:
        raise MachineValidationError("output head cannot advance past the blank")
    if m1 is Move.STAY and m2 is Move.STAY:
        raise MachineValidationError("no head advances")


@dataclass(frozen=True)
class TuringMachine:
    """Single-tape deterministic machine started on the empty tape."""

    states: tuple[StateId, ...]
    alphabet: tuple[Symbol, ...]
    initial: StateId
    accepting: frozenset[StateId]
    transitions: Mapping[tuple[StateId, Symbol], tuple[StateId, Symbol, Direction]] = field(
        default_factory=dict
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        _check_common(self.states, self.initial, self.accepting)
        _check_tokens("tape symbol", self.alphabet)

        states = set(self.states)
        tape = set(self.alphabet)
        table: dict[tuple[StateId, Symbol], tuple[StateId, Symbol, Direction]] = {}
        for (q, x), (p, w, d) in self.transitions.items():
            if q not in states or p not in states:
                raise MachineValidationError(f"rule ({q}, {x}) uses an undeclared state")
            if x != BLANK and x not in tape:
                raise MachineValidationError(f"undeclared tape symbol '{x}'")
            if w == BLANK:
                raise MachineValidationError(f"rule ({q}, {x}) writes the blank")
            if w not in tape:
                raise MachineValidationError(f"rule ({q}, {x}) writes undeclared symbol '{w}'")
            table[(q, x)] = (p, w, Direction(d))
        object.__setattr__(self, "transitions", table)

    @cached_property
    def state_order(self) -> dict[StateId, int]:
        return {q: i for i, q in enumerate(self.states)}


Machine = Nft | Tdfa | TuringMachine
