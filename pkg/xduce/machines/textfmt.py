"""Line-oriented text format shared by NFT, 2DFA and TM files."""

from __future__ import annotations

import logging
import re
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from xduce.errors import MachineFormatError, MachineValidationError, WordSyntaxError
from xduce.machines.model import Direction, Machine, Move, Nft, Tdfa, TuringMachine, check_moves
from xduce.words import BLANK, check_symbol, format_word, parse_word, symbol_order, word_key

log = logging.getLogger(__name__)

_TOKEN = re.compile(r"\S+")

_HEADERS = {
    "nft": ("states", "input", "output", "initial", "accept"),
    "tdfa": ("states", "input", "output", "initial", "accept"),
    "tm": ("states", "alphabet", "initial", "accept"),
}
_ARITY = {"nft": 5, "tdfa": 7, "tm": 6}


@dataclass
class _Line:
    number: int
    tokens: list[tuple[str, int]]  # (text, column)

    @property
    def keyword(self) -> str:
        return self.tokens[0][0]

    def fail(self, message: str, index: int = 0) -> MachineFormatError:
        column = self.tokens[index][1] if index < len(self.tokens) else self.tokens[-1][1]
        return MachineFormatError(message, self.number, column)


def _lines(text: str) -> list[_Line]:
    out = []
    for number, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            out.append(_Line(number, tokens))
    return out


def parse_machine(text: str) -> Machine:
    """Parse and validate a machine file. Errors carry the offending line and column."""
    lines = _lines(text)
    if not lines:
        raise MachineFormatError("empty machine file", 1)
    first = lines[0]
    if first.keyword != "machine" or len(first.tokens) != 2:
        raise first.fail("expected 'machine nft|tdfa|tm'")
    kind = first.tokens[1][0]
    if kind not in _HEADERS:
        raise first.fail(f"unknown machine kind '{kind}'", 1)

    headers: dict[str, _Line] = {}
    rules: list[_Line] = []
    for line in lines[1:]:
        kw = line.keyword
        if kw == "t":
            rules.append(line)
        elif kw in _HEADERS[kind]:
            if kw in headers:
                raise line.fail(f"'{kw}' declared twice (first on line {headers[kw].number})")
            headers[kw] = line
        else:
            raise line.fail(f"unknown keyword '{kw}'")
    for kw in _HEADERS[kind]:
        if kw not in headers:
            raise MachineFormatError(f"missing '{kw}' declaration", first.number)

    states = _declare(headers["states"], "state")
    if not states:
        raise headers["states"].fail("at least one state is required")
    initial_line = headers["initial"]
    if len(initial_line.tokens) != 2:
        raise initial_line.fail("expected exactly one initial state")
    initial = _state(initial_line, 1, states)
    accepting = frozenset(_state(headers["accept"], i, states) for i in range(1, len(headers["accept"].tokens)))

    try:
        if kind == "nft":
            sigma = _declare(headers["input"], "input symbol", required=True)
            gamma = _declare(headers["output"], "output symbol", required=True)
            machine: Machine = Nft(states, sigma, gamma, initial, accepting, _nft_rules(rules, states, sigma, gamma))
        elif kind == "tdfa":
            sigma = _declare(headers["input"], "input symbol", required=True)
            gamma = _declare(headers["output"], "output symbol", required=True)
            machine = Tdfa(states, sigma, gamma, initial, accepting, _tdfa_rules(rules, states, sigma, gamma))
        else:
            tape = _declare(headers["alphabet"], "tape symbol")
            machine = TuringMachine(states, tape, initial, accepting, _tm_rules(rules, states, tape))
    except MachineValidationError as e:
        raise MachineFormatError(str(e), first.number) from None
    log.debug(f"Parsed {kind} with {len(states)} states and {len(rules)} rule lines")
    return machine


def read_machine(path: str | Path) -> Machine:
    return parse_machine(Path(path).read_text(encoding="utf-8"))


def _declare(line: _Line, what: str, required: bool = False) -> tuple[str, ...]:
    names: list[str] = []
    for i, (tok, _) in enumerate(line.tokens[1:], 1):
        try:
            check_symbol(tok)
        except WordSyntaxError as e:
            raise line.fail(f"bad {what}: {e}", i) from None
        if tok in names:
            raise line.fail(f"{what} '{tok}' declared twice", i)
        names.append(tok)
    if required and not names:
        raise line.fail(f"at least one {what} is required")
    return tuple(names)


def _state(line: _Line, index: int, states: Sequence[str]) -> str:
    tok = line.tokens[index][0]
    if tok not in states:
        raise line.fail(f"undeclared state '{tok}'", index)
    return tok


def _symbol(line: _Line, index: int, alphabet: Sequence[str], what: str, blank_ok: bool) -> str:
    tok = line.tokens[index][0]
    if tok == BLANK:
        if blank_ok:
            return tok
        raise line.fail(f"the blank '.' cannot be used as {what}", index)
    if tok not in alphabet:
        raise line.fail(f"undeclared {what} '{tok}'", index)
    return tok


def _check_arity(line: _Line, kind: str) -> None:
    if len(line.tokens) != _ARITY[kind]:
        raise line.fail(f"a {kind} transition takes {_ARITY[kind] - 1} fields, got {len(line.tokens) - 1}")


def _nft_rules(rules, states, sigma, gamma) -> dict:
    table: dict[tuple[str, str], set] = {}
    for line in rules:
        _check_arity(line, "nft")
        q = _state(line, 1, states)
        a = _symbol(line, 2, sigma, "input symbol", blank_ok=False)
        p = _state(line, 3, states)
        try:
            w = parse_word(line.tokens[4][0], gamma)
        except WordSyntaxError as e:
            raise line.fail(str(e), 4) from None
        table.setdefault((q, a), set()).add((p, w))
    return table


def _tdfa_rules(rules, states, sigma, gamma) -> dict:
    table: dict[tuple[str, str, str], tuple[str, Move, Move]] = {}
    origin: dict[tuple[str, str, str], int] = {}
    for line in rules:
        _check_arity(line, "tdfa")
        q = _state(line, 1, states)
        x = _symbol(line, 2, sigma, "input symbol", blank_ok=True)
        y = _symbol(line, 3, gamma, "output symbol", blank_ok=True)
        p = _state(line, 4, states)
        moves = []
        for i in (5, 6):
            tok = line.tokens[i][0]
            try:
                moves.append(Move(tok))
            except ValueError:
                raise line.fail(f"move must be S or A, got '{tok}'", i) from None
        try:
            check_moves(x, y, moves[0], moves[1])
        except MachineValidationError as e:
            raise line.fail(str(e), 5) from None
        key = (q, x, y)
        if key in table:
            raise line.fail(f"duplicate transition for ({q}, {x}, {y}) (first on line {origin[key]})")
        table[key] = (p, moves[0], moves[1])
        origin[key] = line.number
    return table


def _tm_rules(rules, states, tape) -> dict:
    table: dict[tuple[str, str], tuple[str, str, Direction]] = {}
    origin: dict[tuple[str, str], int] = {}
    for line in rules:
        _check_arity(line, "tm")
        q = _state(line, 1, states)
        x = _symbol(line, 2, tape, "tape symbol", blank_ok=True)
        p = _state(line, 3, states)
        w = _symbol(line, 4, tape, "written symbol", blank_ok=False)
        tok = line.tokens[5][0]
        try:
            d = Direction(tok)
        except ValueError:
            raise line.fail(f"direction must be L or R, got '{tok}'", 5) from None
        key = (q, x)
        if key in table:
            raise line.fail(f"duplicate rule for ({q}, {x}) (first on line {origin[key]})")
        table[key] = (p, w, d)
        origin[key] = line.number
    return table


# ── Serialization ─────────────────────────────────────────────────────────────

def serialize_machine(m: Machine, comments: Sequence[str] = ()) -> str:
    """Canonical text: declaration order for states and symbols, sorted transitions."""
    out = [f"# {c}" if c else "#" for c in comments]
    accept = " ".join(q for q in m.states if q in m.accepting)
    if isinstance(m, Nft):
        out += [
            "machine nft",
            "states " + " ".join(m.states),
            "input " + " ".join(m.input_alphabet),
            "output " + " ".join(m.output_alphabet),
            f"initial {m.initial}",
            f"accept {accept}".rstrip(),
        ]
        order_in, order_out = m.input_order, m.output_order
        rows = [
            (q, a, p, w)
            for (q, a), opts in m.transitions.items()
            for p, w in opts
        ]
        rows.sort(key=lambda r: (m.state_order[r[0]], order_in[r[1]], m.state_order[r[2]], word_key(r[3], order_out)))
        out += [f"t {q} {a} {p} {format_word(w, m.output_alphabet)}" for q, a, p, w in rows]
    elif isinstance(m, Tdfa):
        out += [
            "machine tdfa",
            "states " + " ".join(m.states),
            "input " + " ".join(m.input_alphabet),
            "output " + " ".join(m.output_alphabet),
            f"initial {m.initial}",
            f"accept {accept}".rstrip(),
        ]
        order_in = _with_blank(m.input_alphabet)
        order_out = _with_blank(m.output_alphabet)
        keys = sorted(m.transitions, key=lambda k: (m.state_order[k[0]], order_in[k[1]], order_out[k[2]]))
        for q, x, y in keys:
            p, m1, m2 = m.transitions[(q, x, y)]
            out.append(f"t {q} {x} {y} {p} {m1.value} {m2.value}")
    else:
        out += [
            "machine tm",
            "states " + " ".join(m.states),
            "alphabet " + " ".join(m.alphabet),
            f"initial {m.initial}",
            f"accept {accept}".rstrip(),
        ]
        order = _with_blank(m.alphabet)
        keys = sorted(m.transitions, key=lambda k: (m.state_order[k[0]], order[k[1]]))
        for q, x in keys:
            p, w, d = m.transitions[(q, x)]
            out.append(f"t {q} {x} {p} {w} {d.value}")
    return "\n".join(out) + "\n"


def _with_blank(alphabet: Sequence[str]) -> dict[str, int]:
    order = symbol_order(alphabet)
    order[BLANK] = len(order)
    return order
