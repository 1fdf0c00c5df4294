"""Turing machine configurations as cell sequences, and runs on the empty tape."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from xduce.errors import MachineValidationError
from xduce.machines.model import Direction, StateId, TuringMachine
from xduce.words import BLANK, Symbol

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlainCell:
    symbol: Symbol

    def render(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class HeadCell:
    state: StateId
    symbol: Symbol  # may be the blank

    def render(self) -> str:
        return f"{self.state}@{self.symbol}"


Cell = PlainCell | HeadCell


@dataclass(frozen=True)
class Configuration:
    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        heads = [i for i, c in enumerate(self.cells) if isinstance(c, HeadCell)]
        if len(heads) != 1:
            raise MachineValidationError(f"a configuration needs exactly one head cell, got {len(heads)}")
        for c in self.cells:
            if isinstance(c, PlainCell) and c.symbol == BLANK:
                raise MachineValidationError("plain cells cannot hold the blank")

    @property
    def head_index(self) -> int:
        return next(i for i, c in enumerate(self.cells) if isinstance(c, HeadCell))

    @property
    def head(self) -> HeadCell:
        return self.cells[self.head_index]  # type: ignore[return-value]

    def render(self) -> str:
        return " ".join(c.render() for c in self.cells)


class TmStatus(str, Enum):
    HALTED = "halted"
    LOOPING = "looping"
    STEP_LIMIT = "step-limit"


@dataclass(frozen=True)
class TmRun:
    configs: tuple[Configuration, ...]
    status: TmStatus


def initial_configuration(M: TuringMachine) -> Configuration:
    return Configuration((HeadCell(M.initial, BLANK),))


def is_halting(M: TuringMachine, c: Configuration) -> bool:
    head = c.head
    return head.state in M.accepting or (head.state, head.symbol) not in M.transitions


def tm_step(M: TuringMachine, c: Configuration) -> Configuration | None:
    """The successor configuration, or None when c is halting."""
    if is_halting(M, c):
        return None
    h = c.head_index
    head = c.head
    target, written, direction = M.transitions[(head.state, head.symbol)]
    cells: list[Cell] = list(c.cells)
    cells[h] = PlainCell(written)
    if direction is Direction.RIGHT:
        if h + 1 < len(cells):
            cells[h + 1] = HeadCell(target, cells[h + 1].symbol)
        else:
            cells.append(HeadCell(target, BLANK))
    elif h > 0:
        cells[h - 1] = HeadCell(target, cells[h - 1].symbol)
    else:
        cells.insert(0, HeadCell(target, BLANK))
    return Configuration(tuple(cells))


def tm_run(M: TuringMachine, max_steps: int) -> TmRun:
    configs = [initial_configuration(M)]
    seen = {configs[0]}
    while True:
        current = configs[-1]
        if is_halting(M, current):
            status = TmStatus.HALTED
            break
        if len(configs) - 1 >= max_steps:
            status = TmStatus.STEP_LIMIT
            break
        nxt = tm_step(M, current)
        if nxt in seen:
            status = TmStatus.LOOPING
            break
        seen.add(nxt)
        configs.append(nxt)
    log.debug(f"TM run stopped after {len(configs) - 1} steps: {status.value}")
    return TmRun(tuple(configs), status)
