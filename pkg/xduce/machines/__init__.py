from xduce.machines.model import Direction, Machine, Move, Nft, StateId, Tdfa, TuringMachine
from xduce.machines.textfmt import parse_machine, read_machine, serialize_machine

__all__ = [
    "Direction",
    "Machine",
    "Move",
    "Nft",
    "StateId",
    "Tdfa",
    "TuringMachine",
    "parse_machine",
    "read_machine",
    "serialize_machine",
]
