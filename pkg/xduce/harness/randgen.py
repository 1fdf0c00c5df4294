"""Seeded random NFTs for property sweeps."""

from __future__ import annotations

import random
import string

from xduce.machines.model import Nft


def _symbols(n: int) -> list[str]:
    if n <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:n])
    return [f"s{i}" for i in range(n)]


def random_nft(seed: int, n_states: int, n_symbols: int, max_out: int, density: float) -> Nft:
    """A valid NFT that depends only on the arguments.

    States are q0..q{n-1} and both alphabets are the first n_symbols letters.
    Each (state, symbol, target) triple gets an option with probability
    `density`, with an output of 0..max_out random symbols.
    """
    if n_states < 1 or n_symbols < 1:
        raise ValueError("need at least one state and one symbol")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    states = [f"q{i}" for i in range(n_states)]
    symbols = _symbols(n_symbols)
    accepting = {q for q in states if rng.random() < 0.5}
    table: dict[tuple[str, str], set[tuple[str, tuple[str, ...]]]] = {}
    for q in states:
        for a in symbols:
            for p in states:
                if rng.random() < density:
                    w = tuple(rng.choice(symbols) for _ in range(rng.randint(0, max_out)))
                    table.setdefault((q, a), set()).add((p, w))
    return Nft(states, symbols, symbols, states[0], accepting, table)
