"""Exact NFT runners: membership, output enumeration, run counting and run extraction."""

from __future__ import annotations

import heapq
from collections.abc import Collection
from dataclasses import dataclass

from xduce.machines.model import Nft, StateId
from xduce.words import Symbol, Word, word_key


@dataclass(frozen=True)
class NftStep:
    state: StateId
    symbol: Symbol
    target: StateId
    output: Word


@dataclass(frozen=True)
class NftRun:
    steps: tuple[NftStep, ...]

    @property
    def total_output(self) -> Word:
        return tuple(s for step in self.steps for s in step.output)

    @property
    def end(self) -> StateId | None:
        return self.steps[-1].target if self.steps else None


@dataclass(frozen=True)
class OutputSet:
    words: tuple[Word, ...]  # canonical order
    overflow: bool


def _advance(T: Nft, frontier: set[tuple[StateId, int]], symbol: Symbol, u: Word) -> set[tuple[StateId, int]]:
    nxt: set[tuple[StateId, int]] = set()
    for q, j in frontier:
        for p, w in T.options(q, symbol):
            k = j + len(w)
            if k <= len(u) and u[j:k] == w:
                nxt.add((p, k))
    return nxt


def nft_reaches(T: Nft, start: StateId, a: Word, u: Word, ends: Collection[StateId]) -> bool:
    """True iff some run from start reads a, emits exactly u and stops in ends."""
    frontier = {(start, 0)}
    for symbol in a:
        frontier = _advance(T, frontier, symbol, u)
        if not frontier:
            return False
    return any(q in ends and j == len(u) for q, j in frontier)


def nft_membership(T: Nft, a: Word, u: Word) -> bool:
    return nft_reaches(T, T.initial, a, u, T.accepting)


def nft_outputs(T: Nft, a: Word, cap: int, max_len: int | None = None) -> OutputSet:
    """Outputs of accepting runs on a: the first `cap` distinct words in canonical order.

    Partial runs are expanded shortest output first. Outputs of one length are settled
    once every shorter partial run is expanded, and the search stops as soon as more
    than `cap` outputs are settled. With max_len, longer outputs are never explored.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")

    def canonical(words: set[Word]) -> list[Word]:
        return sorted(words, key=lambda w: word_key(w, T.output_order))

    # (output length, input position, state, output)
    heap: list[tuple[int, int, StateId, Word]] = [(0, 0, T.initial, ())]
    seen = {(0, T.initial, ())}
    settled: list[Word] = []
    pending: set[Word] = set()
    length = 0
    while heap:
        n, i, q, out = heapq.heappop(heap)
        if n > length:
            settled += canonical(pending)
            pending.clear()
            if len(settled) > cap:
                break
            length = n
        if i == len(a):
            if q in T.accepting:
                pending.add(out)
            continue
        for p, w in T.options(q, a[i]):
            o = out + w
            if max_len is not None and len(o) > max_len:
                continue
            if (i + 1, p, o) not in seen:
                seen.add((i + 1, p, o))
                heapq.heappush(heap, (len(o), i + 1, p, o))
    settled += canonical(pending)
    return OutputSet(tuple(settled[:cap]), overflow=len(settled) > cap)


def nft_accepting_run_count(T: Nft, a: Word, u: Word, cap: int) -> tuple[int, bool]:
    """Number of accepting runs on (a, u), saturated at cap; the flag marks saturation."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    limit = cap + 1
    counts: dict[tuple[StateId, int], int] = {(T.initial, 0): 1}
    for symbol in a:
        nxt: dict[tuple[StateId, int], int] = {}
        for (q, j), c in counts.items():
            for p, w in T.options(q, symbol):
                k = j + len(w)
                if k <= len(u) and u[j:k] == w:
                    nxt[(p, k)] = min(limit, nxt.get((p, k), 0) + c)
        counts = nxt
        if not counts:
            return 0, False
    total = min(limit, sum(c for (q, j), c in counts.items() if q in T.accepting and j == len(u)))
    return (cap, True) if total > cap else (total, False)


def nft_find_run(T: Nft, start: StateId, a: Word, u: Word, ends: Collection[StateId]) -> NftRun | None:
    """A concrete run from start reading a, emitting u and stopping in ends."""
    layers: list[dict[tuple[StateId, int], tuple[tuple[StateId, int], StateId, Word] | None]] = [{(start, 0): None}]
    for symbol in a:
        layer: dict = {}
        for q, j in sorted(layers[-1], key=lambda n: (T.state_order[n[0]], n[1])):
            for p, w in T.sorted_options(q, symbol):
                k = j + len(w)
                if k <= len(u) and u[j:k] == w and (p, k) not in layer:
                    layer[(p, k)] = ((q, j), p, w)
        if not layer:
            return None
        layers.append(layer)

    goal = next(
        (n for n in sorted(layers[-1], key=lambda n: T.state_order[n[0]]) if n[0] in ends and n[1] == len(u)),
        None,
    )
    if goal is None:
        return None
    steps: list[NftStep] = []
    node = goal
    for i in range(len(a), 0, -1):
        parent, target, w = layers[i][node]
        steps.append(NftStep(parent[0], a[i - 1], target, w))
        node = parent
    return NftRun(tuple(reversed(steps)))
