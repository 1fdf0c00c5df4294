"""Bounded brute-force valuedness and ambiguity checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from xduce.analysis.static import co_reachable
from xduce.machines.model import Nft, StateId
from xduce.words import EMPTY, Word, word_key

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Valuedness:
    k: int
    witness_input: Word | None
    overflow: bool = False


@dataclass(frozen=True)
class Ambiguity:
    k: int
    witness_input: Word | None
    witness_output: Word | None
    overflow: bool = False


def max_valuedness(T: Nft, max_a: int, cap: int) -> Valuedness:
    """Most distinct outputs on one input with |a| <= max_a, and the least input attaining it."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    alive = co_reachable(T)
    best = Valuedness(0, None)
    layer: list[tuple[Word, set[tuple[StateId, Word]]]] = []
    if T.initial in alive:
        layer = [(EMPTY, {(T.initial, EMPTY)})]
    for depth in range(max_a + 1):
        nxt = []
        for a, configs in layer:
            outs = {o for q, o in configs if q in T.accepting}
            if min(len(outs), cap) > best.k:
                best = Valuedness(min(len(outs), cap), a, len(outs) > cap)
            if depth == max_a:
                continue
            for sym in T.input_alphabet:
                child = {(p, o + w) for q, o in configs for p, w in T.options(q, sym) if p in alive}
                if child:
                    nxt.append((a + (sym,), child))
        layer = nxt
    log.info(f"valuedness up to |a|={max_a}: {best.k}")
    return best


def max_ambiguity(T: Nft, max_a: int, max_u: int, cap: int) -> Ambiguity:
    """Most accepting runs on one pair (a, u) with |a| <= max_a and |u| <= max_u."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    alive = co_reachable(T)
    limit = cap + 1
    best = Ambiguity(0, None, None)
    layer: list[tuple[Word, dict[tuple[StateId, Word], int]]] = []
    if T.initial in alive:
        layer = [(EMPTY, {(T.initial, EMPTY): 1})]
    for depth in range(max_a + 1):
        nxt = []
        for a, counts in layer:
            per_output: dict[Word, int] = {}
            for (q, o), c in counts.items():
                if q in T.accepting:
                    per_output[o] = min(limit, per_output.get(o, 0) + c)
            for o in sorted(per_output, key=lambda w: word_key(w, T.output_order)):
                runs = per_output[o]
                if min(runs, cap) > best.k:
                    best = Ambiguity(min(runs, cap), a, o, runs > cap)
            if depth == max_a:
                continue
            for sym in T.input_alphabet:
                child: dict[tuple[StateId, Word], int] = {}
                for (q, o), c in counts.items():
                    for p, w in T.options(q, sym):
                        if p not in alive or len(o) + len(w) > max_u:
                            continue
                        key = (p, o + w)
                        child[key] = min(limit, child.get(key, 0) + c)
                if child:
                    nxt.append((a + (sym,), child))
        layer = nxt
    log.info(f"ambiguity up to |a|={max_a}, |u|={max_u}: {best.k}")
    return best
