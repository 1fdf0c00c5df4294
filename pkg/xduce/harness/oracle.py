"""Brute-force relation enumeration and bounded equivalence between machines."""

from __future__ import annotations

import logging
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from xduce.errors import MachineValidationError
from xduce.machines.model import Nft, Tdfa
from xduce.semantics.nft import nft_membership, nft_outputs
from xduce.semantics.tdfa import tdfa_accepts, tdfa_outputs
from xduce.words import Word, enumerate_words, symbol_order, word_key

log = logging.getLogger(__name__)

Relational = Nft | Tdfa


@dataclass(frozen=True)
class Domain:
    max_input_len: int
    max_output_len: int

    def __post_init__(self) -> None:
        if self.max_input_len < 0 or self.max_output_len < 0:
            raise ValueError("domain bounds must be non-negative")


@dataclass(frozen=True)
class Counterexample:
    a: Word
    u: Word
    first: bool
    second: bool


def accepts(m: Relational, a: Word, u: Word) -> bool:
    if isinstance(m, Nft):
        return nft_membership(m, a, u)
    return tdfa_accepts(m, a, u)


def outputs_within(m: Relational, a: Word, max_len: int) -> list[Word]:
    """All u with |u| <= max_len accepted with a, each confirmed by the exact runner."""
    if isinstance(m, Nft):
        found = list(nft_outputs(m, a, cap=_unbounded(m, max_len), max_len=max_len).words)
    else:
        found = tdfa_outputs(m, a, max_len)
    confirmed = [u for u in found if accepts(m, a, u)]
    if len(confirmed) != len(found):
        raise RuntimeError(f"output enumeration disagrees with membership on input {a}")
    return confirmed


def _unbounded(m: Relational, max_len: int) -> int:
    return max(1, (len(m.output_alphabet) + 1) ** (max_len + 1))


def _pairs_for(m: Relational, max_out: int, a: Word) -> list[tuple[Word, Word]]:
    return [(a, u) for u in outputs_within(m, a, max_out)]


def _inputs(m: Relational, d: Domain) -> Iterator[Word]:
    return enumerate_words(m.input_alphabet, d.max_input_len)


def enumerate_relation(m: Relational, d: Domain, jobs: int = 1) -> list[tuple[Word, Word]]:
    """Accepted pairs inside d, inputs in length-then-lexicographic order, then outputs likewise."""
    work = partial(_pairs_for, m, d.max_output_len)
    inputs = list(_inputs(m, d))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(work, inputs, chunksize=max(1, len(inputs) // (4 * jobs))))
    else:
        chunks = [work(a) for a in inputs]
    return [pair for chunk in chunks for pair in chunk]


def _compare(m1: Relational, m2: Relational, max_out: int, a: Word) -> Counterexample | None:
    first = set(outputs_within(m1, a, max_out))
    second = set(outputs_within(m2, a, max_out))
    differ = first ^ second
    if not differ:
        return None
    order = symbol_order(m1.output_alphabet)
    u = min(differ, key=lambda w: word_key(w, order))
    return Counterexample(a, u, u in first, u in second)


def check_equivalence(m1: Relational, m2: Relational, d: Domain, jobs: int = 1) -> Counterexample | None:
    """The least pair of d on which the two machines disagree, or None."""
    if set(m1.input_alphabet) != set(m2.input_alphabet) or set(m1.output_alphabet) != set(m2.output_alphabet):
        raise MachineValidationError("machines must share input and output alphabets")
    work = partial(_compare, m1, m2, d.max_output_len)
    inputs = list(_inputs(m1, d))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(work, inputs, chunksize=max(1, len(inputs) // (4 * jobs))):
                if result is not None:
                    return result
    else:
        for a in inputs:
            result = work(a)
            if result is not None:
                return result
    log.info(f"machines agree on {len(inputs)} inputs up to |u|={d.max_output_len}")
    return None
