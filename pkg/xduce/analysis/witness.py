"""Accepting continuations and bounded witness searches for trailing and variation.

Both witness searches walk the product of two runs of the same NFT on a common
input. A product node (q1, q2, d1, d2) keeps the two states and what is left of
the two outputs after their longest common prefix. Nodes are expanded breadth
first, children in (parent, symbol, option, option) order, so the first node
reached carries the least input in length-then-lexicographic order and every
node needs to be expanded only once.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

import xduce.config as _cfg
from xduce.analysis.static import co_reachable
from xduce.errors import BudgetExceeded
from xduce.machines.model import Nft, StateId
from xduce.semantics.nft import nft_reaches
from xduce.words import EMPTY, Word, distance, lcp, strip_prefix

log = logging.getLogger(__name__)

_BEYOND = -1  # matched past the end of the prefix


@dataclass(frozen=True)
class Continuation:
    b: Word
    w: Word
    f: StateId


class ContinuationSearch:
    """Decides accepting continuations of one NFT, memoized per (state, prefix, exact).

    A run q -(b/w)-> f with f accepting is wanted whose output w starts with the
    prefix (exact=False) or equals it (exact=True). The search space is the state
    paired with how much of the prefix is matched, plus one extra tier per state
    once the output has run past the prefix, so it is finite and needs no bound on b.
    """

    def __init__(self, T: Nft, node_budget: int | None = None) -> None:
        self.T = T
        self.node_budget = node_budget if node_budget is not None else _cfg.get().node_budget
        self._alive = co_reachable(T)
        self._memo: dict[tuple[StateId, Word, bool], Continuation | None] = {}

    def find(self, q: StateId, prefix: Word, exact: bool) -> Continuation | None:
        key = (q, prefix, exact)
        if key not in self._memo:
            self._memo[key] = self._search(q, prefix, exact)
        return self._memo[key]

    def viable(self, q: StateId, prefix: Word, exact: bool) -> bool:
        return self.find(q, prefix, exact) is not None

    def _search(self, q: StateId, prefix: Word, exact: bool) -> Continuation | None:
        T = self.T
        if q not in self._alive:
            return None
        n = len(prefix)
        start = (q, 0)
        parents: dict[tuple[StateId, int], tuple | None] = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            state, j = node
            if state in T.accepting and j in (n, _BEYOND):
                return self._rebuild(parents, node)
            for sym in T.input_alphabet:
                for p, w in T.sorted_options(state, sym):
                    if p not in self._alive:
                        continue
                    if j == _BEYOND:
                        child = (p, _BEYOND)
                    else:
                        rest = prefix[j:]
                        if len(w) <= len(rest):
                            if w != rest[: len(w)]:
                                continue
                            child = (p, j + len(w))
                        elif exact or w[: len(rest)] != rest:
                            continue
                        else:
                            child = (p, _BEYOND)
                    if child in parents:
                        continue
                    parents[child] = (node, sym, w)
                    if len(parents) > self.node_budget:
                        raise BudgetExceeded("continuation search", len(parents), self.node_budget)
                    queue.append(child)
        return None

    @staticmethod
    def _rebuild(parents: dict, node: tuple[StateId, int]) -> Continuation:
        f = node[0]
        syms: list[str] = []
        outs: list[Word] = []
        while parents[node] is not None:
            node, sym, w = parents[node]
            syms.append(sym)
            outs.append(w)
        return Continuation(
            b=tuple(reversed(syms)),
            w=tuple(s for w in reversed(outs) for s in w),
            f=f,
        )


def accepting_continuation(T: Nft, q: StateId, prefix: Word, exact: bool) -> Continuation | None:
    return ContinuationSearch(T).find(q, prefix, exact)


# ── Witness types ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TrailingWitness:
    """q0 -(a/u·v)-> q1 -(b1/w1)-> f1 and q0 -(a/u)-> q2 -(b2/v·w2)-> f2, with |v| > bound."""

    bound: int
    a: Word
    u: Word
    v: Word
    q1: StateId
    q2: StateId
    b1: Word
    w1: Word
    b2: Word
    w2: Word
    f1: StateId
    f2: StateId

    def replay(self, T: Nft) -> bool:
        return (
            len(self.v) > self.bound
            and self.f1 in T.accepting
            and self.f2 in T.accepting
            and nft_reaches(T, T.initial, self.a, self.u + self.v, {self.q1})
            and nft_reaches(T, self.q1, self.b1, self.w1, {self.f1})
            and nft_reaches(T, T.initial, self.a, self.u, {self.q2})
            and nft_reaches(T, self.q2, self.b2, self.v + self.w2, {self.f2})
        )


@dataclass(frozen=True)
class VariationWitness:
    bound: int
    a: Word
    o1: Word
    o2: Word
    q1: StateId
    q2: StateId
    d_value: int

    def replay(self, T: Nft) -> bool:
        alive = co_reachable(T)
        return (
            self.d_value > self.bound
            and self.d_value == distance(self.o1, self.o2)
            and self.q1 in alive
            and self.q2 in alive
            and nft_reaches(T, T.initial, self.a, self.o1, {self.q1})
            and nft_reaches(T, T.initial, self.a, self.o2, {self.q2})
        )


@dataclass(frozen=True)
class TrailingProfile:
    longest: int
    witness: TrailingWitness | None


# ── Product walk ──────────────────────────────────────────────────────────────

_Node = tuple[StateId, StateId, Word, Word]


class _PairWalk:
    def __init__(self, T: Nft, max_a: int, node_budget: int, keep_diverged: bool) -> None:
        self.T = T
        self.max_a = max_a
        self.node_budget = node_budget
        self.keep_diverged = keep_diverged
        self.alive = co_reachable(T)
        self.parents: dict[_Node, tuple | None] = {}

    def __iter__(self) -> Iterator[_Node]:
        T = self.T
        if T.initial not in self.alive:
            return
        root: _Node = (T.initial, T.initial, EMPTY, EMPTY)
        self.parents = {root: None}
        layer = [root]
        for depth in range(self.max_a + 1):
            yield from layer
            if depth == self.max_a:
                break
            nxt: list[_Node] = []
            for node in layer:
                nxt.extend(self._children(node))
            log.debug(f"pair walk depth {depth + 1}: {len(nxt)} new nodes")
            if not nxt:
                break
            layer = nxt

    def _children(self, node: _Node) -> Iterator[_Node]:
        T = self.T
        q1, q2, d1, d2 = node
        for sym in T.input_alphabet:
            opts1 = [o for o in T.sorted_options(q1, sym) if o[0] in self.alive]
            opts2 = [o for o in T.sorted_options(q2, sym) if o[0] in self.alive]
            for p1, w1 in opts1:
                for p2, w2 in opts2:
                    e1, e2 = d1 + w1, d2 + w2
                    common = len(lcp(e1, e2))
                    n1, n2 = e1[common:], e2[common:]
                    if n1 and n2 and not self.keep_diverged:
                        continue
                    child = (p1, p2, n1, n2)
                    if child in self.parents:
                        continue
                    self.parents[child] = (node, sym, w1, w2)
                    if len(self.parents) > self.node_budget:
                        raise BudgetExceeded("witness search", len(self.parents), self.node_budget)
                    yield child

    def rebuild(self, node: _Node) -> tuple[Word, Word, Word]:
        """(a, o1, o2) of the least input reaching node."""
        syms, outs1, outs2 = [], [], []
        while self.parents[node] is not None:
            node, sym, w1, w2 = self.parents[node]
            syms.append(sym)
            outs1.append(w1)
            outs2.append(w2)
        return tuple(reversed(syms)), _concat_reversed(outs1), _concat_reversed(outs2)


def _concat_reversed(parts: list[Word]) -> Word:
    return tuple(s for w in reversed(parts) for s in w)


def _budget(node_budget: int | None) -> int:
    return node_budget if node_budget is not None else _cfg.get().node_budget


def _trailing_at(T: Nft, walk: _PairWalk, search: ContinuationSearch, node: _Node, t: int) -> TrailingWitness | None:
    q1, q2, d1, _ = node
    first = search.find(q1, EMPTY, False)
    second = search.find(q2, d1, False)
    if first is None or second is None:
        return None
    a, o1, o2 = walk.rebuild(node)
    witness = TrailingWitness(
        bound=t, a=a, u=o2, v=d1, q1=q1, q2=q2,
        b1=first.b, w1=first.w, b2=second.b, w2=strip_prefix(d1, second.w) or EMPTY,
        f1=first.f, f2=second.f,
    )
    if o1 != o2 + d1 or not witness.replay(T):
        raise RuntimeError(f"trailing witness on input {a} failed replay")
    return witness


def find_trailing_witness(T: Nft, t: int, max_a: int, node_budget: int | None = None) -> TrailingWitness | None:
    """A trailing witness with |v| > t and |a| <= max_a, or None if there is none.

    None says nothing about larger inputs.
    """
    budget = _budget(node_budget)
    walk = _PairWalk(T, max_a, budget, keep_diverged=False)
    search = ContinuationSearch(T, budget)
    for node in walk:
        if node[3] or len(node[2]) <= t:
            continue
        witness = _trailing_at(T, walk, search, node, t)
        if witness is not None:
            log.info(f"trailing witness: |a|={len(witness.a)} |v|={len(witness.v)}")
            return witness
    log.info(f"no trailing witness above {t} with |a| <= {max_a} ({len(walk.parents)} nodes)")
    return None


def find_variation_witness(T: Nft, t: int, max_a: int, node_budget: int | None = None) -> VariationWitness | None:
    walk = _PairWalk(T, max_a, _budget(node_budget), keep_diverged=True)
    for node in walk:
        q1, q2, d1, d2 = node
        if len(d1) + len(d2) <= t:
            continue
        a, o1, o2 = walk.rebuild(node)
        witness = VariationWitness(bound=t, a=a, o1=o1, o2=o2, q1=q1, q2=q2, d_value=distance(o1, o2))
        if not witness.replay(T):
            raise RuntimeError(f"variation witness on input {a} failed replay")
        log.info(f"variation witness: |a|={len(a)} d={witness.d_value}")
        return witness
    return None


def trailing_profile(T: Nft, max_a: int, node_budget: int | None = None) -> TrailingProfile:
    """Longest v over all trailing pairs with |a| <= max_a, and the first pair attaining it."""
    budget = _budget(node_budget)
    walk = _PairWalk(T, max_a, budget, keep_diverged=False)
    search = ContinuationSearch(T, budget)
    best: TrailingWitness | None = None
    for node in walk:
        if node[3] or not node[2] or (best is not None and len(node[2]) <= len(best.v)):
            continue
        witness = _trailing_at(T, walk, search, node, 0)
        if witness is not None:
            best = witness
    return TrailingProfile(len(best.v) if best else 0, best)
