"""Compile an NFT with a trailing bound t into an equivalent two-tape DFA.

A macro-state keeps a window z of the output (at most r = s + t symbols, s the
output speed) and the set P of tracked NFT computations (q, n), where n says
how much of z the computation has produced so far. Output symbols are read
into z while it has room; otherwise the next input symbol is read and every
tracked computation is stepped. Computations that can no longer finish in an
accepting state consistent with z are pruned, and the common prefix all of
them have produced is dropped from z.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import xduce.config as _cfg
from xduce.analysis.static import output_speed
from xduce.analysis.witness import ContinuationSearch
from xduce.errors import BudgetExceeded
from xduce.machines.model import Move, Nft, StateId, Tdfa
from xduce.semantics.tdfa import TdfaTrace
from xduce.words import BLANK, EMPTY, Symbol, Word, format_word

log = logging.getLogger(__name__)

SINK = "sink"


@dataclass(frozen=True, order=True)
class TrackedPair:
    q: StateId
    n: int


@dataclass(frozen=True)
class MacroState:
    z: Word
    pairs: frozenset[TrackedPair]


@dataclass(frozen=True)
class RejectSink:
    pass


REJECT_SINK = RejectSink()


@dataclass(frozen=True)
class MacroMove:
    target: MacroState | RejectSink
    moves: tuple[Move, Move]
    overflow_drops: int = 0


@dataclass
class DeterminizeResult:
    automaton: Tdfa
    macro_states: dict[StateId, MacroState | RejectSink]
    annotations: dict[StateId, str]
    speed: int
    trailing_bound: int
    overflow_drops: int = 0

    @property
    def capacity(self) -> int:
        return self.speed + self.trailing_bound


def normalize(pairs: Iterable[TrackedPair], z: Word) -> tuple[frozenset[TrackedPair], Word, int]:
    """Drop the m = min n leading symbols of z and shift every pair by m."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("cannot normalize an empty pair set")
    m = min(p.n for p in pairs)
    return frozenset(TrackedPair(p.q, p.n - m) for p in pairs), z[m:], m


def _prune(search: ContinuationSearch, pairs: Iterable[TrackedPair], z: Word, exact: bool) -> list[TrackedPair]:
    return [p for p in pairs if search.viable(p.q, z[p.n:], exact)]


def macro_step(
    T: Nft,
    t: int,
    S: MacroState,
    sigma: Symbol,
    gamma: Symbol,
    search: ContinuationSearch | None = None,
) -> MacroMove:
    """One step of the compiled automaton from S reading (sigma, gamma); `.` is the blank."""
    if sigma == BLANK and gamma == BLANK:
        raise ValueError("macro_step needs at least one non-blank symbol")
    search = search or ContinuationSearch(T)
    r = output_speed(T) + t
    z = S.z

    if gamma != BLANK and len(z) < r:
        z2 = z + (gamma,)
        kept = _prune(search, S.pairs, z2, exact=False)
        if not kept:
            return MacroMove(REJECT_SINK, (Move.STAY, Move.ADVANCE))
        pairs, z2, _ = normalize(kept, z2)
        return MacroMove(MacroState(z2, pairs), (Move.STAY, Move.ADVANCE))

    if sigma == BLANK:
        # input exhausted with a full window: nothing tracked can emit more output
        return MacroMove(REJECT_SINK, (Move.STAY, Move.ADVANCE))

    stepped: set[TrackedPair] = set()
    drops = 0
    for pair in S.pairs:
        for q2, w in T.options(pair.q, sigma):
            end = pair.n + len(w)
            overlap = z[pair.n:min(end, len(z))]
            if w[: len(overlap)] != overlap:
                continue
            if end > len(z):
                if gamma != BLANK:
                    drops += 1
                continue
            stepped.add(TrackedPair(q2, end))
    kept = _prune(search, stepped, z, exact=gamma == BLANK)
    if not kept:
        return MacroMove(REJECT_SINK, (Move.ADVANCE, Move.STAY), drops)
    pairs, z2, _ = normalize(kept, z)
    return MacroMove(MacroState(z2, pairs), (Move.ADVANCE, Move.STAY), drops)


def is_accepting(T: Nft, S: MacroState) -> bool:
    return any(p.q in T.accepting and p.n == len(S.z) for p in S.pairs)


def describe(T: Nft, S: MacroState | RejectSink) -> str:
    """`z=<word> P={(q,n),...}`, pairs in state declaration order then n."""
    if isinstance(S, RejectSink):
        return SINK
    ordered = sorted(S.pairs, key=lambda p: (T.state_order[p.q], p.n))
    body = ",".join(f"({p.q},{p.n})" for p in ordered)
    return f"z={format_word(S.z, T.output_alphabet)} P={{{body}}}"


def determinize(T: Nft, t: int, state_budget: int | None = None) -> DeterminizeResult:
    """Explore the reachable macro-states breadth first and emit them as a Tdfa.

    States are named m0, m1, ... in discovery order; the rejecting sink is `sink`.
    Output symbols that a computation would produce past the end of a full window
    are dropped and counted; with a true trailing bound that count is zero.
    """
    if t < 0:
        raise ValueError("trailing bound must be non-negative")
    budget = state_budget if state_budget is not None else _cfg.get().state_budget
    search = ContinuationSearch(T)
    s = output_speed(T)

    names: dict[MacroState, StateId] = {}
    macro: dict[StateId, MacroState | RejectSink] = {}
    table: dict[tuple[StateId, Symbol, Symbol], tuple[StateId, Move, Move]] = {}
    drops = 0
    sink_used = False
    queue: deque[MacroState] = deque()

    def name_of(S: MacroState) -> StateId:
        if S not in names:
            if len(names) >= budget:
                raise BudgetExceeded("determinize state", len(names) + 1, budget)
            names[S] = f"m{len(names)}"
            macro[names[S]] = S
            queue.append(S)
        return names[S]

    if search.viable(T.initial, EMPTY, exact=False):
        initial = name_of(MacroState(EMPTY, frozenset({TrackedPair(T.initial, 0)})))
    else:
        initial = SINK
        sink_used = True

    sigmas = list(T.input_alphabet) + [BLANK]
    gammas = list(T.output_alphabet) + [BLANK]
    while queue:
        S = queue.popleft()
        src = names[S]
        for x in sigmas:
            for y in gammas:
                if x == BLANK and y == BLANK:
                    continue
                step = macro_step(T, t, S, x, y, search)
                drops += step.overflow_drops
                if isinstance(step.target, RejectSink):
                    dst = SINK
                    sink_used = True
                else:
                    dst = name_of(step.target)
                table[(src, x, y)] = (dst, *step.moves)

    states = list(macro)
    if sink_used:
        states.append(SINK)
        macro[SINK] = REJECT_SINK
        for x in sigmas:
            for y in gammas:
                if x == BLANK and y == BLANK:
                    continue
                m1 = Move.STAY if x == BLANK else Move.ADVANCE
                m2 = Move.STAY if y == BLANK else Move.ADVANCE
                table[(SINK, x, y)] = (SINK, m1, m2)

    accepting = frozenset(n for n, S in macro.items() if isinstance(S, MacroState) and is_accepting(T, S))
    automaton = Tdfa(states, T.input_alphabet, T.output_alphabet, initial, accepting, table)
    annotations = {n: describe(T, S) for n, S in macro.items()}
    log.info(f"determinized: s={s} t={t} r={s + t} states={len(states)} overflow_drops={drops}")
    if drops:
        log.warning(f"{drops} buffer overflow drops: t={t} is below the machine's trailing")
    return DeterminizeResult(automaton, macro, annotations, s, t, drops)


def phase_rows(trace: TdfaTrace, annotations: dict[StateId, str]) -> list[str]:
    """Annotations at the start, wherever the run switches between reading output and input, and at the end."""
    visited = trace.states
    moves = [step.move for step in trace.steps if step.move is not None]
    rows = [visited[0]]
    for k in range(1, len(moves)):
        if moves[k] != moves[k - 1]:
            rows.append(visited[k])
    if len(visited) > 1:
        rows.append(visited[-1])
    return [annotations.get(state, state) for state in rows]


def render_phase_rows(trace: TdfaTrace, annotations: dict[StateId, str], speed: int, t: int) -> str:
    lines = [f"s={speed} t={t} r={speed + t}"]
    lines += phase_rows(trace, annotations)
    lines.append(f"result: {'accept' if trace.accepted else 'reject'}")
    return "\n".join(lines) + "\n"
