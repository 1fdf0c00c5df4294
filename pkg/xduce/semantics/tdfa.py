"""Running a two-tape DFA on a word pair, with a step-by-step trace."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from xduce.machines.model import Move, StateId, Tdfa
from xduce.words import BLANK, Symbol, Word, word_key


@dataclass(frozen=True)
class TdfaStep:
    state: StateId
    input_pos: int
    output_pos: int
    read: tuple[Symbol, Symbol]
    move: tuple[Move, Move] | None  # None: no table entry, the run dies here


@dataclass(frozen=True)
class TdfaTrace:
    steps: tuple[TdfaStep, ...]
    final_state: StateId
    accepted: bool

    @property
    def dead_end(self) -> bool:
        return bool(self.steps) and self.steps[-1].move is None

    @property
    def states(self) -> list[StateId]:
        """Every state visited, in order, including the final one."""
        visited = [s.state for s in self.steps if s.move is not None]
        return visited + [self.final_state]


def tdfa_run(A: Tdfa, a: Word, u: Word) -> TdfaTrace:
    state, i, j = A.initial, 0, 0
    steps: list[TdfaStep] = []
    while True:
        x = a[i] if i < len(a) else BLANK
        y = u[j] if j < len(u) else BLANK
        if x == BLANK and y == BLANK:
            return TdfaTrace(tuple(steps), state, state in A.accepting)
        entry = A.transitions.get((state, x, y))
        if entry is None:
            steps.append(TdfaStep(state, i, j, (x, y), None))
            return TdfaTrace(tuple(steps), state, False)
        target, m1, m2 = entry
        steps.append(TdfaStep(state, i, j, (x, y), (m1, m2)))
        i += m1 is Move.ADVANCE
        j += m2 is Move.ADVANCE
        state = target


def tdfa_accepts(A: Tdfa, a: Word, u: Word) -> bool:
    return tdfa_run(A, a, u).accepted


def format_trace(trace: TdfaTrace, annotations: dict[StateId, str] | None = None) -> list[str]:
    """One line per step, then `result: accept|reject state=<id>`."""

    def note(state: StateId) -> str:
        if annotations and state in annotations:
            return f"  {annotations[state]}"
        return ""

    lines = []
    for k, step in enumerate(trace.steps):
        x, y = step.read
        move = "dead" if step.move is None else f"({step.move[0].value},{step.move[1].value})"
        lines.append(
            f"step {k}: state={step.state} in={step.input_pos} out={step.output_pos} "
            f"read=({x},{y}) move={move}{note(step.state)}"
        )
    verdict = "accept" if trace.accepted else "reject"
    lines.append(f"result: {verdict} state={trace.final_state}{note(trace.final_state)}")
    return lines


def tdfa_co_reachable(A: Tdfa) -> frozenset[StateId]:
    """States with a path to an accepting state in the transition graph."""
    preds: dict[StateId, set[StateId]] = {}
    for (q, _, _), (p, _, _) in A.transitions.items():
        preds.setdefault(p, set()).add(q)
    seen = set(A.accepting)
    queue = deque(seen)
    while queue:
        p = queue.popleft()
        for q in preds.get(p, ()):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return frozenset(seen)


def tdfa_outputs(A: Tdfa, a: Word, max_len: int) -> list[Word]:
    """Every u with |u| <= max_len such that A accepts (a, u), in canonical order.

    The output tape is chosen lazily, one symbol at a time, as the output head
    reaches it; branches through states that cannot reach acceptance are cut.
    """
    alive = tdfa_co_reachable(A)
    found: set[Word] = set()
    # (state, input position, output chosen so far, output position, output closed)
    stack: list[tuple[StateId, int, Word, int, bool]] = [(A.initial, 0, (), 0, False)]
    while stack:
        state, i, u, j, closed = stack.pop()
        while state in alive:
            x = a[i] if i < len(a) else BLANK
            if j == len(u) and not closed:
                if len(u) < max_len:
                    stack.extend((state, i, u + (g,), j, False) for g in A.output_alphabet)
                closed = True
            y = u[j] if j < len(u) else BLANK
            if x == BLANK and y == BLANK:
                if state in A.accepting:
                    found.add(u)
                break
            entry = A.transitions.get((state, x, y))
            if entry is None:
                break
            state, m1, m2 = entry
            i += m1 is Move.ADVANCE
            j += m2 is Move.ADVANCE

    order = {s: n for n, s in enumerate(A.output_alphabet)}
    return sorted(found, key=lambda w: word_key(w, order))
