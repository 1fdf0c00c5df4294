"""Graph quantities of an NFT: co-reachability, output speed, shortcut guarantee."""

from __future__ import annotations

from collections import deque

from xduce.machines.model import Nft, StateId


def _predecessors(T: Nft) -> dict[StateId, set[StateId]]:
    preds: dict[StateId, set[StateId]] = {}
    for (q, _), opts in T.transitions.items():
        for p, _ in opts:
            preds.setdefault(p, set()).add(q)
    return preds


def acceptance_distances(T: Nft) -> dict[StateId, int]:
    """Length of a shortest input leading each co-reachable state to acceptance."""
    preds = _predecessors(T)
    dist = {q: 0 for q in T.states if q in T.accepting}
    queue = deque(dist)
    while queue:
        p = queue.popleft()
        for q in preds.get(p, ()):
            if q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    return dist


def co_reachable(T: Nft) -> frozenset[StateId]:
    return frozenset(acceptance_distances(T))


def output_speed(T: Nft) -> int:
    return max((len(w) for opts in T.transitions.values() for _, w in opts), default=0)


def shortcut_guarantee(T: Nft) -> int:
    """0 when no state is co-reachable."""
    return max(acceptance_distances(T).values(), default=0)
