"""Interleaving operational semantics of closed CCSP terms.

One-step derivation follows the usual CCSP rules: prefixing, choice,
asynchronous moves for actions outside the partner's alphabet,
synchronisation on shared actions, relational renaming and recursion by
unfolding.  :func:`ib_check` decides strong bisimilarity of two finite
LTSs by partition refinement.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Iterable
from dataclasses import dataclass
from functools import lru_cache

from .petri import CaseGraph, Net
from .terms import Choice, Inaction, Parallel, Prefix, Rec, Rename, Term, Var, alphabet, require_closed_guarded, unfold


@lru_cache(maxsize=None)
def _steps(p: Term) -> frozenset[tuple[str, Term]]:
    if isinstance(p, Inaction):
        return frozenset()
    if isinstance(p, Prefix):
        return frozenset({(p.action, p.body)})
    if isinstance(p, Choice):
        return _steps(p.left) | _steps(p.right)
    if isinstance(p, Parallel):
        a1, a2 = alphabet(p.left), alphabet(p.right)
        sync = a1 & a2
        left, right = _steps(p.left), _steps(p.right)
        out = set()
        for a, l2 in left:
            if a not in sync:
                out.add((a, Parallel(l2, p.right)))
        for a, r2 in right:
            if a not in sync:
                out.add((a, Parallel(p.left, r2)))
        for a, l2 in left:
            if a in sync:
                for b, r2 in right:
                    if a == b:
                        out.add((a, Parallel(l2, r2)))
        return frozenset(out)
    if isinstance(p, Rename):
        return frozenset((b, Rename(p.renaming, q)) for a, q in _steps(p.body) for b in p.renaming.targets(a))
    if isinstance(p, Rec):
        return _steps(unfold(p))
    if isinstance(p, Var):
        raise ValueError(f"free variable {p.name}")
    raise TypeError(p)


def term_steps(p: Term) -> frozenset[tuple[str, Term]]:
    """All ``(a, P')`` with ``P --a--> P'``."""
    require_closed_guarded(p)
    return _steps(p)


@dataclass(frozen=True)
class Lts:
    states: tuple  # BFS discovery order
    edges: frozenset[tuple[Hashable, str, Hashable]]
    initial: Hashable
    truncated: bool

    def successors(self) -> dict:
        succ: dict = {s: set() for s in self.states}
        for s, a, s2 in self.edges:
            succ[s].add((a, s2))
        return succ


def _sort_key(step: tuple[str, Term]) -> tuple[str, str]:
    return (step[0], str(step[1]))


def build_lts(p: Term, max_states: int = 10_000) -> Lts:
    require_closed_guarded(p)
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    seen = {p}
    order = [p]
    queue = deque([p])
    edges = set()
    truncated = False
    while queue:
        s = queue.popleft()
        for a, s2 in sorted(_steps(s), key=_sort_key):
            if s2 not in seen:
                if len(order) >= max_states:
                    truncated = True
                    continue
                seen.add(s2)
                order.append(s2)
                queue.append(s2)
            edges.add((s, a, s2))
    return Lts(tuple(order), frozenset(edges), p, truncated)


def lts_of_case_graph(net: Net, graph: CaseGraph) -> Lts:
    """View a case graph as an LTS over markings, edges labelled by actions."""
    return Lts(graph.nodes, frozenset(graph.labelled_edges(net)), graph.initial, graph.truncated)


class TruncatedLts(ValueError):
    pass


def bisimulation_classes(states: Iterable, edges: Iterable[tuple]) -> dict:
    """Map each state to the index of its strong-bisimilarity class."""
    states = list(states)
    succ: dict = {s: [] for s in states}
    for s, a, s2 in edges:
        succ[s].append((a, s2))
    block = {s: 0 for s in states}
    n_blocks = 1
    while True:
        sigs = {s: frozenset((a, block[s2]) for a, s2 in succ[s]) for s in states}
        keys: dict = {}
        new = {}
        for s in states:
            new[s] = keys.setdefault((block[s], sigs[s]), len(keys))
        if len(keys) == n_blocks:
            return new
        block, n_blocks = new, len(keys)


def ib_check(l1: Lts, l2: Lts) -> bool:
    """Strong (interleaving) bisimilarity of the initial states."""
    if l1.truncated or l2.truncated:
        raise TruncatedLts("cannot decide bisimilarity of a truncated LTS")
    states = [(1, s) for s in l1.states] + [(2, s) for s in l2.states]
    edges = [((1, s), a, (1, t)) for s, a, t in l1.edges] + [((2, s), a, (2, t)) for s, a, t in l2.edges]
    cls = bisimulation_classes(states, edges)
    return cls[(1, l1.initial)] == cls[(2, l2.initial)]
