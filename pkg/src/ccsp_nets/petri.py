"""Typed place/transition nets and the token game.

A :class:`Net` is the tuple ``(S, T, F, M0, A, l)``.  Place and transition
identifiers are strings; the flow relation is stored as a preset and a
postset multiset per transition.  Nets are immutable after construction.

Every net here is finite with a finite initial marking, so no reachable
marking can enable an infinite multiset of transitions: bounded
parallelism holds by construction and is discharged in ``Net.__init__``
by requiring finite place and transition sets.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .multiset import EMPTY, Multiset


class NetError(ValueError):
    pass


class UnknownTransition(NetError, KeyError):
    pass


class NotEnabled(NetError):
    pass


class Net:
    """A labelled, typed Petri net with arc weights."""

    __slots__ = ("places", "transitions", "pre", "post", "initial", "alphabet", "labels", "name")

    def __init__(
        self,
        places: Iterable[str],
        transitions: Mapping[str, tuple[str, Multiset, Multiset]],
        initial: Multiset,
        alphabet: Iterable[str],
        name: str = "net",
    ):
        """``transitions`` maps each id to ``(label, preset, postset)``."""
        places = frozenset(places)
        alphabet = frozenset(alphabet)
        pre, post, labels = {}, {}, {}
        for t, (label, p, q) in transitions.items():
            if t in places:
                raise NetError(f"id {t!r} is both a place and a transition")
            if label not in alphabet:
                raise NetError(f"label {label!r} of {t!r} is not in the type alphabet")
            for s in list(p) + list(q):
                if s not in places:
                    raise NetError(f"transition {t!r} refers to unknown place {s!r}")
            labels[t], pre[t], post[t] = label, Multiset(p), Multiset(q)
        for s in initial:
            if s not in places:
                raise NetError(f"initial marking refers to unknown place {s!r}")
        set_ = object.__setattr__
        set_(self, "places", places)
        set_(self, "transitions", frozenset(labels))
        set_(self, "pre", MappingProxyType(pre))
        set_(self, "post", MappingProxyType(post))
        set_(self, "initial", Multiset(initial))
        set_(self, "alphabet", alphabet)
        set_(self, "labels", MappingProxyType(labels))
        set_(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("Net is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Net):
            return NotImplemented
        return (
            self.places == other.places
            and self.initial == other.initial
            and self.alphabet == other.alphabet
            and self.transition_table() == other.transition_table()
        )

    def __hash__(self):
        return hash((self.places, self.initial, self.alphabet, self.transitions))

    def __repr__(self) -> str:
        return (
            f"<Net {self.name}: {len(self.places)} places, "
            f"{len(self.transitions)} transitions, |M0|={self.initial.size}>"
        )

    def transition_table(self) -> dict[str, tuple[str, Multiset, Multiset]]:
        return {t: (self.labels[t], self.pre[t], self.post[t]) for t in self.transitions}

    def sorted_transitions(self) -> list[str]:
        return sorted(self.transitions)

    def flow(self, x: str, y: str) -> int:
        """Arc weight ``F(x, y)``; absent arcs have weight 0."""
        if y in self.pre:
            return self.pre[y][x]
        if x in self.post:
            return self.post[x][y]
        return 0

    def renamed(self, name: str) -> Net:
        return Net(self.places, self.transition_table(), self.initial, self.alphabet, name)


def enabled(net: Net, m: Multiset, t: str) -> bool:
    if t not in net.pre:
        raise UnknownTransition(t)
    return net.pre[t] <= m


def fire(net: Net, m: Multiset, t: str) -> Multiset:
    if not enabled(net, m, t):
        raise NotEnabled(f"{t!r} is not enabled at {m!r}")
    return m - net.pre[t] + net.post[t]


def enabled_transitions(net: Net, m: Multiset) -> list[str]:
    return [t for t in net.sorted_transitions() if net.pre[t] <= m]


@dataclass(frozen=True)
class CaseGraph:
    nodes: tuple[Multiset, ...]  # in BFS discovery order
    edges: frozenset[tuple[Multiset, str, Multiset]]
    initial: Multiset
    truncated: bool

    def labelled_edges(self, net: Net) -> set[tuple[Multiset, str, Multiset]]:
        return {(m, net.labels[t], m2) for m, t, m2 in self.edges}


def case_graph(net: Net, max_markings: int = 10_000) -> CaseGraph:
    """Breadth-first closure of the firing relation from ``M0``.

    Transitions are tried in sorted id order, so the discovery order, and
    with it the set retained on truncation, is deterministic.
    """
    if max_markings < 1:
        raise ValueError("max_markings must be >= 1")
    order = net.sorted_transitions()
    seen = {net.initial: 0}
    nodes = [net.initial]
    queue = deque([net.initial])
    edges = set()
    truncated = False
    while queue:
        m = queue.popleft()
        for t in order:
            if not net.pre[t] <= m:
                continue
            m2 = m - net.pre[t] + net.post[t]
            if m2 not in seen:
                if len(nodes) >= max_markings:
                    truncated = True
                    continue
                seen[m2] = len(nodes)
                nodes.append(m2)
                queue.append(m2)
            edges.add((m, t, m2))
    return CaseGraph(tuple(nodes), frozenset(edges), net.initial, truncated)


def reachable_markings(net: Net, max_markings: int = 10_000) -> tuple[list[Multiset], bool]:
    g = case_graph(net, max_markings)
    return list(g.nodes), g.truncated


@dataclass(frozen=True)
class Safety:
    status: str  # "safe" | "unsafe" | "unknown"
    witness: Multiset | None = None

    def __bool__(self) -> bool:
        return self.status == "safe"


def is_safe(net: Net, max_markings: int = 10_000) -> Safety:
    g = case_graph(net, max_markings)
    for m in g.nodes:
        if not m.is_set():
            return Safety("unsafe", m)
    return Safety("unknown" if g.truncated else "safe")


def reachable_part(net: Net, max_markings: int = 10_000) -> Net:
    """Restrict ``net`` to places marked and transitions fired in some reachable marking."""
    g = case_graph(net, max_markings)
    if g.truncated:
        raise NetError("reachable part exceeds the marking bound")
    places = set()
    for m in g.nodes:
        places.update(m)
    fired = {t for _, t, _ in g.edges}
    table = {t: v for t, v in net.transition_table().items() if t in fired}
    for _, p, q in table.values():
        places.update(p)
        places.update(q)
    return Net(places, table, net.initial, net.alphabet, net.name)


def plain(places: Iterable[str]) -> Multiset:
    return Multiset(list(places))


__all__ = [
    "EMPTY",
    "CaseGraph",
    "Net",
    "NetError",
    "NotEnabled",
    "Safety",
    "UnknownTransition",
    "case_graph",
    "enabled",
    "enabled_transitions",
    "fire",
    "is_safe",
    "plain",
    "reachable_markings",
    "reachable_part",
]
