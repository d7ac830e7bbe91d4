"""Causal nets, processes and their bounded enumeration.

A :class:`Process` is a causal net together with a folding into a host
net.  Conditions are named ``c0, c1, ...`` and events ``e0, e1, ...`` in
creation order.  Processes are grown one event at a time by
:func:`extend_process`; :func:`enumerate_processes` explores all finite
processes up to a number of events, keeping one representative per
isomorphism class (see :func:`canonical_form`).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations, product

from .canon import canonical_code
from .multiset import Multiset
from .petri import Net, NetError


@dataclass(frozen=True)
class Check:
    """Outcome of a structural check; falsy when a violation was found."""

    ok: bool
    message: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


OK = Check(True)


def _reaches_cycle(net: Net) -> object:
    """A node lying on a cycle of the flow relation, or None."""
    succ: dict[str, set[str]] = {x: set() for x in net.places | net.transitions}
    for t in net.transitions:
        for s in net.pre[t]:
            succ[s].add(t)
        for s in net.post[t]:
            succ[t].add(s)
    state: dict[str, int] = {}
    for root in sorted(succ):
        if root in state:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        state[root] = 1
        while stack:
            x, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[x] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return nxt
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(sorted(succ[nxt]))))
    return None


def is_acyclic(net: Net) -> bool:
    return _reaches_cycle(net) is None


def validate_causal_net(n: Net) -> Check:
    pre_of: dict[str, list[str]] = {s: [] for s in n.places}
    post_of: dict[str, list[str]] = {s: [] for s in n.places}
    for t in n.sorted_transitions():
        for s, w in n.post[t].items():
            pre_of[s].extend([t] * w)
        for s, w in n.pre[t].items():
            post_of[s].extend([t] * w)
    for s in sorted(n.places):
        if len(pre_of[s]) > 1:
            return Check(False, f"place {s} has {len(pre_of[s])} incoming arcs", s)
        if len(post_of[s]) > 1:
            return Check(False, f"place {s} has {len(post_of[s])} outgoing arcs", s)
        expected = 0 if pre_of[s] else 1
        if n.initial[s] != expected:
            return Check(False, f"place {s} has {n.initial[s]} initial tokens, expected {expected}", s)
    x = _reaches_cycle(n)
    if x is not None:
        return Check(False, f"flow relation has a cycle through {x}", x)
    # finitely many predecessors holds because the net is finite
    return OK


@dataclass(frozen=True)
class Process:
    causal: Net
    fold: dict
    host: Net

    def events(self) -> list[str]:
        return sorted(self.causal.transitions, key=_id_key)

    def conditions(self) -> list[str]:
        return sorted(self.causal.places, key=_id_key)

    def final_conditions(self) -> list[str]:
        consumed = set()
        for e in self.causal.transitions:
            consumed.update(self.causal.pre[e])
        return [c for c in self.conditions() if c not in consumed]

    def final_marking(self) -> Multiset:
        """``rho`` applied to the final conditions."""
        return Multiset([self.fold[c] for c in self.final_conditions()])

    def size(self) -> int:
        return len(self.causal.transitions)

    def labels(self) -> Multiset:
        return Multiset([self.causal.labels[e] for e in self.causal.transitions])

    def __hash__(self):
        return hash((self.causal, frozenset(self.fold.items())))

    def __eq__(self, other):
        if not isinstance(other, Process):
            return NotImplemented
        return self.causal == other.causal and self.fold == other.fold and self.host == other.host


def _id_key(x: str) -> tuple[str, int]:
    return (x[0], int(x[1:]))


def validate_folding(p: Process) -> Check:
    n, h, rho = p.causal, p.host, p.fold
    if n.alphabet != h.alphabet:
        return Check(False, "causal net and host have different types", (n.alphabet, h.alphabet))
    for x in sorted(n.places | n.transitions):
        if x not in rho:
            return Check(False, f"{x} is not mapped", x)
    for s in sorted(n.places):
        if rho[s] not in h.places:
            return Check(False, f"condition {s} is mapped to {rho[s]!r}, not a host place", s)
    for e in sorted(n.transitions):
        if rho[e] not in h.transitions:
            return Check(False, f"event {e} is mapped to {rho[e]!r}, not a host transition", e)
        if n.labels[e] != h.labels[rho[e]]:
            return Check(False, f"event {e} is labelled {n.labels[e]} but {rho[e]} is labelled {h.labels[rho[e]]}", e)
    if n.initial.map(rho.get) != h.initial:
        return Check(False, "initial conditions do not fold onto the initial marking", n.initial.map(rho.get))
    for e in sorted(n.transitions):
        t = rho[e]
        for s in sorted(h.places):
            k_pre = sum(w for c, w in n.pre[e].items() if rho[c] == s)
            if h.pre[t][s] != k_pre:
                return Check(False, f"event {e}: {k_pre} input conditions on {s}, arc weight {h.pre[t][s]}", (e, s))
            k_post = sum(w for c, w in n.post[e].items() if rho[c] == s)
            if h.post[t][s] != k_post:
                return Check(False, f"event {e}: {k_post} output conditions on {s}, arc weight {h.post[t][s]}", (e, s))
    return OK


def initial_process(host: Net) -> Process:
    places, fold = [], {}
    for i, s in enumerate(host.initial.elements()):
        c = f"c{i}"
        places.append(c)
        fold[c] = s
    causal = Net(places, {}, Multiset(places), host.alphabet, "process")
    return Process(causal, fold, host)


class TokenMismatch(NetError):
    pass


def extend_process(p: Process, t: str, tokens) -> Process:
    """Add one event mapped to host transition ``t`` consuming the final conditions ``tokens``."""
    host = p.host
    if t not in host.transitions:
        raise NetError(f"unknown host transition {t!r}")
    tokens = list(tokens)
    finals = set(p.final_conditions())
    if len(set(tokens)) != len(tokens) or not set(tokens) <= finals:
        raise TokenMismatch("tokens must be distinct final conditions")
    if Multiset([p.fold[c] for c in tokens]) != host.pre[t]:
        raise TokenMismatch(f"tokens do not fold onto the preset of {t}")
    n = p.causal
    e = f"e{len(n.transitions)}"
    base = len(n.places)
    new = [f"c{base + i}" for i in range(host.post[t].size)]
    table = n.transition_table()
    table[e] = (host.labels[t], Multiset(tokens), Multiset(new))
    fold = dict(p.fold)
    fold[e] = t
    for c, s in zip(new, host.post[t].elements()):
        fold[c] = s
    causal = Net(n.places | set(new), table, n.initial, n.alphabet, n.name)
    return Process(causal, fold, host)


def extensions(p: Process) -> Iterator[tuple[str, tuple[str, ...]]]:
    """All ``(t, tokens)`` accepted by :func:`extend_process`, in a fixed order."""
    by_place: dict[str, list[str]] = {}
    for c in p.final_conditions():
        by_place.setdefault(p.fold[c], []).append(c)
    host = p.host
    for t in host.sorted_transitions():
        pre = host.pre[t]
        if any(len(by_place.get(s, ())) < w for s, w in pre.items()):
            continue
        choices = [list(combinations(by_place[s], w)) for s, w in pre.sorted_items()]
        for combo in product(*choices):
            yield t, tuple(c for part in combo for c in part)


def is_prefix(p1: Process, p2: Process) -> bool:
    """``p1 <= p2``: subnet with the same initial conditions, restricted flow and folding."""
    if p1.host != p2.host:
        raise NetError("processes of different nets are not comparable")
    a, b = p1.causal, p2.causal
    if not (a.places <= b.places and a.transitions <= b.transitions and a.initial == b.initial):
        return False
    for e in a.transitions:
        if a.pre[e] != b.pre[e] or a.post[e] != b.post[e]:
            return False
    # flow of p2 between retained nodes must be retained in p1
    for e in b.transitions - a.transitions:
        if any(c in a.places for c in b.post[e]):
            return False
    for x in a.places | a.transitions:
        if p1.fold[x] != p2.fold[x]:
            return False
    return True


def restrict(p: Process, events) -> Process:
    """The prefix of ``p`` determined by a causally closed set of events."""
    events = set(events)
    n = p.causal
    table = {e: v for e, v in n.transition_table().items() if e in events}
    places = set(n.initial)
    for e in events:
        places.update(n.post[e])
    # renumber so that restricted processes look as if built directly
    old_events = sorted(events, key=_id_key)
    ev_map = {e: f"e{i}" for i, e in enumerate(old_events)}
    cond_map = {c: f"c{i}" for i, c in enumerate(sorted(places, key=_id_key))}
    new_table = {
        ev_map[e]: (lab, pre.map(cond_map.get), post.map(cond_map.get)) for e, (lab, pre, post) in table.items()
    }
    fold = {cond_map[c]: p.fold[c] for c in places}
    fold.update({ev_map[e]: p.fold[e] for e in events})
    causal = Net(set(cond_map.values()), new_table, n.initial.map(cond_map.get), n.alphabet, n.name)
    return Process(causal, fold, p.host)


def event_depths(p: Process) -> dict[str, int]:
    n = p.causal
    producer = {c: e for e in n.transitions for c in n.post[e]}
    depth: dict[str, int] = {}
    for e in sorted(n.transitions, key=_id_key):  # creation order is a topological order
        depth[e] = 1 + max((depth[producer[c]] for c in n.pre[e] if c in producer), default=0)
    return depth


def depth_prefix(p: Process, i: int) -> Process:
    return restrict(p, [e for e, d in event_depths(p).items() if d <= i])


def canonical_form(p: Process, mode: str = "fold") -> tuple:
    """Isomorphism-invariant code of a process.

    ``mode="fold"`` respects the folding (events by host transition,
    conditions by host place); ``mode="label"`` compares only the causal
    nets with their action labels.
    """
    if mode not in ("fold", "label"):
        raise ValueError(f"unknown mode {mode!r}")
    n = p.causal
    if mode == "fold":
        ecol = lambda e: p.fold[e]  # noqa: E731
        ccol = lambda c: p.fold[c]  # noqa: E731
    else:
        ecol = lambda e: n.labels[e]  # noqa: E731
        ccol = lambda c: ""  # noqa: E731
    return causal_code(n, ecol, ccol)


def causal_code(n: Net, ecol, ccol) -> tuple:
    """Code of a causal net whose events and conditions carry the given colours.

    Each condition has at most one producer and one consumer, so the net is
    encoded as a graph on events whose edges carry the multiset of
    colours of the conditions between the two events; conditions touching
    at most one event are folded into that event's colour.
    """
    producer = {c: e for e in n.transitions for c in n.post[e]}
    consumer = {c: e for e in n.transitions for c in n.pre[e]}
    events = sorted(n.transitions)
    index = {e: i for i, e in enumerate(events)}
    consumed_init: list[list] = [[] for _ in events]
    produced_final: list[list] = [[] for _ in events]
    edges: dict[tuple[int, int], list] = {}
    isolated = []
    for c in n.places:
        pe, ce = producer.get(c), consumer.get(c)
        if pe is None and ce is None:
            isolated.append(ccol(c))
        elif pe is None:
            consumed_init[index[ce]].append(ccol(c))
        elif ce is None:
            produced_final[index[pe]].append(ccol(c))
        else:
            edges.setdefault((index[pe], index[ce]), []).append(ccol(c))
    colors = [
        (ecol(e), tuple(sorted(consumed_init[i])), tuple(sorted(produced_final[i]))) for i, e in enumerate(events)
    ]
    code = canonical_code(colors, {k: tuple(sorted(v)) for k, v in edges.items()})
    return (tuple(sorted(isolated)), code)


@dataclass(frozen=True)
class ProcessEnumeration:
    """One process per isomorphism class with at most ``max_events`` events."""

    processes: tuple[Process, ...]
    max_events: int
    exhausted: bool  # no process of max_events events can be extended

    def __iter__(self):
        return iter(self.processes)

    def __len__(self) -> int:
        return len(self.processes)


def enumerate_processes(host: Net, max_events: int) -> ProcessEnumeration:
    if max_events < 0:
        raise ValueError("max_events must be >= 0")
    start = initial_process(host)
    seen = {canonical_form(start)}
    out = [start]
    frontier = deque([start])
    exhausted = True
    while frontier:
        p = frontier.popleft()
        exts = list(extensions(p))
        if p.size() >= max_events:
            if exts:
                exhausted = False
            continue
        for t, tokens in exts:
            q = extend_process(p, t, tokens)
            code = canonical_form(q)
            if code not in seen:
                seen.add(code)
                out.append(q)
                frontier.append(q)
    return ProcessEnumeration(tuple(out), max_events, exhausted)


def is_Y_complete(p: Process, y) -> bool:
    """Every one-event extension of ``p`` fires a transition labelled in ``y``."""
    y = set(y)
    return all(p.host.labels[t] in y for t, _ in extensions(p))


def is_maximal(p: Process) -> bool:
    return next(iter(extensions(p)), None) is None
