"""Bounded extension games over finite processes.

Positions are explored to a given number of events and evaluated with
three values: ``LOSE`` (the attacker can force an extension the defender
cannot answer), ``WIN`` (the game tree was exhausted without that
happening) and ``SURVIVE`` (the event bound cut the search off).  Only
``WIN`` and ``LOSE`` give certain verdicts.  Positions are memoised by
canonical code, so isomorphic positions are evaluated once.

The attacker extends one side by a single event; multi-event extensions
decompose into such steps.
"""

from __future__ import annotations

from itertools import permutations

from ..canon import canonical_code
from ..multiset import Multiset
from ..petri import Net
from ..processes import Process, _id_key, causal_code, extend_process, extensions, initial_process
from .verdict import Verdict, no, unknown, yes

LOSE, SURVIVE, WIN = 0, 1, 2


def _arrangements(ms: Multiset) -> list[tuple]:
    return sorted(set(permutations(list(ms.elements()))))


# process-based sp-bisimulation ---------------------------------------------


class _Triple:
    """``(rho1, N, rho2)``: one causal net folded into both nets."""

    __slots__ = ("p1", "p2")

    def __init__(self, p1: Process, p2: Process):
        self.p1, self.p2 = p1, p2

    def side(self, i: int) -> Process:
        return self.p1 if i == 1 else self.p2

    def code(self) -> tuple:
        f1, f2 = self.p1.fold, self.p2.fold
        return causal_code(self.p1.causal, lambda e: (f1[e], f2[e]), lambda c: (f1[c], f2[c]))

    def size(self) -> int:
        return self.p1.size()


def _answer_triples(pos: _Triple, i: int, t: str, tokens: tuple) -> list[_Triple]:
    """Defender answers on side ``3-i`` to the attacker firing ``t`` on ``tokens`` at side ``i``."""
    mine = extend_process(pos.side(i), t, tokens)
    other = pos.side(3 - i)
    host = other.host
    image = Multiset([other.fold[c] for c in tokens])
    new_conds = sorted(set(mine.causal.places) - set(other.causal.places), key=_id_key)
    e = f"e{other.size()}"
    out = []
    for u in host.sorted_transitions():
        if host.labels[u] != mine.host.labels[t] or host.pre[u] != image:
            continue
        if host.post[u].size != len(new_conds):
            continue
        for arrangement in _arrangements(host.post[u]):
            fold = dict(other.fold)
            fold[e] = u
            fold.update(zip(new_conds, arrangement))
            answer = Process(mine.causal, fold, host)
            out.append(_Triple(mine, answer) if i == 1 else _Triple(answer, mine))
    return out


class _OutOfPositions(Exception):
    pass


class _SpGame:
    def __init__(self, max_events: int, max_positions: int | None = None):
        self.k = max_events
        self.max_positions = max_positions
        self.memo: dict[tuple, int] = {}
        self.positions = 0

    def value(self, pos: _Triple) -> int:
        key = pos.code()
        v = self.memo.get(key)
        if v is None:
            self.positions += 1
            if self.max_positions is not None and self.positions > self.max_positions:
                raise _OutOfPositions
            v = self._value(pos)
            self.memo[key] = v
        return v

    def _value(self, pos: _Triple) -> int:
        moves = [(i, t, tok) for i in (1, 2) for t, tok in extensions(pos.side(i))]
        if not moves:
            return WIN
        if pos.size() >= self.k:
            return SURVIVE
        worst = WIN
        for i, t, tok in moves:
            best = LOSE
            for child in _answer_triples(pos, i, t, tok):
                best = max(best, self.value(child))
                if best == WIN:
                    break
            worst = min(worst, best)
            if worst == LOSE:
                break
        return worst


def _initial_triples(n1: Net, n2: Net) -> list[_Triple]:
    """Initial triples, skipping foldings where one event already beats the defender.

    Initial conditions are assigned to tokens of ``n2`` one at a time; a
    partial assignment is abandoned as soon as some set of assigned
    conditions is the preset of a transition on one side but not of any
    equally labelled transition on the other.
    """
    p1 = initial_process(n1)
    conds = p1.conditions()
    labels1 = {(n1.labels[t], n1.pre[t]) for t in n1.transitions}
    labels2 = {(n2.labels[t], n2.pre[t]) for t in n2.transitions}
    pres1 = [(n1.labels[t], n1.pre[t]) for t in n1.sorted_transitions()]
    pres2 = [(n2.labels[t], n2.pre[t]) for t in n2.sorted_transitions()]

    def consistent(assign: dict) -> bool:
        done = list(assign)
        for side, pres, others in ((1, pres1, labels2), (2, pres2, labels1)):
            for label, pre in pres:
                if pre.size > len(done):
                    continue
                for group in _groups(done, pre, assign if side == 2 else p1.fold):
                    img = Multiset([(p1.fold if side == 2 else assign)[c] for c in group])
                    if (label, img) not in others:
                        return False
        return True

    seen, out = set(), []

    def rec(i: int, assign: dict, remaining: Multiset):
        if not consistent(assign):
            return
        if i == len(conds):
            fold = dict(assign)
            t = _Triple(p1, Process(p1.causal, fold, n2))
            code = t.code()
            if code not in seen:
                seen.add(code)
                out.append(t)
            return
        for y in sorted(remaining.support()):
            assign[conds[i]] = y
            rec(i + 1, assign, remaining - Multiset({y: 1}))
            del assign[conds[i]]

    if n1.initial.size == n2.initial.size:
        rec(0, {}, n2.initial)
    return out


def _groups(conds: list[str], pre: Multiset, fold: dict):
    """Sets of conditions among ``conds`` that ``fold`` maps exactly onto ``pre``."""
    by_place: dict = {}
    for c in conds:
        by_place.setdefault(fold[c], []).append(c)
    from itertools import combinations, product

    items = pre.sorted_items()
    if any(len(by_place.get(s, ())) < n for s, n in items):
        return
    for combo in product(*(combinations(by_place[s], n) for s, n in items)):
        yield [c for part in combo for c in part]


def sp_check_process_based(
    n1: Net, n2: Net, max_events: int = 12, max_positions: int | None = None
) -> Verdict:
    """Structure preserving bisimilarity as a game on processes, to ``max_events`` events.

    ``max_positions`` optionally caps the number of distinct positions
    evaluated; reaching it gives unknown.
    """
    if n1.alphabet != n2.alphabet:
        return no("type alphabets differ")
    if n1.initial.size != n2.initial.size:
        return no("initial markings have different sizes")
    game = _SpGame(max_events, max_positions)
    best = LOSE
    initials = _initial_triples(n1, n2)
    try:
        for pos in initials:
            best = max(best, game.value(pos))
            if best == WIN:
                break
    except _OutOfPositions:
        return unknown(f"position bound {max_positions} reached", positions=game.positions)
    stats = {"positions": game.positions, "initial_triples": len(initials)}
    if best == WIN:
        return yes("a defender strategy survives the exhausted game", **stats)
    if best == LOSE:
        return no(f"the attacker wins from every initial triple within {max_events} events", **stats)
    return unknown(f"defender survives to the event bound {max_events}", **stats)


# fully concurrent bisimulation ----------------------------------------------


class _FcbPos:
    """Two processes with an order-isomorphism ``beta`` between their events."""

    __slots__ = ("p1", "p2", "beta")

    def __init__(self, p1: Process, p2: Process, beta: dict):
        self.p1, self.p2, self.beta = p1, p2, beta

    def side(self, i: int) -> Process:
        return self.p1 if i == 1 else self.p2

    def code(self) -> tuple:
        nodes: dict = {}
        colors = []
        for e in self.p1.events():
            nodes[("e", e)] = len(colors)
            colors.append(("e", self.p1.causal.labels[e]))
        for i, p in ((1, self.p1), (2, self.p2)):
            for c in p.conditions():
                nodes[(i, c)] = len(colors)
                colors.append((f"c{i}", p.fold[c]))
        edges = {}
        inv = {v: k for k, v in self.beta.items()}
        for i, p in ((1, self.p1), (2, self.p2)):
            n = p.causal
            for e in n.transitions:
                ev = nodes[("e", e if i == 1 else inv[e])]
                for c in n.pre[e]:
                    edges[(nodes[(i, c)], ev)] = i
                for c in n.post[e]:
                    edges[(ev, nodes[(i, c)])] = i
        return canonical_code(colors, edges)


def _causes(p: Process, tokens) -> frozenset[str]:
    """Events that causally precede an event consuming ``tokens``."""
    n = p.causal
    producer = {c: e for e in n.transitions for c in n.post[e]}
    out: set[str] = set()
    stack = [producer[c] for c in tokens if c in producer]
    while stack:
        e = stack.pop()
        if e in out:
            continue
        out.add(e)
        stack.extend(producer[c] for c in n.pre[e] if c in producer)
    return frozenset(out)


class _FcbGame(_SpGame):
    def _value(self, pos: _FcbPos) -> int:
        moves = [(i, t, tok) for i in (1, 2) for t, tok in extensions(pos.side(i))]
        if not moves:
            return WIN
        if pos.p1.size() >= self.k:
            return SURVIVE
        worst = WIN
        answers_cache: dict = {}
        for i, t, tok in moves:
            best = LOSE
            for child in self._answers(pos, i, t, tok, answers_cache):
                best = max(best, self.value(child))
                if best == WIN:
                    break
            worst = min(worst, best)
            if worst == LOSE:
                break
        return worst

    def _answers(self, pos: _FcbPos, i: int, t: str, tok, cache) -> list[_FcbPos]:
        mine_p, other_p = pos.side(i), pos.side(3 - i)
        mine_new = extend_process(mine_p, t, tok)
        e_new = f"e{mine_p.size()}"
        beta = pos.beta if i == 1 else {v: k for k, v in pos.beta.items()}
        wanted = frozenset(beta[e] for e in _causes(mine_p, tok))
        label = mine_p.host.labels[t]
        out = []
        for u, tok2 in extensions(other_p):
            if other_p.host.labels[u] != label or _causes(other_p, tok2) != wanted:
                continue
            other_new = extend_process(other_p, u, tok2)
            e2 = f"e{other_p.size()}"
            b = dict(beta)
            b[e_new] = e2
            if i == 1:
                out.append(_FcbPos(mine_new, other_new, b))
            else:
                out.append(_FcbPos(other_new, mine_new, {v: k for k, v in b.items()}))
        return out


def fcb_check_bounded(n1: Net, n2: Net, max_events: int = 12, max_positions: int | None = None) -> Verdict:
    """Fully concurrent bisimilarity, explored to ``max_events`` events."""
    if n1.alphabet != n2.alphabet:
        return no("type alphabets differ")
    game = _FcbGame(max_events, max_positions)
    try:
        v = game.value(_FcbPos(initial_process(n1), initial_process(n2), {}))
    except _OutOfPositions:
        return unknown(f"position bound {max_positions} reached", positions=game.positions)
    stats = {"positions": game.positions}
    if v == WIN:
        return yes("a defender strategy survives the exhausted game", **stats)
    if v == LOSE:
        return no(f"the attacker wins within {max_events} events", **stats)
    return unknown(f"defender survives to the event bound {max_events}", **stats)
