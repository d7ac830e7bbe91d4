"""Structure preserving bisimilarity via a greatest fixed point over linkings.

Linkings are explored forward from the initial ones.  A linking ``l``
raises one obligation per transition ``t`` on either side and per
``c <= l`` whose projection on that side is the preset of ``t``; the
obligation is met by a transition ``t'`` on the other side with the same
label and ``pi(c) = pre(t')``, together with a linking ``c'`` of the two
postsets, leading to ``l - c + c'``.  Linkings with an unmet obligation
are deleted until nothing changes.  Linkings left unexplored because of
the bound are treated as surviving, so deletions stay sound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..multiset import Multiset
from ..petri import Net
from .linking import format_linking, matchings, proj, sub_linkings
from .verdict import Verdict, no, unknown, yes


@dataclass(frozen=True)
class SpCertificate:
    """A set of linkings claimed to be an sp-bisimulation, plus the initial one used."""

    linkings: frozenset
    initial: Multiset

    def dump(self) -> str:
        lines = [f"initial {format_linking(self.initial)}"]
        lines += [f"linking {format_linking(l)}" for l in sorted(self.linkings, key=format_linking)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SpRefutation:
    """Why each initial linking was deleted."""

    reasons: tuple  # (linking or None, message)

    def dump(self) -> str:
        out = []
        for l, msg in self.reasons:
            out.append(f"{format_linking(l) if l is not None else '-'}: {msg}")
        return "\n".join(out) + "\n"


def _by_label(net: Net) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for t in net.sorted_transitions():
        out.setdefault(net.labels[t], []).append(t)
    return out


class _Game:
    def __init__(self, n1: Net, n2: Net):
        self.nets = (n1, n2)
        self.labels = (_by_label(n1), _by_label(n2))

    def answers(self, side: int, t: str, c: Multiset) -> list[str]:
        """Transitions of the other net that may answer ``t`` fired on the tokens ``c``."""
        me, other = self.nets[side - 1], self.nets[2 - side]
        target = proj(c, 3 - side)
        return [u for u in self.labels[2 - side].get(me.labels[t], []) if other.pre[u] == target]

    def obligations(self, l: Multiset):
        """Yield ``(side, t, c)`` for every obligation raised by ``l``."""
        for side in (1, 2):
            net = self.nets[side - 1]
            marking = proj(l, side)
            for t in net.sorted_transitions():
                if net.pre[t] <= marking:
                    for c in sub_linkings(l, net.pre[t], side):
                        yield side, t, c

    def options(self, l: Multiset, side: int, t: str, c: Multiset) -> list[Multiset]:
        me, other = self.nets[side - 1], self.nets[2 - side]
        rest = l - c
        out = []
        for u in self.answers(side, t, c):
            post1, post2 = (me.post[t], other.post[u]) if side == 1 else (other.post[u], me.post[t])
            for cbar in matchings(post1, post2):
                out.append(rest + cbar)
        return out

    def first_dead_obligation(self, l: Multiset):
        for side, t, c in self.obligations(l):
            if not self.answers(side, t, c):
                return side, t, c
        return None

    def _link_feasible(self, partial: Multiset, link: tuple) -> bool:
        """Necessary condition on the links added so far, checked around ``link``.

        If ``t`` is enabled at the initial marking, every ``d <= partial``
        containing ``link`` with ``pi(d) <= pre(t)`` extends to an
        obligation ``c`` of any completion, so some equally labelled ``u``
        enabled initially must have ``pre(u) >= pi'(d)`` and the same size.
        """
        for side in (1, 2):
            me, other = self.nets[side - 1], self.nets[2 - side]
            x = link[side - 1]
            for t in me.sorted_transitions():
                pre = me.pre[t]
                if x not in pre or not pre <= me.initial:
                    continue
                candidates = [
                    other.pre[u]
                    for u in self.labels[2 - side].get(me.labels[t], [])
                    if other.pre[u].size == pre.size and other.pre[u] <= other.initial
                ]
                rest = partial - Multiset({link: 1})
                budget = pre - Multiset({x: 1})
                mine = Multiset({k: n for k, n in rest.items() if budget[k[side - 1]]})
                for d in mine.sub_multisets():
                    if not proj(d, side) <= budget:
                        continue
                    image = proj(d, 3 - side) + Multiset({link[2 - side]: 1})
                    if not any(image <= c for c in candidates):
                        return False
        return True

    def initial_linkings(self) -> tuple[list[Multiset], str | None]:
        """Initial linkings, skipping those with an obligation no transition can answer.

        Links are added one token at a time; a partial linking already
        containing an unanswerable ``c`` is abandoned, since every
        completion contains the same ``c``.
        """
        n1, n2 = self.nets
        xs = list(n1.initial.elements())
        found: set = set()
        first_reason = None

        def rec(i: int, partial: Multiset, remaining: Multiset):
            nonlocal first_reason
            if i and not self._link_feasible(partial, (xs[i - 1], last[0])):
                return
            dead = self.first_dead_obligation(partial)
            if dead is not None:
                if first_reason is None:
                    side, t, c = dead
                    first_reason = f"net {side} transition {t} on {format_linking(c)} has no answer"
                return
            if i == len(xs):
                found.add(partial)
                return
            for y in sorted(remaining.support()):
                last[0] = y
                rec(i + 1, partial + Multiset({(xs[i], y): 1}), remaining - Multiset({y: 1}))

        last = [None]
        rec(0, Multiset(), n2.initial)
        return sorted(found, key=format_linking), first_reason


def sp_check(n1: Net, n2: Net, max_markings: int = 10_000) -> Verdict:
    """Decide ``n1`` and ``n2`` structure preserving bisimilar.

    ``max_markings`` bounds the number of linkings explored.
    """
    if n1.alphabet != n2.alphabet:
        return no(
            "type alphabets differ",
            SpRefutation(((None, f"alphabets {sorted(n1.alphabet)} and {sorted(n2.alphabet)}"),)),
        )
    if n1.initial.size != n2.initial.size:
        return no("initial markings have different sizes", SpRefutation(((None, "no initial linking"),)))
    game = _Game(n1, n2)
    initials, pruned_reason = game.initial_linkings()
    if not initials:
        return no("no initial linking survives", SpRefutation(((None, pruned_reason or "no initial linking"),)))

    index = {l: i for i, l in enumerate(initials)}
    order = list(initials)
    obligations: list = []  # per explored linking: list of (side, t, c, [successor ids or -1])
    queue = deque(range(len(initials)))
    truncated = False
    expanded: set[int] = set()
    while queue:
        i = queue.popleft()
        l = order[i]
        obs = []
        for side, t, c in game.obligations(l):
            succs = []
            for l2 in game.options(l, side, t, c):
                j = index.get(l2)
                if j is None:
                    if len(order) >= max_markings:
                        truncated = True
                        succs.append(-1)
                        continue
                    j = index[l2] = len(order)
                    order.append(l2)
                    queue.append(j)
                succs.append(j)
            obs.append((side, t, c, succs))
        while len(obligations) <= i:
            obligations.append(None)
        obligations[i] = obs
        expanded.add(i)

    alive = [True] * len(order)
    reason: dict[int, str] = {}
    changed = True
    while changed:
        changed = False
        for i in range(len(order)):
            if not alive[i] or i not in expanded:
                continue
            for side, t, c, succs in obligations[i]:
                if not any(j == -1 or alive[j] for j in succs):
                    alive[i] = False
                    reason[i] = f"net {side} transition {t} on {format_linking(c)} cannot be matched"
                    changed = True
                    break

    survivors = [l for l in initials if alive[index[l]]]
    stats = {"linkings": len(order), "truncated": truncated}
    if truncated:
        return unknown(f"linking bound {max_markings} reached", **stats)
    if survivors:
        cert = SpCertificate(frozenset(order[i] for i in range(len(order)) if alive[i]), survivors[0])
        return yes(f"sp-bisimulation with {len(cert.linkings)} linkings", cert, **stats)
    reasons = tuple((l, reason[index[l]]) for l in initials)
    return no("every initial linking is deleted", SpRefutation(reasons), **stats)


def validate_sp_bisimulation(n1: Net, n2: Net, linkings, initial: Multiset | None = None) -> tuple[bool, str]:
    """Check the sp-bisimulation conditions literally on a finite set of linkings.

    Deliberately naive: sub-linkings and postset linkings are found by
    enumerating all sub-multisets.  Returns ``(ok, message)``.
    """
    b = set(linkings)
    if n1.alphabet != n2.alphabet:
        return False, "alphabets differ"
    if initial is not None:
        if initial not in b:
            return False, "initial linking is not in the set"
        if proj(initial, 1) != n1.initial or proj(initial, 2) != n2.initial:
            return False, "initial linking does not project onto the initial markings"
    nets = (n1, n2)
    for l in b:
        for side in (1, 2):
            me, other = nets[side - 1], nets[2 - side]
            for t in me.transitions:
                for c in l.sub_multisets():
                    if proj(c, side) != me.pre[t]:
                        continue
                    if not _matched(l, c, side, t, me, other, b):
                        return False, f"{format_linking(l)}: net {side} transition {t} on {format_linking(c)}"
    return True, "ok"


def _matched(l, c, side, t, me, other, b) -> bool:
    for u in other.transitions:
        if other.labels[u] != me.labels[t] or proj(c, 3 - side) != other.pre[u]:
            continue
        p_me, p_other = me.post[t], other.post[u]
        if p_me.size != p_other.size:
            continue
        pairs = {}
        for x, m in p_me.items():
            for y, n in p_other.items():
                pairs[(x, y) if side == 1 else (y, x)] = min(m, n)
        for cbar in Multiset(pairs).sub_multisets(size=p_me.size):
            if proj(cbar, side) == p_me and proj(cbar, 3 - side) == p_other and (l - c + cbar) in b:
                return True
    return False
