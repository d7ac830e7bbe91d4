"""Bisimulations induced by a relation on places: strong and place bisimilarity.

Both checkers search exhaustively over relations ``B`` on places and are
exponential in the number of undetermined pairs; above ``max_atoms`` they
answer unknown.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from ..multiset import Multiset
from ..petri import Net, NetError, case_graph, is_safe
from .linking import format_linking, proj
from .sp import _Game
from .verdict import Verdict, no, unknown, yes

DEFAULT_MAX_ATOMS = 16


class NotSafe(NetError):
    pass


def _relevant(net: Net) -> set[str]:
    return {s for t in net.transitions for s in net.pre[t]}


def _subsets(atoms: list) -> list:
    out = []
    for n in range(len(atoms), -1, -1):
        out.extend(combinations(atoms, n))
    return out


# place bisimilarity ---------------------------------------------------------


def _over(b: frozenset, m1: Multiset, m2: Multiset | None, side: int):
    """Linkings over ``b`` whose projection on ``side`` is ``m1`` (and on the other side ``m2``, if given)."""
    partners: dict = {}
    for s1, s2 in sorted(b):
        key, val = (s1, s2) if side == 1 else (s2, s1)
        partners.setdefault(key, []).append(val)
    xs = list(m1.elements())
    if any(x not in partners for x in xs):
        return
    seen = set()
    for choice in product(*(partners[x] for x in xs)):
        links = [(x, y) if side == 1 else (y, x) for x, y in zip(xs, choice)]
        c = Multiset(links)
        if c in seen:
            continue
        seen.add(c)
        if m2 is None or proj(c, 3 - side) == m2:
            yield c


def _is_place_bisimulation(n1: Net, n2: Net, b: frozenset) -> str | None:
    """None if the linkings over ``b`` form an sp-bisimulation, else a reason."""
    nets = (n1, n2)
    for side in (1, 2):
        me, other = nets[side - 1], nets[2 - side]
        for t in me.sorted_transitions():
            for c in _over(b, me.pre[t], None, side):
                target = proj(c, 3 - side)
                ok = False
                for u in other.sorted_transitions():
                    if other.labels[u] != me.labels[t] or other.pre[u] != target:
                        continue
                    post1, post2 = me.post[t], other.post[u]
                    if next(_over(b, post1, post2, side), None) is not None:
                        ok = True
                        break
                if not ok:
                    return f"net {side} transition {t} on {format_linking(c)}"
    return None


def pb_check(n1: Net, n2: Net, max_markings: int = 10_000, max_atoms: int = DEFAULT_MAX_ATOMS) -> Verdict:
    """Place bisimilarity: some relation ``B`` all of whose multiset linkings form an sp-bisimulation.

    Pairs of places neither of which occurs in a preset cannot raise an
    obligation and are always included; the search ranges over the
    others, which must also contain an initial linking.
    """
    if n1.alphabet != n2.alphabet:
        return no("type alphabets differ")
    if n1.initial.size != n2.initial.size:
        return no("initial markings have different sizes")
    r1, r2 = _relevant(n1), _relevant(n2)
    inert = frozenset((s1, s2) for s1 in n1.places for s2 in n2.places if s1 not in r1 and s2 not in r2)
    free = sorted((s1, s2) for s1 in n1.places for s2 in n2.places if (s1, s2) not in inert)
    if len(free) > max_atoms:
        return unknown(f"{len(free)} candidate place pairs exceed the threshold {max_atoms}", atoms=len(free))
    tried = 0
    for chosen in _subsets(free):
        b = inert | frozenset(chosen)
        if next(_over(b, n1.initial, n2.initial, 1), None) is None:
            continue
        tried += 1
        if _is_place_bisimulation(n1, n2, b) is None:
            return yes(f"place bisimulation over {len(b)} pairs", frozenset(b), atoms=len(free))
    return no(f"none of {tried} relations containing an initial linking is a place bisimulation", atoms=len(free))


# strong bisimilarity --------------------------------------------------------


def _hat(b: frozenset, marks1, marks2) -> list[Multiset]:
    """All linkings ``l`` in B-hat: ``B`` restricted to ``pi1(l) x pi2(l)`` is exactly ``l``."""
    out = []
    for m1 in marks1:
        for m2 in marks2:
            if m1.size != m2.size:
                continue
            l = [(x, y) for x in m1 for y in m2 if (x, y) in b]
            if len(l) != m1.size:
                continue
            if {x for x, _ in l} == set(m1) and {y for _, y in l} == set(m2):
                out.append(Multiset(l))
    return out


def strong_check(
    n1: Net, n2: Net, max_markings: int = 10_000, max_atoms: int = DEFAULT_MAX_ATOMS, max_nodes: int = 100_000
) -> Verdict:
    """Olderog's strong bisimilarity of two safe nets.

    For safe nets ``B-hat`` holds at most one linking per pair of markings,
    namely ``B`` restricted to them.  The search therefore grows ``B`` from
    an initial bijection: each obligation of a linking in ``B-hat`` picks
    one answer ``l'``, which puts the links of ``l'`` into ``B`` and every
    other pair of ``pi1(l') x pi2(l')`` out of it.  When no obligation is
    left, the pairs still undecided are enumerated (at most ``max_atoms``)
    and ``B-hat`` of the resulting relation is checked as a whole.  Every
    relation passing the check arises this way, so exhausting the search
    is a sound ``no``.
    """
    for i, n in enumerate((n1, n2), 1):
        s = is_safe(n, max_markings)
        if s.status == "unsafe":
            raise NotSafe(f"net {i} is not safe")
        if s.status == "unknown":
            return unknown(f"safety of net {i} undetermined within {max_markings} markings")
    if n1.alphabet != n2.alphabet:
        return no("type alphabets differ")
    if n1.initial.size != n2.initial.size:
        return no("initial markings have different sizes")
    marks1, marks2 = case_graph(n1, max_markings).nodes, case_graph(n2, max_markings).nodes
    occ1, occ2 = sorted(set().union(*marks1)), sorted(set().union(*marks2))
    universe = frozenset((x, y) for x in occ1 for y in occ2)
    search = _StrongSearch(_Game(n1, n2), marks1, marks2, universe, max_atoms, max_nodes)
    m01, m02 = sorted(n1.initial), sorted(n2.initial)
    for perm in sorted(set(permutations(m02))):
        l0 = Multiset(zip(m01, perm))
        found = search.run(l0)
        if found is not None:
            b, linkings = found
            return yes(f"strong bisimulation over {len(b)} pairs", (b, linkings, l0), nodes=search.nodes)
        if search.aborted:
            break
    if search.aborted or search.oversized:
        why = "search node bound reached" if search.aborted else f"more than {max_atoms} undecided place pairs"
        return unknown(why, nodes=search.nodes)
    return no("no place relation induces a strong bisimulation", nodes=search.nodes)


class _StrongSearch:
    def __init__(self, game: _Game, marks1, marks2, universe, max_atoms: int, max_nodes: int):
        self.game, self.marks1, self.marks2 = game, marks1, marks2
        self.universe, self.max_atoms, self.max_nodes = universe, max_atoms, max_nodes
        self.nodes = 0
        self.aborted = self.oversized = False

    @staticmethod
    def _cross(l: Multiset) -> set:
        return {(x, y) for x in proj(l, 1) for y in proj(l, 2)} - set(l)

    def _admit(self, l: Multiset, inside: frozenset, outside: frozenset):
        """``(inside, outside)`` after requiring ``l`` in B-hat, or None if inconsistent."""
        links, cross = set(l), self._cross(l)
        if links & outside or cross & inside:
            return None
        return inside | links, outside | cross

    def run(self, l0: Multiset):
        state = self._admit(l0, frozenset(), frozenset())
        return self._dfs(state[0], state[1], [l0], {l0})

    def _dfs(self, inside, outside, todo: list, seen: set):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            self.aborted = True
            return None
        while todo:
            l = todo[-1]
            open_ob = None
            for side, t, c in self.game.obligations(l):
                opts = self.game.options(l, side, t, c)
                if not any(o in seen for o in opts):
                    open_ob = opts
                    break
            if open_ob is None:
                todo = todo[:-1]
                continue
            for o in sorted(open_ob, key=format_linking):
                st = self._admit(o, inside, outside)
                if st is None:
                    continue
                found = self._dfs(st[0], st[1], todo + [o], seen | {o})
                if found is not None or self.aborted:
                    return found
            return None
        return self._complete(inside, outside)

    def _complete(self, inside, outside):
        free = sorted(self.universe - inside - outside)
        if len(free) > self.max_atoms:
            self.oversized = True
            free_sets = [()]
        else:
            free_sets = _subsets(free)[::-1]  # smallest first
        for chosen in free_sets:
            b = inside | frozenset(chosen)
            linkings = set(_hat(b, self.marks1, self.marks2))
            if _closed(self.game, linkings):
                return b, frozenset(linkings)
        return None
def _closed(game: _Game, linkings: set) -> bool:
    """Every obligation of every linking has an answer inside ``linkings``."""
    for l in linkings:
        for side, t, c in game.obligations(l):
            if not any(l2 in linkings for l2 in game.options(l, side, t, c)):
                return False
    return True
