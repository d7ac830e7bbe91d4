"""Denotational net operators for CCSP and a structural interpretation of terms.

Operators are defined up to isomorphism; the ids chosen here depend only
on the inputs, so rebuilding a net gives an identical result.  Binary
operators tag the two components with ``L.`` and ``R.``; fresh places and
transitions get primed names until they are unused.
"""

from __future__ import annotations

from itertools import product

from .multiset import Multiset, product_multiset
from .operational import operational_net
from .petri import Net, NetError, reachable_part
from .terms import Choice, Inaction, Parallel, Prefix, Rec, Rename, Renaming, Term, require_closed_guarded


def _fresh(base: str, used) -> str:
    name = base
    while name in used:
        name += "'"
    return name


def den_zero(alphabet, name: str = "zero") -> Net:
    return Net({"0"}, {}, Multiset({"0": 1}), alphabet, name)


def den_prefix(a: str, n: Net) -> Net:
    used = n.places | n.transitions
    s0 = _fresh("s0", used)
    ta = _fresh(f"t_{a}", used | {s0})
    table = n.transition_table()
    table[ta] = (a, Multiset({s0: 1}), n.initial)
    return Net(n.places | {s0}, table, Multiset({s0: 1}), n.alphabet | {a}, n.name)


def den_rename(r: Renaming, n: Net) -> Net:
    table = {}
    for t in n.sorted_transitions():
        for b in r.targets(n.labels[t]):
            table[f"{t}/{b}"] = (b, n.pre[t], n.post[t])
    if set(table) & n.places:
        raise NetError("renamed transition id clashes with a place id")
    return Net(n.places, table, n.initial, r.image(n.alphabet), n.name)


def _tag(prefix: str, m: Multiset) -> Multiset:
    return m.map(lambda s: prefix + s)


def _disjoint_union(n1: Net, n2: Net) -> tuple[set, dict]:
    places = {"L." + s for s in n1.places} | {"R." + s for s in n2.places}
    table = {}
    for side, n in (("L.", n1), ("R.", n2)):
        for t in n.transitions:
            table[side + t] = (n.labels[t], _tag(side, n.pre[t]), _tag(side, n.post[t]))
    return places, table


def den_par(n1: Net, n2: Net) -> Net:
    sync = n1.alphabet & n2.alphabet
    places, table = _disjoint_union(n1, n2)
    table = {t: v for t, v in table.items() if v[0] not in sync}
    for t1, t2 in product(n1.sorted_transitions(), n2.sorted_transitions()):
        a = n1.labels[t1]
        if a in sync and n2.labels[t2] == a:
            table[f"(L.{t1},R.{t2})"] = (
                a,
                _tag("L.", n1.pre[t1]) + _tag("R.", n2.pre[t2]),
                _tag("L.", n1.post[t1]) + _tag("R.", n2.post[t2]),
            )
    initial = _tag("L.", n1.initial) + _tag("R.", n2.initial)
    return Net(places, table, initial, n1.alphabet | n2.alphabet, n1.name)


def _pair_id(x) -> str:
    return f"({x[0]},{x[1]})"


def den_choice(n1: Net, n2: Net) -> Net:
    """Choice of two nets with non-empty plain initial markings.

    Keeps both operands, adds the places ``M1 x M2`` as the new initial
    marking, and for every transition ``t`` and non-empty ``K <= pre(t) & M``
    of its side a copy ``t^K`` whose preset takes ``K`` from the product
    places instead.
    """
    for n in (n1, n2):
        if not n.initial or not n.initial.is_set():
            raise NetError("choice needs non-empty plain initial markings")
    places, table = _disjoint_union(n1, n2)
    m1, m2 = _tag("L.", n1.initial), _tag("R.", n2.initial)
    fresh = product_multiset(m1, m2)
    places |= {_pair_id(x) for x in fresh}
    for side, n, own in (("L.", n1, n1.initial), ("R.", n2, n2.initial)):
        for t in n.sorted_transitions():
            for k in (n.pre[t] & own).sub_multisets():
                if not k:
                    continue
                kt = _tag(side, k)
                prods = product_multiset(kt, m2) if side == "L." else product_multiset(m1, kt)
                pre = _tag(side, n.pre[t]) - kt + prods.map(_pair_id)
                kid = ",".join(s for s in k.elements())
                table[f"{side}{t}^{{{kid}}}"] = (n.labels[t], pre, _tag(side, n.post[t]))
    if set(table) & places:
        raise NetError("fresh transition id clashes with a place id")
    return Net(places, table, fresh.map(_pair_id), n1.alphabet | n2.alphabet, n1.name)


def denote(p: Term, max_markings: int = 10_000, name: str = "den") -> Net:
    """Apply the net operators along the structure of ``p``.

    Recursive subterms are interpreted by the operational semantics.  After
    each operator the net is cut down to its reachable part, which is what
    makes ``a.0 + a.0`` come out with two transitions rather than four.
    """
    require_closed_guarded(p)
    return _denote(p, max_markings).renamed(name)


def _denote(p: Term, bound: int) -> Net:
    if isinstance(p, Inaction):
        n = den_zero(p.alphabet)
    elif isinstance(p, Prefix):
        n = den_prefix(p.action, _denote(p.body, bound))
    elif isinstance(p, Choice):
        n = den_choice(_denote(p.left, bound), _denote(p.right, bound))
    elif isinstance(p, Parallel):
        n = den_par(_denote(p.left, bound), _denote(p.right, bound))
    elif isinstance(p, Rename):
        n = den_rename(p.renaming, _denote(p.body, bound))
    elif isinstance(p, Rec):
        n = operational_net(p, bound)
    else:
        raise TypeError(p)
    return reachable_part(n, bound)
