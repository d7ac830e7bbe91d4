"""Operational Petri-net semantics of CCSP.

Places are inactions ``0_A``, prefixed terms ``aE`` and the composite forms
``mu+nu``, ``mu||_A``, ``_A||mu`` and ``R(mu)``.  :func:`dex` sends a closed
term to its set of initial places; :func:`derive` lists every transition
``H --a--> J`` derivable from the net rules whose preset lies inside a
given finite set of places.  The infinite system-wide net is never built:
:func:`operational_net` alternates rule derivation with the token game
starting from ``dex(P)`` until closure.

The two choice rules take a premise ``H u K --a--> J`` to
``H u (K+dex(Q)) --a--> J`` (and symmetrically).  When deriving inside a
marking ``M`` the candidate sets ``dex(Q)`` are the subsets ``D`` of the
right components of choice places in ``M`` that are images of ``dex`` (see
:func:`is_dex_image`); ``K`` ranges over left components ``mu`` with
``mu+nu`` in ``M`` for all ``nu`` in ``D``; ``H`` ranges over the non-choice
places of ``M``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .multiset import Multiset
from .petri import Net, NetError
from .syntax import pretty, pretty_renaming
from .terms import Choice, Inaction, Parallel, Prefix, Rec, Rename, Renaming, Term, Var, alphabet, require_closed_guarded, unfold


class Place:
    """Composite places; inaction and prefix places are the terms themselves."""

    __slots__ = ()


@dataclass(frozen=True)
class ChoicePlace(Place):
    left: object
    right: object


@dataclass(frozen=True)
class LeftPar(Place):
    place: object
    sync: frozenset[str]


@dataclass(frozen=True)
class RightPar(Place):
    sync: frozenset[str]
    place: object


@dataclass(frozen=True)
class RenamePlace(Place):
    renaming: Renaming
    place: object


PlaceSet = frozenset
Rule = tuple  # (frozenset preset, action, frozenset postset)


class NetTruncated(NetError):
    """The reachable part of the operational net exceeds the marking bound."""


@lru_cache(maxsize=None)
def _dex(p: Term) -> frozenset:
    if isinstance(p, (Inaction, Prefix)):
        return frozenset({p})
    if isinstance(p, Rename):
        return frozenset(RenamePlace(p.renaming, mu) for mu in _dex(p.body))
    if isinstance(p, Choice):
        return frozenset(ChoicePlace(mu, nu) for mu in _dex(p.left) for nu in _dex(p.right))
    if isinstance(p, Parallel):
        a = alphabet(p.left) & alphabet(p.right)
        return frozenset(LeftPar(mu, a) for mu in _dex(p.left)) | frozenset(RightPar(a, nu) for nu in _dex(p.right))
    if isinstance(p, Rec):
        return _dex(unfold(p))
    if isinstance(p, Var):
        raise ValueError(f"free variable {p.name}")
    raise TypeError(p)


def dex(p: Term) -> frozenset:
    """Decompose and expand a closed term into its set of places."""
    require_closed_guarded(p)
    return _dex(p)


@lru_cache(maxsize=None)
def place_alphabet(mu) -> frozenset[str]:
    if isinstance(mu, (Inaction, Prefix)):
        return alphabet(mu)
    if isinstance(mu, ChoicePlace):
        return place_alphabet(mu.left) | place_alphabet(mu.right)
    if isinstance(mu, (LeftPar, RightPar)):
        return place_alphabet(mu.place)
    if isinstance(mu, RenamePlace):
        return mu.renaming.image(place_alphabet(mu.place))
    raise TypeError(mu)


def _set_alphabet(places) -> frozenset[str]:
    return frozenset().union(*(place_alphabet(mu) for mu in places))


@lru_cache(maxsize=None)
def is_dex_image(d: frozenset) -> bool:
    """Whether ``d == dex(Q)`` for some closed term ``Q``.

    Images are singletons ``{0_A}`` or ``{aE}``, renamings ``R(D)`` of
    images, full products ``D1+D2`` of images, and ``D1||_A u _A||D2`` with
    both sides non-empty images and ``A`` their common alphabet.
    """
    if not d:
        return False
    first = next(iter(d))
    if isinstance(first, (Inaction, Prefix)):
        return len(d) == 1
    if isinstance(first, RenamePlace):
        if not all(isinstance(mu, RenamePlace) and mu.renaming == first.renaming for mu in d):
            return False
        return is_dex_image(frozenset(mu.place for mu in d))
    if isinstance(first, ChoicePlace):
        if not all(isinstance(mu, ChoicePlace) for mu in d):
            return False
        ls = frozenset(mu.left for mu in d)
        rs = frozenset(mu.right for mu in d)
        return len(d) == len(ls) * len(rs) and is_dex_image(ls) and is_dex_image(rs)
    if isinstance(first, (LeftPar, RightPar)):
        if not all(isinstance(mu, (LeftPar, RightPar)) and mu.sync == first.sync for mu in d):
            return False
        ls = frozenset(mu.place for mu in d if isinstance(mu, LeftPar))
        rs = frozenset(mu.place for mu in d if isinstance(mu, RightPar))
        return (
            is_dex_image(ls)
            and is_dex_image(rs)
            and _set_alphabet(ls) & _set_alphabet(rs) == first.sync
        )
    return False


def _image_subsets(components: frozenset) -> list[frozenset]:
    items = sorted(components, key=place_name)
    if len(items) > 16:
        raise NetError("too many choice components to enumerate candidate summands")
    out = []
    for n in range(1, len(items) + 1):
        for combo in combinations(items, n):
            d = frozenset(combo)
            if is_dex_image(d):
                out.append(d)
    return out


def derive(places) -> frozenset[Rule]:
    """All derivable transitions whose preset is contained in ``places``."""
    return _derive(frozenset(places))


@lru_cache(maxsize=None)
def _derive(m: frozenset) -> frozenset[Rule]:
    out: set = set()
    renames: dict = {}
    pars: dict = {}
    choices = []
    for mu in m:
        if isinstance(mu, Prefix):
            out.add((frozenset({mu}), mu.action, _dex(mu.body)))
        elif isinstance(mu, RenamePlace):
            renames.setdefault(mu.renaming, set()).add(mu.place)
        elif isinstance(mu, LeftPar):
            pars.setdefault(mu.sync, (set(), set()))[0].add(mu.place)
        elif isinstance(mu, RightPar):
            pars.setdefault(mu.sync, (set(), set()))[1].add(mu.place)
        elif isinstance(mu, ChoicePlace):
            choices.append(mu)

    for r, inner in renames.items():
        for h, a, j in _derive(frozenset(inner)):
            for b in r.targets(a):
                out.add((_wrap(h, lambda x: RenamePlace(r, x)), b, _wrap(j, lambda x: RenamePlace(r, x))))

    for sync, (ls, rs) in pars.items():
        left = _derive(frozenset(ls)) if ls else frozenset()
        right = _derive(frozenset(rs)) if rs else frozenset()
        wl = lambda x, s=sync: LeftPar(x, s)  # noqa: E731
        wr = lambda x, s=sync: RightPar(s, x)  # noqa: E731
        for h, a, j in left:
            if a not in sync:
                out.add((_wrap(h, wl), a, _wrap(j, wl)))
        for h, a, j in right:
            if a not in sync:
                out.add((_wrap(h, wr), a, _wrap(j, wr)))
        for h, a, j in left:
            if a in sync:
                for k, b, l in right:
                    if a == b:
                        out.add((_wrap(h, wl) | _wrap(k, wr), a, _wrap(j, wl) | _wrap(l, wr)))

    if choices:
        plain = frozenset(mu for mu in m if not isinstance(mu, ChoicePlace))
        cset = frozenset(choices)
        for side in (0, 1):
            own = frozenset(mu.right if side else mu.left for mu in choices)
            other = frozenset(mu.left if side else mu.right for mu in choices)
            for d in _image_subsets(other):
                pair = (lambda k, n: ChoicePlace(n, k)) if side else (lambda k, n: ChoicePlace(k, n))
                kc = frozenset(k for k in own if all(pair(k, n) in cset for n in d))
                if not kc:
                    continue
                for pre, a, post in _derive(plain | kc):
                    out.update(_choice_conclusions(pre, a, post, plain, kc, d, pair))
    return frozenset(out)


def _wrap(places, f) -> frozenset:
    return frozenset(f(x) for x in places)


def _choice_conclusions(pre, a, post, plain, kc, d, pair):
    forced_k = [x for x in pre if x not in plain]
    if any(x not in kc for x in forced_k):
        return
    free = sorted((x for x in pre if x in plain and x in kc), key=place_name)
    fixed_h = frozenset(x for x in pre if x in plain and x not in kc)
    for n in range(len(free) + 1):
        for extra in combinations(free, n):
            k = frozenset(forced_k) | frozenset(extra)
            if not k:
                continue
            h = fixed_h | (frozenset(free) - k)
            yield (h | frozenset(pair(x, y) for x in k for y in d), a, post)


def _w(s: str) -> str:
    return f"({s})" if " " in s or "||" in s else s


@lru_cache(maxsize=None)
def place_name(mu) -> str:
    """Human-readable, injective place identifier."""
    if isinstance(mu, (Inaction, Prefix)):
        return pretty(mu)
    if isinstance(mu, ChoicePlace):
        return f"{_w(place_name(mu.left))} + {_w(place_name(mu.right))}"
    if isinstance(mu, LeftPar):
        return f"{_w(place_name(mu.place))}||_{{{','.join(sorted(mu.sync))}}}"
    if isinstance(mu, RightPar):
        return f"_{{{','.join(sorted(mu.sync))}}}||{_w(place_name(mu.place))}"
    if isinstance(mu, RenamePlace):
        return f"{pretty_renaming(mu.renaming)}({place_name(mu.place)})"
    raise TypeError(mu)


def _rule_key(rule: Rule) -> tuple:
    pre, a, post = rule
    return (sorted(map(place_name, pre)), a, sorted(map(place_name, post)))


@dataclass(frozen=True)
class OperationalNet:
    """The extracted net together with the place expressions behind its ids."""

    net: Net
    places: dict  # place id -> place expression
    rules: dict  # transition id -> (preset, action, postset) over place expressions


def operational_net(p: Term, max_markings: int = 10_000, name: str = "op") -> Net:
    return build_operational_net(p, max_markings, name).net


def build_operational_net(p: Term, max_markings: int = 10_000, name: str = "op") -> OperationalNet:
    """The reachable part of the operational net with initial marking ``dex(p)``."""
    require_closed_guarded(p)
    m0 = Multiset(_dex(p))
    seen = {m0}
    queue = deque([m0])
    rules: set = set()
    places: set = set(m0)
    while queue:
        m = queue.popleft()
        for rule in sorted(_derive(m.support()), key=_rule_key):
            pre, _, post = rule
            if not Multiset(pre) <= m:
                continue
            rules.add(rule)
            places.update(post)
            m2 = m - Multiset(pre) + Multiset(post)
            if m2 not in seen:
                if len(seen) >= max_markings:
                    raise NetTruncated(f"more than {max_markings} reachable markings")
                seen.add(m2)
                queue.append(m2)
    names = {}
    for mu in places:
        s = place_name(mu)
        if s in names and names[s] != mu:
            raise AssertionError(f"place name collision: {s}")
        names[s] = mu
    ordered = sorted(rules, key=_rule_key)
    table, by_id = {}, {}
    for i, rule in enumerate(ordered, 1):
        pre, a, post = rule
        tid = f"t{i}"
        table[tid] = (a, Multiset(map(place_name, pre)), Multiset(map(place_name, post)))
        by_id[tid] = rule
    net = Net(names, table, m0.map(place_name), alphabet(p), name)
    return OperationalNet(net, names, by_id)
