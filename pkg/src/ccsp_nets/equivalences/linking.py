"""Linkings: multisets of place pairs ``(s1, s2)`` between two nets."""

from __future__ import annotations

from collections.abc import Iterator

from ..multiset import Multiset


def proj(l: Multiset, side: int) -> Multiset:
    """``pi_1`` or ``pi_2`` of a linking."""
    return l.map(lambda link: link[side - 1])


def _distribute(n: int, caps: list[tuple[object, int]], i: int = 0) -> Iterator[list[tuple[object, int]]]:
    """Ways to put ``n`` items into the capacities ``caps[i:]``."""
    if n == 0:
        yield []
        return
    if i == len(caps):
        return
    y, cap = caps[i]
    for k in range(min(n, cap), -1, -1):
        for rest in _distribute(n - k, caps, i + 1):
            yield ([(y, k)] if k else []) + rest


def matchings(m1: Multiset, m2: Multiset) -> Iterator[Multiset]:
    """All linkings ``l`` with ``pi_1(l) = m1`` and ``pi_2(l) = m2``."""
    if m1.size != m2.size:
        return
    xs = m1.sorted_items()

    def rec(i: int, remaining: dict) -> Iterator[dict]:
        if i == len(xs):
            yield {}
            return
        x, n = xs[i]
        caps = [(y, c) for y, c in sorted(remaining.items()) if c]
        for choice in _distribute(n, caps):
            rem = dict(remaining)
            for y, k in choice:
                rem[y] -= k
            for rest in rec(i + 1, rem):
                d = dict(rest)
                for y, k in choice:
                    d[(x, y)] = k
                yield d

    for d in rec(0, dict(m2.items())):
        yield Multiset(d)


def sub_linkings(l: Multiset, m: Multiset, side: int) -> Iterator[Multiset]:
    """All ``c <= l`` with ``pi_side(c) = m``."""
    groups: dict = {}
    for link, n in l.sorted_items():
        groups.setdefault(link[side - 1], []).append((link, n))
    items = m.sorted_items()
    if any(sum(n for _, n in groups.get(x, ())) < k for x, k in items):
        return

    def rec(i: int) -> Iterator[list]:
        if i == len(items):
            yield []
            return
        x, k = items[i]
        for choice in _distribute(k, groups[x]):
            for rest in rec(i + 1):
                yield choice + rest

    for parts in rec(0):
        yield Multiset(dict(parts))


def format_linking(l: Multiset) -> str:
    parts = []
    for (s1, s2), n in l.sorted_items():
        parts.append(f"({s1}, {s2})" + (f"x{n}" if n > 1 else ""))
    return "{" + ", ".join(parts) + "}"
