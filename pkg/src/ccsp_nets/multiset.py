"""Finitely supported multisets.

Markings, presets, postsets and linkings are all multisets.  A
:class:`Multiset` is immutable and hashable; zero counts are never stored,
so two multisets are equal exactly when they have the same counts.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping
from itertools import product
from typing import Any


class MultisetUnderflow(ValueError):
    """Raised by ``a - b`` when ``b`` is not contained in ``a``."""


def _sort_key(x: Any) -> str:
    return repr(x) if not isinstance(x, str) else x


class Multiset(Mapping):
    __slots__ = ("_counts", "_hash")

    def __init__(self, data: Mapping[Hashable, int] | Iterable[Hashable] = ()):
        counts: dict = {}
        if isinstance(data, Mapping):
            for x, n in data.items():
                if n < 0:
                    raise ValueError(f"negative count {n} for {x!r}")
                if n:
                    counts[x] = counts.get(x, 0) + n
        else:
            for x in data:
                counts[x] = counts.get(x, 0) + 1
        self._counts = counts
        self._hash = None

    # Mapping protocol: missing elements have count 0.
    def __getitem__(self, x: Hashable) -> int:
        return self._counts.get(x, 0)

    def __iter__(self) -> Iterator:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, x: object) -> bool:
        return x in self._counts

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Multiset):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{x!r}: {n}" for x, n in self.sorted_items())
        return f"Multiset({{{inner}}})"

    @property
    def size(self) -> int:
        """``|A|``, the sum of all counts."""
        return sum(self._counts.values())

    def sorted_items(self) -> list[tuple[Any, int]]:
        return sorted(self._counts.items(), key=lambda kv: _sort_key(kv[0]))

    def elements(self) -> Iterator:
        """Iterate over elements, repeating each according to its count."""
        for x, n in self.sorted_items():
            for _ in range(n):
                yield x

    def is_set(self) -> bool:
        return all(n == 1 for n in self._counts.values())

    def support(self) -> frozenset:
        return frozenset(self._counts)

    def __add__(self, other: Multiset) -> Multiset:
        counts = dict(self._counts)
        for x, n in other._counts.items():
            counts[x] = counts.get(x, 0) + n
        return Multiset(counts)

    def __sub__(self, other: Multiset) -> Multiset:
        if not other <= self:
            raise MultisetUnderflow(f"{other!r} is not contained in {self!r}")
        counts = dict(self._counts)
        for x, n in other._counts.items():
            counts[x] -= n
        return Multiset(counts)

    def __and__(self, other: Multiset) -> Multiset:
        return Multiset({x: min(n, other[x]) for x, n in self._counts.items()})

    def __le__(self, other: Multiset) -> bool:
        return all(other[x] >= n for x, n in self._counts.items())

    def __ge__(self, other: Multiset) -> bool:
        return other <= self

    def map(self, f) -> Multiset:
        """Image multiset: the count of ``y`` sums the counts of all ``x`` with ``f(x) == y``."""
        counts: dict = {}
        for x, n in self._counts.items():
            y = f(x)
            counts[y] = counts.get(y, 0) + n
        return Multiset(counts)

    def sub_multisets(self, size: int | None = None) -> Iterator[Multiset]:
        """All ``K <= self`` (optionally with ``|K| == size``), in deterministic order."""
        items = self.sorted_items()
        for combo in product(*(range(n + 1) for _, n in items)):
            if size is not None and sum(combo) != size:
                continue
            yield Multiset({x: k for (x, _), k in zip(items, combo)})


EMPTY = Multiset()


def ms_sum(a: Multiset, b: Multiset) -> Multiset:
    return a + b


def ms_diff(a: Multiset, b: Multiset) -> Multiset:
    return a - b


def ms_leq(a: Multiset, b: Multiset) -> bool:
    return a <= b


def product_multiset(a: Multiset, b: Multiset) -> Multiset:
    """``{(x, y) | x in a, y in b}`` with multiplicity ``a(x) * b(y)``."""
    return Multiset({(x, y): m * n for x, m in a.items() for y, n in b.items()})
