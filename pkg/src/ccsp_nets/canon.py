"""Canonical codes for small vertex- and edge-coloured directed graphs.

Colour refinement followed by individualisation of the first non-trivial
cell, taking the lexicographically least code over all branches.  Twins
(vertices whose transposition is an automorphism of the coloured graph)
are branched on only once, which keeps independent parallel components
and isolated vertices cheap.  Colours must be built from ints, strings
and tuples so that they sort consistently.
"""

from __future__ import annotations

from collections.abc import Hashable, Sequence


def _compact(sigs: Sequence) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


class _Graph:
    def __init__(self, colors: Sequence, edges: dict[tuple[int, int], Hashable]):
        self.n = len(colors)
        self.colors = list(colors)
        self.edges = dict(edges)
        self.out: list[list] = [[] for _ in range(self.n)]
        self.inn: list[list] = [[] for _ in range(self.n)]
        for (u, v), c in self.edges.items():
            self.out[u].append((v, c))
            self.inn[v].append((u, c))

    def refine(self, cols: list[int]) -> list[int]:
        n_classes = len(set(cols))
        while True:
            sigs = [
                (
                    cols[v],
                    tuple(sorted((c, cols[w]) for w, c in self.out[v])),
                    tuple(sorted((c, cols[w]) for w, c in self.inn[v])),
                )
                for v in range(self.n)
            ]
            new = _compact(sigs)
            k = len(set(new))
            if k == n_classes:
                return new
            cols, n_classes = new, k

    def twins(self, u: int, v: int) -> bool:
        e = self.edges
        if e.get((u, u)) != e.get((v, v)) or e.get((u, v)) != e.get((v, u)):
            return False
        nu = {w: c for w, c in self.out[u] if w not in (u, v)}
        nv = {w: c for w, c in self.out[v] if w not in (u, v)}
        if nu != nv:
            return False
        iu = {w: c for w, c in self.inn[u] if w not in (u, v)}
        iv = {w: c for w, c in self.inn[v] if w not in (u, v)}
        return iu == iv

    def code(self, cols: list[int]) -> tuple:
        pos = cols  # discrete: a permutation of 0..n-1
        inv = [0] * self.n
        for v, p in enumerate(pos):
            inv[p] = v
        return (
            tuple(self.colors[inv[p]] for p in range(self.n)),
            tuple(sorted((pos[u], pos[v], c) for (u, v), c in self.edges.items())),
        )

    def search(self, cols: list[int]) -> tuple:
        cols = self.refine(cols)
        if len(set(cols)) == self.n:
            return self.code(cols)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(cols):
            cells.setdefault(c, []).append(v)
        target = min(c for c, vs in cells.items() if len(vs) > 1)
        reps: list[int] = []
        for v in cells[target]:
            if not any(self.twins(v, r) for r in reps):
                reps.append(v)
        best = None
        for v in reps:
            branch = [2 * c + 1 for c in cols]
            branch[v] = 2 * cols[v]
            code = self.search(_compact(branch))
            if best is None or code < best:
                best = code
        return best


def canonical_code(colors: Sequence, edges: dict[tuple[int, int], Hashable]) -> tuple:
    """Isomorphism-invariant code of the graph on vertices ``0..len(colors)-1``.

    Two coloured graphs get equal codes iff they are isomorphic by a
    colour-preserving bijection that also preserves edge colours.
    """
    g = _Graph(colors, edges)
    if g.n == 0:
        return ((), ())
    return g.search(_compact(g.colors))
