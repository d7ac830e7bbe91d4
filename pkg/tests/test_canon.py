import random

from hypothesis import given, settings
from hypothesis import strategies as st

from ccsp_nets.canon import canonical_code

import oracles


def _random_graph(rng, n=None):
    n = rng.randint(0, 6) if n is None else n
    colors = [rng.choice("xy") for _ in range(n)]
    edges = {}
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < 0.3:
                edges[(u, v)] = rng.choice((1, 2))
    return colors, edges


def _permuted(colors, edges, perm):
    new_colors = [None] * len(colors)
    for i, c in enumerate(colors):
        new_colors[perm[i]] = c
    return new_colors, {(perm[u], perm[v]): c for (u, v), c in edges.items()}


def test_empty_graph():
    assert canonical_code([], {}) == canonical_code([], {})


def test_colours_matter():
    assert canonical_code(["x"], {}) != canonical_code(["y"], {})


def test_edge_colours_matter():
    assert canonical_code(["x", "x"], {(0, 1): 1}) != canonical_code(["x", "x"], {(0, 1): 2})


def test_direction_matters():
    a = canonical_code(["x", "y"], {(0, 1): 1})
    b = canonical_code(["x", "y"], {(1, 0): 1})
    assert a != b


def test_regular_graphs_need_backtracking():
    # a 6-cycle and two triangles: same colour refinement, not isomorphic
    cycle = {(i, (i + 1) % 6): 1 for i in range(6)}
    cycle.update({((i + 1) % 6, i): 1 for i in range(6)})
    tri = {}
    for base in (0, 3):
        for i in range(3):
            u, v = base + i, base + (i + 1) % 3
            tri[(u, v)] = tri[(v, u)] = 1
    assert canonical_code(["x"] * 6, cycle) != canonical_code(["x"] * 6, tri)
    assert not oracles.isomorphic(["x"] * 6, cycle, ["x"] * 6, tri)


def test_invariant_under_permutation():
    rng = random.Random(2)
    for _ in range(300):
        colors, edges = _random_graph(rng)
        perm = list(range(len(colors)))
        rng.shuffle(perm)
        assert canonical_code(colors, edges) == canonical_code(*_permuted(colors, edges, perm))


def test_agrees_with_brute_force():
    rng = random.Random(4)
    same = 0
    for _ in range(400):
        n = rng.randint(1, 5)
        g1, g2 = _random_graph(rng, n), _random_graph(rng, n)
        expected = oracles.isomorphic(*g1, *g2)
        assert (canonical_code(*g1) == canonical_code(*g2)) == expected
        same += expected
    assert same > 0


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_permutation_property(data):
    n = data.draw(st.integers(0, 7))
    colors = data.draw(st.lists(st.sampled_from("xyz"), min_size=n, max_size=n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = {p: data.draw(st.integers(1, 2)) for p in chosen}
    perm = data.draw(st.permutations(range(n)))
    assert canonical_code(colors, edges) == canonical_code(*_permuted(colors, edges, list(perm)))
