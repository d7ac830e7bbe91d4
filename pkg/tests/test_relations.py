import random

import pytest

from ccsp_nets import corpus
from ccsp_nets.denotational import denote
from ccsp_nets.equivalences import NO, UNKNOWN, YES, NotSafe, pb_check, sp_check, strong_check
from ccsp_nets.equivalences.linking import proj
from ccsp_nets.equivalences.relations import _hat
from ccsp_nets.netfile import parse_net
from ccsp_nets.operational import operational_net
from ccsp_nets.petri import case_graph, is_safe
from ccsp_nets.syntax import parse

import oracles
from netgen import isomorphic_copy, random_net, relabel_one, with_duplicate

UNSAFE = "net u\nalphabet a\nplace s init 1\nplace x\ntrans t label a in s out x x\n"


def _tiny_pairs(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = random_net(rng, max_places=3, max_transitions=3)
        pick = rng.randint(0, 3)
        if pick == 0:
            b = random_net(rng, max_places=3, max_transitions=3)
        elif pick == 1:
            b = isomorphic_copy(rng, a)
        elif pick == 2:
            b = with_duplicate(rng, a)
        else:
            b = relabel_one(rng, a)
        if is_safe(a, 100) and is_safe(b, 100):
            out.append((a, b))
    return out


# against the naive oracles ----------------------------------------------------------------------


def test_strong_agrees_with_naive_search():
    seen = set()
    for a, b in _tiny_pairs(1, 150):
        v = strong_check(a, b)
        assert v.certain
        assert v.is_yes == oracles.strong_bisimilar(a, b)
        seen.add(v.kind)
    assert seen == {YES, NO}


def test_pb_agrees_with_naive_search():
    seen = set()
    for a, b in _tiny_pairs(2, 150):
        v = pb_check(a, b)
        assert v.certain
        assert v.is_yes == oracles.place_bisimilar(a, b)
        seen.add(v.kind)
    assert seen == {YES, NO}


def test_strong_certificate_is_closed():
    t = corpus.term("store2")
    n1, n2 = operational_net(t), denote(t)
    v = strong_check(n1, n2)
    assert v.kind == YES
    b, linkings, l0 = v.certificate
    marks1, marks2 = case_graph(n1).nodes, case_graph(n2).nodes
    assert set(_hat(b, marks1, marks2)) == set(linkings)
    assert l0 in linkings and proj(l0, 1) == n1.initial and proj(l0, 2) == n2.initial
    assert oracles._closed(set(linkings), (n1, n2))


def test_pb_certificate_is_a_relation():
    n = operational_net(parse("a.0{a} || b.0{b}"))
    v = pb_check(n, n)
    assert v.kind == YES
    assert all(s1 in n.places and s2 in n.places for s1, s2 in v.certificate)


# the gap nets -----------------------------------------------------------------------------------


def test_pb_gap():
    n1, n2 = corpus.net("pb-gap-1"), corpus.net("pb-gap-2")
    assert sp_check(n1, n2).kind == YES
    assert strong_check(n1, n2).kind == YES
    assert pb_check(n1, n2).kind == NO
    assert not oracles.place_bisimilar(n1, n2)
    assert oracles.strong_bisimilar(n1, n2)


def test_strong_gap():
    n1, n2 = corpus.net("strong-gap-1"), corpus.net("strong-gap-2")
    assert sp_check(n1, n2).kind == YES
    assert strong_check(n1, n2).kind == NO
    # too many place pairs for the place-bisimilarity search
    assert pb_check(n1, n2).kind == UNKNOWN


def test_strong_gap_half_is_strongly_bisimilar_to_itself():
    n = corpus.net("strong-gap-2")
    assert strong_check(n, n).kind == YES


# fidelity ---------------------------------------------------------------------------------------------


def test_unsafe_input_is_rejected():
    u = parse_net(UNSAFE)
    with pytest.raises(NotSafe):
        strong_check(u, u)


def test_pb_handles_unsafe_nets():
    u = parse_net(UNSAFE)
    assert pb_check(u, u).kind == YES


def test_atom_threshold_gives_unknown():
    t = corpus.term("store2")
    assert pb_check(operational_net(t), denote(t), max_atoms=4).kind == UNKNOWN


def test_node_bound_gives_unknown():
    n1, n2 = corpus.net("strong-gap-1"), corpus.net("strong-gap-2")
    assert strong_check(n1, n2, max_nodes=1).kind == UNKNOWN


def test_different_alphabets():
    assert strong_check(operational_net(parse("a.0{a}")), operational_net(parse("b.0{b}"))).kind == NO
    assert pb_check(operational_net(parse("a.0{a}")), operational_net(parse("b.0{b}"))).kind == NO


@pytest.mark.parametrize("name", corpus.term_names())
def test_corpus_hierarchy(name):
    t = corpus.term(name)
    n1, n2 = operational_net(t), denote(t)
    sv, st, pb = sp_check(n1, n2), strong_check(n1, n2), pb_check(n1, n2)
    if pb.is_yes:
        assert st.kind != NO
    if st.is_yes:
        assert sv.is_yes
    assert st.kind == YES
