import random
from itertools import permutations

import pytest

from ccsp_nets import corpus
from ccsp_nets.denotational import denote
from ccsp_nets.equivalences import NO, UNKNOWN, YES, SpCertificate, SpRefutation, sp_check, validate_sp_bisimulation
from ccsp_nets.equivalences.linking import format_linking, matchings, proj, sub_linkings
from ccsp_nets.inevitability import counterexample_family
from ccsp_nets.multiset import Multiset
from ccsp_nets.netfile import parse_net
from ccsp_nets.operational import operational_net
from ccsp_nets.petri import case_graph
from ccsp_nets.syntax import parse

import oracles
from netgen import isomorphic_copy, random_net, seeded_pairs


def _bounded(*nets) -> bool:
    return not any(case_graph(n, 300).truncated for n in nets)


# linkings ---------------------------------------------------------------------------------


def test_projections():
    l = Multiset({("x", "y"): 2, ("x", "z"): 1})
    assert proj(l, 1) == Multiset({"x": 3})
    assert proj(l, 2) == Multiset({"y": 2, "z": 1})


def test_matchings_are_every_bijection():
    rng = random.Random(0)
    for _ in range(100):
        xs = [rng.choice("pqr") for _ in range(rng.randint(0, 4))]
        ys = [rng.choice("uvw") for _ in xs]
        m1, m2 = Multiset(xs), Multiset(ys)
        expected = {Multiset(list(zip(xs, perm))) for perm in permutations(ys)}
        got = list(matchings(m1, m2))
        assert len(got) == len(set(got))
        assert set(got) == expected


def test_matchings_of_different_sizes():
    assert list(matchings(Multiset("ab"), Multiset("a"))) == []


def test_sub_linkings():
    l = Multiset({("x", "y"): 1, ("x", "z"): 1, ("w", "y"): 1})
    subs = set(sub_linkings(l, Multiset("x"), 1))
    assert subs == {Multiset({("x", "y"): 1}), Multiset({("x", "z"): 1})}
    assert len(set(sub_linkings(l, Multiset("yy"), 2))) == 1
    assert set(sub_linkings(l, Multiset("zz"), 2)) == set()


def test_format_linking():
    assert format_linking(Multiset({("a", "b"): 2})) == "{(a, b)x2}"


# small examples -------------------------------------------------------------------------------


def test_duplicate_summand_nets():
    t = corpus.term("a0a0")
    assert sp_check(operational_net(t), denote(t)).kind == YES


def test_store_operational_and_denotational():
    t = corpus.term("store2")
    v = sp_check(operational_net(t), denote(t))
    assert v.kind == YES
    assert isinstance(v.certificate, SpCertificate)


def test_different_alphabets():
    v = sp_check(operational_net(parse("a.0{a}")), operational_net(parse("a.0{a,b}")))
    assert v.kind == NO and isinstance(v.certificate, SpRefutation)


def test_sequence_versus_concurrency():
    v = sp_check(operational_net(parse("a.b.0{a,b}")), operational_net(parse("a.0{a} || b.0{b}")))
    assert v.kind == NO


def test_interleaving_is_not_enough():
    # a||b and a.b+b.a have the same LTS but different concurrency
    t1, t2 = parse("a.0{a} || b.0{b}"), parse("a.b.0{a,b} + b.a.0{a,b}")
    assert sp_check(operational_net(t1), operational_net(t2)).kind == NO


def test_refutation_is_readable():
    v = sp_check(operational_net(parse("a.0{a,b}")), operational_net(parse("b.0{a,b}")))
    assert v.kind == NO
    assert v.certificate.dump().strip()


def test_truncation_gives_unknown():
    t = corpus.term("store2")
    v = sp_check(operational_net(t), denote(t), max_markings=3)
    assert v.kind == UNKNOWN


def test_family_nets_are_not_sp_bisimilar():
    assert sp_check(counterexample_family(2, "n1"), counterexample_family(2, "n2")).kind == NO


@pytest.mark.parametrize("base", ["pb-gap", "strong-gap"])
def test_gap_nets_are_sp_bisimilar(base):
    assert sp_check(corpus.net(base + "-1"), corpus.net(base + "-2")).kind == YES


# certificates --------------------------------------------------------------------------------


@pytest.mark.parametrize("name", corpus.term_names())
def test_certificates_validate(name):
    t = corpus.term(name)
    n1, n2 = operational_net(t), denote(t)
    v = sp_check(n1, n2)
    assert v.kind == YES
    ok, msg = validate_sp_bisimulation(n1, n2, v.certificate.linkings, v.certificate.initial)
    assert ok, msg


def test_validator_rejects_a_broken_certificate():
    t = corpus.term("store2")
    n1, n2 = operational_net(t), denote(t)
    cert = sp_check(n1, n2).certificate
    # keeping only the initial linking leaves every obligation unanswered
    ok, _ = validate_sp_bisimulation(n1, n2, {cert.initial}, cert.initial)
    assert not ok


def test_validator_checks_the_initial_linking():
    n = operational_net(parse("a.0{a}"))
    cert = sp_check(n, n).certificate
    ok, msg = validate_sp_bisimulation(n, n, cert.linkings - {cert.initial}, cert.initial)
    assert not ok and "initial" in msg


def test_certificate_dump():
    n = operational_net(parse("a.0{a}"))
    text = sp_check(n, n).certificate.dump()
    assert text.startswith("initial {")


# against the naive oracle -----------------------------------------------------------------------


def test_agrees_with_naive_fixpoint():
    seen = {YES: 0, NO: 0}
    for kind, a, b in seeded_pairs(3, 250):
        if not _bounded(a, b):
            continue
        v = sp_check(a, b)
        assert v.certain
        assert v.is_yes == oracles.sp_bisimilar(a, b), kind
        seen[v.kind] += 1
        if v.is_yes:
            assert validate_sp_bisimulation(a, b, v.certificate.linkings, v.certificate.initial)[0]
    assert seen[YES] > 50 and seen[NO] > 20


def test_multiset_markings():
    n1 = parse_net("net m\nalphabet a\nplace s init 2\nplace x\ntrans t label a in s out x\n")
    n2 = parse_net("net m2\nalphabet a\nplace p init 1\nplace q init 1\nplace x\n"
                   "trans u label a in p out x\ntrans w label a in q out x\n")
    v = sp_check(n1, n2)
    assert v.is_yes == oracles.sp_bisimilar(n1, n2)
    assert v.kind == YES


# relation properties --------------------------------------------------------------------------


@pytest.mark.parametrize("name", corpus.term_names())
def test_reflexive_on_corpus(name):
    for net in (operational_net(corpus.term(name)), denote(corpus.term(name))):
        assert sp_check(net, net).kind == YES


def test_reflexive_on_random_nets():
    rng = random.Random(12)
    for _ in range(100):
        n = random_net(rng)
        if _bounded(n):
            assert sp_check(n, n).kind == YES
            assert sp_check(n, isomorphic_copy(rng, n)).kind == YES


def test_symmetric():
    for _, a, b in seeded_pairs(9, 150):
        if _bounded(a, b):
            assert sp_check(a, b).kind == sp_check(b, a).kind


def test_transitive_spot_check():
    rng = random.Random(14)
    checked = 0
    nets = [n for n in (random_net(rng, max_transitions=3) for _ in range(60)) if _bounded(n)]
    nets += [isomorphic_copy(rng, n) for n in nets[:20]]
    for a in nets[:25]:
        for b in nets:
            if sp_check(a, b).kind != YES:
                continue
            for c in nets:
                if sp_check(b, c).kind == YES:
                    assert sp_check(a, c).kind == YES
                    checked += 1
    assert checked >= 20
