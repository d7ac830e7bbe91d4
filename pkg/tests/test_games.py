import pytest

from ccsp_nets import corpus
from ccsp_nets.denotational import denote
from ccsp_nets.equivalences import (
    NO,
    UNKNOWN,
    YES,
    caus_check_bounded,
    fcb_check_bounded,
    sp_check,
    sp_check_process_based,
)
from ccsp_nets.inevitability import counterexample_family
from ccsp_nets.operational import operational_net
from ccsp_nets.petri import case_graph
from ccsp_nets.processes import enumerate_processes, extend_process, extensions, initial_process
from ccsp_nets.sos import ib_check, lts_of_case_graph
from ccsp_nets.syntax import parse

from netgen import seeded_pairs

K = 6
BUDGET = 20_000
CHECKS = (sp_check_process_based, fcb_check_bounded, caus_check_bounded)


def _op(text):
    return operational_net(parse(text))


def _bounded(*nets):
    return not any(case_graph(n, 300).truncated for n in nets)


def test_sequence_versus_concurrency():
    seq, conc = _op("a.b.0{a,b}"), _op("a.0{a} || b.0{b}")
    for check in CHECKS:
        assert check(seq, conc, max_events=2).kind == NO


def test_identical_nets():
    n = _op("a.0{a} || b.0{b}")
    for check in CHECKS:
        assert check(n, n, max_events=K).kind == YES


def test_different_labels():
    n1, n2 = _op("a.0{a,b}"), _op("b.0{a,b}")
    for check in CHECKS:
        assert check(n1, n2, max_events=K).kind == NO


def test_different_alphabets():
    for check in CHECKS:
        assert check(_op("a.0{a}"), _op("a.0{a,b}")).kind == NO


def test_cyclic_nets_stay_unknown():
    n = operational_net(corpus.term("C"))
    for check in CHECKS:
        assert check(n, n, max_events=3).kind == UNKNOWN


def test_cyclic_difference_is_found():
    c, d = operational_net(corpus.term("C")), operational_net(corpus.term("D"))
    for check in CHECKS:
        assert check(c, d, max_events=3).kind == NO


def test_interleaving_equal_but_not_concurrent():
    n1, n2 = _op("a.0{a} || b.0{b}"), _op("a.b.0{a,b} + b.a.0{a,b}")
    assert fcb_check_bounded(n1, n2).kind == NO
    assert sp_check_process_based(n1, n2).kind == NO


@pytest.mark.parametrize("name", [n for n in corpus.term_names() if "rec" not in corpus.TERMS[n]])
def test_corpus_op_and_den_agree(name):
    t = corpus.term(name)
    n1, n2 = operational_net(t), denote(t)
    for check in CHECKS:
        assert check(n1, n2, max_events=K).kind == YES


def test_position_budget():
    n = operational_net(corpus.term("C"))
    v = sp_check_process_based(n, n, max_events=10, max_positions=5)
    assert v.kind == UNKNOWN and "position bound" in v.reason
    assert fcb_check_bounded(n, n, max_events=10, max_positions=5).kind == UNKNOWN


def test_stats_are_reported():
    n = _op("a.0{a}")
    v = sp_check_process_based(n, n)
    assert v.stats["positions"] >= 1 and v.stats["initial_triples"] == 1


# the separating family --------------------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
def test_family_verdicts(k):
    n1, n2 = counterexample_family(k, "n1"), counterexample_family(k, "n2")
    assert sp_check(n1, n2).kind == NO
    assert sp_check_process_based(n1, n2).kind == NO
    assert caus_check_bounded(n1, n2).kind == YES
    assert fcb_check_bounded(n1, n2).kind == NO


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fcb_attacker_strategy(k):
    """Replay the winning attack: all left steps in N1, then b in N2."""
    n1, n2 = counterexample_family(k, "n1"), counterexample_family(k, "n2")
    p = initial_process(n1)
    for i in range(1, k + 1):
        (tokens,) = [tok for t, tok in extensions(p) if t == f"tl_{i}"]
        p = extend_process(p, f"tl_{i}", tokens)
    # N1 can no longer do b at all
    assert not [t for t, _ in extensions(p) if n1.labels[t] == "b"]
    # every b-free process of N2 with k a-events can still do a b with no causes
    answers = [q for q in enumerate_processes(n2, k) if q.size() == k and "b" not in q.labels()]
    assert answers
    for q in answers:
        bs = [(t, tok) for t, tok in extensions(q) if n2.labels[t] == "b"]
        assert bs
        for t, tok in bs:
            assert set(tok) <= set(q.causal.initial)


# hierarchy on random pairs ------------------------------------------------------------------------


def test_random_hierarchy():
    counts = {YES: 0, NO: 0}
    for _, a, b in seeded_pairs(4, 80):
        if not _bounded(a, b):
            continue
        spp = sp_check_process_based(a, b, max_events=K, max_positions=BUDGET)
        fcb = fcb_check_bounded(a, b, max_events=K, max_positions=BUDGET)
        sp = sp_check(a, b)
        if spp.certain and sp.certain:
            assert spp.kind == sp.kind
        if spp.is_yes:
            assert fcb.kind != NO
        if fcb.is_yes:
            l1, l2 = lts_of_case_graph(a, case_graph(a)), lts_of_case_graph(b, case_graph(b))
            assert ib_check(l1, l2)
        if spp.certain:
            counts[spp.kind] += 1
    assert counts[YES] > 10 and counts[NO] > 10
