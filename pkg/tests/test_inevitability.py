import random

import pytest

from ccsp_nets import corpus
from ccsp_nets.inevitability import (
    EVITABLE,
    INEVITABLE,
    UNKNOWN,
    UnknownAction,
    cc_check_bounded,
    counterexample_family,
    inevitable,
)
from ccsp_nets.equivalences import NO, YES
from ccsp_nets.operational import operational_net
from ccsp_nets.petri import is_safe
from ccsp_nets.processes import enumerate_processes, is_acyclic, is_maximal, is_Y_complete
from ccsp_nets.syntax import parse

from netgen import random_net


def _op(text):
    return operational_net(parse(text))


def test_single_action_is_inevitable():
    v = inevitable(_op("b.0{b}"), "b")
    assert v.kind == INEVITABLE and v.exact and v.exit_code == 0


def test_choice_makes_b_evitable():
    v = inevitable(_op("a.0{a,b} + b.0{a,b}"), "b")
    assert v.kind == EVITABLE and v.exact and v.exit_code == 1
    assert "b" not in v.witness.labels() and is_maximal(v.witness)


def test_concurrent_loop_does_not_prevent_b():
    # justness: an independent a-loop cannot starve b, but the bound stops the search
    v = inevitable(operational_net(corpus.term("D")), "b", max_events=4)
    assert v.kind == UNKNOWN and not v.exact and v.exit_code == 2


def test_blocking_environment():
    n = _op("a.b.0{a,b}")
    assert inevitable(n, "b").kind == INEVITABLE
    # if the environment may refuse a, the empty run is complete
    v = inevitable(n, "b", y={"a"})
    assert v.kind == EVITABLE and v.witness.size() == 0


def test_unknown_action():
    with pytest.raises(UnknownAction):
        inevitable(_op("a.0{a}"), "b")
    with pytest.raises(UnknownAction):
        inevitable(_op("a.0{a}"), "a", y={"z"})


def test_negative_bound():
    with pytest.raises(ValueError):
        inevitable(_op("a.0{a}"), "a", max_events=-1)


def test_empty_y_is_maximality():
    rng = random.Random(6)
    for _ in range(40):
        net = random_net(rng, acyclic=True)
        for p in enumerate_processes(net, 8):
            assert is_Y_complete(p, ()) == is_maximal(p)


def test_monotone_in_y():
    # enlarging Y adds complete runs, so inevitability can only be lost
    rng = random.Random(10)
    rank = {INEVITABLE: 0, UNKNOWN: 1, EVITABLE: 2}
    for _ in range(40):
        net = random_net(rng, acyclic=True)
        for b in sorted(net.alphabet):
            v0 = inevitable(net, b)
            for y in ({"a"}, {"b"}, {"a", "b"}):
                assert rank[inevitable(net, b, y=y).kind] >= rank[v0.kind]


# the separating family ---------------------------------------------------------------------------


def test_family_shape():
    for variant in ("n1", "n2"):
        n = counterexample_family(1, variant)
        assert (len(n.places), len(n.transitions)) == (6, 3)
        assert n.name == f"{variant.upper()}^1"


@pytest.mark.parametrize("k", range(1, 6))
def test_family_is_safe_and_acyclic(k):
    for variant in ("n1", "n2"):
        n = counterexample_family(k, variant)
        assert is_safe(n).status == "safe"
        assert is_acyclic(n)
        assert len(n.places) == 3 * k + 3 and len(n.transitions) == 3 * k


@pytest.mark.parametrize("k", range(1, 5))
def test_variants_differ_only_in_b_presets(k):
    n1, n2 = counterexample_family(k, "n1"), counterexample_family(k, "n2")
    assert n1.places == n2.places and n1.initial == n2.initial and n1.transitions == n2.transitions
    for t in n1.transitions:
        same = n1.transition_table()[t] == n2.transition_table()[t]
        assert same == (n1.labels[t] == "a")


def test_family_rejects_bad_arguments():
    with pytest.raises(ValueError):
        counterexample_family(0, "n1")
    with pytest.raises(ValueError):
        counterexample_family(2, "n3")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_family_inevitability(k):
    v1 = inevitable(counterexample_family(k, "n1"), "b")
    v2 = inevitable(counterexample_family(k, "n2"), "b")
    assert v1.kind == EVITABLE and v1.exact
    assert sorted(v1.witness.fold[e] for e in v1.witness.events()) == [f"tl_{i}" for i in range(1, k + 1)]
    assert v2.kind == INEVITABLE and v2.exact


@pytest.mark.parametrize("k", [1, 2, 3])
def test_complete_causal_nets_separate_the_family(k):
    v = cc_check_bounded(counterexample_family(k, "n1"), counterexample_family(k, "n2"))
    assert v.kind == NO
    # the witness is the b-free maximal run of n1
    assert "b" not in v.certificate.labels()


def test_complete_causal_nets_of_equal_nets():
    n = _op("a.0{a} || b.0{b}")
    assert cc_check_bounded(n, n).kind == YES
