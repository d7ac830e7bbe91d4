"""Hypothesis suites for the relation hierarchy and for congruence of sp-bisimilarity."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from ccsp_nets.denotational import den_choice, den_par, den_prefix, den_rename
from ccsp_nets.equivalences import (
    NO,
    YES,
    caus_check_bounded,
    fcb_check_bounded,
    pb_check,
    sp_check,
    sp_check_process_based,
    strong_check,
)
from ccsp_nets.petri import NetError, case_graph, is_safe
from ccsp_nets.terms import Renaming

from netgen import net_pairs, nets

K = 6
BUDGET = 20_000
MAX_TOKENS = 5

SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large, HealthCheck.filter_too_much],
)


def _tractable(*nets):
    # linkings grow factorially in the number of initial tokens
    return all(n.initial.size <= MAX_TOKENS and not case_graph(n, 300).truncated for n in nets)


@SETTINGS
@given(net_pairs())
def test_hierarchy(pair):
    _, a, b = pair
    assume(_tractable(a, b))
    sp = sp_check(a, b)
    assume(sp.certain)
    if is_safe(a).status == "safe" and is_safe(b).status == "safe":
        if strong_check(a, b).is_yes:
            assert sp.is_yes
    if pb_check(a, b).is_yes:
        assert sp.is_yes
    if sp.is_yes:
        assert fcb_check_bounded(a, b, K, BUDGET).kind != NO
        assert caus_check_bounded(a, b, K).kind != NO
    spp = sp_check_process_based(a, b, K, BUDGET)
    if spp.certain:
        assert spp.kind == sp.kind


def _contexts(c):
    swap = Renaming([("a", "b"), ("b", "a")])
    merge = Renaming([("a", "a"), ("b", "a")])
    return {
        "prefix a": lambda x: den_prefix("a", x),
        "prefix b": lambda x: den_prefix("b", x),
        "swap": lambda x: den_rename(swap, x),
        "merge": lambda x: den_rename(merge, x),
        "par left": lambda x: den_par(x, c),
        "par right": lambda x: den_par(c, x),
        "choice left": lambda x: den_choice(x, c),
        "choice right": lambda x: den_choice(c, x),
    }


@SETTINGS
@given(net_pairs(), nets(max_places=3, max_transitions=2), st.data())
def test_congruence(pair, context, data):
    _, a, b = pair
    assume(_tractable(a, b))
    assume(sp_check(a, b).is_yes)
    ops = _contexts(context)
    name = data.draw(st.sampled_from(sorted(ops)))
    try:
        x, y = ops[name](a), ops[name](b)
    except NetError:
        # choice is undefined for non-plain initial markings
        assume(False)
    assume(_tractable(x, y))
    assert sp_check(x, y).kind == YES, name
