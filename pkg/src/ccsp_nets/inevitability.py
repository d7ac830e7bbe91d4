"""Inevitability under justness, complete causal nets, and a separating net family.

A run is just when its process is maximal; with an environment that may
block the actions in ``Y``, the complete runs are the Y-complete
processes.  An action is Y-inevitable when every Y-complete process
contains an event with that label.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equivalences.causal import compare_causal_sets
from .equivalences.verdict import Verdict
from .multiset import Multiset
from .petri import Net, NetError
from .processes import Process, enumerate_processes, is_maximal, is_Y_complete

INEVITABLE, EVITABLE, UNKNOWN = "inevitable", "evitable", "unknown"


class UnknownAction(NetError):
    pass


@dataclass(frozen=True)
class InevitabilityVerdict:
    kind: str
    exact: bool = False
    witness: Process | None = None
    reason: str = ""

    @property
    def exit_code(self) -> int:
        return {INEVITABLE: 0, EVITABLE: 1, UNKNOWN: 2}[self.kind]

    def __str__(self) -> str:
        return f"{self.kind}: {self.reason}" if self.reason else self.kind


def inevitable(net: Net, b: str, y=(), max_events: int = 12) -> InevitabilityVerdict:
    """Is ``b`` contained in every Y-complete process of ``net``?

    Evitability is certain as soon as a b-free Y-complete process is
    found.  ``inevitable`` is only returned when the enumeration was
    exhausted, i.e. every process of the net was seen.
    """
    y = frozenset(y)
    if b not in net.alphabet:
        raise UnknownAction(f"{b!r} is not in the type alphabet")
    if not y <= net.alphabet:
        raise UnknownAction(f"{sorted(y - net.alphabet)} not in the type alphabet")
    if max_events < 0:
        raise ValueError("max_events must be >= 0")
    procs = enumerate_processes(net, max_events)
    complete = 0
    for p in procs:
        if not is_Y_complete(p, y):
            continue
        complete += 1
        if b not in p.labels():
            return InevitabilityVerdict(
                EVITABLE, True, p, f"a {'maximal' if not y else 'Y-complete'} process with {p.size()} events avoids {b}"
            )
    if procs.exhausted:
        return InevitabilityVerdict(INEVITABLE, True, None, f"all {complete} complete processes contain {b}")
    return InevitabilityVerdict(UNKNOWN, False, None, f"no b-free complete process within {max_events} events")


def cc_check_bounded(n1: Net, n2: Net, max_events: int = 12) -> Verdict:
    """Complete causal net equivalence: the same causal nets of maximal processes."""
    return compare_causal_sets(n1, n2, max_events, keep=is_maximal, what="complete causal nets")


VARIANTS = ("n1", "n2")


def counterexample_family(k: int, variant: str) -> Net:
    """The ``k``-stage net of the family on which causal and fully concurrent
    bisimilarity identify nets that differ on the inevitability of ``b``.

    A token walks along ``s2_0 .. s2_k`` by ``a`` steps, each of which takes
    either the left resource ``s1_{i-1}`` or the right one ``s3_{i-1}``.  In
    ``n1`` the ``b`` transitions need a left resource and a run taking every
    left step disables them all; in ``n2`` they rely on ``s4`` instead, so
    ``b`` stays enabled until it fires.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, not {variant!r}")
    s1 = [f"s1_{i}" for i in range(k)]
    s2 = [f"s2_{i}" for i in range(k + 1)]
    s3 = [f"s3_{i}" for i in range(k)]
    places = ["s0", "s4", *s1, *s2, *s3]
    ts = {}
    for i in range(1, k + 1):
        ts[f"tl_{i}"] = ("a", Multiset([s2[i - 1], s1[i - 1]]), Multiset([s2[i]]))
        ts[f"tr_{i}"] = ("a", Multiset([s2[i - 1], s3[i - 1]]), Multiset([s2[i]]))
        pre = ["s0", s1[i - 1]] if variant == "n1" else ["s0", "s4"]
        ts[f"tb_{i}"] = ("b", Multiset(pre), Multiset())
    initial = Multiset(["s0", "s4", s2[0], *s1, *s3])
    return Net(places, ts, initial, {"a", "b"}, f"{variant.upper()}^{k}")
