"""Bounded comparison of the causal nets of two nets."""

from __future__ import annotations

from ..petri import Net
from ..processes import Process, canonical_form, enumerate_processes
from .verdict import Verdict, no, unknown, yes


def compare_causal_sets(
    n1: Net, n2: Net, max_events: int, keep=lambda p: True, what: str = "causal nets"
) -> Verdict:
    """Compare label-mode canonical forms of the processes selected by ``keep``.

    Both enumerations contain every process up to ``max_events`` events,
    so a causal net found on one side only is a sound ``no``.  Equal sets
    give ``yes`` only when both enumerations were exhausted.
    """
    if max_events < 0:
        raise ValueError("max_events must be >= 0")
    if n1.alphabet != n2.alphabet:
        return no("type alphabets differ")
    e1, e2 = enumerate_processes(n1, max_events), enumerate_processes(n2, max_events)
    sets = []
    for e in (e1, e2):
        codes: dict[tuple, Process] = {}
        for p in e:
            if keep(p):
                codes.setdefault(canonical_form(p, "label"), p)
        sets.append(codes)
    stats = {"processes": (len(e1), len(e2))}
    for side, (mine, other) in enumerate(((sets[0], sets[1]), (sets[1], sets[0])), 1):
        for code in sorted(set(mine) - set(other), key=repr):
            return no(f"a {what[:-1]} of net {side} with {mine[code].size()} events is missing from net {3 - side}",
                      mine[code], **stats)
    if e1.exhausted and e2.exhausted:
        return yes(f"same {len(sets[0])} {what}", **stats)
    return unknown(f"same {what} up to {max_events} events", **stats)


def caus_check_bounded(n1: Net, n2: Net, max_events: int = 12) -> Verdict:
    """Causal equivalence: the same causal nets, compared up to ``max_events`` events."""
    return compare_causal_sets(n1, n2, max_events)
