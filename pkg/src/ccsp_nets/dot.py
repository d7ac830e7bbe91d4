"""Graphviz DOT export for nets, transition systems and processes."""

from __future__ import annotations

from functools import singledispatch

from .petri import Net
from .processes import Process, _id_key
from .sos import Lts


def _q(s: object) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _net_lines(net: Net, place_label, trans_label, place_key=str, trans_key=str) -> list[str]:
    lines = [f"digraph {_q(net.name)} {{", "  rankdir=LR;"]
    for s in sorted(net.places, key=place_key):
        lines.append(f"  {_q(s)} [shape=circle, label={_q(place_label(s))}];")
    for t in sorted(net.transitions, key=trans_key):
        lines.append(f"  {_q(t)} [shape=box, label={_q(trans_label(t))}];")
    for t in sorted(net.transitions, key=trans_key):
        for s, w in net.pre[t].sorted_items():
            lines.append(f"  {_q(s)} -> {_q(t)}" + (f" [label={_q(w)}];" if w > 1 else ";"))
        for s, w in net.post[t].sorted_items():
            lines.append(f"  {_q(t)} -> {_q(s)}" + (f" [label={_q(w)}];" if w > 1 else ";"))
    lines.append("}")
    return lines


def _tokens(n: int) -> str:
    return "" if n == 0 else "•" if n == 1 else str(n)


@singledispatch
def export_dot(obj) -> str:
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")


@export_dot.register
def _(net: Net) -> str:
    def place_label(s):
        tok = _tokens(net.initial[s])
        return f"{s}\n{tok}" if tok else s

    return "\n".join(_net_lines(net, place_label, lambda t: f"{t}\n{net.labels[t]}")) + "\n"


@export_dot.register
def _(lts: Lts) -> str:
    ids = {s: f"q{i}" for i, s in enumerate(lts.states)}
    lines = ["digraph lts {", "  rankdir=LR;"]
    for s in lts.states:
        shape = "doublecircle" if s == lts.initial else "circle"
        lines.append(f"  {ids[s]} [shape={shape}, label={_q(s)}];")
    for s, a, s2 in sorted(lts.edges, key=lambda e: (ids[e[0]], e[1], ids[e[2]])):
        lines.append(f"  {ids[s]} -> {ids[s2]} [label={_q(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@export_dot.register
def _(p: Process) -> str:
    n = p.causal
    lines = _net_lines(
        n,
        lambda c: f"{c}\n{p.fold[c]}",
        lambda e: f"{e}\n{n.labels[e]} ({p.fold[e]})",
        place_key=_id_key,
        trans_key=_id_key,
    )
    return "\n".join(lines) + "\n"
