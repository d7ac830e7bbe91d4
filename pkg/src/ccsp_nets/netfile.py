"""Line-based textual net format.

::

    net <name>
    alphabet <action> ...
    place <id> [init <count>]
    trans <id> label <action> [in <place>:<weight> ...] [out <place>:<weight> ...]

Tokens are split shell-style, so identifiers containing spaces may be
quoted.  A missing ``init`` means 0 tokens, a missing ``:<weight>`` means 1.
Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import shlex

from .multiset import Multiset
from .petri import Net


class NetSyntaxError(ValueError):
    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _arc(token: str, lineno: int) -> tuple[str, int]:
    place, sep, weight = token.rpartition(":")
    if sep and weight.isdigit() and place:
        return place, int(weight)
    return token, 1


def parse_net(text: str) -> Net:
    name = "net"
    alphabet: list[str] = []
    places: dict[str, int] = {}
    transitions: dict[str, tuple[str, Multiset, Multiset]] = {}
    pending: list[tuple[int, str, str, list[tuple[str, int]], list[tuple[str, int]]]] = []
    ids: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            toks = shlex.split(line)
        except ValueError as e:
            raise NetSyntaxError(str(e), lineno) from None
        head, args = toks[0], toks[1:]
        if head == "net":
            if len(args) != 1:
                raise NetSyntaxError("expected: net <name>", lineno)
            name = args[0]
        elif head == "alphabet":
            alphabet.extend(args)
        elif head == "place":
            if len(args) not in (1, 3) or (len(args) == 3 and args[1] != "init"):
                raise NetSyntaxError("expected: place <id> [init <count>]", lineno)
            pid = args[0]
            if pid in ids:
                raise NetSyntaxError(f"duplicate id {pid!r}", lineno)
            ids.add(pid)
            count = 0
            if len(args) == 3:
                if not args[2].isdigit():
                    raise NetSyntaxError(f"bad token count {args[2]!r}", lineno)
                count = int(args[2])
            places[pid] = count
        elif head == "trans":
            if len(args) < 3 or args[1] != "label":
                raise NetSyntaxError("expected: trans <id> label <action> ...", lineno)
            tid, label = args[0], args[2]
            if tid in ids:
                raise NetSyntaxError(f"duplicate id {tid!r}", lineno)
            ids.add(tid)
            ins: list[tuple[str, int]] = []
            outs: list[tuple[str, int]] = []
            target = None
            for tok in args[3:]:
                if tok == "in":
                    target = ins
                elif tok == "out":
                    target = outs
                elif target is None:
                    raise NetSyntaxError(f"unexpected token {tok!r}", lineno)
                else:
                    target.append(_arc(tok, lineno))
            pending.append((lineno, tid, label, ins, outs))
        else:
            raise NetSyntaxError(f"unknown directive {head!r}", lineno)
    alpha = set(alphabet)
    for lineno, tid, label, ins, outs in pending:
        if label not in alpha:
            raise NetSyntaxError(f"label {label!r} is not in the alphabet", lineno)
        for p, _ in ins + outs:
            if p not in places:
                raise NetSyntaxError(f"unknown place {p!r}", lineno)
        pre, post = {}, {}
        for p, w in ins:
            pre[p] = pre.get(p, 0) + w
        for p, w in outs:
            post[p] = post.get(p, 0) + w
        transitions[tid] = (label, Multiset(pre), Multiset(post))
    return Net(places, transitions, Multiset(places), alpha, name)


def format_net(net: Net) -> str:
    q = shlex.quote
    lines = [f"net {q(net.name)}", " ".join(["alphabet", *map(q, sorted(net.alphabet))]).rstrip()]
    for s in sorted(net.places):
        n = net.initial[s]
        lines.append(f"place {q(s)}" + (f" init {n}" if n else ""))
    for t in net.sorted_transitions():
        parts = [f"trans {q(t)} label {q(net.labels[t])}"]
        if net.pre[t]:
            parts.append("in " + " ".join(q(f"{s}:{w}") for s, w in net.pre[t].sorted_items()))
        if net.post[t]:
            parts.append("out " + " ".join(q(f"{s}:{w}") for s, w in net.post[t].sorted_items()))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
