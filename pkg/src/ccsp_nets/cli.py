"""Command-line front end.

Checks exit with 0, 1 or 2 for yes, no and unknown; other commands exit 0
on success.  Bad usage exits 64, malformed terms or nets 65, unreadable
files 66.  ``--machine`` switches every report to ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import corpus
from .denotational import denote
from .dot import export_dot
from .equivalences import (
    NotSafe,
    caus_check_bounded,
    fcb_check_bounded,
    pb_check,
    sp_check,
    sp_check_process_based,
    strong_check,
)
from .inevitability import UnknownAction, counterexample_family, inevitable
from .netfile import NetSyntaxError, format_net, parse_net
from .operational import NetTruncated, operational_net
from .petri import Net, NetError, case_graph, is_safe
from .processes import enumerate_processes
from .sos import build_lts
from .syntax import TermSyntaxError, parse, pretty
from .terms import TermError, alphabet, check_guarded, check_well_typed, is_closed

EX_USAGE, EX_DATAERR, EX_NOINPUT = 64, 65, 66

DEFAULT_MAX_MARKINGS = 10_000
DEFAULT_MAX_EVENTS = 12

RELATIONS = ("sp", "sp-proc", "strong", "pb", "caus", "fcb")


class UsageError(Exception):
    pass


class InputError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, not {raw!r}") from None


class Report:
    """Collects ``key: value`` pairs and prose lines for one command."""

    def __init__(self, machine: bool, out):
        self.machine, self.out = machine, out

    def field(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "yes" if value else "no"
        if self.machine:
            self.out.write(f"{key}: {value}\n")
        else:
            self.out.write(f"{key.replace('_', ' ')}: {value}\n")

    def text(self, s: str) -> None:
        if not self.machine:
            self.out.write(s if s.endswith("\n") else s + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}", EX_NOINPUT) from None


def _load_term(args):
    text = args.source if args.term else _read(args.source)
    try:
        return parse(text)
    except (TermSyntaxError, TermError) as e:
        raise InputError(str(e), EX_DATAERR) from None


def _load_net(path: str) -> Net:
    try:
        return parse_net(_read(path))
    except (NetSyntaxError, NetError) as e:
        raise InputError(f"{path}: {e}", EX_DATAERR) from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror or e}", EX_NOINPUT) from None


# commands -------------------------------------------------------------------


def cmd_parse(args, rep: Report) -> int:
    t = _load_term(args)
    rep.field("term", pretty(t))
    rep.field("alphabet", ",".join(sorted(alphabet(t))))
    rep.field("closed", is_closed(t))
    typing, guards = check_well_typed(t), check_guarded(t)
    rep.field("well_typed", not typing)
    rep.field("guarded", not guards)
    for v in typing + guards:
        rep.text(f"  {v.message}")
    return 0


def cmd_lts(args, rep: Report) -> int:
    t = _load_term(args)
    try:
        lts = build_lts(t, args.max_states)
    except TermError as e:
        raise InputError(str(e), EX_DATAERR) from None
    rep.field("states", len(lts.states))
    rep.field("transitions", len(lts.edges))
    rep.field("truncated", lts.truncated)
    if args.dot:
        _write(args.dot, export_dot(lts))
    return 0


def _build_net(args, t) -> Net:
    try:
        if args.semantics == "op":
            return operational_net(t, args.max_markings)
        return denote(t, args.max_markings)
    except TermError as e:
        raise InputError(str(e), EX_DATAERR) from None
    except NetTruncated as e:
        raise InputError(f"net exceeds the marking bound: {e}", EX_DATAERR) from None
    except NetError as e:
        raise InputError(str(e), EX_DATAERR) from None


def cmd_net(args, rep: Report) -> int:
    net = _build_net(args, _load_term(args))
    if args.dot:
        _write(args.dot, export_dot(net))
    if args.format == "netfile":
        rep.out.write(format_net(net))
    elif args.format == "dot":
        rep.out.write(export_dot(net))
    else:
        g = case_graph(net, args.max_markings)
        rep.field("places", len(net.places))
        rep.field("transitions", len(net.transitions))
        rep.field("initial_tokens", net.initial.size)
        rep.field("reachable_markings", len(g.nodes))
        rep.field("safe", is_safe(net, args.max_markings).status)
    return 0


def cmd_processes(args, rep: Report) -> int:
    net = _load_net(args.netfile)
    procs = enumerate_processes(net, args.max_events)
    rep.field("processes", len(procs))
    rep.field("exhausted", procs.exhausted)
    for i, p in enumerate(procs):
        labels = " ".join(p.causal.labels[e] for e in p.events())
        final = " ".join(f"{s}" + (f"x{n}" if n > 1 else "") for s, n in p.final_marking().sorted_items())
        rep.text(f"  #{i}: {p.size()} events [{labels}] final {{{final}}}")
    if args.dot:
        d = Path(args.dot)
        try:
            d.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise InputError(f"cannot create {d}: {e.strerror or e}", EX_NOINPUT) from None
        for i, p in enumerate(procs):
            _write(str(d / f"process{i}.dot"), export_dot(p))
    return 0


def cmd_check(args, rep: Report) -> int:
    n1, n2 = _load_net(args.net1), _load_net(args.net2)
    k, m, pos = args.max_events, args.max_markings, args.max_positions
    checks = {
        "sp": lambda: sp_check(n1, n2, m),
        "sp-proc": lambda: sp_check_process_based(n1, n2, k, pos),
        "strong": lambda: strong_check(n1, n2, m),
        "pb": lambda: pb_check(n1, n2, m),
        "caus": lambda: caus_check_bounded(n1, n2, k),
        "fcb": lambda: fcb_check_bounded(n1, n2, k, pos),
    }
    try:
        v = checks[args.rel]()
    except NotSafe as e:
        raise InputError(f"strong bisimilarity needs safe nets: {e}", EX_DATAERR) from None
    rep.field("relation", args.rel)
    rep.field("verdict", v.kind)
    rep.field("reason", v.reason)
    for key, val in sorted(v.stats.items()):
        rep.field(key, val)
    if args.certificate:
        _write(args.certificate, _certificate_text(v))
    return v.exit_code


def _certificate_text(v) -> str:
    c = v.certificate
    head = f"verdict {v.kind}\nreason {v.reason}\n"
    if c is None:
        return head
    if hasattr(c, "dump"):
        return head + c.dump()
    if hasattr(c, "causal"):
        return head + format_net(c.causal)
    return head + f"{c!r}\n"


def cmd_inevitable(args, rep: Report) -> int:
    net = _load_net(args.netfile)
    y = [a for a in (args.y or "").split(",") if a]
    try:
        v = inevitable(net, args.action, y, args.max_events)
    except UnknownAction as e:
        raise InputError(str(e), EX_DATAERR) from None
    rep.field("action", args.action)
    rep.field("blocked", ",".join(sorted(y)) or "-")
    rep.field("verdict", v.kind)
    rep.field("exact", v.exact)
    rep.field("reason", v.reason)
    if v.witness is not None:
        rep.field("witness_events", " ".join(f"{e}:{v.witness.fold[e]}" for e in v.witness.events()) or "-")
    return v.exit_code


def cmd_counterexample(args, rep: Report) -> int:
    try:
        net = counterexample_family(args.k, args.variant)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.format == "netfile":
        rep.out.write(format_net(net))
    elif args.format == "dot":
        rep.out.write(export_dot(net))
    else:
        rep.field("net", net.name)
        rep.field("places", len(net.places))
        rep.field("transitions", len(net.transitions))
    return 0


def cmd_corpus(args, rep: Report) -> int:
    if args.action == "list":
        for name in corpus.term_names():
            rep.field(name, corpus.TERMS[name].replace("\n", " "))
        return 0
    if not args.dir:
        raise UsageError("corpus emit needs a target directory")
    d = Path(args.dir)
    try:
        d.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise InputError(f"cannot create {d}: {e.strerror or e}", EX_NOINPUT) from None
    files = corpus.fixture_files()
    for fname, text in files.items():
        _write(str(d / fname), text)
    rep.field("written", len(files))
    return 0


# parser ---------------------------------------------------------------------


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    max_m = _env_int("CCSP_NETS_MAX_MARKINGS", DEFAULT_MAX_MARKINGS)
    max_e = _env_int("CCSP_NETS_MAX_EVENTS", DEFAULT_MAX_EVENTS)
    p = _Parser(prog="ccsp-nets", description="Petri net semantics of CCSP and net equivalence checking.")
    p.add_argument("--machine", action="store_true", help="key: value output")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def term_args(q):
        q.add_argument("source", help="term file, '-' for stdin, or the term itself with --term")
        q.add_argument("--term", action="store_true", help="treat SOURCE as term text")

    q = sub.add_parser("parse", help="parse and check a CCSP term")
    term_args(q)
    q.set_defaults(fn=cmd_parse)

    q = sub.add_parser("lts", help="interleaving transition system of a term")
    term_args(q)
    q.add_argument("--max-states", type=_positive, default=max_m)
    q.add_argument("--dot", metavar="OUT")
    q.set_defaults(fn=cmd_lts)

    q = sub.add_parser("net", help="operational or denotational net of a term")
    term_args(q)
    q.add_argument("--semantics", choices=("op", "den"), default="op")
    q.add_argument("--format", choices=("netfile", "dot", "summary"), default="netfile")
    q.add_argument("--dot", metavar="OUT")
    q.add_argument("--max-markings", type=_positive, default=max_m)
    q.set_defaults(fn=cmd_net)

    q = sub.add_parser("processes", help="enumerate finite processes of a net")
    q.add_argument("netfile")
    q.add_argument("--max-events", type=_positive, default=max_e)
    q.add_argument("--dot", metavar="DIR")
    q.set_defaults(fn=cmd_processes)

    q = sub.add_parser("check", help="decide an equivalence between two nets")
    q.add_argument("net1")
    q.add_argument("net2")
    q.add_argument("--rel", choices=RELATIONS, default="sp")
    q.add_argument("--max-markings", type=_positive, default=max_m)
    q.add_argument("--max-events", type=_positive, default=max_e)
    q.add_argument("--max-positions", type=_positive, default=None, help="game positions for sp-proc and fcb")
    q.add_argument("--certificate", metavar="OUT")
    q.set_defaults(fn=cmd_check)

    q = sub.add_parser("inevitable", help="is an action inevitable under justness")
    q.add_argument("netfile")
    q.add_argument("--action", required=True)
    q.add_argument("--y", default="", help="comma-separated actions the environment may block")
    q.add_argument("--max-events", type=_positive, default=max_e)
    q.set_defaults(fn=cmd_inevitable)

    q = sub.add_parser("counterexample", help="build a net of the separating family")
    q.add_argument("--k", type=_positive, default=3)
    q.add_argument("--variant", choices=("n1", "n2"), default="n1")
    q.add_argument("--format", choices=("netfile", "dot", "summary"), default="netfile")
    q.set_defaults(fn=cmd_counterexample)

    q = sub.add_parser("corpus", help="list the built-in corpus or write its fixture files")
    q.add_argument("action", choices=("list", "emit"))
    q.add_argument("dir", nargs="?")
    q.set_defaults(fn=cmd_corpus)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        parser = build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:  # --help
            return int(e.code or 0)
        if not getattr(args, "fn", None):
            parser.print_usage(sys.stderr)
            return EX_USAGE
        return args.fn(args, Report(args.machine, out))
    except UsageError as e:
        sys.stderr.write(f"ccsp-nets: usage error: {e}\n")
        return EX_USAGE
    except InputError as e:
        sys.stderr.write(f"ccsp-nets: {e}\n")
        return e.code


def main() -> None:
    sys.exit(run())
