"""Built-in fixture corpus: CCSP terms and hand-made nets."""

from __future__ import annotations

from functools import lru_cache

from .petri import Net
from .syntax import parse
from .terms import Term

CUSTOMER = "rec Cus{buy,enter,leave} { Cus = enter.buy.leave.Cus }"
CLERK = "rec Clk{serve} { Clk = serve.Clk }"

TERMS: dict[str, str] = {
    "customer": CUSTOMER,
    "clerk": CLERK,
    "store1": f"R{{buy->serves, enter->enter, leave->leave}}({CUSTOMER})\n"
    f"  || R{{serve->serves}}({CLERK})",
    "store2": (
        f"(R{{enter->Aenters, buy->IservesA, buy->IIservesA, leave->Aleaves}}({CUSTOMER})\n"
        f"  || R{{enter->Benters, buy->IservesB, buy->IIservesB, leave->Bleaves}}({CUSTOMER}))\n"
        f"|| (R{{serve->IservesA, serve->IservesB}}({CLERK})\n"
        f"  || R{{serve->IIservesA, serve->IIservesB}}({CLERK}))"
    ),
    "a0a0": "a.0{a} + a.0{a}",
    "prefix": "a.0{a}",
    "seq": "a.b.0{a,b}",
    "conc": "a.0{a} || b.0{b}",
    "sync": "a.b.0{a,b} || a.0{a}",
    "nested_choice": "a.0{a,b} + (b.0{a,b} + a.b.0{a,b})",
    "par_in_choice": "(a.0{a,c} || b.0{b}) + c.0{a,b,c}",
    "sync_in_choice": "(x.a.0{a,x} || a.0{a}) + x.0{a,x}",
    "choice_of_pars": "(a.0{a} || b.0{b}) + (b.0{a,b} || 0{a})",
    "relabel": "R{a->x, a->y}(a.0{a}) || x.0{x}",
    "hide": "R{a->a}(a.b.0{a,b}) + a.0{a}",
    "C": "rec X{a,b} { X = a.X + b.X }",
    "D": "rec Y{a} { Y = a.Y } || rec Z{b} { Z = b.Z }",
    "mutual": "rec X{a,b} { X{a,b} = a.Y{a,b} ; Y{a,b} = b.X{a,b} }",
    "choice_rec": "a.0{a,b} + rec X{a,b} { X = b.X + a.0{a,b} }",
    "rec_par_choice": "rec X{a,b,c} { X = c.X + (a.0{a,c} || b.0{b}) }",
}


@lru_cache(maxsize=None)
def term(name: str) -> Term:
    return parse(TERMS[name])


def term_names() -> list[str]:
    return list(TERMS)


# Hand-made net pairs on which sp-bisimilarity is strictly coarser.
# pb-gap: the unreachable ``u5`` consumes both places that ``s`` must be
# related to, so no place bisimulation exists.
# strong-gap: after ``a`` the token on ``y`` plays the role of ``x``, after
# ``b`` that of ``x2``, so every relation needs both pairings at once.
NETS: dict[str, str] = {
    "pb-gap-1": """net pb-gap-1
alphabet a b c
place s0 init 1
place s
trans t1 label a in s0 out s
trans t2 label b in s0 out s
trans t3 label c in s
""",
    "pb-gap-2": """net pb-gap-2
alphabet a b c
place y0 init 1
place y1
place y2
trans u1 label a in y0 out y1
trans u2 label b in y0 out y2
trans u3 label c in y1
trans u4 label c in y2
trans u5 label c in y1 y2
""",
    "strong-gap-1": """net strong-gap-1
alphabet a b c d
place p init 1
place x
place x2
place r
place r2
trans t1 label a in p out x x2 r r2
trans t2 label b in p out x x2 r r2
trans t3 label c in x r
trans t4 label d in x2 r2
""",
    "strong-gap-2": """net strong-gap-2
alphabet a b c d
place q init 1
place y
place y2
place r
place r2
place s
place s2
trans u1 label a in q out y y2 r r2
trans u2 label b in q out y y2 s s2
trans u3 label c in y r
trans u4 label d in y2 r2
trans u5 label c in y2 s
trans u6 label d in y s2
""",
}


@lru_cache(maxsize=None)
def net(name: str) -> Net:
    from .netfile import parse_net

    return parse_net(NETS[name])


def net_names() -> list[str]:
    return list(NETS)


# Nets whose file names readers look for; the two-customer store is "the store".
_NET_ALIASES = {"store2": "store"}

COUNTEREXAMPLE_K = 3


def fixture_files() -> dict[str, str]:
    """File name to contents for every fixture, in a fixed order."""
    from .denotational import denote
    from .inevitability import counterexample_family
    from .netfile import format_net
    from .operational import operational_net

    out: dict[str, str] = {}
    for name in term_names():
        t = term(name)
        out[f"{name}.ccsp"] = TERMS[name] + "\n"
        base = _NET_ALIASES.get(name, name)
        out[f"{base}-op.net"] = format_net(operational_net(t, name=f"{base}-op"))
        out[f"{base}-den.net"] = format_net(denote(t, name=f"{base}-den"))
    for name in net_names():
        out[f"{name}.net"] = NETS[name]
    for variant in ("n1", "n2"):
        net = counterexample_family(COUNTEREXAMPLE_K, variant)
        out[f"{variant}-k{COUNTEREXAMPLE_K}.net"] = format_net(net)
    return out
