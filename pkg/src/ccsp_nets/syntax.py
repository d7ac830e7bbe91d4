"""Concrete syntax for CCSP terms.

Grammar (``+`` binds weakest, then ``||``, then prefixing)::

    term  ::= par ('+' par)*
    par   ::= unary ('||' unary)*
    unary ::= ACTION '.' unary | atom
    atom  ::= '0' '{' actions '}'
            | 'R' '{' a->b, ... '}' '(' term ')'
            | 'rec' X ['{' actions '}'] '{' X ['{' actions '}'] '=' term (';' ...)* '}'
            | X '{' actions '}' | X | '(' term ')'

A bare ``X`` refers to the innermost enclosing ``rec`` binding the name.
Nested specifications that rebind a variable already bound by an
enclosing one are renamed apart while parsing, so substitution never
captures.  ``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import Choice, Inaction, Parallel, Prefix, Rec, RecSpec, Rename, Renaming, Term, Var


class TermSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line, self.col = line, col


_TOKEN = re.compile(
    r"(?P<ws>\s+|\#[^\n]*)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<zero>0)"
    r"|(?P<sym>\|\||->|[.+{}(),=;])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line, line_start = line + 1, pos + i + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.scopes: list[dict[str, list[Var]]] = []
        self.names = {t.text for t in self.toks if t.kind == "ident"}

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise TermSyntaxError(msg, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "eof":
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            self.error(f"expected an identifier, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    # term ::= par ('+' par)*
    def term(self) -> Term:
        t = self.par()
        while self.accept("+"):
            t = Choice(t, self.par())
        return t

    def par(self) -> Term:
        t = self.unary()
        while self.accept("||"):
            t = Parallel(t, self.unary())
        return t

    def unary(self) -> Term:
        if self.peek().kind == "ident" and self.peek(1).text == ".":
            a = self.ident()
            self.expect(".")
            return Prefix(a, self.unary())
        return self.atom()

    def actions(self) -> frozenset[str]:
        self.expect("{")
        acts = []
        if not self.accept("}"):
            acts.append(self.ident())
            while self.accept(","):
                acts.append(self.ident())
            self.expect("}")
        return frozenset(acts)

    def _closing_brace(self, start: int) -> int:
        depth = 0
        for j in range(start, len(self.toks)):
            if self.toks[j].text == "{":
                depth += 1
            elif self.toks[j].text == "}":
                depth -= 1
                if depth == 0:
                    return j
        return len(self.toks) - 1

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "zero":
            self.i += 1
            return Inaction(self.actions())
        if tok.text == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        if tok.kind != "ident":
            self.error(f"expected a term, found {tok.text or 'end of input'!r}")
        if tok.text == "rec" and self.peek(1).kind == "ident":
            return self.rec()
        if tok.text == "R" and self.peek(1).text == "{":
            close = self._closing_brace(self.i + 1)
            if self.toks[close + 1].text == "(":
                return self.rename()
        self.i += 1
        if self.peek().text == "{":
            return Var(tok.text, self.actions())
        return self.resolve(tok)

    def rename(self) -> Term:
        self.expect("R")
        self.expect("{")
        pairs = []
        if not self.accept("}"):
            while True:
                a = self.ident()
                self.expect("->")
                pairs.append((a, self.ident()))
                if not self.accept(","):
                    break
            self.expect("}")
        self.expect("(")
        body = self.term()
        self.expect(")")
        return Rename(Renaming(pairs), body)

    def resolve(self, tok: _Tok) -> Var:
        for scope in reversed(self.scopes):
            found = scope.get(tok.text)
            if found:
                if len(found) > 1:
                    self.error(f"variable {tok.text} is ambiguous; give its alphabet", tok)
                return found[0]
        self.error(f"unknown variable {tok.text}; free variables need an explicit alphabet", tok)

    def _fresh(self, name: str) -> str:
        n = 1
        while f"{name}_{n}" in self.names:
            n += 1
        fresh = f"{name}_{n}"
        self.names.add(fresh)
        return fresh

    def rec(self) -> Term:
        self.expect("rec")
        head_tok = self.peek()
        head = self.ident()
        head_alpha = None
        if self.peek().text == "{" and self.toks[self._closing_brace(self.i) + 1].text == "{":
            head_alpha = self.actions()
        open_tok = self.expect("{")
        close = self._closing_brace(self.i - 1)

        # First pass: collect the left-hand sides so bodies may refer forward.
        lhs: list[tuple[str, frozenset[str], int]] = []
        j, depth = self.i, 0
        at_start = True
        while j < close:
            t = self.toks[j]
            if at_start:
                name_tok = t
                if name_tok.kind != "ident":
                    self.error("expected an equation", name_tok)
                k = j + 1
                alpha = None
                if self.toks[k].text == "{":
                    kc = self._closing_brace(k)
                    alpha = frozenset(x.text for x in self.toks[k + 1 : kc] if x.kind == "ident")
                    k = kc + 1
                if self.toks[k].text != "=":
                    self.error("expected '=' in equation", self.toks[k])
                if alpha is None:
                    if name_tok.text == head and head_alpha is not None:
                        alpha = head_alpha
                    else:
                        self.error(f"equation for {name_tok.text} needs an alphabet", name_tok)
                lhs.append((name_tok.text, alpha, j))
                j, at_start = k + 1, False
                continue
            if t.text in "({":
                depth += 1
            elif t.text in ")}":
                depth -= 1
            elif t.text == ";" and depth == 0:
                at_start = True
            j += 1
        if not lhs:
            self.error("empty recursive specification", open_tok)

        outer = {v for scope in self.scopes for vs in scope.values() for v in vs}
        renames: dict[tuple[str, frozenset[str]], str] = {}
        scope: dict[str, list[Var]] = {}
        for name, alpha, _ in lhs:
            new_name = name
            if Var(name, alpha) in outer:
                new_name = self._fresh(name)
            renames[(name, alpha)] = new_name
            scope.setdefault(name, []).append(Var(new_name, alpha))
        if head_alpha is not None:
            if (head, head_alpha) not in renames:
                self.error(f"no equation for {head}", head_tok)
            head_var = Var(renames[(head, head_alpha)], head_alpha)
        else:
            cands = scope.get(head, [])
            if len(cands) != 1:
                self.error(f"cannot determine the alphabet of {head}", head_tok)
            head_var = cands[0]

        self.scopes.append(scope)
        eqs = []
        for name, alpha, _ in lhs:
            self.ident()
            if self.peek().text == "{":
                self.actions()
            self.expect("=")
            eqs.append((Var(renames[(name, alpha)], alpha), self.term()))
            if not self.accept(";"):
                break
        self.scopes.pop()
        self.expect("}")
        try:
            spec = RecSpec(eqs)
        except ValueError as e:
            self.error(str(e), open_tok)
        return Rec(head_var, spec)


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek().kind != "eof":
        p.error(f"unexpected {p.peek().text!r}")
    return t


def _acts(actions) -> str:
    return "{" + ",".join(sorted(actions)) + "}"


def pretty(t: Term) -> str:
    return _pp(t, 0)


def _pp(t: Term, prec: int) -> str:
    if isinstance(t, Choice):
        s, p = f"{_pp(t.left, 1)} + {_pp(t.right, 2)}", 1
    elif isinstance(t, Parallel):
        s, p = f"{_pp(t.left, 2)} || {_pp(t.right, 3)}", 2
    elif isinstance(t, Prefix):
        s, p = f"{t.action}.{_pp(t.body, 3)}", 3
    elif isinstance(t, Inaction):
        s, p = "0" + _acts(t.alphabet), 4
    elif isinstance(t, Var):
        s, p = t.name + _acts(t.alphabet), 4
    elif isinstance(t, Rename):
        s, p = f"{pretty_renaming(t.renaming)}({_pp(t.body, 0)})", 4
    elif isinstance(t, Rec):
        eqs = "; ".join(f"{v.name}{_acts(v.alphabet)} = {_pp(b, 0)}" for v, b in t.spec.equations)
        s, p = f"rec {t.var.name}{_acts(t.var.alphabet)} {{ {eqs} }}", 4
    else:
        raise TypeError(t)
    return f"({s})" if p < prec else s


def pretty_renaming(r: Renaming) -> str:
    return "R{" + ", ".join(f"{a}->{b}" for a, b in r.sorted_pairs()) + "}"
