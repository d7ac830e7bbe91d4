"""CCSP abstract syntax.

Terms are immutable and hashable; structural equality is what identifies
states of the interleaving semantics and places of the operational net.
Every inaction and every variable carries an explicit alphabet.

The action universe is whatever finite set of names occurs in the input,
together with the targets of renamings; nothing assumes an infinite
supply of actions.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache


def _alphabet(actions: Iterable[str]) -> frozenset[str]:
    return frozenset(actions)


class Term:
    """Base class of CCSP expressions."""

    __slots__ = ()

    def __hash__(self) -> int:
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self._fields))
            object.__setattr__(self, "_h", h)
        return h

    def __str__(self) -> str:
        from .syntax import pretty

        return pretty(self)


def _term(cls):
    cls = dataclass(frozen=True, eq=True)(cls)
    cls._fields = tuple(f.name for f in cls.__dataclass_fields__.values() if f.compare)
    cls.__hash__ = Term.__hash__
    return cls


@dataclass(frozen=True)
class Renaming:
    """A finite relation on action names; may be non-functional and may drop actions."""

    pairs: frozenset[tuple[str, str]]

    def __init__(self, pairs: Iterable[tuple[str, str]]):
        object.__setattr__(self, "pairs", frozenset((a, b) for a, b in pairs))

    def targets(self, a: str) -> list[str]:
        return sorted(b for x, b in self.pairs if x == a)

    def image(self, actions: Iterable[str]) -> frozenset[str]:
        acts = set(actions)
        return frozenset(b for a, b in self.pairs if a in acts)

    def sorted_pairs(self) -> list[tuple[str, str]]:
        return sorted(self.pairs)


@_term
class Inaction(Term):
    alphabet: frozenset[str]

    def __init__(self, alphabet: Iterable[str]):
        object.__setattr__(self, "alphabet", _alphabet(alphabet))


@_term
class Prefix(Term):
    action: str
    body: Term


@_term
class Choice(Term):
    left: Term
    right: Term


@_term
class Parallel(Term):
    left: Term
    right: Term


@_term
class Rename(Term):
    renaming: Renaming
    body: Term


@_term
class Var(Term):
    name: str
    alphabet: frozenset[str]

    def __init__(self, name: str, alphabet: Iterable[str]):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "alphabet", _alphabet(alphabet))


@dataclass(frozen=True)
class RecSpec:
    """A recursive specification ``{Y_B = S_{Y_B}}``, stored sorted by variable."""

    equations: tuple[tuple[Var, Term], ...]
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __init__(self, equations):
        items = equations.items() if hasattr(equations, "items") else equations
        eqs = tuple(sorted(items, key=lambda kv: (kv[0].name, sorted(kv[0].alphabet))))
        seen = set()
        for v, _ in eqs:
            if v in seen:
                raise ValueError(f"variable {v.name} is defined twice")
            seen.add(v)
        object.__setattr__(self, "equations", eqs)
        object.__setattr__(self, "_index", dict(eqs))

    def __hash__(self):
        return hash(self.equations)

    @property
    def variables(self) -> frozenset[Var]:
        return frozenset(self._index)

    def body(self, v: Var) -> Term:
        return self._index[v]

    def __contains__(self, v: object) -> bool:
        return v in self._index


@_term
class Rec(Term):
    """``<X_A | S>``: the ``X_A`` component of a solution of ``S``."""

    var: Var
    spec: RecSpec

    def __post_init__(self):
        if self.var not in self.spec:
            raise ValueError(f"variable {self.var.name} is not bound by its rec equations")


class TermError(ValueError):
    pass


class UnboundVariable(TermError):
    pass


class AlphabetMismatch(TermError):
    pass


@lru_cache(maxsize=None)
def alphabet(t: Term) -> frozenset[str]:
    if isinstance(t, (Inaction, Var)):
        return t.alphabet
    if isinstance(t, Rec):
        return t.var.alphabet
    if isinstance(t, Prefix):
        return alphabet(t.body) | {t.action}
    if isinstance(t, (Choice, Parallel)):
        return alphabet(t.left) | alphabet(t.right)
    if isinstance(t, Rename):
        return t.renaming.image(alphabet(t.body))
    raise TypeError(t)


def subterms(t: Term) -> Iterator[Term]:
    """All subterms, including the bodies of nested specifications."""
    yield t
    if isinstance(t, Prefix):
        yield from subterms(t.body)
    elif isinstance(t, (Choice, Parallel)):
        yield from subterms(t.left)
        yield from subterms(t.right)
    elif isinstance(t, Rename):
        yield from subterms(t.body)
    elif isinstance(t, Rec):
        for _, body in t.spec.equations:
            yield from subterms(body)


def free_variables(t: Term) -> frozenset[Var]:
    if isinstance(t, Var):
        return frozenset({t})
    if isinstance(t, Inaction):
        return frozenset()
    if isinstance(t, (Prefix, Rename)):
        return free_variables(t.body)
    if isinstance(t, (Choice, Parallel)):
        return free_variables(t.left) | free_variables(t.right)
    if isinstance(t, Rec):
        inner = frozenset().union(*(free_variables(b) for _, b in t.spec.equations))
        return inner - t.spec.variables
    raise TypeError(t)


def is_closed(t: Term) -> bool:
    return not free_variables(t)


@dataclass(frozen=True)
class Violation:
    message: str
    subterm: Term

    def __str__(self) -> str:
        return f"{self.message}: {self.subterm}"


def check_well_typed(t: Term) -> list[Violation]:
    """Return all well-typedness violations; an empty list means ``t`` is well-typed."""
    out = []
    for u in subterms(t):
        if isinstance(u, Prefix) and u.action not in alphabet(u.body):
            out.append(Violation(f"action {u.action} is not in the alphabet of its continuation", u))
        elif isinstance(u, Choice) and alphabet(u.left) != alphabet(u.right):
            out.append(
                Violation(
                    f"summands have alphabets {sorted(alphabet(u.left))} and {sorted(alphabet(u.right))}",
                    u,
                )
            )
        elif isinstance(u, Rec):
            for v, body in u.spec.equations:
                if alphabet(body) != v.alphabet:
                    out.append(
                        Violation(
                            f"body of {v.name} has alphabet {sorted(alphabet(body))}, declared {sorted(v.alphabet)}",
                            body,
                        )
                    )
    return _dedupe(out)


def _dedupe(vs: list[Violation]) -> list[Violation]:
    seen, out = set(), []
    for v in vs:
        key = (v.message, v.subterm)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def _unguarded(t: Term, bound: frozenset[Var]) -> Iterator[Var]:
    """Occurrences of ``bound`` variables in ``t`` not lying under a prefix."""
    if isinstance(t, Var):
        if t in bound:
            yield t
    elif isinstance(t, (Choice, Parallel)):
        yield from _unguarded(t.left, bound)
        yield from _unguarded(t.right, bound)
    elif isinstance(t, Rename):
        yield from _unguarded(t.body, bound)
    elif isinstance(t, Rec):
        inner = bound - t.spec.variables
        for _, body in t.spec.equations:
            yield from _unguarded(body, inner)


def check_guarded(t: Term) -> list[Violation]:
    """Every bound-variable occurrence in a specification body must lie under a prefix."""
    out = []
    for u in subterms(t):
        if isinstance(u, Rec):
            for v, body in u.spec.equations:
                for x in _unguarded(body, u.spec.variables):
                    out.append(Violation(f"unguarded occurrence of {x.name} in the body of {v.name}", body))
    return _dedupe(out)


def substitute(t: Term, mapping: dict[Var, Term]) -> Term:
    """Replace free occurrences of the variables in ``mapping``."""
    if not mapping:
        return t
    if isinstance(t, Var):
        return mapping.get(t, t)
    if isinstance(t, Inaction):
        return t
    if isinstance(t, Prefix):
        return Prefix(t.action, substitute(t.body, mapping))
    if isinstance(t, Choice):
        return Choice(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, Parallel):
        return Parallel(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, Rename):
        return Rename(t.renaming, substitute(t.body, mapping))
    if isinstance(t, Rec):
        # variables bound by the nested specification shadow the outer ones
        inner = {v: u for v, u in mapping.items() if v not in t.spec}
        if not inner:
            return t
        spec = RecSpec([(v, substitute(b, inner)) for v, b in t.spec.equations])
        return Rec(t.var, spec)
    raise TypeError(t)


def subst_rec(e: Term, spec: RecSpec) -> Term:
    """``<E | S>``: substitute ``<Y_B | S>`` for every free ``Y_B`` bound by ``S``."""
    for v in free_variables(e):
        if v not in spec:
            same_name = [w for w in spec.variables if w.name == v.name]
            if same_name:
                raise AlphabetMismatch(f"variable {v.name} has alphabet {sorted(v.alphabet)} "
                                       f"but the rec equations bind {sorted(same_name[0].alphabet)}")
            raise UnboundVariable(f"variable {v.name} is not bound by the rec equations")
    return substitute(e, {v: Rec(v, spec) for v in spec.variables})


@lru_cache(maxsize=None)
def unfold(t: Rec) -> Term:
    """``<S_X | S>`` for ``t = <X | S>``."""
    return substitute(t.spec.body(t.var), {v: Rec(v, t.spec) for v in t.spec.variables})


class IllFormedTerm(TermError):
    def __init__(self, violations: list[Violation]):
        super().__init__("; ".join(map(str, violations)))
        self.violations = violations


@lru_cache(maxsize=4096)
def require_closed_guarded(t: Term) -> None:
    """Raise :class:`IllFormedTerm` unless ``t`` is closed, well-typed and guarded."""
    problems = []
    for v in sorted(free_variables(t), key=lambda v: v.name):
        problems.append(Violation(f"free variable {v.name}", v))
    problems += check_well_typed(t)
    problems += check_guarded(t)
    if problems:
        raise IllFormedTerm(problems)
