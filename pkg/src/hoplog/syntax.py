"""Typed abstract syntax: types, terms, literals, clauses, substitutions.

The type system has two base types, ``i`` (individuals) and ``o`` (booleans).
Composite types split into three classes:

  functional   f : i -> ... -> i        (function symbols)
  predicate    p : r1 -> ... -> rn -> o (predicate symbols)
  argument     r : i or any predicate type (what predicates may consume)

Terms are applicative: constants and variables, fully applied function
symbols over individuals, and curried application of predicate-typed terms.
Negation ``~`` and individual equality ``=`` exist only at the literal level.

All values here are immutable and hashable; they can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Union

from .errors import (
    ArityMismatch,
    EqOfNonIndividual,
    IllTyped,
    IllTypedApplication,
    NegOfNonBoolean,
    TypeMismatch,
    UnboundSymbol,
)

# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


class TypeExpr:
    """Base class for type expressions."""

    __slots__ = ()


@dataclass(frozen=True)
class Iota(TypeExpr):
    def __str__(self) -> str:
        return "i"


@dataclass(frozen=True)
class Omicron(TypeExpr):
    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True)
class Arrow(TypeExpr):
    argument: TypeExpr
    result: TypeExpr

    def __str__(self) -> str:
        left = str(self.argument)
        if isinstance(self.argument, Arrow):
            left = f"({left})"
        return f"{left} -> {self.result}"


IOTA = Iota()
OMICRON = Omicron()


def arrow(*types: TypeExpr) -> TypeExpr:
    """Right-associated arrow chain: arrow(a, b, c) == a -> (b -> c)."""
    if not types:
        raise ValueError("arrow() needs at least one type")
    out = types[-1]
    for t in reversed(types[:-1]):
        out = Arrow(t, out)
    return out


def is_functional_type(t: TypeExpr) -> bool:
    while isinstance(t, Arrow):
        if t.argument != IOTA:
            return False
        t = t.result
    return t == IOTA


def is_predicate_type(t: TypeExpr) -> bool:
    while isinstance(t, Arrow):
        if not is_argument_type(t.argument):
            return False
        t = t.result
    return t == OMICRON


def is_argument_type(t: TypeExpr) -> bool:
    return t == IOTA or is_predicate_type(t)


def predicate_arg_types(t: TypeExpr) -> tuple[TypeExpr, ...]:
    """Argument types r1..rn of a predicate type r1 -> ... -> rn -> o."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.argument)
        t = t.result
    if t != OMICRON:
        raise IllTyped(f"not a predicate type: {t}")
    return tuple(args)


def functional_arity(t: TypeExpr) -> int:
    n = 0
    while isinstance(t, Arrow):
        n += 1
        t = t.result
    return n


def suffix_types(t: TypeExpr) -> Iterator[TypeExpr]:
    """t itself and every result type reachable by peeling arguments."""
    yield t
    while isinstance(t, Arrow):
        t = t.result
        yield t


def type_geq(t1: TypeExpr, t2: TypeExpr) -> bool:
    """t1 >= t2: t1 equals t2 or is of the form r1 -> ... -> rn -> t2."""
    return any(s == t2 for s in suffix_types(t1))


def type_size(t: TypeExpr) -> int:
    if isinstance(t, Arrow):
        return 1 + type_size(t.argument) + type_size(t.result)
    return 1


# ---------------------------------------------------------------------------
# Terms and expressions
# ---------------------------------------------------------------------------


class Expr:
    """Base class for terms and literal expressions. Nodes carry their type."""

    __slots__ = ()

    @property
    def typ(self) -> TypeExpr:
        raise NotImplementedError


@dataclass(frozen=True)
class IndConst(Expr):
    name: str

    @property
    def typ(self) -> TypeExpr:
        return IOTA


@dataclass(frozen=True)
class PredConst(Expr):
    name: str
    ptype: TypeExpr

    @property
    def typ(self) -> TypeExpr:
        return self.ptype


@dataclass(frozen=True)
class IndVar(Expr):
    name: str

    @property
    def typ(self) -> TypeExpr:
        return IOTA


@dataclass(frozen=True)
class PredVar(Expr):
    name: str
    ptype: TypeExpr

    @property
    def typ(self) -> TypeExpr:
        return self.ptype


@dataclass(frozen=True)
class FunApp(Expr):
    fun: str
    args: tuple[Expr, ...]

    @property
    def typ(self) -> TypeExpr:
        return IOTA


@dataclass(frozen=True)
class App(Expr):
    op: Expr
    arg: Expr

    @property
    def typ(self) -> TypeExpr:
        optype = self.op.typ
        if not isinstance(optype, Arrow):
            raise IllTypedApplication(f"operator {canonical_print(self.op)} has non-arrow type {optype}")
        return optype.result


@dataclass(frozen=True)
class Neg(Expr):
    atom: Expr

    @property
    def typ(self) -> TypeExpr:
        return OMICRON


@dataclass(frozen=True)
class Eq(Expr):
    lhs: Expr
    rhs: Expr

    @property
    def typ(self) -> TypeExpr:
        return OMICRON


Var = Union[IndVar, PredVar]


def is_var(e: Expr) -> bool:
    return isinstance(e, (IndVar, PredVar))


def spine(e: Expr) -> tuple[Expr, list[Expr]]:
    """Decompose nested applications: spine(((h a) b)) == (h, [a, b])."""
    args: list[Expr] = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.op
    args.reverse()
    return e, args


def build_spine(head: Expr, args: list[Expr]) -> Expr:
    out = head
    for a in args:
        out = App(out, a)
    return out


def term_size(e: Expr) -> int:
    """Number of constant, function-symbol and predicate-constant occurrences."""
    if isinstance(e, (IndConst, PredConst)):
        return 1
    if isinstance(e, (IndVar, PredVar)):
        return 0
    if isinstance(e, FunApp):
        return 1 + sum(term_size(a) for a in e.args)
    if isinstance(e, App):
        return term_size(e.op) + term_size(e.arg)
    if isinstance(e, Neg):
        return term_size(e.atom)
    if isinstance(e, Eq):
        return term_size(e.lhs) + term_size(e.rhs)
    raise TypeError(f"not an expression: {e!r}")


def free_vars(e: Expr) -> frozenset[Var]:
    """The set of variables occurring in e (each carries its type)."""
    if isinstance(e, (IndVar, PredVar)):
        return frozenset((e,))
    if isinstance(e, (IndConst, PredConst)):
        return frozenset()
    if isinstance(e, FunApp):
        out: frozenset[Var] = frozenset()
        for a in e.args:
            out |= free_vars(a)
        return out
    if isinstance(e, App):
        return free_vars(e.op) | free_vars(e.arg)
    if isinstance(e, Neg):
        return free_vars(e.atom)
    if isinstance(e, Eq):
        return free_vars(e.lhs) | free_vars(e.rhs)
    raise TypeError(f"not an expression: {e!r}")


def is_ground(e: Expr) -> bool:
    return not free_vars(e)


# ---------------------------------------------------------------------------
# Canonical printing
# ---------------------------------------------------------------------------


def _atomic(e: Expr) -> str:
    """Render e, parenthesized when it would not re-parse as one argument."""
    if isinstance(e, (App, FunApp)) and not (isinstance(e, FunApp) and not e.args):
        return f"({canonical_print(e)})"
    return canonical_print(e)


@lru_cache(maxsize=None)
def canonical_print(e: Expr) -> str:
    """Deterministic, re-parseable rendering with minimal parentheses.

    Application is printed left-associatively by juxtaposition; ``~`` binds a
    single argument; ``=`` joins two individual terms.
    """
    if isinstance(e, (IndConst, PredConst, IndVar, PredVar)):
        return e.name
    if isinstance(e, FunApp):
        return " ".join([e.fun] + [_atomic(a) for a in e.args])
    if isinstance(e, App):
        head, args = spine(e)
        return " ".join([canonical_print(head)] + [_atomic(a) for a in args])
    if isinstance(e, Neg):
        return f"~{_atomic(e.atom)}"
    if isinstance(e, Eq):
        return f"{canonical_print(e.lhs)} = {canonical_print(e.rhs)}"
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

KIND_INDIVIDUAL = "individual"
KIND_FUNCTION = "function"
KIND_PREDICATE = "predicate"


@dataclass(frozen=True)
class Signature:
    """Immutable symbol table: constant / function-symbol name -> type."""

    entries: tuple[tuple[str, TypeExpr], ...]

    def __post_init__(self) -> None:
        for name, t in self.entries:
            self.kind_of_type(name, t)

    @staticmethod
    def kind_of_type(name: str, t: TypeExpr) -> str:
        if t == IOTA:
            return KIND_INDIVIDUAL
        if is_functional_type(t):
            return KIND_FUNCTION
        if is_predicate_type(t):
            return KIND_PREDICATE
        raise IllTyped(f"{name}: {t} is neither a functional nor a predicate type")

    def as_dict(self) -> dict[str, TypeExpr]:
        return dict(self.entries)

    def lookup(self, name: str) -> TypeExpr:
        for n, t in self.entries:
            if n == name:
                return t
        raise UnboundSymbol(f"undeclared symbol: {name}")

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.entries)

    def kind(self, name: str) -> str:
        return self.kind_of_type(name, self.lookup(name))

    def individual_constants(self) -> tuple[str, ...]:
        return tuple(n for n, t in self.entries if t == IOTA)

    def function_symbols(self) -> tuple[tuple[str, int], ...]:
        return tuple(
            (n, functional_arity(t))
            for n, t in self.entries
            if t != IOTA and is_functional_type(t)
        )

    def predicate_constants(self) -> tuple[tuple[str, TypeExpr], ...]:
        return tuple((n, t) for n, t in self.entries if is_predicate_type(t))


def make_signature(mapping: Mapping[str, TypeExpr]) -> Signature:
    return Signature(tuple(sorted(mapping.items())))


# ---------------------------------------------------------------------------
# Clauses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Clause:
    """head_pred V1 ... Vn <- L1, ..., Lm with pairwise-distinct variable formals."""

    head_pred: PredConst
    formals: tuple[Var, ...]
    body: tuple[Expr, ...]

    def head_atom(self) -> Expr:
        return build_spine(self.head_pred, list(self.formals))

    def variables(self) -> tuple[Var, ...]:
        """All clause variables: formals first, then body-only ones in order of first use."""
        seen = list(self.formals)
        for lit in self.body:
            for v in _vars_in_order(lit):
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def __str__(self) -> str:
        head = canonical_print(self.head_atom())
        if not self.body:
            return f"{head}."
        return f"{head} <- {', '.join(canonical_print(l) for l in self.body)}."


def _vars_in_order(e: Expr) -> list[Var]:
    if isinstance(e, (IndVar, PredVar)):
        return [e]
    if isinstance(e, (IndConst, PredConst)):
        return []
    if isinstance(e, FunApp):
        out: list[Var] = []
        for a in e.args:
            out.extend(_vars_in_order(a))
        return out
    if isinstance(e, App):
        return _vars_in_order(e.op) + _vars_in_order(e.arg)
    if isinstance(e, Neg):
        return _vars_in_order(e.atom)
    if isinstance(e, Eq):
        return _vars_in_order(e.lhs) + _vars_in_order(e.rhs)
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

# A substitution maps variable names to terms; each variable's type must
# match its replacement's type, which is checked at application sites.
Substitution = Mapping[str, Expr]


def apply_substitution(e: Expr, theta: Substitution) -> Expr:
    """Structural replacement of variables; unmapped variables stay put."""
    if isinstance(e, (IndConst, PredConst)):
        return e
    if isinstance(e, (IndVar, PredVar)):
        replacement = theta.get(e.name)
        if replacement is None:
            return e
        if replacement.typ != e.typ:
            raise TypeMismatch(
                f"substitution maps {e.name}: {e.typ} to "
                f"{canonical_print(replacement)}: {replacement.typ}"
            )
        return replacement
    if isinstance(e, FunApp):
        return FunApp(e.fun, tuple(apply_substitution(a, theta) for a in e.args))
    if isinstance(e, App):
        return App(apply_substitution(e.op, theta), apply_substitution(e.arg, theta))
    if isinstance(e, Neg):
        return Neg(apply_substitution(e.atom, theta))
    if isinstance(e, Eq):
        return Eq(apply_substitution(e.lhs, theta), apply_substitution(e.rhs, theta))
    raise TypeError(f"not an expression: {e!r}")


def substitute_clause(clause: Clause, theta: Substitution) -> tuple[Expr, tuple[Expr, ...]]:
    """Instance of a clause under theta: (head atom, body literals)."""
    head = apply_substitution(clause.head_atom(), theta)
    body = tuple(apply_substitution(l, theta) for l in clause.body)
    return head, body


# ---------------------------------------------------------------------------
# Type computation / validation
# ---------------------------------------------------------------------------


def type_of(e: Expr, sig: Signature, var_env: Mapping[str, TypeExpr]) -> TypeExpr:
    """Compute (and validate) the unique type of e against sig and var_env.

    Every symbol must be bound; applications must be well-typed; ``~`` only
    over booleans; ``=`` only over individuals.
    """
    if isinstance(e, IndConst):
        declared = sig.lookup(e.name)
        if declared != IOTA:
            raise IllTyped(f"{e.name} declared {declared}, used as an individual")
        return IOTA
    if isinstance(e, PredConst):
        declared = sig.lookup(e.name)
        if declared != e.ptype:
            raise IllTyped(f"{e.name} declared {declared}, annotated {e.ptype}")
        return e.ptype
    if isinstance(e, IndVar):
        bound = var_env.get(e.name)
        if bound is None:
            raise UnboundSymbol(f"unbound variable: {e.name}")
        if bound != IOTA:
            raise IllTyped(f"variable {e.name} bound to {bound}, used as an individual")
        return IOTA
    if isinstance(e, PredVar):
        bound = var_env.get(e.name)
        if bound is None:
            raise UnboundSymbol(f"unbound variable: {e.name}")
        if bound != e.ptype:
            raise IllTyped(f"variable {e.name} bound to {bound}, annotated {e.ptype}")
        return e.ptype
    if isinstance(e, FunApp):
        declared = sig.lookup(e.fun)
        if declared == IOTA or not is_functional_type(declared):
            raise IllTypedApplication(f"{e.fun} is not a function symbol")
        n = functional_arity(declared)
        if len(e.args) != n:
            raise ArityMismatch(f"{e.fun} expects {n} arguments, got {len(e.args)}")
        for a in e.args:
            if type_of(a, sig, var_env) != IOTA:
                raise IllTypedApplication(
                    f"argument {canonical_print(a)} of {e.fun} is not an individual"
                )
        return IOTA
    if isinstance(e, App):
        optype = type_of(e.op, sig, var_env)
        if not isinstance(optype, Arrow) or not is_predicate_type(optype):
            raise IllTypedApplication(
                f"operator {canonical_print(e.op)}: {optype} cannot be applied"
            )
        argtype = type_of(e.arg, sig, var_env)
        if argtype != optype.argument:
            raise IllTypedApplication(
                f"operand {canonical_print(e.arg)}: {argtype} where "
                f"{optype.argument} is required"
            )
        return optype.result
    if isinstance(e, Neg):
        if isinstance(e.atom, (Neg, Eq)):
            raise NegOfNonBoolean(f"~ applies to atoms only: {canonical_print(e)}")
        if type_of(e.atom, sig, var_env) != OMICRON:
            raise NegOfNonBoolean(f"~ over non-boolean: {canonical_print(e.atom)}")
        return OMICRON
    if isinstance(e, Eq):
        if type_of(e.lhs, sig, var_env) != IOTA or type_of(e.rhs, sig, var_env) != IOTA:
            raise EqOfNonIndividual(f"= compares individuals only: {canonical_print(e)}")
        return OMICRON
    raise TypeError(f"not an expression: {e!r}")
