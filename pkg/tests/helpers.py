"""Shared test utilities: independent oracles and random generators.

The oracles here deliberately avoid the package's own enumeration and
fixpoint machinery:

* ``enumerate_terms_closure`` grows ground terms by repeated application
  instead of by sized composition;
* ``classical_least_model`` is a plain two-valued immediate-consequence
  closure for negation-free ground programs.
"""

from __future__ import annotations

import random

from hoplog.grounder import ConstLit, GroundProgram, NegLit, PosLit
from hoplog.syntax import (
    IOTA,
    OMICRON,
    App,
    Arrow,
    Expr,
    FunApp,
    IndConst,
    PredConst,
    TypeExpr,
    canonical_print,
    term_size,
)
from hoplog.typecheck import Program, load_program


def load(src: str) -> Program:
    return load_program(src)


# ---------------------------------------------------------------------------
# Independent term enumeration (oracle for the universe builder)
# ---------------------------------------------------------------------------


def enumerate_terms_closure(program: Program, rho: TypeExpr, k: int) -> set[str]:
    """All ground terms of type rho with at most k symbols, by closure.

    Start from the bare constants and saturate under (a) every function
    symbol applied to individual tuples and (b) single application steps,
    keeping only terms within the size bound.  Equivalent to the sized
    enumeration, computed a different way.
    """
    sig = program.signature
    terms: dict[str, tuple[Expr, TypeExpr]] = {}

    def add(e: Expr, t: TypeExpr) -> bool:
        key = canonical_print(e)
        if term_size(e) > k or key in terms:
            return False
        terms[key] = (e, t)
        return True

    for name in sig.individual_constants():
        add(IndConst(name), IOTA)
    for name, t in sig.predicate_constants():
        add(PredConst(name, t), t)
    changed = True
    while changed:
        changed = False
        snapshot = list(terms.values())
        for fname, arity in sig.function_symbols():
            pool = [e for e, t in snapshot if t == IOTA]
            for args in _tuples(pool, arity):
                if add(FunApp(fname, tuple(args)), IOTA):
                    changed = True
        for op, t_op in snapshot:
            if not isinstance(t_op, Arrow):
                continue
            for arg, t_arg in snapshot:
                if t_arg == t_op.argument:
                    if add(App(op, arg), t_op.result):
                        changed = True
    return {key for key, (_, t) in terms.items() if t == rho}


def _tuples(pool, n):
    if n == 0:
        yield []
        return
    for head in pool:
        for tail in _tuples(pool, n - 1):
            yield [head] + tail


# ---------------------------------------------------------------------------
# Classical least model (oracle for negation-free programs)
# ---------------------------------------------------------------------------


def classical_least_model(gp: GroundProgram) -> set[str]:
    """Two-valued least-fixpoint true set; only for negation-free programs."""
    for gc in gp.clauses:
        assert not any(isinstance(l, NegLit) for l in gc.body)
    true: set[str] = set()
    changed = True
    while changed:
        changed = False
        for gc in gp.clauses:
            if gc.head.key in true:
                continue
            ok = True
            for lit in gc.body:
                if isinstance(lit, PosLit):
                    if lit.atom.key not in true:
                        ok = False
                        break
                elif isinstance(lit, ConstLit):
                    if not lit.value:
                        ok = False
                        break
            if ok:
                true.add(gc.head.key)
                changed = True
    return true


def is_negation_free(gp: GroundProgram) -> bool:
    return not any(
        isinstance(l, NegLit) for gc in gp.clauses for l in gc.body
    )


# ---------------------------------------------------------------------------
# Random well-typed program generator (round-trip and fuzz fodder)
# ---------------------------------------------------------------------------

_PRED_TYPE_POOL: list[TypeExpr] = [
    OMICRON,
    Arrow(IOTA, OMICRON),
    Arrow(IOTA, Arrow(IOTA, OMICRON)),
    Arrow(Arrow(IOTA, OMICRON), OMICRON),
    Arrow(OMICRON, OMICRON),
    Arrow(Arrow(OMICRON, OMICRON), OMICRON),
]


def random_program_source(rng: random.Random) -> str:
    """A syntactically well-typed random program, as source text."""
    lines = []
    n_ind = rng.randint(1, 3)
    individuals = [f"c{i}" for i in range(n_ind)]
    for c in individuals:
        lines.append(f"type {c} : i.")
    functions = []
    if rng.random() < 0.3:
        functions.append(("f0", rng.randint(1, 2)))
        for fname, arity in functions:
            lines.append(f"type {fname} : {' -> '.join(['i'] * (arity + 1))}.")
    preds = []
    for i in range(rng.randint(1, 4)):
        preds.append((f"p{i}", rng.choice(_PRED_TYPE_POOL)))
    for name, t in preds:
        lines.append(f"type {name} : {t}.")
    env: dict[str, TypeExpr] = {}

    def gen_ind_term(depth: int) -> str:
        if functions and depth > 0 and rng.random() < 0.4:
            fname, arity = functions[0]
            args = " ".join(_paren(gen_ind_term(depth - 1)) for _ in range(arity))
            return f"{fname} {args}"
        if env and rng.random() < 0.4:
            ind_vars = [v for v, t in env.items() if t == IOTA]
            if ind_vars:
                return rng.choice(ind_vars)
        return rng.choice(individuals)

    def gen_term(target: TypeExpr, depth: int) -> str | None:
        if target == IOTA:
            return gen_ind_term(depth)
        candidates: list[str] = [n for n, t in preds if t == target]
        candidates += [v for v, t in env.items() if t == target]
        partials = []
        if depth > 0:
            for n, t in preds:
                args = []
                cur = t
                while isinstance(cur, Arrow) and cur != target:
                    args.append(cur.argument)
                    cur = cur.result
                if cur == target and args:
                    partials.append((n, args))
        if partials and (not candidates or rng.random() < 0.4):
            n, args = rng.choice(partials)
            rendered = []
            for at in args:
                sub = gen_term(at, depth - 1)
                if sub is None:
                    return rng.choice(candidates) if candidates else None
                rendered.append(_paren(sub))
            return f"{n} {' '.join(rendered)}"
        if candidates:
            return rng.choice(candidates)
        return None

    def gen_literal(depth: int) -> str | None:
        roll = rng.random()
        if roll < 0.2:
            return f"{gen_ind_term(depth)} = {gen_ind_term(depth)}"
        atom = gen_term(OMICRON, depth)
        if atom is None:
            return None
        if roll < 0.5:
            return f"~{_paren(atom)}"
        return atom

    for ci in range(rng.randint(1, 4)):
        name, t = rng.choice(preds)
        argtypes = []
        cur = t
        while isinstance(cur, Arrow):
            argtypes.append(cur.argument)
            cur = cur.result
        env.clear()
        formals = []
        for j, at in enumerate(argtypes):
            v = f"V{ci}{j}"
            env[v] = at
            formals.append(v)
        head = " ".join([name] + formals)
        body = [l for l in (gen_literal(2) for _ in range(rng.randint(0, 3))) if l]
        if body:
            lines.append(f"{head} <- {', '.join(body)}.")
        else:
            lines.append(f"{head}.")
    return "\n".join(lines) + "\n"


def _paren(text: str) -> str:
    return f"({text})" if " " in text else text


# ---------------------------------------------------------------------------
# Random stratified program generator
# ---------------------------------------------------------------------------


def random_stratified_source(rng: random.Random) -> str:
    """A stratified program: <= 3 strata of first-order predicates under up
    to 2 higher-order predicates that consume unary relations.

    Negative literals only mention predicates of strictly lower strata.
    Variable-headed literals appear only in the higher-order stratum, where
    every predicate whose type could match sits strictly below.
    """
    individuals = ["a", "b"]
    lines = [f"type {c} : i." for c in individuals]
    # Two first-order levels plus the higher-order level keeps the canonical
    # stratification within three strata.
    strata: list[list[tuple[str, TypeExpr]]] = [[], []]
    counter = 0
    for level in range(2):
        for _ in range(rng.randint(1, 2)):
            t = rng.choice([OMICRON, Arrow(IOTA, OMICRON)])
            if counter == 0:
                t = Arrow(IOTA, OMICRON)  # higher-order clauses need one unary
            strata[level].append((f"r{counter}", t))
            counter += 1
    ho_preds = []
    for i in range(rng.randint(0, 2)):
        ho_preds.append((f"h{i}", Arrow(Arrow(IOTA, OMICRON), OMICRON)))
    for level in strata:
        for name, t in level:
            lines.append(f"type {name} : {t}.")
    for name, t in ho_preds:
        lines.append(f"type {name} : {t}.")

    def atom_of(pred: tuple[str, TypeExpr], var: str | None = None) -> str:
        name, t = pred
        if t == OMICRON:
            return name
        arg = var if var is not None else rng.choice(individuals)
        return f"{name} {arg}"

    clause_no = 0
    for level in range(2):
        below = [p for lv in strata[:level] for p in lv]
        here = strata[level]
        for pred in here:
            for _ in range(rng.randint(1, 2)):
                name, t = pred
                var = None
                if t == OMICRON:
                    head = name
                else:
                    var = f"X{clause_no}"
                    head = f"{name} {var}"
                clause_no += 1
                body = []
                if var is not None:
                    # Ground the head variable so the model stays two-valued.
                    body.append(f"{var} = {rng.choice(individuals)}")
                for _ in range(rng.randint(0, 2)):
                    pool = below + here
                    roll = rng.random()
                    if below and roll < 0.4:
                        body.append(f"~{_paren(atom_of(rng.choice(below)))}")
                    elif pool and roll < 0.9:
                        body.append(atom_of(rng.choice(pool)))
                if body:
                    lines.append(f"{head} <- {', '.join(body)}.")
                else:
                    lines.append(f"{head}.")
    unary = [p for lv in strata for p in lv if p[1] != OMICRON]
    for name, _t in ho_preds:
        for _ in range(rng.randint(1, 2)):
            clause_no += 1
            qvar = f"Q{clause_no}"
            head = f"{name} {qvar}"
            body = []
            use_neg = rng.random() < 0.5
            applied = f"{qvar} {rng.choice(individuals)}"
            body.append(f"~({applied})" if use_neg else applied)
            if unary and rng.random() < 0.5:
                body.append(f"~{_paren(atom_of(rng.choice(unary)))}")
            lines.append(f"{head} <- {', '.join(body)}.")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Random ground programs (for the engine differential tests)
# ---------------------------------------------------------------------------


def random_ground_source(rng: random.Random, n_atoms: int = 5) -> str:
    """A random propositional program over nullary predicates."""
    names = [f"g{i}" for i in range(n_atoms)]
    lines = [f"type {n} : o." for n in names]
    for _ in range(rng.randint(1, 2 * n_atoms)):
        head = rng.choice(names)
        body = []
        for _ in range(rng.randint(0, 3)):
            atom = rng.choice(names)
            body.append(f"~{atom}" if rng.random() < 0.4 else atom)
        if body:
            lines.append(f"{head} <- {', '.join(body)}.")
        else:
            lines.append(f"{head}.")
    return "\n".join(lines) + "\n"
