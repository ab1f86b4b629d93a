"""Extensional-equality relations and the reflexivity check.

Two ground terms are extensionally equal at a type, under a valuation:

* individuals: syntactic identity;
* booleans: equal valuation;
* arrow types: applying them to any pair of extensionally equal arguments
  (where both applications are defined) yields extensionally equal results.

The full relations quantify over infinite universes, so every verdict here
is bounded: arguments range over the size-k universe and valuations are the
well-founded values over a demand-driven grounding, computed lazily as new
atoms are needed.  A failed reflexivity check is a genuine counterexample;
a clean one only certifies extensionality at the tested depth.  Valuations
whose atoms exceed the total size budget abort that item with
``DepthExceeded`` and are reported as unknown rather than false.

Arguments of boolean type range over atoms only: application never consumes
a negated or equality expression, which is exactly why elements of
boolean-consuming types denote partial functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import DepthExceeded
from .grounder import Universe, ground_atom, relevant_grounding
from .interp import PartialInterpretation, TruthValue
from .syntax import (
    IOTA,
    OMICRON,
    App,
    Arrow,
    Expr,
    TypeExpr,
    canonical_print,
    term_size,
)
from .typecheck import Program
from .wfs import well_founded_model

DEFAULT_BUDGET_FACTOR = 4


@dataclass(frozen=True)
class ExtRelation:
    """Pairs of size-bounded terms extensionally equal at one type."""

    rho: TypeExpr
    pairs: frozenset[tuple[str, str]]
    bound: int

    def holds(self, a: str, b: str) -> bool:
        return (a, b) in self.pairs


@dataclass
class Witness:
    """A replayable reflexivity failure.

    Applying ``term`` to the two sides of ``pair`` (then to the recorded
    further arguments) produced ``lhs_atom`` and ``rhs_atom`` with different
    values under the checked model.
    """

    rho: str
    term: str
    pair: tuple[str, str]
    lhs_atom: str
    rhs_atom: str
    lhs_value: str
    rhs_value: str

    def to_json_dict(self) -> dict:
        return {
            "type": self.rho,
            "term": self.term,
            "argument_pair": list(self.pair),
            "lhs_atom": self.lhs_atom,
            "rhs_atom": self.rhs_atom,
            "lhs_value": self.lhs_value,
            "rhs_value": self.rhs_value,
        }


@dataclass
class UnknownItem:
    rho: str
    term: str
    reason: str

    def to_json_dict(self) -> dict:
        return {"type": self.rho, "term": self.term, "reason": self.reason}


@dataclass
class ExtReport:
    depth: int
    budget: int
    witnesses: list[Witness] = field(default_factory=list)
    unknowns: list[UnknownItem] = field(default_factory=list)
    checked_types: list[str] = field(default_factory=list)
    checked_terms: int = 0

    @property
    def extensional_at_depth(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        if self.witnesses:
            return "non-extensional"
        return f"extensional-at-depth-{self.depth}"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "depth": self.depth,
            "budget": self.budget,
            "checked_types": list(self.checked_types),
            "checked_terms": self.checked_terms,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "unknown": [u.to_json_dict() for u in self.unknowns],
        }


@dataclass
class _Fail:
    lhs_atom: str
    rhs_atom: str
    lhs_value: TruthValue
    rhs_value: TruthValue
    pair: tuple[str, str] | None = None


class ValuationOracle:
    """Well-founded values over a growing demand grounding.

    Extending the root set only ever adds dependency cones, so values of
    previously known atoms never change; recomputing from scratch after each
    extension is therefore sound (and kept deliberately simple).
    """

    def __init__(self, program: Program, k: int, budget: int, semi_naive: bool = True):
        self.program = program
        self.k = k
        self.budget = budget
        self.semi_naive = semi_naive
        self._roots: dict[str, Expr] = {}
        self._model: PartialInterpretation | None = None

    def add_atoms(self, atoms) -> None:
        added = False
        for expr in atoms:
            key = canonical_print(expr)
            if key not in self._roots and term_size(expr) <= self.budget:
                self._roots[key] = expr
                added = True
        if added:
            self._model = None

    def _solve(self) -> PartialInterpretation:
        if self._model is None:
            gp = relevant_grounding(
                self.program, [ground_atom(e) for e in self._roots.values()], self.k
            )
            self._model = well_founded_model(gp, semi_naive=self.semi_naive).model
        return self._model

    def value(self, atom: Expr) -> TruthValue:
        if term_size(atom) > self.budget:
            raise DepthExceeded(
                f"{canonical_print(atom)} exceeds the size budget {self.budget}"
            )
        key = canonical_print(atom)
        if key not in self._roots:
            self.add_atoms([atom])
        model = self._solve()
        return model.value(key)


class ExtChecker:
    """Shared memo and universes for a family of extensionality queries."""

    def __init__(
        self,
        program: Program,
        k: int,
        budget: int | None = None,
        semi_naive: bool = True,
    ):
        if k < 1:
            raise ValueError("depth bound k must be >= 1")
        self.program = program
        self.k = k
        self.budget = budget if budget is not None else DEFAULT_BUDGET_FACTOR * k
        self.universe = Universe(program.signature)
        self.oracle = ValuationOracle(program, k, self.budget, semi_naive)
        self._memo: dict[tuple[TypeExpr, str, str], bool] = {}
        self._seeded: set[TypeExpr] = set()

    def _seed_applications(self, rho: TypeExpr) -> None:
        """Register every full application of size-k terms of type rho up
        front, so the demand grounding is solved once per type rather than
        once per atom."""
        if rho in self._seeded:
            return
        self._seeded.add(rho)
        argtypes = []
        cur = rho
        while isinstance(cur, Arrow):
            argtypes.append(cur.argument)
            cur = cur.result
        if cur != OMICRON:
            return
        atoms = []
        pools = [self.universe.terms(t, self.k) for t in argtypes]
        for term in self.universe.terms(rho, self.k):
            for combo in product(*pools):
                e: Expr = term
                for a in combo:
                    e = App(e, a)
                if term_size(e) <= self.budget:
                    atoms.append(e)
        self.oracle.add_atoms(atoms)

    # -- the relations ---------------------------------------------------------

    def equal(self, rho: TypeExpr, d: Expr, dprime: Expr) -> bool:
        dk, dpk = canonical_print(d), canonical_print(dprime)
        if rho == IOTA:
            return dk == dpk
        if rho == OMICRON:
            self._seed_applications(OMICRON)
            return self.oracle.value(d) == self.oracle.value(dprime)
        key = (rho, dk, dpk)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        assert isinstance(rho, Arrow)
        self._seed_applications(rho)
        result = True
        for e, eprime in product(self.universe.terms(rho.argument, self.k), repeat=2):
            if not self.equal(rho.argument, e, eprime):
                continue
            if not self.equal(rho.result, App(d, e), App(dprime, eprime)):
                result = False
                break
        self._memo[key] = result
        self._memo[(rho, dpk, dk)] = result  # the relations are symmetric
        return result

    def relation(self, rho: TypeExpr) -> ExtRelation:
        terms = self.universe.terms(rho, self.k)
        pairs = set()
        for d, dprime in product(terms, repeat=2):
            if self.equal(rho, d, dprime):
                pairs.add((canonical_print(d), canonical_print(dprime)))
        return ExtRelation(rho, frozenset(pairs), self.k)

    # -- reflexivity -----------------------------------------------------------

    def _check_reflexive(self, rho: TypeExpr, d: Expr, dprime: Expr) -> _Fail | None:
        """Like ``equal`` but reports the first failing branch, scanning
        argument pairs in canonical order so witnesses are minimal."""
        if rho == IOTA:
            return None
        if rho == OMICRON:
            self._seed_applications(OMICRON)
            lv, rv = self.oracle.value(d), self.oracle.value(dprime)
            if lv != rv:
                return _Fail(canonical_print(d), canonical_print(dprime), lv, rv)
            return None
        assert isinstance(rho, Arrow)
        self._seed_applications(rho)
        for e, eprime in product(self.universe.terms(rho.argument, self.k), repeat=2):
            if not self.equal(rho.argument, e, eprime):
                continue
            fail = self._check_reflexive(rho.result, App(d, e), App(dprime, eprime))
            if fail is not None:
                fail.pair = (canonical_print(e), canonical_print(eprime))
                return fail
        return None

    def reflexivity_report(self) -> ExtReport:
        from .grounder import argument_types

        report = ExtReport(self.depth_bound, self.budget)
        for rho in argument_types(self.program):
            report.checked_types.append(str(rho))
            if rho in (IOTA, OMICRON):
                # Reflexive outright: identity at i, v(E) = v(E) at o.
                report.checked_terms += len(self.universe.terms(rho, self.k))
                continue
            for term in self.universe.terms(rho, self.k):
                report.checked_terms += 1
                try:
                    fail = self._check_reflexive(rho, term, term)
                except DepthExceeded as exc:
                    report.unknowns.append(
                        UnknownItem(str(rho), canonical_print(term), str(exc))
                    )
                    continue
                if fail is not None:
                    report.witnesses.append(
                        Witness(
                            str(rho),
                            canonical_print(term),
                            fail.pair or ("", ""),
                            fail.lhs_atom,
                            fail.rhs_atom,
                            str(fail.lhs_value),
                            str(fail.rhs_value),
                        )
                    )
        return report

    @property
    def depth_bound(self) -> int:
        return self.k


# ---------------------------------------------------------------------------
# Operation-style entry points
# ---------------------------------------------------------------------------


def ext_equal(
    program: Program,
    rho: TypeExpr,
    d: Expr,
    dprime: Expr,
    k: int,
    budget: int | None = None,
) -> bool:
    """Bounded extensional equality of two ground terms at type rho."""
    return ExtChecker(program, k, budget).equal(rho, d, dprime)


def reflexivity_check(program: Program, k: int, budget: int | None = None) -> ExtReport:
    """Test every size-k term of every argument type in the signature for
    extensional self-equality; collect witnesses for each failure."""
    return ExtChecker(program, k, budget).reflexivity_report()


def replay_witness(program: Program, w: Witness, k: int, budget: int | None = None) -> bool:
    """Recompute the two recorded valuations; True when they match the report."""
    from .parser import parse_atom
    from .typecheck import elaborate_ground_atom

    checker = ExtChecker(program, k, budget)
    lhs = elaborate_ground_atom(program, parse_atom(w.lhs_atom))
    rhs = elaborate_ground_atom(program, parse_atom(w.rhs_atom))
    lv = checker.oracle.value(lhs)
    rv = checker.oracle.value(rhs)
    return str(lv) == w.lhs_value and str(rv) == w.rhs_value and lv != rv
