"""Well-founded model computation by iterated stage operators.

The engine follows the two-level construction for possibly-negated ground
programs: an inner operator (parameterized by a fixed outer interpretation
J) is iterated to its least fixed point from the all-false interpretation,
and the outer sequence M_0 = <{}, {}>, M_{a+1} = lfp(inner under M_a) climbs
in the Fitting order until it stabilizes.  On a finite atom table both
iterations terminate; the final stage is the well-founded model.

Negative literals are evaluated against J only; positive literals may draw
on either J or the inner iterate.  Atoms with no clauses are false.

The inner loop can run naively (recompute every atom each round) or
semi-naively (recompute only atoms whose positive body inputs changed).
Both produce bit-identical stage sequences; the semi-naive path is the
default and the equivalence is enforced by a differential test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotIncreasing
from .grounder import ConstLit, GroundProgram, NegLit, PosLit
from .interp import (
    Ordering,
    PartialInterpretation,
    TruthValue,
    everything_undefined,
    leq,
    value_of,
)


@dataclass(frozen=True)
class ThetaTrace:
    """Outer stages M_0..M_lambda and the inner iteration length per stage."""

    stages: tuple[PartialInterpretation, ...]
    inner_lengths: tuple[int, ...]

    @property
    def fixpoint_stage(self) -> int:
        return len(self.stages) - 1


@dataclass(frozen=True)
class WfsResult:
    model: PartialInterpretation
    trace: ThetaTrace


def _is_positive(lit) -> bool:
    return isinstance(lit, (PosLit, ConstLit))


def _atom_value(key: str, J: PartialInterpretation, ivals: dict[str, TruthValue], gp: GroundProgram) -> TruthValue:
    clauses = gp.clauses_for(key)
    gets_true = False
    gets_false = True  # vacuously false when no clause exists
    for gc in clauses:
        all_true = True
        some_false = False
        for lit in gc.body:
            jv = value_of(J, lit)
            iv = None
            if _is_positive(lit):
                if isinstance(lit, PosLit):
                    iv = ivals[lit.atom.key]
                else:
                    iv = TruthValue.TRUE if lit.value else TruthValue.FALSE
            if not (jv == TruthValue.TRUE or iv == TruthValue.TRUE):
                all_true = False
            if jv == TruthValue.FALSE or iv == TruthValue.FALSE:
                some_false = True
        if all_true:
            gets_true = True
        if not some_false:
            gets_false = False
    if gets_true:
        return TruthValue.TRUE
    if gets_false:
        return TruthValue.FALSE
    return TruthValue.UNDEFINED


def _to_interp(values: dict[str, TruthValue], gp: GroundProgram) -> PartialInterpretation:
    t = frozenset(k for k, v in values.items() if v == TruthValue.TRUE)
    f = frozenset(k for k, v in values.items() if v == TruthValue.FALSE)
    return PartialInterpretation(t, f, frozenset(gp.atoms))


def theta_step(
    J: PartialInterpretation, I: PartialInterpretation, gp: GroundProgram
) -> PartialInterpretation:
    """One application of the stage operator under outer interpretation J."""
    ivals = {k: I.value(k) for k in gp.atoms}
    return _to_interp({k: _atom_value(k, J, ivals, gp) for k in gp.atoms}, gp)


def _positive_dependents(gp: GroundProgram) -> dict[str, set[str]]:
    deps: dict[str, set[str]] = {k: set() for k in gp.atoms}
    for gc in gp.clauses:
        for lit in gc.body:
            if isinstance(lit, PosLit):
                deps[lit.atom.key].add(gc.head.key)
    return deps


def theta_lfp(
    J: PartialInterpretation, gp: GroundProgram, semi_naive: bool = True
) -> tuple[PartialInterpretation, int]:
    """Least fixed point of the stage operator under J, from the all-false
    start.  Returns the fixpoint and the number of rounds to stabilize."""
    values: dict[str, TruthValue] = {k: TruthValue.FALSE for k in gp.atoms}
    deps = _positive_dependents(gp) if semi_naive else None
    dirty = set(gp.atoms)
    rounds = 0
    previous = _to_interp(values, gp)
    while True:
        rounds += 1
        recompute = dirty if semi_naive else set(gp.atoms)
        new_values = dict(values)
        changed: set[str] = set()
        for key in recompute:
            v = _atom_value(key, J, values, gp)
            if v != values[key]:
                new_values[key] = v
                changed.add(key)
        values = new_values
        current = _to_interp(values, gp)
        if not leq(previous, current, Ordering.TRUTH):
            raise NotIncreasing("inner stage sequence left the truth order")
        if not changed:
            return current, rounds
        previous = current
        if semi_naive:
            dirty = set()
            for key in changed:
                dirty |= deps[key]
        # A bounded chain: each atom climbs false -> undefined -> true at most
        # twice, so stabilization needs at most 2|atoms| + 1 rounds.
        if rounds > 2 * len(gp.atoms) + 2:
            raise NotIncreasing("inner iteration failed to stabilize")


def well_founded_model(gp: GroundProgram, semi_naive: bool = True) -> WfsResult:
    """Iterate the outer stage sequence to its least fixpoint.

    The outer sequence must climb in the Fitting order; any violation is an
    internal-consistency failure, not a recoverable condition.
    """
    current = everything_undefined(gp)
    stages = [current]
    inner_lengths = []
    while True:
        nxt, rounds = theta_lfp(current, gp, semi_naive=semi_naive)
        inner_lengths.append(rounds)
        if not leq(current, nxt, Ordering.FITTING):
            raise NotIncreasing("outer stage sequence left the Fitting order")
        if nxt == current:
            return WfsResult(current, ThetaTrace(tuple(stages), tuple(inner_lengths)))
        stages.append(nxt)
        current = nxt
