"""Stratification analysis and perfect-model computation.

A program is stratified when its predicate constants can be partitioned
into strata so that positive dependencies never ascend and negative
dependencies strictly descend.  A body literal headed by a predicate
variable Q depends on every predicate constant whose type is greater than
or equal to Q's type, where "greater" means reachable by prepending
argument types.

A stratification of the program induces a local stratification of any of
its groundings: a ground atom inherits the stratum of its leftmost
predicate constant.  The perfect model is then built stratum by stratum
with a two-valued stage operator; the resulting stage sequence climbs in
the Fitting order and its last element is total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LocalStratificationViolation, NotIncreasing
from .grounder import ConstLit, GroundProgram, NegLit, PosLit
from .interp import (
    Ordering,
    PartialInterpretation,
    TruthValue,
    everything_undefined,
    leq,
    value_of,
)
from .syntax import Eq, Expr, Neg, PredConst, PredVar, spine, type_geq
from .typecheck import Program


# ---------------------------------------------------------------------------
# Higher-order stratification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Stratification:
    """Ordered partition of the predicate constants; indices start at 1."""

    strata: tuple[tuple[str, ...], ...]
    index: dict[str, int]

    @property
    def count(self) -> int:
        return len(self.strata)

    def stratum(self, pred_name: str) -> int:
        return self.index[pred_name]


@dataclass(frozen=True)
class Unstratifiable:
    """Witness: a dependency cycle that passes through a strict edge."""

    cycle: tuple[str, ...]
    strict_edge: tuple[str, str]

    def __str__(self) -> str:
        path = " -> ".join(self.cycle + (self.cycle[0],))
        q, p = self.strict_edge
        return f"cycle {path} contains the negative dependency {q} < {p}"


def _literal_sources(lit: Expr, program: Program) -> tuple[tuple[str, ...], bool]:
    """Predicate constants a body literal may depend on, plus strictness.

    A literal starting with predicate constant q depends on q alone; one
    starting with predicate variable Q depends on every predicate constant
    whose type is >= Q's type; an equality depends on nothing.
    """
    strict = False
    if isinstance(lit, Neg):
        strict = True
        lit = lit.atom
    if isinstance(lit, Eq):
        return (), strict
    head, _ = spine(lit)
    if isinstance(head, PredConst):
        return (head.name,), strict
    if isinstance(head, PredVar):
        names = tuple(
            name
            for name, ptype in program.signature.predicate_constants()
            if type_geq(ptype, head.typ)
        )
        return names, strict
    return (), strict


def _dependency_edges(program: Program) -> dict[tuple[str, str], bool]:
    """Edges source -> head predicate; value records a strict (negative) use."""
    edges: dict[tuple[str, str], bool] = {}
    for clause in program.clauses:
        target = clause.head_pred.name
        for lit in clause.body:
            sources, strict = _literal_sources(lit, program)
            for src in sources:
                key = (src, target)
                edges[key] = edges.get(key, False) or strict
    return edges


def _strongly_connected(nodes, successors):
    """Tarjan's algorithm, iterative; returns components in reverse topological order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(successors.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(successors.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                components.append(comp)
    return components


def _cycle_through(src: str, dst: str, successors) -> tuple[str, ...]:
    """Nodes of a cycle dst -> ... -> src closed by the edge src -> dst."""
    if src == dst:
        return (dst,)
    frontier = [(dst, (dst,))]
    visited = {dst}
    while frontier:
        node, path = frontier.pop(0)
        for succ in successors.get(node, ()):
            if succ == src:
                return path + (src,)
            if succ not in visited:
                visited.add(succ)
                frontier.append((succ, path + (succ,)))
    raise AssertionError("cycle search must succeed inside one component")


def stratify(program: Program) -> Stratification | Unstratifiable:
    """Canonical least stratification, or a witness cycle when none exists.

    Each predicate receives the smallest stratum index compatible with the
    constraints, so the output is deterministic; any valid stratification
    yields the same perfect model.
    """
    preds = [name for name, _ in program.signature.predicate_constants()]
    edges = _dependency_edges(program)
    successors: dict[str, list[str]] = {p: [] for p in preds}
    for (src, dst), _strict in sorted(edges.items()):
        successors.setdefault(src, []).append(dst)
    components = _strongly_connected(preds, successors)
    comp_of: dict[str, int] = {}
    for ci, comp in enumerate(components):
        for name in comp:
            comp_of[name] = ci
    for (src, dst), strict in sorted(edges.items()):
        if strict and comp_of[src] == comp_of[dst]:
            members = set(components[comp_of[src]])
            inner = {
                n: [s for s in successors.get(n, ()) if s in members] for n in members
            }
            return Unstratifiable(_cycle_through(src, dst, inner), (src, dst))
    comp_edges: dict[tuple[int, int], bool] = {}
    for (src, dst), strict in edges.items():
        ci, cj = comp_of[src], comp_of[dst]
        if ci != cj:
            comp_edges[(ci, cj)] = comp_edges.get((ci, cj), False) or strict
    # Tarjan emits components successors-first; walk them in reverse so that
    # levels propagate along the edges.
    level = {ci: 1 for ci in range(len(components))}
    for ci in reversed(range(len(components))):
        for (src_c, dst_c), strict in comp_edges.items():
            if src_c == ci:
                need = level[ci] + (1 if strict else 0)
                if level[dst_c] < need:
                    level[dst_c] = need
    # Normalize to consecutive indices 1..r.
    used = sorted(set(level.values()))
    renumber = {old: new for new, old in enumerate(used, start=1)}
    index = {name: renumber[level[comp_of[name]]] for name in preds}
    strata: list[list[str]] = [[] for _ in range(len(used))]
    for name in sorted(index):
        strata[index[name] - 1].append(name)
    return Stratification(tuple(tuple(s) for s in strata), index)


# ---------------------------------------------------------------------------
# Local stratification of a grounding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalStratification:
    """Per-atom strata: an atom sits with its leftmost predicate constant."""

    stratum_of: dict[str, int]
    strata_atoms: tuple[tuple[str, ...], ...]

    @property
    def count(self) -> int:
        return len(self.strata_atoms)

    def cumulative(self, alpha: int) -> frozenset[str]:
        """Atoms of strata 1..alpha."""
        out: set[str] = set()
        for s in self.strata_atoms[:alpha]:
            out.update(s)
        return frozenset(out)


def leftmost_predicate(expr: Expr) -> str:
    head, _ = spine(expr)
    if not isinstance(head, PredConst):
        raise ValueError("ground atoms start with a predicate constant")
    return head.name


def localize(strat: Stratification, gp: GroundProgram) -> LocalStratification:
    """Assign strata to ground atoms and re-check the conditions clause by
    clause.  A violation here contradicts the stratification analysis and is
    reported as an internal-consistency failure."""
    stratum_of = {
        key: strat.stratum(leftmost_predicate(atom.expr))
        for key, atom in gp.atoms.items()
    }
    for gc in gp.clauses:
        head_stratum = stratum_of[gc.head.key]
        for lit in gc.body:
            if isinstance(lit, ConstLit):
                continue  # resolved equalities sit at stratum 0
            if isinstance(lit, PosLit):
                if stratum_of[lit.atom.key] > head_stratum:
                    raise LocalStratificationViolation(
                        f"{lit.atom} above the head of {gc}"
                    )
            elif isinstance(lit, NegLit):
                if stratum_of[lit.atom.key] >= head_stratum:
                    raise LocalStratificationViolation(
                        f"~{lit.atom} not below the head of {gc}"
                    )
    buckets: list[list[str]] = [[] for _ in range(strat.count)]
    for key in gp.atoms:
        buckets[stratum_of[key] - 1].append(key)
    return LocalStratification(
        stratum_of, tuple(tuple(sorted(b)) for b in buckets)
    )


# ---------------------------------------------------------------------------
# Perfect model
# ---------------------------------------------------------------------------


def psi_step(
    J: PartialInterpretation, I: set[str], gp: GroundProgram
) -> set[str]:
    """Two-valued stage operator: heads of clauses whose body literals are
    all true in J or (for atoms) members of I."""
    out: set[str] = set()
    for gc in gp.clauses:
        ok = True
        for lit in gc.body:
            if value_of(J, lit) == TruthValue.TRUE:
                continue
            if isinstance(lit, PosLit) and lit.atom.key in I:
                continue
            ok = False
            break
        if ok:
            out.add(gc.head.key)
    return out


def psi_lfp(J: PartialInterpretation, gp: GroundProgram) -> tuple[set[str], int]:
    """Least fixed point of the two-valued stage operator from the empty set."""
    current: set[str] = set()
    steps = 0
    while True:
        steps += 1
        nxt = psi_step(J, current, gp)
        if nxt == current:
            return current, steps
        current = nxt


@dataclass(frozen=True)
class PerfectResult:
    model: PartialInterpretation
    stages: tuple[PartialInterpretation, ...]

    @property
    def strata_used(self) -> int:
        return len(self.stages) - 1


def perfect_model(gp: GroundProgram, ls: LocalStratification) -> PerfectResult:
    """Stage through the strata: stage a derives every currently supported
    atom and seals the falsehood of the unsupported atoms in strata 1..a.
    The sequence climbs in the Fitting order; its last stage is total."""
    universe = frozenset(gp.atoms)
    current = everything_undefined(gp)
    stages = [current]
    for alpha in range(1, ls.count + 1):
        derived, _ = psi_lfp(current, gp)
        sealed = ls.cumulative(alpha)
        nxt = PartialInterpretation(
            frozenset(derived), frozenset(sealed - derived), universe
        )
        if not leq(current, nxt, Ordering.FITTING):
            raise NotIncreasing("perfect-model stage sequence left the Fitting order")
        stages.append(nxt)
        current = nxt
    return PerfectResult(current, tuple(stages))
