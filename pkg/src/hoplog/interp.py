"""Three-valued interpretations of ground programs.

An interpretation is a pair of disjoint atom sets <T, F> over the atom
table; atoms in neither set are undefined.  Two partial orders matter:

* truth order:    false <= undefined <= true   (pointwise: T grows, F shrinks)
* Fitting order:  undefined below both false and true (pointwise: both grow)

``minimal_models_bruteforce`` is the desk-scale oracle: it enumerates every
interpretation of a small atom table outright, so anything it reports is
independent of the fixpoint engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum

from .errors import TooLarge, UnknownAtom
from .grounder import ConstLit, GroundClause, GroundLiteral, GroundProgram, NegLit, PosLit


class TruthValue(IntEnum):
    """false < undefined < true in the truth order (the integer order)."""

    FALSE = 0
    UNDEFINED = 1
    TRUE = 2

    def __str__(self) -> str:
        return {0: "false", 1: "undefined", 2: "true"}[self.value]


def negate(v: TruthValue) -> TruthValue:
    if v == TruthValue.TRUE:
        return TruthValue.FALSE
    if v == TruthValue.FALSE:
        return TruthValue.TRUE
    return TruthValue.UNDEFINED


class Ordering(Enum):
    TRUTH = "truth"
    FITTING = "fitting"


def truth_leq(a: TruthValue, b: TruthValue) -> bool:
    return a <= b


def fitting_leq(a: TruthValue, b: TruthValue) -> bool:
    return a == TruthValue.UNDEFINED or a == b


@dataclass(frozen=True)
class PartialInterpretation:
    """<T, F> over a fixed atom table; immutable and hashable."""

    true_atoms: frozenset[str]
    false_atoms: frozenset[str]
    universe: frozenset[str]

    def __post_init__(self) -> None:
        if self.true_atoms & self.false_atoms:
            raise ValueError("T and F must be disjoint")
        if not (self.true_atoms | self.false_atoms) <= self.universe:
            raise ValueError("T and F must lie inside the atom table")

    @property
    def is_total(self) -> bool:
        return self.true_atoms | self.false_atoms == self.universe

    def value(self, key: str) -> TruthValue:
        if key in self.true_atoms:
            return TruthValue.TRUE
        if key in self.false_atoms:
            return TruthValue.FALSE
        if key not in self.universe:
            raise UnknownAtom(f"atom {key} is outside the atom table")
        return TruthValue.UNDEFINED

    def to_json_dict(self) -> dict[str, list[str]]:
        undef = self.universe - self.true_atoms - self.false_atoms
        return {
            "true": sorted(self.true_atoms),
            "false": sorted(self.false_atoms),
            "undefined": sorted(undef),
        }

    def __str__(self) -> str:
        d = self.to_json_dict()
        return (
            f"<T={{{', '.join(d['true'])}}}, F={{{', '.join(d['false'])}}}, "
            f"0={{{', '.join(d['undefined'])}}}>"
        )


def interpretation(
    gp: GroundProgram, true_atoms=(), false_atoms=()
) -> PartialInterpretation:
    return PartialInterpretation(
        frozenset(true_atoms), frozenset(false_atoms), frozenset(gp.atoms)
    )


def everything_false(gp: GroundProgram) -> PartialInterpretation:
    return interpretation(gp, (), gp.atoms.keys())


def everything_undefined(gp: GroundProgram) -> PartialInterpretation:
    return interpretation(gp)


# ---------------------------------------------------------------------------
# Valuation
# ---------------------------------------------------------------------------


def value_of(i: PartialInterpretation, lit: GroundLiteral) -> TruthValue:
    """Value of one ground literal: atoms look up <T, F>, negation flips
    true/false and preserves undefined, resolved equalities are fixed."""
    if isinstance(lit, PosLit):
        return i.value(lit.atom.key)
    if isinstance(lit, NegLit):
        return negate(i.value(lit.atom.key))
    if isinstance(lit, ConstLit):
        return TruthValue.TRUE if lit.value else TruthValue.FALSE
    raise TypeError(f"not a ground literal: {lit!r}")


def value_of_conj(i: PartialInterpretation, lits) -> TruthValue:
    """Minimum under the truth order; the empty conjunction is true."""
    out = TruthValue.TRUE
    for lit in lits:
        out = min(out, value_of(i, lit))
    return out


def find_violation(i: PartialInterpretation, gp: GroundProgram) -> GroundClause | None:
    """First clause whose head value drops below its body value, if any."""
    for gc in gp.clauses:
        if i.value(gc.head.key) < value_of_conj(i, gc.body):
            return gc
    return None


def is_model(i: PartialInterpretation, gp: GroundProgram) -> bool:
    return find_violation(i, gp) is None


def leq(
    i1: PartialInterpretation, i2: PartialInterpretation, ordering: Ordering
) -> bool:
    if ordering == Ordering.TRUTH:
        return i1.true_atoms <= i2.true_atoms and i2.false_atoms <= i1.false_atoms
    return i1.true_atoms <= i2.true_atoms and i1.false_atoms <= i2.false_atoms


# ---------------------------------------------------------------------------
# Brute-force minimal-model oracle
# ---------------------------------------------------------------------------


class _Compiled:
    """Bitmask view of a ground program for fast enumeration."""

    def __init__(self, gp: GroundProgram):
        self.keys = tuple(gp.atoms)
        self.index = {k: n for n, k in enumerate(self.keys)}
        self.clauses: list[tuple[int, int, int]] = []  # (head bit, pos mask, neg mask)
        for gc in gp.clauses:
            pos = neg = 0
            dead = False
            for lit in gc.body:
                if isinstance(lit, PosLit):
                    pos |= 1 << self.index[lit.atom.key]
                elif isinstance(lit, NegLit):
                    neg |= 1 << self.index[lit.atom.key]
                elif isinstance(lit, ConstLit) and not lit.value:
                    dead = True  # body is false outright; clause never binds
            if not dead:
                self.clauses.append((1 << self.index[gc.head.key], pos, neg))

    def is_model(self, tmask: int, fmask: int) -> bool:
        for head, pos, neg in self.clauses:
            if (pos & fmask) or (neg & tmask):
                continue  # body false: clause satisfied
            if (pos & ~tmask) == 0 and (neg & ~fmask) == 0:
                if not head & tmask:  # body true: head must be true
                    return False
            elif head & fmask:  # body undefined: head must not be false
                return False
        return True

    def to_interpretation(self, gp: GroundProgram, tmask: int, fmask: int):
        t = frozenset(k for k, n in self.index.items() if tmask >> n & 1)
        f = frozenset(k for k, n in self.index.items() if fmask >> n & 1)
        return PartialInterpretation(t, f, frozenset(gp.atoms))

    def masks(self, i: PartialInterpretation) -> tuple[int, int]:
        t = f = 0
        for k in i.true_atoms:
            t |= 1 << self.index[k]
        for k in i.false_atoms:
            f |= 1 << self.index[k]
        return t, f


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _all_interpretations(n: int):
    for defined in range(1 << n):
        for tmask in _submasks(defined):
            yield tmask, defined & ~tmask


def minimal_models_bruteforce(
    gp: GroundProgram, ordering: Ordering, limit: int = 12
) -> list[PartialInterpretation]:
    """Models with no strictly smaller model, by exhaustive enumeration.

    Walks all 3^|atoms| interpretations, so the atom table is capped; this
    is a desk-scale oracle, not an engine.
    """
    n = len(gp.atoms)
    if n > limit:
        raise TooLarge(f"{n} atoms exceed the oracle limit of {limit}")
    compiled = _Compiled(gp)
    models = [
        (t, f) for t, f in _all_interpretations(n) if compiled.is_model(t, f)
    ]
    if ordering == Ordering.TRUTH:
        # In the truth order, smaller means T shrinks while F grows.
        below = lambda a, b: (a[0] | b[0]) == b[0] and (b[1] | a[1]) == a[1]
        rank = lambda m: (bin(m[0]).count("1") - bin(m[1]).count("1"), m)
    else:
        below = lambda a, b: (a[0] | b[0]) == b[0] and (a[1] | b[1]) == b[1]
        rank = lambda m: (bin(m[0]).count("1") + bin(m[1]).count("1"), m)
    minimal: list[tuple[int, int]] = []
    for m in sorted(models, key=rank):
        if not any(d != m and below(d, m) for d in minimal):
            minimal.append(m)
    out = [compiled.to_interpretation(gp, t, f) for t, f in minimal]
    out.sort(key=lambda i: (sorted(i.true_atoms), sorted(i.false_atoms)))
    return out


def is_minimal_model(
    gp: GroundProgram, i: PartialInterpretation, ordering: Ordering, limit: int = 12
) -> bool:
    """Membership in the brute-force minimal set, computed directly.

    Equivalent to ``i in minimal_models_bruteforce(gp, ordering)`` but only
    enumerates the interpretations below i.
    """
    n = len(gp.atoms)
    if n > limit:
        raise TooLarge(f"{n} atoms exceed the oracle limit of {limit}")
    compiled = _Compiled(gp)
    tmask, fmask = compiled.masks(i)
    if not compiled.is_model(tmask, fmask):
        return False
    full = (1 << n) - 1
    if ordering == Ordering.FITTING:
        for t in _submasks(tmask):
            for f in _submasks(fmask):
                if (t, f) != (tmask, fmask) and compiled.is_model(t, f):
                    return False
        return True
    for t in _submasks(tmask):
        room = full & ~t & ~fmask
        for extra in _submasks(room):
            f = fmask | extra
            if (t, f) != (tmask, fmask) and compiled.is_model(t, f):
                return False
    return True
