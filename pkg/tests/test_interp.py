"""Three-valued valuation, model checking, orderings, brute-force oracle."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from hoplog.errors import TooLarge, UnknownAtom
from hoplog.grounder import (
    GroundProgram,
    NegLit,
    PosLit,
    ground_atom,
    ground_instantiation,
    relevant_grounding,
)
from hoplog.interp import (
    Ordering,
    PartialInterpretation,
    TruthValue,
    everything_false,
    everything_undefined,
    find_violation,
    interpretation,
    is_minimal_model,
    is_model,
    leq,
    minimal_models_bruteforce,
    negate,
    value_of,
    value_of_conj,
)
from hoplog.parser import parse_atom
from hoplog.programs import NONEXTENSIONAL
from hoplog.typecheck import elaborate_ground_atom
from hoplog.wfs import well_founded_model

from helpers import load, random_ground_source


def gp_of(src: str, k: int = 1, roots=None) -> GroundProgram:
    program = load(src)
    if roots:
        atoms = [
            ground_atom(elaborate_ground_atom(program, parse_atom(r))) for r in roots
        ]
        return relevant_grounding(program, atoms, k)
    return ground_instantiation(program, k)


def bare_atoms(*keys: str) -> GroundProgram:
    """A ground program with no clauses over the given atom table."""
    program_atoms = {}
    for k in keys:
        gp = gp_of(f"type {k} : o.\ntype zzz : o.\nzzz <- {k}.")
        program_atoms[k] = gp.atoms[k]
    return GroundProgram((), program_atoms)


NEG_PAIR = "type p : o.\ntype q : o.\np <- ~q."
FACT = "type p : o.\np."


class TestValueOf:
    def test_negation_flips_over_true(self):
        gp = gp_of(NEG_PAIR)
        i = interpretation(gp, true_atoms={"q"})
        lit = NegLit(gp.atoms["q"])
        assert value_of(i, PosLit(gp.atoms["q"])) == TruthValue.TRUE
        assert value_of(i, lit) == TruthValue.FALSE

    def test_negation_table_exhaustive(self):
        assert negate(TruthValue.TRUE) == TruthValue.FALSE
        assert negate(TruthValue.FALSE) == TruthValue.TRUE
        assert negate(TruthValue.UNDEFINED) == TruthValue.UNDEFINED

    def test_resolved_equality_constant(self):
        gp = gp_of("type q : i -> o.\nq X <- X = a.")
        i = everything_undefined(gp)
        (clause,) = gp.clauses
        assert value_of(i, clause.body[0]) == TruthValue.TRUE

    def test_empty_interpretation_gives_undefined(self):
        gp = gp_of(NEG_PAIR)
        i = everything_undefined(gp)
        assert value_of(i, PosLit(gp.atoms["p"])) == TruthValue.UNDEFINED

    def test_unknown_atom_rejected(self):
        gp = gp_of(NEG_PAIR)
        other = gp_of("type zonly : o.\nzonly.")
        with pytest.raises(UnknownAtom):
            value_of(everything_undefined(gp), PosLit(other.atoms["zonly"]))


class TestConjunction:
    def test_min_in_truth_order(self):
        gp = gp_of(NEG_PAIR)
        i = interpretation(gp, true_atoms={"p"})
        lits = [PosLit(gp.atoms["p"]), PosLit(gp.atoms["q"])]
        assert value_of_conj(i, lits) == TruthValue.UNDEFINED

    def test_empty_conjunction_is_true(self):
        gp = gp_of(FACT)
        assert value_of_conj(everything_undefined(gp), []) == TruthValue.TRUE

    def test_counterexample_body_undefined_under_wfs(self):
        gp = gp_of(NONEXTENSIONAL, k=3, roots=["s q"])
        model = well_founded_model(gp).model
        q_clause = next(c for c in gp.clauses if c.head.key == "q (s q)")
        assert value_of_conj(model, q_clause.body) == TruthValue.UNDEFINED


class TestIsModel:
    def test_fact_forces_head(self):
        gp = gp_of(FACT)
        violation = find_violation(everything_false(gp), gp)
        assert violation is not None and violation.head.key == "p"
        assert not is_model(everything_false(gp), gp)

    def test_wfs_model_is_model_on_counterexample_closure(self):
        for root in ("s p", "s q"):
            gp = gp_of(NONEXTENSIONAL, k=3, roots=[root])
            assert is_model(well_founded_model(gp).model, gp)

    def test_total_false_is_model_without_facts(self):
        gp = gp_of(NEG_PAIR)
        assert not is_model(everything_false(gp), gp)  # p <- ~q forces p
        gp2 = gp_of("type p : o.\ntype q : o.\np <- q.")
        assert is_model(everything_false(gp2), gp2)


def small_interps(gp):
    keys = sorted(gp.atoms)
    values = st.lists(
        st.sampled_from([TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNDEFINED]),
        min_size=len(keys),
        max_size=len(keys),
    )
    def build(vals):
        t = frozenset(k for k, v in zip(keys, vals) if v == TruthValue.TRUE)
        f = frozenset(k for k, v in zip(keys, vals) if v == TruthValue.FALSE)
        return PartialInterpretation(t, f, frozenset(gp.atoms))
    return values.map(build)


class TestOrderings:
    GP = None

    @classmethod
    def setup_class(cls):
        cls.GP = gp_of("type p : o.\ntype q : o.\ntype r : o.\np <- q, ~r.")

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_partial_order_laws(self, data):
        gp = self.GP
        a = data.draw(small_interps(gp))
        b = data.draw(small_interps(gp))
        c = data.draw(small_interps(gp))
        for ordering in Ordering:
            assert leq(a, a, ordering)
            if leq(a, b, ordering) and leq(b, a, ordering):
                assert a == b
            if leq(a, b, ordering) and leq(b, c, ordering):
                assert leq(a, c, ordering)

    def test_bottom_elements(self):
        gp = self.GP
        bottom_f = everything_undefined(gp)
        bottom_t = everything_false(gp)
        for other in (
            interpretation(gp, true_atoms={"p"}),
            interpretation(gp, false_atoms={"q"}),
            everything_false(gp),
        ):
            assert leq(bottom_f, other, Ordering.FITTING)
            assert leq(bottom_t, other, Ordering.TRUTH)

    def test_truth_example(self):
        gp = self.GP
        lower = interpretation(gp, false_atoms={"p"})
        higher = interpretation(gp, true_atoms={"p"})
        assert leq(lower, higher, Ordering.TRUTH)
        assert not leq(higher, lower, Ordering.TRUTH)
        assert not leq(lower, higher, Ordering.FITTING)


class TestBruteForceOracle:
    def test_negated_pair_minimal_sets(self):
        gp = gp_of(NEG_PAIR)
        wfs = well_founded_model(gp).model
        assert wfs.to_json_dict() == {
            "true": ["p"],
            "false": ["q"],
            "undefined": [],
        }
        fitting = minimal_models_bruteforce(gp, Ordering.FITTING)
        # The all-undefined interpretation is a model (0 >= 0 for the only
        # clause) and the global Fitting bottom, hence the unique
        # Fitting-minimal model; the well-founded model is not among them.
        assert [m.to_json_dict() for m in fitting] == [
            {"true": [], "false": [], "undefined": ["p", "q"]}
        ]
        truth = minimal_models_bruteforce(gp, Ordering.TRUTH)
        assert wfs in truth
        assert len(truth) == 3

    def test_clause_free_table(self):
        gp = bare_atoms("p")
        truth = minimal_models_bruteforce(gp, Ordering.TRUTH)
        assert [m.to_json_dict() for m in truth] == [
            {"true": [], "false": ["p"], "undefined": []}
        ]
        fitting = minimal_models_bruteforce(gp, Ordering.FITTING)
        assert [m.to_json_dict() for m in fitting] == [
            {"true": [], "false": [], "undefined": ["p"]}
        ]

    def test_counterexample_closure_minimality(self):
        gp = gp_of(NONEXTENSIONAL, k=3, roots=["s q"])
        wfs = well_founded_model(gp).model
        assert wfs == everything_undefined(gp)
        assert wfs in minimal_models_bruteforce(gp, Ordering.FITTING)

    def test_too_large(self):
        names = [f"x{i}" for i in range(13)]
        src = "\n".join(f"type {n} : o." for n in names) + "\n" + "\n".join(
            f"{n}." for n in names
        )
        gp = gp_of(src)
        with pytest.raises(TooLarge):
            minimal_models_bruteforce(gp, Ordering.FITTING)
        with pytest.raises(TooLarge):
            is_minimal_model(gp, everything_undefined(gp), Ordering.FITTING)

    @pytest.mark.parametrize("ordering", list(Ordering))
    def test_membership_check_agrees_with_full_set(self, ordering):
        rng = random.Random(7)
        for trial in range(25):
            gp = gp_of(random_ground_source(rng, n_atoms=4))
            full = minimal_models_bruteforce(gp, ordering)
            wfs = well_founded_model(gp).model
            assert is_minimal_model(gp, wfs, ordering) == (wfs in full)
            probe = everything_undefined(gp)
            assert is_minimal_model(gp, probe, ordering) == (probe in full)
