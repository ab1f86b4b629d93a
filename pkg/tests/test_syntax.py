"""Core syntax: types, printing, substitution, free variables."""

import random

import pytest
from hypothesis import given, strategies as st

from hoplog.errors import TypeMismatch
from hoplog.parser import parse_program, parse_type
from hoplog.syntax import (
    IOTA,
    OMICRON,
    App,
    Arrow,
    Eq,
    IndConst,
    Neg,
    PredConst,
    PredVar,
    apply_substitution,
    canonical_print,
    free_vars,
    is_argument_type,
    is_functional_type,
    is_predicate_type,
    term_size,
    type_geq,
    type_of,
)
from hoplog.typecheck import check_program, load_program

from helpers import load, random_program_source

O_O = Arrow(OMICRON, OMICRON)
IO = Arrow(IOTA, OMICRON)


class TestTypes:
    def test_base_classification(self):
        assert is_functional_type(IOTA) and is_argument_type(IOTA)
        assert not is_predicate_type(IOTA)
        assert is_predicate_type(OMICRON) and is_argument_type(OMICRON)
        assert not is_functional_type(OMICRON)

    def test_composite_classification(self):
        binary_fun = Arrow(IOTA, Arrow(IOTA, IOTA))
        assert is_functional_type(binary_fun)
        assert not is_predicate_type(binary_fun)
        ho = Arrow(O_O, OMICRON)
        assert is_predicate_type(ho) and is_argument_type(ho)
        assert not is_functional_type(ho)
        # (i -> o) -> i is neither functional nor predicate
        bad = Arrow(IO, IOTA)
        assert not is_functional_type(bad) and not is_predicate_type(bad)

    def test_arrow_prints_right_associatively(self):
        assert str(Arrow(IOTA, Arrow(IOTA, OMICRON))) == "i -> i -> o"
        assert str(Arrow(O_O, OMICRON)) == "(o -> o) -> o"

    def test_type_print_parse_round_trip(self):
        for t in (IOTA, OMICRON, O_O, Arrow(O_O, OMICRON), Arrow(IOTA, Arrow(IO, OMICRON))):
            assert parse_type(str(t)) == t

    def test_type_geq_is_suffix_order(self):
        # A type is greater when peeling arguments reaches the smaller one.
        assert type_geq(Arrow(IOTA, Arrow(IOTA, OMICRON)), IO)
        assert type_geq(IO, IO)
        assert not type_geq(Arrow(IO, OMICRON), IO)
        assert type_geq(O_O, OMICRON)


SIG_SRC = """
type s : (o -> o) -> o.
type p : o -> o.
type q : o -> o.
type w : o -> o.
type id : (i -> o) -> i -> o.
type r : i -> o.
"""


def _sig():
    return load(SIG_SRC).signature


class TestPrinting:
    def test_application_chain_prints_flat(self):
        sig = _sig()
        id_c = PredConst("id", sig.lookup("id"))
        r = PredConst("r", sig.lookup("r"))
        a = IndConst("a")
        assert canonical_print(App(App(id_c, r), a)) == "id r a"

    def test_negation_parenthesizes_applications(self):
        sig = _sig()
        w = PredConst("w", sig.lookup("w"))
        s = PredConst("s", sig.lookup("s"))
        q = PredConst("q", sig.lookup("q"))
        e = Neg(App(w, App(s, q)))
        assert canonical_print(e) == "~(w (s q))"
        assert canonical_print(Neg(PredVar("R", OMICRON))) == "~R"

    def test_equality_prints_infix(self):
        a = IndConst("a")
        assert canonical_print(Eq(a, a)) == "a = a"

    def test_term_size_counts_symbol_occurrences(self):
        sig = _sig()
        s = PredConst("s", sig.lookup("s"))
        q = PredConst("q", sig.lookup("q"))
        assert term_size(App(s, q)) == 2
        assert term_size(Neg(App(s, q))) == 2
        assert term_size(PredVar("Q", O_O)) == 0


class TestSubstitution:
    def test_predicate_variable_replacement(self):
        sig = _sig()
        r = PredConst("r", sig.lookup("r"))
        lit = App(PredVar("Q", IO), IndConst("a"))
        out = apply_substitution(lit, {"Q": r})
        assert canonical_print(out) == "r a"

    def test_ground_expression_unchanged(self):
        sig = _sig()
        s = PredConst("s", sig.lookup("s"))
        p = PredConst("p", sig.lookup("p"))
        e = App(s, p)
        assert apply_substitution(e, {"Q": p}) == e

    def test_negative_literal_substitution(self):
        sig = _sig()
        w = PredConst("w", sig.lookup("w"))
        s = PredConst("s", sig.lookup("s"))
        q = PredConst("q", sig.lookup("q"))
        lit = Neg(App(w, PredVar("R", OMICRON)))
        out = apply_substitution(lit, {"R": App(s, q)})
        assert canonical_print(out) == "~(w (s q))"

    def test_type_mismatch_rejected(self):
        sig = _sig()
        q = PredConst("q", sig.lookup("q"))
        lit = App(PredVar("R", IO), IndConst("a"))
        with pytest.raises(TypeMismatch):
            apply_substitution(lit, {"R": q})  # q : o -> o, R : i -> o

    def test_substitution_preserves_type(self):
        sig = _sig()
        s = PredConst("s", sig.lookup("s"))
        p = PredConst("p", sig.lookup("p"))
        e = App(PredVar("Q", O_O), App(s, PredVar("Q", O_O)))
        out = apply_substitution(e, {"Q": p})
        assert out.typ == e.typ == OMICRON

    def test_composition_on_disjoint_domains(self):
        sig = _sig()
        s = PredConst("s", sig.lookup("s"))
        p = PredConst("p", sig.lookup("p"))
        e = App(PredVar("F", Arrow(O_O, OMICRON)), PredVar("Q", O_O))
        t1 = {"F": s}
        t2 = {"Q": p}
        combined = {**t1, **t2}
        assert apply_substitution(apply_substitution(e, t1), t2) == apply_substitution(
            e, combined
        )


class TestFreeVars:
    def test_self_application_pattern(self):
        sig = _sig()
        s = PredConst("s", sig.lookup("s"))
        qv = PredVar("Q", O_O)
        e = App(qv, App(s, qv))
        assert {v.name for v in free_vars(e)} == {"Q"}

    def test_constant_has_none(self):
        assert free_vars(IndConst("a")) == frozenset()

    def test_per_literal_sets(self):
        src = """
        type subset : (i -> o) -> (i -> o) -> o.
        type nonsubset : (i -> o) -> (i -> o) -> o.
        subset S1 S2 <- ~(nonsubset S1 S2).
        nonsubset S1 S2 <- S1 X, ~(S2 X).
        """
        program = load(src)
        clause = program.clauses_for("nonsubset")[0]
        first, second = clause.body
        assert {v.name for v in free_vars(first)} == {"S1", "X"}
        assert {v.name for v in free_vars(second)} == {"S2", "X"}


class TestTypeOf:
    def test_examples(self):
        sig = _sig()
        id_c = PredConst("id", sig.lookup("id"))
        r = PredConst("r", sig.lookup("r"))
        s = PredConst("s", sig.lookup("s"))
        p = PredConst("p", sig.lookup("p"))
        assert type_of(App(id_c, r), sig, {}) == IO
        with_a = load("type q : i -> o. q X <- X = a.").signature
        assert type_of(IndConst("a"), with_a, {}) == IOTA
        assert type_of(App(s, p), sig, {}) == OMICRON

    def test_type_of_matches_cached_type_after_substitution(self):
        sig = _sig()
        p = PredConst("p", sig.lookup("p"))
        e = App(PredVar("Q", O_O), App(PredConst("s", sig.lookup("s")), p))
        out = apply_substitution(e, {"Q": p})
        assert type_of(out, sig, {}) == out.typ


class TestRoundTrip:
    @given(st.integers(min_value=0, max_value=400))
    def test_program_print_parse_round_trip(self, seed):
        src = random_program_source(random.Random(seed))
        program = check_program(parse_program(src))
        again = check_program(parse_program(program.to_source()))
        assert again == program

    def test_round_trip_on_clause_text(self):
        program = load(SIG_SRC + "\ns Q <- Q (s Q).\nw R <- ~R.\nr X <- X = a.\n")
        again = load_program(program.to_source())
        assert again == program
