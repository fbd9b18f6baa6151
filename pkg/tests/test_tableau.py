"""Tableau expansion, grounding, and the belief-state lifecycle.

The soundness/completeness tests compare the tableau's verdict against a
brute-force truth table over the (at most eight) atoms of each formula,
which is an independent oracle: the two implementations share no code
beyond the term datatype.
"""

import dataclasses
import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from glf.errors import (
    EmptyReadings,
    IllTypedAxiom,
    NoDomainType,
    TableauError,
)
from glf.kernel import Const, Term, alpha_eq, app
from glf.modsys import TheoryGraph, parse_term, parse_theory_file
from glf.tableau import (
    BOTTOM,
    TOP,
    BeliefState,
    Literal,
    LogicSignature,
    expand_step,
    extract_models,
    ground_quantifiers,
    init_belief_state,
    saturate,
    update_belief_state,
)
from helpers import (
    PROP_ATOMS as ATOMS,
    assignments,
    atoms_in,
    evaluate,
    prop_signature,
    random_formula,
    satisfiable,
)

FOL = """
theory TinyFol =
  prop : type # o ;
  and : o -> o -> o # %1 ∧ %2 prec 10 ;
  or : o -> o -> o # %1 ∨ %2 prec 9 ;
  neg : o -> o # ¬ %1 prec 20 ;
  ind : type # ι ;
  forall : (ι -> o) -> o # ∀ %1 prec 25 ;
  exists : (ι -> o) -> o # ∃ %1 prec 25 ;
  run' : ι -> o ;
  love' : ι -> ι -> o ;
  box' : o -> o ;
  a' : ι ;
  b' : ι ;
end
"""

NOBODY = """
theory Nobody =
  prop : type # o ;
  and : o -> o -> o # %1 ∧ %2 prec 10 ;
  or : o -> o -> o # %1 ∨ %2 prec 9 ;
  neg : o -> o # ¬ %1 prec 20 ;
  ind : type # ι ;
  forall : (ι -> o) -> o # ∀ %1 prec 25 ;
  exists : (ι -> o) -> o # ∃ %1 prec 25 ;
  q' : ι -> o ;
end
"""

FOL_CONNECTIVES = {
    "and": "and", "or": "or", "neg": "neg",
    "forall": "forall", "exists": "exists",
}


def flat_of(text, name):
    g = TheoryGraph()
    parse_theory_file(g, text)
    return g.flatten(name)


PROP_SIG = prop_signature()
FOL_SIG = LogicSignature(
    flat_of(FOL, "TinyFol"), FOL_CONNECTIVES, individual_type="ind"
)
NOBODY_SIG = LogicSignature(
    flat_of(NOBODY, "Nobody"), FOL_CONNECTIVES, individual_type="ind"
)


def prop(text: str) -> Term:
    return parse_term(PROP_SIG.flat, text)


def fol(text: str) -> Term:
    return parse_term(FOL_SIG.flat, text)


def rendered(state: BeliefState) -> list[tuple[str, ...]]:
    flat = state.signature.flat
    return [
        tuple(lit.render(flat) for lit in model)
        for model in extract_models(state)
    ]


formulas = st.recursive(
    st.sampled_from([Const(a) for a in ATOMS]),
    lambda inner: st.one_of(
        st.tuples(st.sampled_from(("and", "or", "impl")), inner, inner).map(
            lambda t: app(Const(t[0]), t[1], t[2])
        ),
        inner.map(lambda f: app(Const("neg"), f)),
    ),
    max_leaves=12,
)


class TestGrounding:
    def test_universal_becomes_conjunction(self):
        got = ground_quantifiers(FOL_SIG, fol("∀ [x : ι] run' x"))
        assert alpha_eq(got, fol("(run' a') ∧ (run' b')"))

    def test_existential_becomes_disjunction(self):
        got = ground_quantifiers(FOL_SIG, fol("∃ [x : ι] run' x"))
        assert alpha_eq(got, fol("(run' a') ∨ (run' b')"))

    def test_grounding_descends_through_connectives(self):
        got = ground_quantifiers(FOL_SIG, fol("¬ (∀ [x : ι] run' x) ∨ run' a'"))
        assert alpha_eq(got, fol("¬ ((run' a') ∧ (run' b')) ∨ run' a'"))

    def test_nested_quantifiers_ground_inside_out(self):
        got = ground_quantifiers(FOL_SIG, fol("∀ [x : ι] ∃ [y : ι] love' x y"))
        want = fol(
            "((love' a' a') ∨ (love' a' b')) ∧ ((love' b' a') ∨ (love' b' b'))"
        )
        assert alpha_eq(got, want)

    def test_quantifier_under_opaque_head_is_left_alone(self):
        t = fol("box' (∀ [x : ι] run' x)")
        assert ground_quantifiers(FOL_SIG, t) is t

    def test_plain_atoms_pass_through(self):
        t = fol("run' a'")
        assert ground_quantifiers(FOL_SIG, t) is t

    def test_empty_domain_universal_is_true(self):
        got = ground_quantifiers(
            NOBODY_SIG, parse_term(NOBODY_SIG.flat, "∀ [x : ι] q' x")
        )
        assert got == TOP

    def test_empty_domain_existential_is_false(self):
        got = ground_quantifiers(
            NOBODY_SIG, parse_term(NOBODY_SIG.flat, "∃ [x : ι] q' x")
        )
        assert got == BOTTOM

    def test_no_individual_type_is_an_error(self):
        bare = LogicSignature(FOL_SIG.flat, FOL_CONNECTIVES)
        with pytest.raises(NoDomainType):
            ground_quantifiers(bare, fol("∀ [x : ι] run' x"))

    def test_missing_connective_role_is_an_error(self):
        with pytest.raises(TableauError):
            PROP_SIG.constant("forall")


class TestExpansionRules:
    def test_conjunction_extends_the_branch(self):
        state = init_belief_state(PROP_SIG, (prop("p1 ∧ p2"),))
        assert rendered(state) == [("p1", "p2")]

    def test_negated_disjunction_extends(self):
        state = init_belief_state(PROP_SIG, (prop("¬ (p1 ∨ p2)"),))
        assert rendered(state) == [("¬ p1", "¬ p2")]

    def test_negated_implication_extends(self):
        state = init_belief_state(PROP_SIG, (prop("¬ (p1 ⇒ p2)"),))
        assert rendered(state) == [("p1", "¬ p2")]

    def test_double_negation_cancels(self):
        state = init_belief_state(PROP_SIG, (prop("¬ ¬ p1"),))
        assert rendered(state) == [("p1",)]

    def test_disjunction_splits(self):
        state = init_belief_state(PROP_SIG, (prop("p1 ∨ p2"),))
        assert rendered(state) == [("p1",), ("p2",)]

    def test_negated_conjunction_splits(self):
        state = init_belief_state(PROP_SIG, (prop("¬ (p1 ∧ p2)"),))
        assert rendered(state) == [("¬ p1",), ("¬ p2",)]

    def test_implication_splits_with_negated_antecedent(self):
        state = init_belief_state(PROP_SIG, (prop("p1 ⇒ p2"),))
        assert rendered(state) == [("¬ p1",), ("p2",)]

    def test_contradictory_axiom_closes_everything(self):
        state = init_belief_state(PROP_SIG, (prop("p1 ∧ ¬ p1"),))
        assert state.branches == ()

    def test_closure_across_separate_axioms(self):
        state = init_belief_state(PROP_SIG, (prop("p1"), prop("¬ p1")))
        assert state.open_branches == ()

    def test_repeated_literal_is_recorded_once(self):
        state = init_belief_state(PROP_SIG, (prop("p1 ∧ p1"),))
        assert rendered(state) == [("p1",)]

    def test_modus_ponens_shape(self):
        state = init_belief_state(PROP_SIG, (prop("p1"), prop("p1 ⇒ p2")))
        assert rendered(state) == [("p1", "p2")]

    def test_expand_step_is_identity_when_quiescent(self):
        state = init_belief_state(PROP_SIG, (prop("p1"),))
        assert expand_step(state) is state

    def test_true_sentinel_adds_no_literal(self):
        state = init_belief_state(
            NOBODY_SIG, (parse_term(NOBODY_SIG.flat, "∀ [x : ι] q' x"),)
        )
        assert rendered(state) == [()]

    def test_false_sentinel_closes(self):
        state = init_belief_state(
            NOBODY_SIG, (parse_term(NOBODY_SIG.flat, "∃ [x : ι] q' x"),)
        )
        assert state.branches == ()

    def test_negated_true_sentinel_closes(self):
        state = init_belief_state(
            NOBODY_SIG, (parse_term(NOBODY_SIG.flat, "¬ (∀ [x : ι] q' x)"),)
        )
        assert state.branches == ()

    def test_negated_false_sentinel_is_harmless(self):
        state = init_belief_state(
            NOBODY_SIG, (parse_term(NOBODY_SIG.flat, "¬ (∃ [x : ι] q' x)"),)
        )
        assert rendered(state) == [()]


class TestBeliefLifecycle:
    def test_init_keeps_the_axioms_verbatim(self):
        axioms = (prop("p1"), prop("p2 ∨ p3"))
        state = init_belief_state(PROP_SIG, axioms)
        assert state.world_knowledge == axioms
        assert state.history[0] == "init with 2 axiom(s)"

    def test_update_copies_every_open_branch_per_reading(self):
        state = init_belief_state(PROP_SIG, (prop("p1 ∨ p2"),))
        state = update_belief_state(state, (prop("p3"), prop("p4")))
        assert sorted(rendered(state)) == [
            ("p1", "p3"), ("p1", "p4"), ("p2", "p3"), ("p2", "p4"),
        ]

    def test_alpha_equal_readings_collapse(self):
        state = init_belief_state(FOL_SIG)
        state = update_belief_state(
            state, (fol("∀ [x : ι] run' x"), fol("∀ [y : ι] run' y"))
        )
        assert any("1 reading(s)" in note for note in state.history)
        assert len(state.open_branches) == 1

    def test_definitionally_equal_readings_collapse(self):
        state = init_belief_state(PROP_SIG)
        state = update_belief_state(state, (prop("both p1 p2"), prop("p1 ∧ p2")))
        assert any("1 reading(s)" in note for note in state.history)
        assert rendered(state) == [("p1", "p2")]

    def test_update_grounds_quantified_readings(self):
        state = init_belief_state(FOL_SIG)
        state = update_belief_state(state, (fol("∃ [x : ι] run' x"),))
        assert rendered(state) == [("run' a'",), ("run' b'",)]

    def test_no_readings_is_an_error(self):
        state = init_belief_state(PROP_SIG)
        with pytest.raises(EmptyReadings):
            update_belief_state(state, ())

    def test_ill_typed_axiom_is_rejected(self):
        with pytest.raises(IllTypedAxiom):
            init_belief_state(FOL_SIG, (Const("run'"),))

    def test_ill_typed_reading_is_rejected(self):
        state = init_belief_state(FOL_SIG)
        with pytest.raises(IllTypedAxiom):
            update_belief_state(state, (Const("a'"),))

    def test_contradicted_discourse_leaves_no_branch(self):
        state = init_belief_state(PROP_SIG, (prop("p1"),))
        state = update_belief_state(state, (prop("¬ p1"),))
        assert state.open_branches == ()

    def test_budget_exhaustion_is_survivable(self):
        f = prop("(p1 ∨ p2) ∧ (p3 ∨ p4)")
        state = init_belief_state(PROP_SIG, (f,), step_budget=2)
        assert state.exhausted
        assert state.open_branches  # partially expanded, but present
        rescued = saturate(dataclasses.replace(state, step_budget=10_000))
        assert not rescued.exhausted
        assert len(extract_models(rescued)) == 4

    def test_history_accumulates(self):
        state = init_belief_state(PROP_SIG, (prop("p1"),))
        before = len(state.history)
        state = update_belief_state(state, (prop("p2"),))
        assert len(state.history) > before


class TestExtractModels:
    def test_positive_literals_sort_first(self):
        state = init_belief_state(
            PROP_SIG, (prop("¬ p3"), prop("p4"), prop("¬ p2"), prop("p1"))
        )
        assert rendered(state) == [("p1", "p4", "¬ p2", "¬ p3")]

    def test_duplicate_branches_collapse(self):
        state = init_belief_state(PROP_SIG, (prop("p1 ∨ p1"),))
        assert rendered(state) == [("p1",)]

    def test_literal_rendering(self):
        atom = fol("love' a' b'")
        assert Literal(True, atom).render(FOL_SIG.flat) == "love' a' b'"
        assert Literal(False, atom).render(FOL_SIG.flat) == "¬ love' a' b'"


class TestAgainstTruthTables:
    def test_seeded_bulk_agreement(self):
        rng = random.Random(7031)
        for _ in range(150):
            f = random_formula(rng, 6)
            state = init_belief_state(PROP_SIG, (f,), step_budget=200_000)
            assert not state.exhausted
            assert bool(state.open_branches) == satisfiable(f)

    @given(formulas)
    @settings(max_examples=150, deadline=None)
    def test_open_branch_iff_satisfiable(self, f):
        state = init_belief_state(PROP_SIG, (f,), step_budget=200_000)
        assert not state.exhausted
        assert bool(state.open_branches) == satisfiable(f)

    @given(formulas)
    @settings(max_examples=100, deadline=None)
    def test_every_completion_of_a_model_satisfies(self, f):
        state = init_belief_state(PROP_SIG, (f,), step_budget=200_000)
        assert not state.exhausted
        names = atoms_in(f)
        for model in extract_models(state):
            fixed = {lit.atom.name: lit.positive for lit in model}
            free = names - set(fixed)
            for extra in assignments(free):
                assert evaluate(f, {**fixed, **extra})
