"""Executability and projection verdicts, diagnostics, and the naive replay."""

from __future__ import annotations

import random

import pytest

from eltas.action import Atom, Lit, Plain
from eltas.el import Nominal
from eltas.encoder import state_satisfies_tbox
from eltas.queries import (
    QueryResult,
    Violation,
    diagnose_state,
    executability,
    naive_successor,
    projection,
)
from eltas.solver import derive_closure, initial_states, successors
from helpers import load_kb, load_theory
from oracles import oracle_satisfies_tbox

LOADED = Lit(Atom(Plain("loaded", 0)))
ALIVE = Lit(Atom(Plain("alive", 0)))


def acts(theory, *names):
    table = {repr(a): a for a in theory.actions}
    return tuple(table[n] for n in names)


class TestExecutability:
    def test_yes_with_witness(self):
        theory = load_theory("turkey.adl")
        result = executability(theory, acts(theory, "load", "shoot"))
        assert result.verdict == "yes"
        assert len(result.witnesses) == 1
        assert ALIVE.negated() in result.witnesses[0].states[-1]
        assert result.countermodel is None

    def test_empty_sequence_is_executable(self):
        theory = load_theory("turkey.adl")
        assert executability(theory, ()).verdict == "yes"

    def test_blocked_first_step(self):
        theory = load_theory("turkey_loaded.adl")
        result = executability(theory, acts(theory, "load"))
        assert result.verdict == "notExecutable"
        assert result.witnesses == ()

    def test_blocked_mid_sequence(self):
        theory = load_theory("turkey.adl")
        result = executability(theory, acts(theory, "load", "load"))
        assert result.verdict == "notExecutable"

    def test_no_when_constraints_reject_every_walk(self):
        theory = load_theory("hunter.adl")
        result = executability(theory, acts(theory, "load"))
        assert result.verdict == "no"
        assert result.diagnostics == ()

    def test_no_with_ontology_diagnostics(self):
        theory = load_theory("example1.adl", "example1.kb")
        kb = load_kb("example1.kb")
        (assign,) = acts(theory, "assign(cs1,john)")
        result = executability(theory, (assign,), tbox=kb.tbox)
        assert result.verdict == "no"
        assert len(result.diagnostics) == 1
        v = result.diagnostics[0]
        assert v.constant == "john"
        assert v.template == 4
        assert repr(v) == (
            "axiom [(teaches some course) sub teacher] "
            "violated at john (template 4)"
        )

    def test_witness_cap(self):
        theory = load_theory("hunter.adl")
        seq = acts(
            theory, "(-in_sight)?", "wait", "(in_sight)?", "load", "shoot"
        )
        assert len(executability(theory, seq).witnesses) == 10
        assert len(executability(theory, seq, max_witnesses=3).witnesses) == 3

    def test_weak_horizon_turns_pending_into_yes(self):
        theory = load_theory("sighted.adl")
        seq = acts(theory, "(in_sight)?")
        assert executability(theory, seq).verdict == "no"
        assert executability(theory, seq, weak=True).verdict == "yes"


class TestProjection:
    def test_yes_in_every_outcome(self):
        theory = load_theory("turkey.adl")
        result = projection(
            theory, acts(theory, "load", "shoot"), ALIVE.negated()
        )
        assert result.verdict == "yes"
        assert len(result.witnesses) == 1

    def test_no_with_countermodel_under_nondeterminism(self):
        theory = load_theory("turkey.adl")
        result = projection(theory, acts(theory, "spin"), LOADED)
        assert result.verdict == "no"
        assert len(result.witnesses) == 1
        assert LOADED in result.witnesses[0].states[-1]
        assert result.countermodel is not None
        assert LOADED.negated() in result.countermodel.states[-1]

    def test_not_executable_sequence(self):
        theory = load_theory("turkey_loaded.adl")
        result = projection(theory, acts(theory, "load"), ALIVE)
        assert result.verdict == "notExecutable"
        assert result.witnesses == () and result.countermodel is None

    def test_along_checks_intermediate_states(self):
        theory = load_theory("turkey.adl")
        seq = acts(theory, "shoot", "load")
        final_only = projection(theory, seq, LOADED)
        assert final_only.verdict == "yes"
        along = projection(theory, seq, LOADED, along=True)
        assert along.verdict == "no"
        assert LOADED.negated() in along.countermodel.states[1]

    def test_along_ignores_the_initial_state(self):
        theory = load_theory("turkey.adl")
        result = projection(theory, acts(theory, "load"), LOADED, along=True)
        assert result.verdict == "yes"

    def test_goal_after_empty_sequence_reads_initial_states(self):
        theory = load_theory("turkey.adl")
        assert projection(theory, (), ALIVE).verdict == "yes"
        assert projection(theory, (), LOADED).verdict == "no"


class TestDiagnoseState:
    def theory_and_tbox(self):
        return load_theory("example1.adl", "example1.kb"), load_kb("example1.kb").tbox

    def closed(self, theory, flips: dict):
        def value(atom):
            if isinstance(atom.pred, Nominal):
                return atom.args[0] == atom.pred.individual
            return flips.get(repr(atom), False)

        return derive_closure(
            (Lit(a, value(a)) for a in theory.simple_atoms), theory
        )

    def test_clean_state_has_no_violations(self):
        theory, tbox = self.theory_and_tbox()
        state = self.closed(theory, {})
        assert diagnose_state(state, tbox, theory.sig) == ()

    def test_missing_subsumer_is_reported_once(self):
        theory, tbox = self.theory_and_tbox()
        state = self.closed(
            theory, {"teaches(john,cs1)": True, "course(cs1)": True}
        )
        found = diagnose_state(state, tbox, theory.sig)
        assert len(found) == 1
        assert found[0].constant == "john"
        assert found[0].template == 4

    def test_satisfied_subsumer_silences_the_axiom(self):
        theory, tbox = self.theory_and_tbox()
        state = self.closed(
            theory,
            {
                "teaches(john,cs1)": True,
                "course(cs1)": True,
                "teacher(john)": True,
            },
        )
        assert diagnose_state(state, tbox, theory.sig) == ()

    def test_empty_report_agrees_with_semantic_check(self):
        theory, tbox = self.theory_and_tbox()
        rng = random.Random(5)
        randomized = [
            a
            for a in theory.simple_atoms
            if not isinstance(a.pred, Nominal)
        ]
        seen_clean = 0
        seen_dirty = 0
        for _ in range(200):
            flips = {repr(a): rng.random() < 0.5 for a in randomized}
            state = self.closed(theory, flips)
            clean = diagnose_state(state, tbox, theory.sig) == ()
            semantic = state_satisfies_tbox(state, tbox, theory.sig)
            reference = oracle_satisfies_tbox(state, tbox, theory.universe)
            assert clean == semantic == reference
            seen_clean += clean
            seen_dirty += not clean
        assert seen_clean and seen_dirty


class TestNaiveSuccessor:
    def test_matches_real_successor_on_deterministic_frame_update(self):
        theory = load_theory("turkey.adl")
        (init,) = initial_states(theory)
        (load,) = acts(theory, "load")
        naive = naive_successor(theory, init, load)
        (real,), _ = successors(theory, init, load)
        assert naive == real

    def test_skips_causal_propagation(self):
        theory = load_theory("example1_causal.adl")
        state = frozenset(
            Lit(a, repr(a) == "course(cs1)") for a in theory.simple_atoms
        )
        (assign,) = acts(theory, "assign(cs1,john)")
        naive = naive_successor(theory, state, assign)
        true_atoms = sorted(repr(l.atom) for l in naive if l.positive)
        assert true_atoms == ["course(cs1)", "teaches(john,cs1)"]

    def test_conditional_effect_respects_its_body(self):
        theory = load_theory("example1_causal.adl")
        state = frozenset(Lit(a, False) for a in theory.simple_atoms)
        (assign,) = acts(theory, "assign(cs1,john)")
        assert naive_successor(theory, state, assign) == state


class TestResultShape:
    def test_defaults(self):
        r = QueryResult("yes")
        assert r.witnesses == ()
        assert r.countermodel is None
        assert r.diagnostics == ()

    def test_violation_repr_template(self):
        theory = load_theory("example1.adl", "example1.kb")
        tbox = load_kb("example1.kb").tbox
        v = Violation(tbox[0], "cs1", 4)
        assert "violated at cs1 (template 4)" in repr(v)
        assert repr(tbox[0]) in repr(v)
