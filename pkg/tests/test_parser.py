"""Text formats: parsing, error reporting, and printing round trips."""

import pytest

from eltas.action import (
    ActionAtom,
    After,
    Atom,
    FALSUM,
    FDiamond,
    FUntil,
    Lit,
    NextLit,
    PAtom,
    PChoice,
    PSeq,
    PStar,
    Plain,
    Role,
    Rule,
    RuleKind,
    Var,
    classify_rule,
    test_action as guard_action,
)
from eltas.el import (
    And,
    Axiom,
    BOT,
    ConceptAssertion,
    Exists,
    KnowledgeBase,
    Name,
    Nominal,
    RoleAssertion,
    TOP,
)
from eltas.parser import (
    ParseError,
    format_formula,
    format_kb,
    format_rule,
    format_state,
    parse_action_sequence,
    parse_adl,
    parse_goal_literal,
    parse_kb,
    tokenize,
)

from helpers import load_domain, load_kb, read


class TestTokenizer:
    def test_positions_and_case_folding(self):
        toks = tokenize("Foo\n  bar.")
        assert (toks[0].text, toks[0].orig, toks[0].line, toks[0].col) == \
            ("foo", "Foo", 1, 1)
        assert (toks[1].text, toks[1].line, toks[1].col) == ("bar", 2, 3)
        assert toks[2].text == "."
        assert toks[-1].kind == "end"

    def test_comments_are_skipped(self):
        toks = tokenize("a. % trailing words <- ?\nb.")
        assert [t.text for t in toks[:-1]] == ["a", ".", "b", "."]

    def test_arrow_is_one_token(self):
        toks = tokenize("a<-b")
        assert [t.text for t in toks[:-1]] == ["a", "<-", "b"]

    def test_reserved_prefix_rejected(self):
        with pytest.raises(ParseError) as e:
            tokenize("_n1.")
        assert "reserved" in str(e.value)

    def test_unexpected_character(self):
        with pytest.raises(ParseError) as e:
            tokenize("a @ b")
        assert e.value.line == 1 and e.value.col == 3


class TestKbParsing:
    def test_example_kb(self):
        kb = load_kb("example1.kb")
        assert Axiom(Exists("teaches", Name("course")), Name("teacher")) in kb.tbox
        assert ConceptAssertion(Name("person"), "john") in kb.abox
        assert ConceptAssertion(Name("course"), "cs1") in kb.abox

    def test_concept_grammar(self):
        kb = parse_kb("(a and b) sub r some (c and {i}).")
        assert kb.tbox == (
            Axiom(And(Name("a"), Name("b")),
                  Exists("r", And(Name("c"), Nominal("i")))),
        )

    def test_top_bot_and_nominals(self):
        kb = parse_kb("top sub {i}. bot sub a. {j} sub top.")
        assert kb.tbox[0] == Axiom(TOP, Nominal("i"))
        assert kb.tbox[1] == Axiom(BOT, Name("a"))
        assert kb.tbox[2] == Axiom(Nominal("j"), TOP)

    def test_assertions(self):
        kb = parse_kb("(a and b)(i). r(i,j).")
        assert kb.abox == (
            ConceptAssertion(And(Name("a"), Name("b")), "i"),
            RoleAssertion("r", "i", "j"),
        )

    def test_case_is_folded(self):
        kb = parse_kb("Person(John).")
        assert kb.abox == (ConceptAssertion(Name("person"), "john"),)

    def test_name_kind_collisions_are_rejected(self):
        with pytest.raises(ParseError):
            parse_kb("concept r. r(i,j).")
        with pytest.raises(ParseError):
            parse_kb("a sub b. a(i,j).")
        with pytest.raises(ParseError):
            parse_kb("individual a. a sub b.")

    def test_keywords_cannot_name_things(self):
        with pytest.raises(ParseError):
            parse_kb("concept some.")

    def test_error_positions(self):
        with pytest.raises(ParseError) as e:
            parse_kb("a sub\nsub.")
        assert e.value.line == 2

    def test_missing_period(self):
        with pytest.raises(ParseError):
            parse_kb("a sub b")

    def test_format_round_trip(self):
        for fixture in ("example1.kb",):
            kb = load_kb(fixture)
            again = parse_kb(format_kb(kb))
            assert again == kb

    def test_format_skips_generated_names(self):
        kb = KnowledgeBase(tbox=(Axiom(Name("_n1"), Name("a")),))
        text = format_kb(kb)
        assert "concept _n1." not in text
        assert "_n1 sub a." in text


class TestAdlParsing:
    def test_declarations_and_laws(self):
        dd = load_domain("turkey.adl")
        assert [d.name for d in dd.actions] == ["load", "shoot", "spin"]
        assert dd.frame_decls == (("loaded", True), ("alive", True))
        kinds = [classify_rule(r) for r in dd.rules]
        assert kinds.count(RuleKind.ACTION_LAW) == 4
        assert kinds.count(RuleKind.PRECONDITION) == 1
        assert kinds.count(RuleKind.INITIAL) == 2

    def test_ontology_names_resolve_against_the_kb(self):
        kb = load_kb("example1.kb")
        dd = parse_adl(read("example1.adl"), kb)
        law = dd.rules[0]
        assert law.head == After(
            ActionAtom("assign", (Var("c"), Var("x"))),
            Lit(Atom(Role("teaches"), (Var("x"), Var("c")))),
        )
        assert law.pos == (Lit(Atom(Name("course"), (Var("c"),))),)

    def test_uppercase_terms_are_variables(self):
        dd = parse_adl("action go(X).\nlaw [go(X)] at(X).")
        head = dd.rules[0].head
        assert head.action.args == (Var("x"),)
        assert head.what.atom.args == (Var("x"),)
        dd2 = parse_adl("action go(X).\nlaw [go(X)] at(X) <- not at(X).")
        assert dd2.rules[0].neg[0].atom.args == (Var("x"),)

    def test_concept_expression_literals(self):
        kb = parse_kb("concept course. role teaches.")
        dd = parse_adl("caused p <- (teaches some course)(X).", kb)
        body = dd.rules[0].pos[0]
        assert body.atom.pred == Exists("teaches", Name("course"))
        with pytest.raises(ParseError):
            parse_adl("caused p <- (teaches some missing)(X).", kb)

    def test_nominal_and_builtin_literals(self):
        dd = parse_adl("init {i}(j).\ninit -top(i).\ninit bot(k) <- p.")
        assert dd.rules[0].head == Lit(Atom(Nominal("i"), ("j",)))
        assert dd.rules[1].head == Lit(Atom(TOP, ("i",)), False)
        assert dd.rules[2].head == Lit(Atom(BOT, ("k",)))

    def test_nonexec_and_caused_forms(self):
        dd = parse_adl(
            "action a.\n"
            "nonexec [a] <- p, not q.\n"
            "caused next r <- s.\n"
            "caused false <- p, q.\n"
            "init false <- not p.\n"
        )
        assert dd.rules[0].head == After(ActionAtom("a"), FALSUM)
        assert dd.rules[1].head == NextLit(Lit(Atom(Plain("r", 0))))
        assert dd.rules[2].head is FALSUM or dd.rules[2].head == FALSUM
        assert dd.rules[3].always is False

    def test_action_arity_checking(self):
        with pytest.raises(ParseError):
            parse_adl("action a.\nlaw [a(x)] p.")
        with pytest.raises(ParseError):
            parse_adl("law [ghost] p.")

    def test_fluent_arity_stability(self):
        with pytest.raises(ParseError) as e:
            parse_adl("init p(a).\ninit p.")
        assert "previously" in str(e.value)

    def test_ontology_arity_enforced(self):
        kb = parse_kb("concept c. role r.")
        with pytest.raises(ParseError):
            parse_adl("init c(a,b).", kb)
        with pytest.raises(ParseError):
            parse_adl("init r(a).", kb)

    def test_action_name_clashes(self):
        kb = parse_kb("concept c.")
        with pytest.raises(ParseError):
            parse_adl("action c.", kb)
        with pytest.raises(ParseError):
            parse_adl("init a.\nlaw [a] p." if False else "action a.\ninit a.")

    def test_unsafe_rules_are_rejected_at_parse_time(self):
        from eltas.action import UnsafeRuleError

        with pytest.raises(UnsafeRuleError):
            parse_adl("caused p(X) <- not q(X).")

    def test_constraints(self):
        dd = load_domain("hunter.adl")
        (f,) = dd.constraints
        assert isinstance(f, FDiamond)
        prog = f.prog
        assert isinstance(prog, PSeq)
        dd2 = parse_adl(
            "action a.\nconstraint p until <a*> q.\n"
            "constraint always (p or not q).\n"
            "constraint <a + (p)?> eventually next true.\n"
        )
        assert isinstance(dd2.constraints[0], FUntil)
        test = dd2.constraints[2].prog.right
        assert isinstance(test, PAtom) and test.action.test is not None

    def test_constraints_must_be_ground(self):
        with pytest.raises(ParseError) as e:
            parse_adl("action a.\nconstraint <a> p(X).")
        assert "ground" in str(e.value)
        with pytest.raises(ParseError):
            parse_adl("action a(X).\nconstraint <a(X)> true.")

    def test_statement_errors(self):
        with pytest.raises(ParseError):
            parse_adl("bogus statement.")
        with pytest.raises(ParseError):
            parse_adl("action a")


class TestSequencesAndGoals:
    dd = load_domain("hunter.adl")

    def test_sequence(self):
        seq = parse_action_sequence("load, shoot", self.dd)
        assert seq == (ActionAtom("load"), ActionAtom("shoot"))

    def test_sequence_with_tests(self):
        seq = parse_action_sequence("(-in_sight)?, wait", self.dd)
        assert seq[0] == guard_action(
            Lit(Atom(Plain("in_sight", 0)), False)
        )
        assert seq[1] == ActionAtom("wait")

    def test_empty_sequence(self):
        assert parse_action_sequence("", self.dd) == ()
        assert parse_action_sequence("  % nothing\n", self.dd) == ()

    def test_sequence_errors(self):
        with pytest.raises(ParseError):
            parse_action_sequence("load shoot", self.dd)
        with pytest.raises(ParseError):
            parse_action_sequence("fly", self.dd)

    def test_goal_literal(self):
        assert parse_goal_literal("-alive", self.dd) == Lit(
            Atom(Plain("alive", 0)), False
        )
        kb = load_kb("example1.kb")
        dd = parse_adl(read("example1.adl"), kb)
        goal = parse_goal_literal("teacher(john)", dd)
        assert goal == Lit(Atom(Name("teacher"), ("john",)))
        with pytest.raises(ParseError):
            parse_goal_literal("alive extra", self.dd)
        with pytest.raises(ParseError):
            parse_goal_literal("at(X)", self.dd)


class TestPrinting:
    def test_rule_round_trip_through_format(self):
        sources = [
            "law [load] loaded.",
            "law [spin] loaded <- not [spin] -loaded.",
            "nonexec [load] <- loaded.",
            "caused next p <- q, not next r.",
            "caused done <- p, not q.",
            "init -p <- not q.",
        ]
        dd = parse_adl("action load.\naction spin.\n" + "\n".join(sources))
        printed = [format_rule(r) for r in dd.rules]
        again = parse_adl("action load.\naction spin.\n" + "\n".join(printed))
        assert again.rules == dd.rules

    def test_formula_round_trip_through_repr(self):
        dd = load_domain("hunter.adl")
        text = format_formula(dd.constraints[0])
        again = parse_adl(
            "\n".join(read("hunter.adl").splitlines()[:-1])
            + f"\nconstraint {text}.\n"
        )
        assert again.constraints == dd.constraints

    def test_format_state_sorts(self):
        lits = [Lit(Atom(Plain("b", 0))), Lit(Atom(Plain("a", 0)), False)]
        assert format_state(lits) == ("-a", "b")
