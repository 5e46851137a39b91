"""Parsers and printers for the two text formats.

``.kb`` files hold a knowledge base: optional ``concept``/``role``/
``individual`` declarations, inclusion axioms written ``C sub D.``, and
assertions ``C(a).`` or ``r(a,b).``.  Concepts use ``top``, ``bot``, names,
nominals ``{a}``, ``C and D``, and ``r some C``.

``.adl`` files hold an action domain: ``action`` declarations, ``frame``/
``nonframe`` inertia declarations, laws (``law [act] lit <- body.``,
``caused ...``, ``nonexec ...``, ``init ...``) and ``constraint`` formulas
with the temporal operators and regular programs.

Identifier case carries no meaning and everything is folded to lowercase; the
exception is term positions in ``.adl`` files, where an uppercase-initial
identifier is a variable.  Identifiers may not start with an underscore; that
prefix is reserved for generated names.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .el import (
    And,
    Axiom,
    BOT,
    Concept,
    ConceptAssertion,
    EltasError,
    Exists,
    KnowledgeBase,
    Name,
    Nominal,
    RoleAssertion,
    TOP,
    concept_names,
    role_names,
    individuals,
)
from .action import (
    ActionAtom,
    ActionDecl,
    After,
    Atom,
    DomainDescription,
    FALSUM,
    Falsum,
    FAlways,
    FAnd,
    FBox,
    FDiamond,
    FEventually,
    FLit,
    FNext,
    FNot,
    FOr,
    FTrue,
    FUntil,
    Formula,
    Lit,
    NextLit,
    PAtom,
    PChoice,
    PSeq,
    PStar,
    Plain,
    Program,
    Role,
    Rule,
    RuleKind,
    TRUE,
    Var,
    classify_rule,
    formula_literals,
    plain_predicates,
    test_action,
    validate_rule,
)


class ParseError(EltasError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


KEYWORDS = {
    "concept", "role", "individual", "sub", "some", "and", "or", "top", "bot",
    "action", "frame", "nonframe", "law", "caused", "nonexec", "init",
    "constraint", "not", "next", "until", "always", "eventually", "true",
    "false",
}

_PUNCT = {"(", ")", "{", "}", "[", "]", "<", ">", ";", ",", "+", "*", "?",
          "-", ".", "<-"}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "punct", or "end"
    text: str  # case-folded for identifiers
    orig: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            orig = text[start:i]
            if orig.startswith("_"):
                raise ParseError(
                    f"identifier {orig} uses the reserved '_' prefix",
                    line,
                    start_col,
                )
            tokens.append(Token("ident", orig.lower(), orig, line, start_col))
            continue
        if ch == "<" and i + 1 < n and text[i + 1] == "-":
            tokens.append(Token("punct", "<-", "<-", line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.orig or 'end of input'!r}",
                             tok.line, tok.col)
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def at_ident(self) -> bool:
        return self.peek().kind == "ident"

    def save(self) -> int:
        return self.pos

    def restore(self, mark: int) -> None:
        self.pos = mark


# ---------------------------------------------------------------------------
# Knowledge base files


class _KbNames:
    """Declared and inferred name kinds, with collision checking."""

    def __init__(self):
        self.kinds: dict[str, str] = {}

    def claim(self, name: str, kind: str, tok: Token) -> None:
        if name in KEYWORDS:
            raise ParseError(f"{name!r} is a keyword", tok.line, tok.col)
        old = self.kinds.get(name)
        if old is None:
            self.kinds[name] = kind
        elif old != kind:
            raise ParseError(
                f"name {name} used both as {old} and as {kind}", tok.line, tok.col
            )


def _parse_concept(cur: _Cursor, names: _KbNames) -> Concept:
    left = _parse_concept_primary(cur, names)
    while cur.at("and"):
        cur.next()
        right = _parse_concept_primary(cur, names)
        left = And(left, right)
    return left


def _parse_concept_primary(cur: _Cursor, names: _KbNames) -> Concept:
    tok = cur.peek()
    if tok.text == "(":
        cur.next()
        inner = _parse_concept(cur, names)
        cur.expect(")")
        return inner
    if tok.text == "{":
        cur.next()
        ind = cur.next()
        if ind.kind != "ident":
            raise ParseError("expected individual name in nominal", ind.line, ind.col)
        names.claim(ind.text, "individual", ind)
        cur.expect("}")
        return Nominal(ind.text)
    if tok.text == "top":
        cur.next()
        return TOP
    if tok.text == "bot":
        cur.next()
        return BOT
    if tok.kind != "ident" or tok.text in KEYWORDS:
        raise ParseError(f"expected a concept, found {tok.orig!r}", tok.line, tok.col)
    cur.next()
    if cur.at("some"):
        cur.next()
        names.claim(tok.text, "role", tok)
        filler = _parse_concept_primary(cur, names)
        return Exists(tok.text, filler)
    names.claim(tok.text, "concept", tok)
    return Name(tok.text)


def parse_kb(text: str) -> KnowledgeBase:
    cur = _Cursor(tokenize(text))
    names = _KbNames()
    tbox: list[Axiom] = []
    abox: list = []
    declared: dict[str, set[str]] = {"concept": set(), "role": set(),
                                     "individual": set()}
    while not cur.peek().kind == "end":
        tok = cur.peek()
        if tok.text in ("concept", "role", "individual"):
            cur.next()
            name = cur.next()
            if name.kind != "ident":
                raise ParseError(f"expected a name after {tok.text}", name.line, name.col)
            names.claim(name.text, tok.text, name)
            declared[tok.text].add(name.text)
            cur.expect(".")
            continue
        lhs = _parse_concept(cur, names)
        if cur.at("sub"):
            cur.next()
            rhs = _parse_concept(cur, names)
            cur.expect(".")
            tbox.append(Axiom(lhs, rhs))
            continue
        if cur.at("("):
            cur.next()
            first = cur.next()
            if first.kind != "ident":
                raise ParseError("expected an individual", first.line, first.col)
            if cur.at(","):
                cur.next()
                second = cur.next()
                if second.kind != "ident":
                    raise ParseError("expected an individual", second.line, second.col)
                cur.expect(")")
                cur.expect(".")
                if not isinstance(lhs, Name):
                    raise ParseError(
                        "role assertions need a role name", first.line, first.col
                    )
                names.kinds.pop(lhs.name, None)
                names.claim(lhs.name, "role", first)
                names.claim(first.text, "individual", first)
                names.claim(second.text, "individual", second)
                abox.append(RoleAssertion(lhs.name, first.text, second.text))
                continue
            cur.expect(")")
            cur.expect(".")
            names.claim(first.text, "individual", first)
            abox.append(ConceptAssertion(lhs, first.text))
            continue
        tok = cur.peek()
        raise ParseError(
            f"expected 'sub' or an assertion, found {tok.orig or 'end of input'!r}",
            tok.line,
            tok.col,
        )
    kb = KnowledgeBase(
        tuple(tbox),
        tuple(abox),
        tuple(declared["concept"]),
        tuple(declared["role"]),
        tuple(declared["individual"]),
    )
    # a name may have been claimed as concept before a role assertion reused it
    for name in names.kinds:
        occurs_as_concept = name in concept_names(kb)
        occurs_as_role = name in role_names(kb)
        if occurs_as_concept and occurs_as_role:
            raise ParseError(f"name {name} used both as concept and as role")
    return kb


# ---------------------------------------------------------------------------
# Action domain files


class _AdlContext:
    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        self.concepts = set(concept_names(kb))
        self.roles = set(role_names(kb))
        self.plains: dict[str, int] = {}
        self.actions: dict[str, int] = {}
        self.declaring = True

    def resolve_atom(self, name: str, nargs: int, tok: Token):
        if name in self.concepts:
            if nargs != 1:
                raise ParseError(
                    f"concept {name} takes one argument", tok.line, tok.col
                )
            return Name(name)
        if name in self.roles:
            if nargs != 2:
                raise ParseError(
                    f"role {name} takes two arguments", tok.line, tok.col
                )
            return Role(name)
        if name in self.actions:
            raise ParseError(
                f"{name} is an action, not a fluent", tok.line, tok.col
            )
        known = self.plains.get(name)
        if known is not None and known != nargs:
            raise ParseError(
                f"fluent {name} used with {nargs} arguments, previously {known}",
                tok.line,
                tok.col,
            )
        if known is None and not self.declaring:
            raise ParseError(f"unknown fluent {name}", tok.line, tok.col)
        self.plains[name] = nargs
        return Plain(name, nargs)


def _parse_term(cur: _Cursor) -> object:
    tok = cur.next()
    if tok.kind != "ident":
        raise ParseError(f"expected a term, found {tok.orig!r}", tok.line, tok.col)
    if tok.orig[0].isupper():
        return Var(tok.text)
    return tok.text


def _parse_term_list(cur: _Cursor) -> tuple:
    cur.expect("(")
    terms = [_parse_term(cur)]
    while cur.at(","):
        cur.next()
        terms.append(_parse_term(cur))
    cur.expect(")")
    return tuple(terms)


def _parse_lit(cur: _Cursor, ctx: _AdlContext) -> Lit:
    positive = True
    if cur.at("-"):
        cur.next()
        positive = False
    tok = cur.peek()
    if tok.text == "(":
        # a parenthesized concept expression applied to one term
        cur.next()
        names = _KbNames()
        names.kinds.update({c: "concept" for c in ctx.concepts})
        names.kinds.update({r: "role" for r in ctx.roles})
        concept = _parse_concept(cur, names)
        cur.expect(")")
        args = _parse_term_list(cur)
        if len(args) != 1:
            raise ParseError("concept literals take one argument", tok.line, tok.col)
        for used, kind in names.kinds.items():
            if kind == "concept" and used not in ctx.concepts:
                raise ParseError(
                    f"unknown concept name {used}", tok.line, tok.col
                )
            if kind == "role" and used not in ctx.roles:
                raise ParseError(f"unknown role name {used}", tok.line, tok.col)
        return Lit(Atom(concept, args), positive)
    if tok.text == "{":
        cur.next()
        ind = cur.next()
        cur.expect("}")
        args = _parse_term_list(cur)
        if len(args) != 1:
            raise ParseError("nominal literals take one argument", tok.line, tok.col)
        return Lit(Atom(Nominal(ind.text), args), positive)
    if tok.kind != "ident" or tok.text in KEYWORDS - {"top", "bot"}:
        raise ParseError(f"expected a literal, found {tok.orig!r}", tok.line, tok.col)
    cur.next()
    if tok.text in ("top", "bot"):
        args = _parse_term_list(cur)
        if len(args) != 1:
            raise ParseError(f"{tok.text} takes one argument", tok.line, tok.col)
        return Lit(Atom(TOP if tok.text == "top" else BOT, args), positive)
    if cur.at("("):
        args = _parse_term_list(cur)
    else:
        args = ()
    pred = ctx.resolve_atom(tok.text, len(args), tok)
    return Lit(Atom(pred, args), positive)


def _parse_action_atom(cur: _Cursor, ctx: _AdlContext) -> ActionAtom:
    tok = cur.next()
    if tok.kind != "ident":
        raise ParseError(f"expected an action name, found {tok.orig!r}",
                         tok.line, tok.col)
    args = _parse_term_list(cur) if cur.at("(") else ()
    declared = ctx.actions.get(tok.text)
    if declared is None:
        raise ParseError(f"undeclared action {tok.text}", tok.line, tok.col)
    if declared != len(args):
        raise ParseError(
            f"action {tok.text} takes {declared} arguments", tok.line, tok.col
        )
    return ActionAtom(tok.text, args)


def _parse_body_item(cur: _Cursor, ctx: _AdlContext):
    if cur.at("["):
        cur.next()
        act = _parse_action_atom(cur, ctx)
        cur.expect("]")
        lit = _parse_lit(cur, ctx)
        return After(act, lit)
    if cur.at("next"):
        cur.next()
        return NextLit(_parse_lit(cur, ctx))
    return _parse_lit(cur, ctx)


def _parse_body(cur: _Cursor, ctx: _AdlContext) -> tuple[tuple, tuple]:
    pos: list = []
    neg: list = []
    while True:
        if cur.at("not"):
            cur.next()
            neg.append(_parse_body_item(cur, ctx))
        else:
            pos.append(_parse_body_item(cur, ctx))
        if cur.at(","):
            cur.next()
            continue
        break
    return tuple(pos), tuple(neg)


def _parse_optional_body(cur: _Cursor, ctx: _AdlContext) -> tuple[tuple, tuple]:
    if cur.at("<-"):
        cur.next()
        return _parse_body(cur, ctx)
    return (), ()


# programs


def _parse_program(cur: _Cursor, ctx: _AdlContext) -> Program:
    left = _parse_program_seq(cur, ctx)
    while cur.at("+"):
        cur.next()
        left = PChoice(left, _parse_program_seq(cur, ctx))
    return left


def _parse_program_seq(cur: _Cursor, ctx: _AdlContext) -> Program:
    left = _parse_program_unit(cur, ctx)
    while cur.at(";"):
        cur.next()
        left = PSeq(left, _parse_program_unit(cur, ctx))
    return left


def _parse_program_unit(cur: _Cursor, ctx: _AdlContext) -> Program:
    prog = _parse_program_base(cur, ctx)
    while cur.at("*"):
        cur.next()
        prog = PStar(prog)
    return prog


def _parse_program_base(cur: _Cursor, ctx: _AdlContext) -> Program:
    if cur.at("("):
        mark = cur.save()
        cur.next()
        try:
            lit = _parse_lit(cur, ctx)
            if cur.at(")") and cur.peek(1).text == "?":
                cur.next()
                cur.next()
                _require_ground_lit(lit, cur)
                return PAtom(test_action(lit))
        except ParseError:
            pass
        cur.restore(mark)
        cur.next()
        inner = _parse_program(cur, ctx)
        cur.expect(")")
        return inner
    act = _parse_action_atom(cur, ctx)
    _require_ground_action(act, cur)
    return PAtom(act)


def _require_ground_lit(lit: Lit, cur: _Cursor) -> None:
    if any(isinstance(a, Var) for a in lit.atom.args):
        tok = cur.peek()
        raise ParseError("constraints must be ground", tok.line, tok.col)


def _require_ground_action(act: ActionAtom, cur: _Cursor) -> None:
    if any(isinstance(a, Var) for a in act.args):
        tok = cur.peek()
        raise ParseError("constraints must be ground", tok.line, tok.col)


# formulas


def _parse_formula(cur: _Cursor, ctx: _AdlContext) -> Formula:
    left = _parse_formula_or(cur, ctx)
    if cur.at("until"):
        cur.next()
        cur.expect("<")
        prog = _parse_program(cur, ctx)
        cur.expect(">")
        right = _parse_formula_or(cur, ctx)
        return FUntil(left, prog, right)
    return left


def _parse_formula_or(cur: _Cursor, ctx: _AdlContext) -> Formula:
    left = _parse_formula_and(cur, ctx)
    while cur.at("or"):
        cur.next()
        left = FOr(left, _parse_formula_and(cur, ctx))
    return left


def _parse_formula_and(cur: _Cursor, ctx: _AdlContext) -> Formula:
    left = _parse_formula_unary(cur, ctx)
    while cur.at("and"):
        cur.next()
        left = FAnd(left, _parse_formula_unary(cur, ctx))
    return left


def _parse_formula_unary(cur: _Cursor, ctx: _AdlContext) -> Formula:
    tok = cur.peek()
    if tok.text == "not":
        cur.next()
        return FNot(_parse_formula_unary(cur, ctx))
    if tok.text == "always":
        cur.next()
        return FAlways(_parse_formula_unary(cur, ctx))
    if tok.text == "eventually":
        cur.next()
        return FEventually(_parse_formula_unary(cur, ctx))
    if tok.text == "next":
        cur.next()
        return FNext(_parse_formula_unary(cur, ctx))
    if tok.text == "true":
        cur.next()
        return TRUE
    if tok.text == "false":
        cur.next()
        return FNot(TRUE)
    if tok.text == "<":
        cur.next()
        prog = _parse_program(cur, ctx)
        cur.expect(">")
        return FDiamond(prog, _parse_formula_unary(cur, ctx))
    if tok.text == "[":
        cur.next()
        prog = _parse_program(cur, ctx)
        cur.expect("]")
        return FBox(prog, _parse_formula_unary(cur, ctx))
    if tok.text == "(":
        mark = cur.save()
        try:
            lit = _parse_lit(cur, ctx)
            _require_ground_lit(lit, cur)
            return FLit(lit)
        except ParseError:
            cur.restore(mark)
        cur.next()
        inner = _parse_formula(cur, ctx)
        cur.expect(")")
        return inner
    lit = _parse_lit(cur, ctx)
    _require_ground_lit(lit, cur)
    return FLit(lit)


# statements


def parse_adl(text: str, kb: KnowledgeBase | None = None) -> DomainDescription:
    kb = kb or KnowledgeBase()
    ctx = _AdlContext(kb)
    cur = _Cursor(tokenize(text))
    actions: list[ActionDecl] = []
    rules: list[Rule] = []
    constraints: list[Formula] = []
    frame_decls: list[tuple[str, bool]] = []
    while cur.peek().kind != "end":
        tok = cur.next()
        if tok.text == "action":
            name = cur.next()
            if name.kind != "ident":
                raise ParseError("expected an action name", name.line, name.col)
            arity = 0
            if cur.at("("):
                arity = len(_parse_term_list(cur))
            if name.text in ctx.actions and ctx.actions[name.text] != arity:
                raise ParseError(
                    f"action {name.text} redeclared with different arity",
                    name.line, name.col,
                )
            if name.text in ctx.concepts or name.text in ctx.roles:
                raise ParseError(
                    f"name {name.text} already used by the ontology",
                    name.line, name.col,
                )
            ctx.actions[name.text] = arity
            actions.append(ActionDecl(name.text, arity))
            cur.expect(".")
        elif tok.text in ("frame", "nonframe"):
            name = cur.next()
            if name.kind != "ident":
                raise ParseError("expected a predicate name", name.line, name.col)
            frame_decls.append((name.text, tok.text == "frame"))
            cur.expect(".")
        elif tok.text == "law":
            cur.expect("[")
            act = _parse_action_atom(cur, ctx)
            cur.expect("]")
            lit = _parse_lit(cur, ctx)
            pos, neg = _parse_optional_body(cur, ctx)
            cur.expect(".")
            rules.append(Rule(After(act, lit), pos, neg))
        elif tok.text == "nonexec":
            cur.expect("[")
            act = _parse_action_atom(cur, ctx)
            cur.expect("]")
            pos, neg = _parse_optional_body(cur, ctx)
            cur.expect(".")
            rules.append(Rule(After(act, FALSUM), pos, neg))
        elif tok.text == "caused":
            if cur.at("next"):
                cur.next()
                lit = _parse_lit(cur, ctx)
                pos, neg = _parse_optional_body(cur, ctx)
                cur.expect(".")
                rules.append(Rule(NextLit(lit), pos, neg))
            elif cur.at("false"):
                cur.next()
                pos, neg = _parse_optional_body(cur, ctx)
                cur.expect(".")
                rules.append(Rule(FALSUM, pos, neg))
            else:
                lit = _parse_lit(cur, ctx)
                pos, neg = _parse_optional_body(cur, ctx)
                cur.expect(".")
                rules.append(Rule(lit, pos, neg))
        elif tok.text == "init":
            if cur.at("false"):
                cur.next()
                pos, neg = _parse_optional_body(cur, ctx)
                cur.expect(".")
                rules.append(Rule(FALSUM, pos, neg, always=False))
            else:
                lit = _parse_lit(cur, ctx)
                pos, neg = _parse_optional_body(cur, ctx)
                cur.expect(".")
                rules.append(Rule(lit, pos, neg, always=False))
        elif tok.text == "constraint":
            formula = _parse_formula(cur, ctx)
            cur.expect(".")
            constraints.append(formula)
        else:
            raise ParseError(
                f"expected a statement, found {tok.orig or 'end of input'!r}",
                tok.line,
                tok.col,
            )
    for rule in rules:
        validate_rule(rule)
    return DomainDescription(
        kb=kb,
        actions=tuple(actions),
        rules=tuple(rules),
        constraints=tuple(constraints),
        frame_decls=tuple(frame_decls),
    )


def _domain_context(dd: DomainDescription) -> _AdlContext:
    """A context over an already parsed domain: its actions and fluents are
    available, but unknown fluent names are rejected instead of declared."""
    ctx = _AdlContext(dd.kb)
    ctx.actions = {d.name: d.arity for d in dd.actions}
    for pred in plain_predicates(dd):
        ctx.plains[pred.name] = pred.arity
    for lit in formula_literals(dd.constraints):
        if isinstance(lit.atom.pred, Plain):
            ctx.plains.setdefault(lit.atom.pred.name, lit.atom.pred.arity)
    for name, _ in dd.frame_decls:
        if name not in ctx.plains and name not in ctx.concepts \
                and name not in ctx.roles:
            ctx.plains[name] = 0
    ctx.declaring = False
    return ctx


def parse_action_sequence(text: str, dd: DomainDescription) -> tuple[ActionAtom, ...]:
    """Parse a comma-separated ground action sequence like ``load,shoot``.
    Test actions are written as in programs, e.g. ``(in_sight)?``."""
    ctx = _domain_context(dd)
    cur = _Cursor(tokenize(text))
    out: list[ActionAtom] = []
    if cur.peek().kind == "end":
        return ()
    while True:
        if cur.at("("):
            cur.next()
            lit = _parse_lit(cur, ctx)
            cur.expect(")")
            cur.expect("?")
            _require_ground_lit(lit, cur)
            out.append(test_action(lit))
        else:
            act = _parse_action_atom(cur, ctx)
            _require_ground_action(act, cur)
            out.append(act)
        if cur.at(","):
            cur.next()
            continue
        break
    tok = cur.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.orig!r} after action sequence",
                         tok.line, tok.col)
    return tuple(out)


def parse_goal_literal(text: str, dd: DomainDescription) -> Lit:
    """Parse a single ground literal like ``-alive`` or ``teacher(john)``."""
    ctx = _AdlContext(dd.kb)
    ctx.actions = {d.name: d.arity for d in dd.actions}
    cur = _Cursor(tokenize(text))
    lit = _parse_lit(cur, ctx)
    _require_ground_lit(lit, cur)
    tok = cur.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.orig!r} after literal", tok.line, tok.col)
    return lit


# ---------------------------------------------------------------------------
# Printers


def format_concept(c: Concept) -> str:
    return repr(c)


def format_kb(kb: KnowledgeBase) -> str:
    lines: list[str] = []
    for name in concept_names(kb):
        if not name.startswith("_"):
            lines.append(f"concept {name}.")
    for name in role_names(kb):
        lines.append(f"role {name}.")
    for name in individuals(kb):
        lines.append(f"individual {name}.")
    for ax in kb.tbox:
        lines.append(f"{format_concept(ax.lhs)} sub {format_concept(ax.rhs)}.")
    for a in kb.abox:
        if isinstance(a, ConceptAssertion):
            lines.append(f"{format_concept(a.concept)}({a.individual}).")
        else:
            lines.append(f"{a.role}({a.subject},{a.object}).")
    return "\n".join(lines) + ("\n" if lines else "")


def format_lit(lit: Lit) -> str:
    return repr(lit)


def format_rule(rule: Rule) -> str:
    kind = classify_rule(rule)
    body = ", ".join(
        [repr(b) for b in rule.pos] + [f"not {b!r}" for b in rule.neg]
    )
    arrow = f" <- {body}" if body else ""
    if kind is RuleKind.ACTION_LAW:
        return f"law [{rule.head.action!r}] {rule.head.what!r}{arrow}."
    if kind is RuleKind.PRECONDITION:
        return f"nonexec [{rule.head.action!r}]{arrow}."
    if kind is RuleKind.DYNAMIC_CAUSAL:
        return f"caused next {rule.head.lit!r}{arrow}."
    if kind is RuleKind.STATIC_CAUSAL:
        return f"caused {rule.head!r}{arrow}."
    return f"init {rule.head!r}{arrow}."


def format_formula(f: Formula) -> str:
    return repr(f)


def format_state(state: Iterable[Lit]) -> tuple[str, ...]:
    return tuple(sorted(repr(l) for l in state))
