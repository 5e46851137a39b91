"""Action language syntax: fluent literals, temporal literals, laws, domains.

Fluent atoms are built from three predicate families sharing one namespace:
unary ontology predicates (concept expressions applied to a constant), binary
role predicates, and plain fluents of arbitrary arity.  A state literal is an
atom or its explicit negation.  Laws are rules whose head may also be an
After-literal ``[a]l`` (effect of executing ``a``) or a Next-literal (holds in
the successor state); rule bodies mix plain and default-negated literals.

Three well-formedness constraints keep the temporal structure flat: a rule
with a simple head has a temporal-literal-free body; a rule with head ``[a]l``
may only use temporal body literals of the form ``[a]l'`` for the same ``a``;
a rule with a Next head may only use Next body literals.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

from .el import Concept, EltasError, Exists, Nominal, Top, Bot, concept_key


class MalformedRuleError(EltasError):
    pass


class UnsafeRuleError(EltasError):
    pass


# ---------------------------------------------------------------------------
# Terms and predicates


@dataclass(frozen=True, repr=False)
class Var:
    name: str

    def __repr__(self) -> str:
        return self.name.upper()


Term = Union[Var, str]


@dataclass(frozen=True, repr=False)
class Role:
    """Binary ontology predicate."""

    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, repr=False)
class Plain:
    """Plain fluent predicate, not connected to the ontology."""

    name: str
    arity: int

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, repr=False)
class AuxExists:
    """Helper predicate recording that a constant has some role successor in
    the filler concept.  Never written by users; derived in every state."""

    role: str
    filler: Concept

    def __repr__(self) -> str:
        return f"exists_{self.role}_{_filler_tag(self.filler)}"


def _filler_tag(c: Concept) -> str:
    if isinstance(c, Top):
        return "top"
    if isinstance(c, Nominal):
        return "{%s}" % c.individual
    return repr(c)


Pred = Union[Concept, Role, Plain, AuxExists]


def pred_arity(pred: Pred) -> int:
    if isinstance(pred, Role):
        return 2
    if isinstance(pred, Plain):
        return pred.arity
    return 1


# ---------------------------------------------------------------------------
# Literals


@dataclass(frozen=True, repr=False)
class Atom:
    pred: Pred
    args: tuple[Term, ...] = ()

    def __repr__(self) -> str:
        if not self.args:
            return repr(self.pred)
        inner = ",".join(repr(a) if isinstance(a, Var) else a for a in self.args)
        return f"{self.pred!r}({inner})"


@dataclass(frozen=True, repr=False)
class Lit:
    atom: Atom
    positive: bool = True

    def negated(self) -> "Lit":
        return Lit(self.atom, not self.positive)

    def __repr__(self) -> str:
        return repr(self.atom) if self.positive else f"-{self.atom!r}"


@dataclass(frozen=True, repr=False)
class Falsum:
    """The inconsistent head, usable only as a rule head."""

    def __repr__(self) -> str:
        return "false"


FALSUM = Falsum()


@dataclass(frozen=True, repr=False)
class ActionAtom:
    name: str
    args: tuple[Term, ...] = ()
    test: "Lit | None" = None

    def __repr__(self) -> str:
        if self.test is not None:
            return f"({self.test!r})?"
        if not self.args:
            return self.name
        inner = ",".join(repr(a) if isinstance(a, Var) else a for a in self.args)
        return f"{self.name}({inner})"


def test_action(lit: Lit) -> ActionAtom:
    """The action form of a test: executable exactly when ``lit`` holds."""
    return ActionAtom("?", (), lit)


@dataclass(frozen=True, repr=False)
class After:
    """Temporal literal ``[a]l``: after executing ``a``, ``l`` holds."""

    action: ActionAtom
    what: Union[Lit, Falsum]

    def __repr__(self) -> str:
        return f"[{self.action!r}]{self.what!r}"


@dataclass(frozen=True, repr=False)
class NextLit:
    """Temporal literal: ``lit`` holds in the successor state."""

    lit: Lit

    def __repr__(self) -> str:
        return f"next {self.lit!r}"


BodyItem = Union[Lit, After, NextLit]
Head = Union[Lit, Falsum, After, NextLit]


# ---------------------------------------------------------------------------
# Rules


class RuleKind(enum.Enum):
    ACTION_LAW = "actionLaw"
    STATIC_CAUSAL = "staticCausal"
    DYNAMIC_CAUSAL = "dynamicCausal"
    PRECONDITION = "precondition"
    INITIAL = "initialState"


@dataclass(frozen=True, repr=False)
class Rule:
    """A law ``head <- pos, not neg``.

    ``always`` laws hold at every stage of a trace; non-always laws apply only
    when constructing the initial state.  ``provenance`` records which
    translation family produced the rule (``user`` for hand-written laws).
    """

    head: Head
    pos: tuple[BodyItem, ...] = ()
    neg: tuple[BodyItem, ...] = ()
    always: bool = True
    provenance: str = "user"

    def body_items(self) -> Iterator[BodyItem]:
        yield from self.pos
        yield from self.neg

    def __repr__(self) -> str:
        parts = [repr(b) for b in self.pos] + [f"not {b!r}" for b in self.neg]
        scope = "" if self.always else "init "
        body = f" <- {', '.join(parts)}" if parts else ""
        return f"{scope}{self.head!r}{body}"


def classify_rule(rule: Rule) -> RuleKind:
    if not rule.always:
        return RuleKind.INITIAL
    if isinstance(rule.head, After):
        if isinstance(rule.head.what, Falsum):
            return RuleKind.PRECONDITION
        return RuleKind.ACTION_LAW
    if isinstance(rule.head, NextLit):
        return RuleKind.DYNAMIC_CAUSAL
    return RuleKind.STATIC_CAUSAL


def validate_rule(rule: Rule) -> None:
    """Raise MalformedRuleError or UnsafeRuleError if the rule is ill-formed."""
    head = rule.head
    temporal = [b for b in rule.body_items() if not isinstance(b, Lit)]
    if isinstance(head, (Lit, Falsum)):
        if temporal:
            raise MalformedRuleError(
                f"rule with simple head may not use temporal body literals: {rule!r}"
            )
    elif isinstance(head, After):
        for b in temporal:
            if not (isinstance(b, After) and b.action == head.action):
                raise MalformedRuleError(
                    f"rule with [a]l head may only use [a]l' body literals: {rule!r}"
                )
    elif isinstance(head, NextLit):
        for b in temporal:
            if not isinstance(b, NextLit):
                raise MalformedRuleError(
                    f"rule with next-head may only use next body literals: {rule!r}"
                )
    else:
        raise MalformedRuleError(f"unknown head {head!r}")
    if not rule.always and (temporal or isinstance(head, (After, NextLit))):
        raise MalformedRuleError(
            f"initial-state rule may not use temporal literals: {rule!r}"
        )
    bound = set()
    for item in rule.pos:
        bound.update(_item_vars(item))
    if isinstance(head, After):
        bound.update(v for v in head.action.args if isinstance(v, Var))
    needed = set(_head_vars(head))
    for item in rule.neg:
        needed.update(_item_vars(item))
    loose = needed - bound
    if loose:
        names = ", ".join(sorted(v.name.upper() for v in loose))
        raise UnsafeRuleError(f"unbound variables {names} in rule: {rule!r}")


def _lit_vars(lit: Lit) -> Iterator[Var]:
    for a in lit.atom.args:
        if isinstance(a, Var):
            yield a


def _item_vars(item: BodyItem) -> Iterator[Var]:
    if isinstance(item, Lit):
        yield from _lit_vars(item)
    elif isinstance(item, After):
        for a in item.action.args:
            if isinstance(a, Var):
                yield a
        if isinstance(item.what, Lit):
            yield from _lit_vars(item.what)
    else:
        yield from _lit_vars(item.lit)


def _head_vars(head: Head) -> Iterator[Var]:
    if isinstance(head, Lit):
        yield from _lit_vars(head)
    elif isinstance(head, After):
        for a in head.action.args:
            if isinstance(a, Var):
                yield a
        if isinstance(head.what, Lit):
            yield from _lit_vars(head.what)
    elif isinstance(head, NextLit):
        yield from _lit_vars(head.lit)


# ---------------------------------------------------------------------------
# Programs and constraint formulas


class Program:
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class PAtom(Program):
    action: ActionAtom

    def __repr__(self) -> str:
        return repr(self.action)


@dataclass(frozen=True, repr=False)
class PSeq(Program):
    left: Program
    right: Program

    def __repr__(self) -> str:
        return f"({self.left!r}; {self.right!r})"


@dataclass(frozen=True, repr=False)
class PChoice(Program):
    left: Program
    right: Program

    def __repr__(self) -> str:
        return f"({self.left!r} + {self.right!r})"


@dataclass(frozen=True, repr=False)
class PStar(Program):
    inner: Program

    def __repr__(self) -> str:
        return f"({self.inner!r})*"


class Formula:
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class FTrue(Formula):
    def __repr__(self) -> str:
        return "true"


@dataclass(frozen=True, repr=False)
class FLit(Formula):
    lit: Lit

    def __repr__(self) -> str:
        return repr(self.lit)


@dataclass(frozen=True, repr=False)
class FNot(Formula):
    sub: Formula

    def __repr__(self) -> str:
        return f"not ({self.sub!r})"


@dataclass(frozen=True, repr=False)
class FAnd(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"({self.left!r} and {self.right!r})"


@dataclass(frozen=True, repr=False)
class FOr(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"({self.left!r} or {self.right!r})"


@dataclass(frozen=True, repr=False)
class FUntil(Formula):
    """Indexed until: ``right`` holds at a position reached by a word of the
    program, with ``left`` holding at every position strictly before it."""

    left: Formula
    prog: Program
    right: Formula

    def __repr__(self) -> str:
        return f"({self.left!r} until <{self.prog!r}> {self.right!r})"


@dataclass(frozen=True, repr=False)
class FDiamond(Formula):
    prog: Program
    sub: Formula

    def __repr__(self) -> str:
        return f"<{self.prog!r}> {self.sub!r}"


@dataclass(frozen=True, repr=False)
class FBox(Formula):
    prog: Program
    sub: Formula

    def __repr__(self) -> str:
        return f"[{self.prog!r}] {self.sub!r}"


@dataclass(frozen=True, repr=False)
class FNext(Formula):
    sub: Formula

    def __repr__(self) -> str:
        return f"next ({self.sub!r})"


@dataclass(frozen=True, repr=False)
class FEventually(Formula):
    sub: Formula

    def __repr__(self) -> str:
        return f"eventually ({self.sub!r})"


@dataclass(frozen=True, repr=False)
class FAlways(Formula):
    sub: Formula

    def __repr__(self) -> str:
        return f"always ({self.sub!r})"


TRUE = FTrue()


def program_actions(prog: Program) -> Iterator[ActionAtom]:
    if isinstance(prog, PAtom):
        yield prog.action
    elif isinstance(prog, (PSeq, PChoice)):
        yield from program_actions(prog.left)
        yield from program_actions(prog.right)
    elif isinstance(prog, PStar):
        yield from program_actions(prog.inner)


def formula_actions(f: Formula) -> Iterator[ActionAtom]:
    if isinstance(f, (FDiamond, FBox)):
        yield from program_actions(f.prog)
        yield from formula_actions(f.sub)
    elif isinstance(f, FUntil):
        yield from formula_actions(f.left)
        yield from program_actions(f.prog)
        yield from formula_actions(f.right)
    elif isinstance(f, (FNot, FNext, FEventually, FAlways)):
        yield from formula_actions(f.sub)
    elif isinstance(f, (FAnd, FOr)):
        yield from formula_actions(f.left)
        yield from formula_actions(f.right)


# ---------------------------------------------------------------------------
# Domain descriptions


@dataclass(frozen=True)
class ActionDecl:
    name: str
    arity: int = 0


@dataclass(frozen=True)
class DomainDescription:
    """A parsed action domain tied to a knowledge base.

    ``frame_decls`` lists (predicate name, is_frame) declarations as written;
    duplicates and omissions are diagnosed by `check_well_defined` rather than
    at construction time.
    """

    kb: object
    actions: tuple[ActionDecl, ...] = ()
    rules: tuple[Rule, ...] = ()
    constraints: tuple[Formula, ...] = ()
    frame_decls: tuple[tuple[str, bool], ...] = ()


@dataclass(frozen=True)
class WellDefinedReport:
    ok: bool
    problems: tuple[str, ...] = ()


def rule_constants(rules: Iterable[Rule]) -> set[str]:
    out: set[str] = set()

    def from_args(args: tuple[Term, ...]) -> None:
        for a in args:
            if isinstance(a, str):
                out.add(a)

    for rule in rules:
        for item in itertools.chain([rule.head], rule.body_items()):
            if isinstance(item, Lit):
                from_args(item.atom.args)
            elif isinstance(item, After):
                from_args(item.action.args)
                if isinstance(item.what, Lit):
                    from_args(item.what.atom.args)
            elif isinstance(item, NextLit):
                from_args(item.lit.atom.args)
    return out


def rule_literals(rules: Iterable[Rule]) -> Iterator[Lit]:
    """Every literal in the heads and bodies of the rules, including the
    condition literals of test actions."""
    for rule in rules:
        for item in itertools.chain([rule.head], rule.body_items()):
            if isinstance(item, Lit):
                yield item
            elif isinstance(item, After):
                if isinstance(item.what, Lit):
                    yield item.what
                if item.action.test is not None:
                    yield item.action.test
            elif isinstance(item, NextLit):
                yield item.lit


def formula_literals(constraints: Iterable[Formula]) -> Iterator[Lit]:
    """Every literal in the formulas, including test-action conditions."""
    for f in constraints:
        yield from _formula_lits(f)
        for act in formula_actions(f):
            if act.test is not None:
                yield act.test


def constraint_constants(constraints: Iterable[Formula]) -> set[str]:
    out: set[str] = set()
    for f in constraints:
        for lit in _formula_lits(f):
            for a in lit.atom.args:
                if isinstance(a, str):
                    out.add(a)
        for act in formula_actions(f):
            for a in act.args:
                if isinstance(a, str):
                    out.add(a)
            if act.test is not None:
                for a in act.test.atom.args:
                    if isinstance(a, str):
                        out.add(a)
    return out


def _formula_lits(f: Formula) -> Iterator[Lit]:
    if isinstance(f, FLit):
        yield f.lit
    elif isinstance(f, (FNot, FNext, FEventually, FAlways)):
        yield from _formula_lits(f.sub)
    elif isinstance(f, (FAnd, FOr)):
        yield from _formula_lits(f.left)
        yield from _formula_lits(f.right)
    elif isinstance(f, (FDiamond, FBox)):
        yield from _formula_lits(f.sub)
    elif isinstance(f, FUntil):
        yield from _formula_lits(f.left)
        yield from _formula_lits(f.right)


def plain_predicates(dd: DomainDescription) -> tuple[Plain, ...]:
    found: set[Plain] = set()

    def scan_lit(lit: Lit) -> None:
        if isinstance(lit.atom.pred, Plain):
            found.add(lit.atom.pred)

    for rule in dd.rules:
        for item in itertools.chain([rule.head], rule.body_items()):
            if isinstance(item, Lit):
                scan_lit(item)
            elif isinstance(item, After) and isinstance(item.what, Lit):
                scan_lit(item.what)
            elif isinstance(item, NextLit):
                scan_lit(item.lit)
    for f in dd.constraints:
        for lit in _formula_lits(f):
            scan_lit(lit)
        for act in formula_actions(f):
            if act.test is not None:
                scan_lit(act.test)
    return tuple(sorted(found, key=lambda p: (p.name, p.arity)))


# ---------------------------------------------------------------------------
# Grounding


def substitute_term(t: Term, env: Mapping[Var, str]) -> Term:
    return env.get(t, t) if isinstance(t, Var) else t


def substitute_atom(atom: Atom, env: Mapping[Var, str]) -> Atom:
    return Atom(atom.pred, tuple(substitute_term(a, env) for a in atom.args))


def substitute_lit(lit: Lit, env: Mapping[Var, str]) -> Lit:
    return Lit(substitute_atom(lit.atom, env), lit.positive)


def substitute_action(act: ActionAtom, env: Mapping[Var, str]) -> ActionAtom:
    return ActionAtom(
        act.name, tuple(substitute_term(a, env) for a in act.args), act.test
    )


def _substitute_item(item, env):
    if isinstance(item, Lit):
        return substitute_lit(item, env)
    if isinstance(item, After):
        what = item.what if isinstance(item.what, Falsum) else substitute_lit(item.what, env)
        return After(substitute_action(item.action, env), what)
    if isinstance(item, NextLit):
        return NextLit(substitute_lit(item.lit, env))
    if isinstance(item, Falsum):
        return item
    raise TypeError(f"cannot substitute in {item!r}")


def substitute_rule(rule: Rule, env: Mapping[Var, str]) -> Rule:
    return Rule(
        _substitute_item(rule.head, env),
        tuple(_substitute_item(b, env) for b in rule.pos),
        tuple(_substitute_item(b, env) for b in rule.neg),
        rule.always,
        rule.provenance,
    )


def rule_variables(rule: Rule) -> tuple[Var, ...]:
    seen: dict[Var, None] = {}
    for v in _head_vars(rule.head):
        seen.setdefault(v)
    for item in rule.body_items():
        for v in _item_vars(item):
            seen.setdefault(v)
    return tuple(seen)


def ground_program(rules: Iterable[Rule], universe: Iterable[str]) -> tuple[Rule, ...]:
    """All ground instances of ``rules`` over ``universe``.

    Rules are validated first; a rule with variables and an empty universe
    contributes no instances.
    """
    consts = tuple(universe)
    out: list[Rule] = []
    for rule in rules:
        validate_rule(rule)
        variables = rule_variables(rule)
        if not variables:
            out.append(rule)
            continue
        for combo in itertools.product(consts, repeat=len(variables)):
            out.append(substitute_rule(rule, dict(zip(variables, combo))))
    return tuple(out)


def ground_actions(
    decls: Iterable[ActionDecl], universe: Iterable[str]
) -> tuple[ActionAtom, ...]:
    consts = tuple(universe)
    out: list[ActionAtom] = []
    for decl in decls:
        if decl.arity == 0:
            out.append(ActionAtom(decl.name))
        else:
            for combo in itertools.product(consts, repeat=decl.arity):
                out.append(ActionAtom(decl.name, combo))
    return tuple(sorted(out, key=action_key))


def action_key(act: ActionAtom) -> tuple:
    return (act.name, act.args, repr(act.test) if act.test else "")


def lit_key(lit: Lit) -> tuple:
    return (repr(lit.atom), not lit.positive)
