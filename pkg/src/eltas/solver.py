"""Bounded-trace answer set computation for temporal action theories.

A trace holds ``h`` actions and ``h+1`` complete states.  Its timed literal
set contains ``(k, l)`` for every literal ``l`` of state ``k``.  A trace is an
answer set of a ground theory when the timed set equals the least model of
the theory's reduct relative to the trace; the reduct keeps a law instance at
stage ``k`` exactly when none of its default-negated body literals holds
there.  Temporal literals about the stage after the horizon are treated as
vacuously true, mirroring the clause that makes an After-literal hold when
its action is not the one the trace performs next; without this reading no
finite trace could satisfy the persistency laws at the last stage.

Extensions are built stepwise: initial states are the complete consistent
valuations closed under the static and initial laws, and successors are found
by enumerating candidate values for the fluents an action might touch while
frame fluents persist.  Every produced trace is re-verified with the global
answer-set check and filtered through the domain's constraint formulas.
"""

from __future__ import annotations

import concurrent.futures
import itertools
import os
import weakref
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .el import EltasError, Exists, Top, TOP
from .action import (
    ActionAtom,
    After,
    Atom,
    AuxExists,
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
    Program,
    Role,
    Rule,
    RuleKind,
    TRUE,
    action_key,
    classify_rule,
)
from .encoder import TranslatedTheory

State = frozenset


def state_key(state: State) -> tuple:
    return tuple(sorted(repr(l) for l in state))


def consistent(state: Iterable[Lit]) -> bool:
    lits = set(state)
    return not any(l.negated() in lits for l in lits)


@dataclass(frozen=True)
class Trace:
    """``h`` actions with ``h+1`` states; ``states[k]`` precedes ``actions[k]``."""

    states: tuple[State, ...]
    actions: tuple[ActionAtom, ...] = ()

    def __post_init__(self):
        if len(self.states) != len(self.actions) + 1:
            raise EltasError("trace needs exactly one more state than actions")

    @property
    def horizon(self) -> int:
        return len(self.actions)

    def timed_literals(self) -> frozenset:
        return frozenset(
            (k, lit) for k, w in enumerate(self.states) for lit in w
        )


# ---------------------------------------------------------------------------
# Satisfaction of body items on a complete trace


def item_holds(item, trace: Trace, k: int) -> bool:
    """Truth of a body item at stage ``k`` of a complete trace.

    An After-literal for an action the trace does not perform next (or at the
    final stage) is vacuously true; a Next-literal at the final stage likewise.
    """
    if isinstance(item, Lit):
        return item in trace.states[k]
    h = trace.horizon
    if isinstance(item, After):
        if k == h or trace.actions[k] != item.action:
            return True
        if isinstance(item.what, Falsum):
            return False
        return item.what in trace.states[k + 1]
    if isinstance(item, NextLit):
        if k == h:
            return True
        return item.lit in trace.states[k + 1]
    raise TypeError(f"not a body item: {item!r}")


# ---------------------------------------------------------------------------
# Reduct and least model


@dataclass(frozen=True)
class TimedRule:
    stage: int
    head: object
    pos: tuple


def reduct(laws: Iterable[Rule], trace: Trace) -> tuple[TimedRule, ...]:
    """The positive timed program obtained by resolving default negation.

    A law instance survives at stage ``k`` when none of its default-negated
    body literals holds at ``k`` on the trace; initial-only laws are
    instantiated at stage 0 only.
    """
    out: list[TimedRule] = []
    h = trace.horizon
    for law in laws:
        stages = range(h + 1) if law.always else (0,)
        for k in stages:
            if any(item_holds(n, trace, k) for n in law.neg):
                continue
            out.append(TimedRule(k, law.head, law.pos))
    return tuple(out)


INCONSISTENT = object()


def least_model(rules: Sequence[TimedRule], actions: Sequence[ActionAtom]):
    """Least set of timed literals closed under the positive timed rules.

    Returns INCONSISTENT when a falsum head fires or complementary literals
    are both derived.  Heads and positive body literals that speak about the
    stage after the horizon are vacuous, deriving and requiring nothing.
    """
    h = len(actions)
    derived: set = set()

    def body_holds(item, k: int) -> bool:
        if isinstance(item, Lit):
            return (k, item) in derived
        if isinstance(item, After):
            if k == h or actions[k] != item.action:
                return True
            if isinstance(item.what, Falsum):
                return False
            return (k + 1, item.what) in derived
        if isinstance(item, NextLit):
            return True if k == h else (k + 1, item.lit) in derived
        raise TypeError(f"not a body item: {item!r}")

    pending = list(rules)
    changed = True
    while changed:
        changed = False
        remaining = []
        for rule in pending:
            if not all(body_holds(b, rule.stage) for b in rule.pos):
                remaining.append(rule)
                continue
            head = rule.head
            k = rule.stage
            new = None
            if isinstance(head, Falsum):
                return INCONSISTENT
            if isinstance(head, Lit):
                new = (k, head)
            elif isinstance(head, After):
                if k < h and actions[k] == head.action:
                    if isinstance(head.what, Falsum):
                        return INCONSISTENT
                    new = (k + 1, head.what)
            elif isinstance(head, NextLit):
                if k < h:
                    new = (k + 1, head.lit)
            if new is not None and new not in derived:
                derived.add(new)
                changed = True
        pending = remaining
    for k, lit in derived:
        if (k, lit.negated()) in derived:
            return INCONSISTENT
    return frozenset(derived)


def is_temporal_answer_set(trace: Trace, laws: Iterable[Rule]) -> bool:
    """Whether the trace's timed literal set reproduces itself as the least
    model of the reduct it induces."""
    model = least_model(reduct(laws, trace), trace.actions)
    if model is INCONSISTENT:
        return False
    return model == trace.timed_literals()


def is_total(trace: Trace, theory: TranslatedTheory) -> bool:
    """Every state decides every simple fluent and tracked existential."""
    for w in trace.states:
        if not consistent(w):
            return False
        for atom in theory.simple_atoms:
            if Lit(atom) not in w and Lit(atom, False) not in w:
                return False
        for pair in theory.sig.exists:
            for x in theory.universe:
                a = Atom(pair, (x,))
                if Lit(a) not in w and Lit(a, False) not in w:
                    return False
    return True


# ---------------------------------------------------------------------------
# Derived atoms


def derive_closure(simple: Iterable[Lit], theory: TranslatedTheory) -> State:
    """Complete a simple-fluent valuation with the derived ontology atoms:
    top everywhere, the helper existential-witness atoms, and both polarities
    of the tracked existential concepts."""
    lits = set(simple)
    if theory.kb_present:
        for x in theory.universe:
            lits.add(Lit(Atom(TOP, (x,))))
        for pair in theory.sig.exists:
            for x in theory.universe:
                witness = any(
                    Lit(Atom(Role(pair.role), (x, y))) in lits
                    and _filler_holds(pair.filler, y, lits, theory)
                    for y in theory.universe
                )
                if witness:
                    lits.add(Lit(Atom(AuxExists(pair.role, pair.filler), (x,))))
                    lits.add(Lit(Atom(pair, (x,))))
                else:
                    lits.add(Lit(Atom(pair, (x,)), False))
    return frozenset(lits)


def _filler_holds(filler, y: str, lits: set, theory: TranslatedTheory) -> bool:
    if isinstance(filler, Top):
        return True
    return Lit(Atom(filler, (y,))) in lits


# ---------------------------------------------------------------------------
# Rule indexing

_NO_ASSIGNMENT: dict = {}


class _RuleIndex:
    """Partition of the ground laws by how the stepwise machinery uses them."""

    def __init__(self, theory: TranslatedTheory):
        self.static: list[Rule] = []
        self.initial: list[Rule] = []
        self.dynamic: list[Rule] = []
        self.by_action: dict[ActionAtom, list[Rule]] = {}
        self.preconditions: dict[ActionAtom, list[Rule]] = {}
        self.simple_atoms = set(theory.simple_atoms)
        self.universe = theory.universe
        for law in theory.ground_laws:
            kind = classify_rule(law)
            if kind is RuleKind.INITIAL:
                self.initial.append(law)
            elif kind is RuleKind.STATIC_CAUSAL:
                self.static.append(law)
            elif kind is RuleKind.DYNAMIC_CAUSAL:
                self.dynamic.append(law)
            elif kind is RuleKind.ACTION_LAW:
                self.by_action.setdefault(law.head.action, []).append(law)
            else:
                self.preconditions.setdefault(law.head.action, []).append(law)
        self.nonframe_atoms = {
            atom
            for atom in theory.simple_atoms
            if not theory.frame_table.get(atom.pred, True)
        }
        self.dynamic_user = [
            law
            for law in self.dynamic
            if law.provenance not in ("persistency", "nonframe")
            and law.head.lit.atom in self.simple_atoms
        ]
        self.static_lit_heads = [
            (law, law.head.atom)
            for law in self.static
            if isinstance(law.head, Lit) and law.head.atom in self.simple_atoms
        ]

    def _stage_body_possible(self, law: Rule, state) -> bool:
        """Whether the law's stage-k body can hold on the current complete
        state; temporal items about stage k+1 stay unknown."""
        for item in law.pos:
            if isinstance(item, Lit) and item not in state:
                return False
        for item in law.neg:
            if isinstance(item, Lit) and item in state:
                return False
        return True

    def _atom_3val(self, atom: Atom, state, volatile: set, assigned=_NO_ASSIGNMENT):
        if atom in volatile:
            return assigned.get(atom)
        return Lit(atom) in state

    def _exists_3val(
        self, role: str, filler, x: str, state, volatile: set, assigned=_NO_ASSIGNMENT
    ):
        """Witnessed truth of an existential concept at x on the next stage,
        recomputed from the role and filler fluents; None when an undecided
        volatile fluent could still swing it either way."""
        unknown = False
        for y in self.universe:
            rv = self._atom_3val(Atom(Role(role), (x, y)), state, volatile, assigned)
            if rv is False:
                continue
            if isinstance(filler, Top):
                fv = True
            else:
                fv = self._atom_3val(Atom(filler, (y,)), state, volatile, assigned)
            if fv is False:
                continue
            if rv is True and fv is True:
                return True
            unknown = True
        return None if unknown else False

    def _lit_3val(self, item: Lit, state, volatile: set, assigned=_NO_ASSIGNMENT):
        """Truth of a signed literal on the next stage: True, False, or None
        for unknown.  Non-volatile simple fluents keep their current value;
        volatile ones take theirs from ``assigned`` when present."""
        atom = item.atom
        if atom in self.simple_atoms:
            v = self._atom_3val(atom, state, volatile, assigned)
            if v is None:
                return None
            return v if item.positive else not v
        pred = atom.pred
        if isinstance(pred, Top):
            return item.positive
        if isinstance(pred, AuxExists):
            if not item.positive:
                return False
            return self._exists_3val(
                pred.role, pred.filler, atom.args[0], state, volatile, assigned
            )
        if isinstance(pred, Exists):
            val = self._exists_3val(
                pred.role, pred.filler, atom.args[0], state, volatile, assigned
            )
            if val is None:
                return None
            return val if item.positive else not val
        return None

    def influence_atoms(self, item: Lit, volatile: set) -> tuple[Atom, ...]:
        """The volatile simple atoms whose value can change the literal."""
        atom = item.atom
        if atom in self.simple_atoms:
            return (atom,) if atom in volatile else ()
        pred = atom.pred
        if not isinstance(pred, (AuxExists, Exists)):
            return ()
        out: list[Atom] = []
        x = atom.args[0]
        for y in self.universe:
            r_atom = Atom(Role(pred.role), (x, y))
            if r_atom in volatile:
                out.append(r_atom)
            if not isinstance(pred.filler, Top):
                f_atom = Atom(pred.filler, (y,))
                if f_atom in volatile:
                    out.append(f_atom)
        return tuple(out)

    def _next_body_possible(self, law: Rule, state, volatile: set) -> bool:
        """Whether a static law's stage-(k+1) body can hold when every
        non-volatile simple fluent keeps its current value."""
        for item in law.pos:
            if self._lit_3val(item, state, volatile) is False:
                return False
        for item in law.neg:
            if self._lit_3val(item, state, volatile) is True:
                return False
        return True

    def volatile_for(self, action: ActionAtom, state) -> tuple[Atom, ...]:
        """Simple fluents an applicable law could change in this step.

        Everything else is pinned to its current value, which keeps the
        candidate enumeration to the causal cone of the action.
        """
        volatile = set(self.nonframe_atoms)
        for law in self.by_action.get(action, ()):
            what = law.head.what
            if (
                isinstance(what, Lit)
                and what.atom in self.simple_atoms
                and self._stage_body_possible(law, state)
            ):
                volatile.add(what.atom)
        for law in self.dynamic_user:
            if self._stage_body_possible(law, state):
                volatile.add(law.head.lit.atom)
        changed = True
        while changed:
            changed = False
            for law, head_atom in self.static_lit_heads:
                if head_atom in volatile:
                    continue
                if self._next_body_possible(law, state, volatile):
                    volatile.add(head_atom)
                    changed = True
        return tuple(sorted(volatile, key=repr))


_INDEX_CACHE: "weakref.WeakKeyDictionary[TranslatedTheory, _RuleIndex]" = (
    weakref.WeakKeyDictionary()
)


def _index(theory: TranslatedTheory) -> _RuleIndex:
    idx = _INDEX_CACHE.get(theory)
    if idx is None:
        idx = _RuleIndex(theory)
        _INDEX_CACHE[theory] = idx
    return idx


# ---------------------------------------------------------------------------
# Initial states


def initial_states(theory: TranslatedTheory) -> tuple[State, ...]:
    """All complete consistent valuations satisfying the initial and static
    laws.

    The completion laws support any chosen polarity, so a valuation is an
    answer set of the stage-0 program exactly when no constraint fires and
    every fired causal law's head holds.  Enumeration assigns the simple
    fluents one at a time and prunes as soon as a fully-decided law is
    violated.
    """
    idx = _index(theory)
    atoms = list(theory.simple_atoms)
    relevant = idx.static + idx.initial
    simple_only: list[Rule] = []
    with_derived: list[Rule] = []
    simple_atoms = set(atoms)
    for law in relevant:
        mentions = [
            b.atom
            for b in itertools.chain(law.pos, law.neg)
            if isinstance(b, Lit)
        ]
        head_atoms = [law.head.atom] if isinstance(law.head, Lit) else []
        if all(a in simple_atoms for a in mentions + head_atoms):
            simple_only.append(law)
        else:
            with_derived.append(law)
    results: list[State] = []
    chosen: dict[Atom, bool] = {}

    def lit_true(l: Lit) -> bool | None:
        v = chosen.get(l.atom)
        if v is None:
            return None
        return v if l.positive else not v

    def violated_now(law: Rule) -> bool:
        head_val = None
        if isinstance(law.head, Lit):
            head_val = lit_true(law.head)
            if head_val is None or head_val:
                return False
        for b in law.pos:
            if lit_true(b) is not True:
                return False
        for b in law.neg:
            if lit_true(b) is not False:
                return False
        return True

    watch: dict[Atom, list[Rule]] = {a: [] for a in atoms}
    for law in simple_only:
        touched = {
            b.atom for b in itertools.chain(law.pos, law.neg) if isinstance(b, Lit)
        }
        if isinstance(law.head, Lit):
            touched.add(law.head.atom)
        for a in touched:
            watch[a].append(law)

    def assign(i: int) -> None:
        if i == len(atoms):
            state = derive_closure(
                (Lit(a, v) for a, v in chosen.items()), theory
            )
            if _stage_zero_ok(with_derived, state):
                results.append(state)
            return
        atom = atoms[i]
        for value in (False, True):
            chosen[atom] = value
            if not any(violated_now(law) for law in watch[atom]):
                assign(i + 1)
        del chosen[atom]

    assign(0)
    return tuple(sorted(results, key=state_key))


def _stage_zero_ok(laws: Iterable[Rule], state: State) -> bool:
    for law in laws:
        if any(n in state for n in law.neg):
            continue
        if not all(p in state for p in law.pos):
            continue
        if isinstance(law.head, Falsum):
            return False
        if law.head not in state:
            return False
    return True


# ---------------------------------------------------------------------------
# Successors


def _next_stage_clauses(idx: _RuleIndex, state: State, action: ActionAtom):
    """Compile every law into its stage-(k+1) remainder for one transition.

    Body literals about the current stage are resolved against ``state``; a
    law whose current-stage part fails is dropped.  Each clause is
    ``(pos, neg, head)`` over next-stage literals, with ``None`` standing for
    an inconsistent head.
    """
    clauses: list[tuple[tuple[Lit, ...], tuple[Lit, ...], Lit | None]] = []
    for law in itertools.chain(
        idx.by_action.get(action, ()), idx.preconditions.get(action, ())
    ):
        skip = False
        pos: list[Lit] = []
        neg: list[Lit] = []
        for p in law.pos:
            if isinstance(p, Lit):
                if p not in state:
                    skip = True
                    break
            elif isinstance(p.what, Falsum):
                skip = True
                break
            else:
                pos.append(p.what)
        if skip:
            continue
        for n in law.neg:
            if isinstance(n, Lit):
                if n in state:
                    skip = True
                    break
            elif isinstance(n.what, Falsum):
                continue
            else:
                neg.append(n.what)
        if skip:
            continue
        head = law.head.what if isinstance(law.head.what, Lit) else None
        clauses.append((tuple(pos), tuple(neg), head))
    for law in idx.dynamic:
        skip = False
        pos = []
        neg = []
        for p in law.pos:
            if isinstance(p, Lit):
                if p not in state:
                    skip = True
                    break
            else:
                pos.append(p.lit)
        if skip:
            continue
        for n in law.neg:
            if isinstance(n, Lit):
                if n in state:
                    skip = True
                    break
            else:
                neg.append(n.lit)
        if skip:
            continue
        clauses.append((tuple(pos), tuple(neg), law.head.lit))
    for law in idx.static:
        head = law.head if isinstance(law.head, Lit) else None
        clauses.append((tuple(law.pos), tuple(law.neg), head))
    return clauses


def successors(
    theory: TranslatedTheory, state: State, action: ActionAtom
) -> tuple[tuple[State, ...], bool]:
    """Successor states of ``state`` under ``action``, plus a blocked flag.

    Candidates fix every unaffected frame fluent to its current value and
    search over the fluents an applicable law could change (action-law heads
    for this action, dynamic and static causal heads, nonframe fluents).
    The search assigns one volatile fluent at a time and prunes a branch as
    soon as a fully-decided law instance is violated or a fluent has flipped
    with no law left that could cause the new value.  Surviving assignments
    still pass the one-step reduct/least-model check.  ``blocked`` reports
    that an executability law for the action fired on the current state
    alone.
    """
    idx = _index(theory)
    for law in idx.preconditions.get(action, ()):
        if all(isinstance(b, Lit) for b in law.body_items()):
            if all(p in state for p in law.pos) and not any(
                n in state for n in law.neg
            ):
                return (), True
    volatile = idx.volatile_for(action, state)
    volatile_set = set(volatile)
    base = [
        Lit(atom, Lit(atom) in state)
        for atom in theory.simple_atoms
        if atom not in volatile_set
    ]

    chosen: dict[Atom, bool] = {}

    def val(lit: Lit):
        return idx._lit_3val(lit, state, volatile_set, chosen)

    watch: dict[Atom, list] = {a: [] for a in volatile}
    support: dict[Lit, list] = {}
    for clause in _next_stage_clauses(idx, state, action):
        pos, neg, head = clause
        touched: set[Atom] = set()
        for l in itertools.chain(pos, neg, () if head is None else (head,)):
            touched.update(idx.influence_atoms(l, volatile_set))
        if not touched:
            # fully decided by persisting fluents: a violation rules out
            # every candidate at once
            if (
                all(val(l) for l in pos)
                and not any(val(l) for l in neg)
                and (head is None or not val(head))
            ):
                return (), False
            continue
        for a in touched:
            watch[a].append(clause)
        if head is not None:
            support.setdefault(head, []).append(clause)

    def clause_violated(clause) -> bool:
        pos, neg, head = clause
        if head is not None:
            hv = val(head)
            if hv is None or hv:
                return False
        for l in pos:
            if val(l) is not True:
                return False
        for l in neg:
            if val(l) is not False:
                return False
        return True

    def causable(lit: Lit) -> bool:
        for pos, neg, _ in support.get(lit, ()):
            if all(val(l) is not False for l in pos) and not any(
                val(l) is True for l in neg
            ):
                return True
        return False

    out: list[State] = []
    flipped: list[Lit] = []

    def assign(i: int) -> None:
        if i == len(volatile):
            simple = list(base)
            simple.extend(Lit(a, chosen[a]) for a in volatile)
            candidate = derive_closure(simple, theory)
            if _one_step_ok(theory, idx, state, action, candidate):
                out.append(candidate)
            return
        atom = volatile[i]
        persisted = Lit(atom) in state
        for value in (persisted, not persisted):
            chosen[atom] = value
            is_flip = value != persisted
            ok = not any(clause_violated(c) for c in watch[atom])
            if ok and is_flip:
                ok = causable(Lit(atom, value))
            if ok:
                ok = all(causable(l) for l in flipped)
            if ok:
                if is_flip:
                    flipped.append(Lit(atom, value))
                assign(i + 1)
                if is_flip:
                    flipped.pop()
        del chosen[atom]

    assign(0)
    return tuple(sorted(out, key=state_key)), False


def _one_step_ok(
    theory: TranslatedTheory,
    idx: _RuleIndex,
    state: State,
    action: ActionAtom,
    candidate: State,
) -> bool:
    """Local answer-set condition for one transition.

    Builds the stage-local reduct (default negation resolved against the
    current state for body literals about it and against the candidate for
    successor literals), then closes the positive remainder; the candidate is
    accepted when the closure derives exactly the candidate's literals.
    """
    derived: set[Lit] = set()
    rules: list[tuple[tuple, object]] = []
    for law in idx.by_action.get(action, []) + idx.preconditions.get(action, []):
        ok = True
        for n in law.neg:
            if isinstance(n, Lit):
                if n in state:
                    ok = False
                    break
            elif isinstance(n, After):
                if isinstance(n.what, Falsum):
                    continue
                if n.what in candidate:
                    ok = False
                    break
        if not ok:
            continue
        needs: list[Lit] = []
        applicable = True
        for p in law.pos:
            if isinstance(p, Lit):
                if p not in state:
                    applicable = False
                    break
            elif isinstance(p, After):
                needs.append(p.what)
        if not applicable:
            continue
        head = law.head.what if isinstance(law.head.what, Lit) else FALSUM
        rules.append((tuple(needs), head))
    for law in idx.dynamic:
        ok = True
        for n in law.neg:
            if isinstance(n, Lit):
                if n in state:
                    ok = False
                    break
            else:
                if n.lit in candidate:
                    ok = False
                    break
        if not ok:
            continue
        needs = []
        applicable = True
        for p in law.pos:
            if isinstance(p, Lit):
                if p not in state:
                    applicable = False
                    break
            else:
                needs.append(p.lit)
        if not applicable:
            continue
        rules.append((tuple(needs), law.head.lit))
    for law in idx.static:
        if any(n in candidate for n in law.neg):
            continue
        rules.append((tuple(law.pos), law.head))

    pending = rules
    changed = True
    while changed:
        changed = False
        keep = []
        for needs, head in pending:
            if all(n in derived for n in needs):
                if isinstance(head, Falsum):
                    return False
                if head not in candidate:
                    return False
                if head not in derived:
                    derived.add(head)
                    changed = True
            else:
                keep.append((needs, head))
        pending = keep
    return derived == set(candidate)


# ---------------------------------------------------------------------------
# Program matching


@dataclass
class _Nfa:
    start: int
    accept: int
    eps: dict
    steps: dict
    can_continue: dict


@lru_cache(maxsize=None)
def _compile(prog: Program) -> _Nfa:
    eps: dict[int, set[int]] = {}
    steps: dict[int, list[tuple[ActionAtom, int]]] = {}
    counter = itertools.count()

    def fresh() -> int:
        n = next(counter)
        eps.setdefault(n, set())
        steps.setdefault(n, [])
        return n

    def build(p: Program) -> tuple[int, int]:
        if isinstance(p, PAtom):
            s, t = fresh(), fresh()
            steps[s].append((p.action, t))
            return s, t
        if isinstance(p, PSeq):
            s1, t1 = build(p.left)
            s2, t2 = build(p.right)
            eps[t1].add(s2)
            return s1, t2
        if isinstance(p, PChoice):
            s, t = fresh(), fresh()
            s1, t1 = build(p.left)
            s2, t2 = build(p.right)
            eps[s].update((s1, s2))
            eps[t1].add(t)
            eps[t2].add(t)
            return s, t
        if isinstance(p, PStar):
            s, t = fresh(), fresh()
            s1, t1 = build(p.inner)
            eps[s].update((s1, t))
            eps[t1].update((s1, t))
            return s, t
        raise TypeError(f"not a program: {p!r}")

    start, accept = build(prog)
    # backward reachability to the accepting state through any transitions
    nodes = list(eps)
    back: dict[int, set[int]] = {n: set() for n in nodes}
    for n in nodes:
        for m in eps[n]:
            back[m].add(n)
        for _, m in steps[n]:
            back[m].add(n)
    reach = {accept}
    frontier = [accept]
    while frontier:
        n = frontier.pop()
        for m in back[n]:
            if m not in reach:
                reach.add(m)
                frontier.append(m)
    # states that can still accept after consuming at least one more action;
    # being at the accepting state is not enough to count as pending
    seeds = {n for n in nodes if any(t in reach for _, t in steps[n])}
    cont = set(seeds)
    frontier = list(seeds)
    while frontier:
        n = frontier.pop()
        for m in back[n]:
            if m not in cont:
                cont.add(m)
                frontier.append(m)
    can_continue = {n: (n in cont) for n in nodes}
    return _Nfa(start, accept, eps, steps, can_continue)


def _closure(nfa: _Nfa, states: set[int]) -> set[int]:
    out = set(states)
    frontier = list(states)
    while frontier:
        n = frontier.pop()
        for m in nfa.eps[n]:
            if m not in out:
                out.add(m)
                frontier.append(m)
    return out


def match_positions(trace: Trace, i: int, prog: Program) -> frozenset:
    """Positions ``j >= i`` such that the actions from ``i`` to ``j`` spell a
    word of the program.  Test actions participate like ordinary actions."""
    nfa = _compile(prog)
    cur = _closure(nfa, {nfa.start})
    out = set()
    if nfa.accept in cur:
        out.add(i)
    for p in range(i, trace.horizon):
        cur = _closure(
            nfa, {t for n in cur for a, t in nfa.steps[n] if a == trace.actions[p]}
        )
        if not cur:
            break
        if nfa.accept in cur:
            out.add(p + 1)
    return frozenset(out)


def _alive_at_horizon(trace: Trace, i: int, prog: Program) -> bool:
    """Whether the program could still complete past the end of the trace:
    some run consumes every remaining action and can go on to accept after
    at least one further action."""
    nfa = _compile(prog)
    cur = _closure(nfa, {nfa.start})
    for p in range(i, trace.horizon):
        cur = _closure(
            nfa, {t for n in cur for a, t in nfa.steps[n] if a == trace.actions[p]}
        )
        if not cur:
            return False
    return any(nfa.can_continue[n] for n in cur)


# ---------------------------------------------------------------------------
# Constraint formulas


def expand_formula(f: Formula, sigma: Sequence[ActionAtom]) -> Formula:
    """Rewrite the derived operators into indexed until.

    Next becomes until over the one-step choice of all actions, eventually
    over its star; box is the dual of diamond.  With an empty alphabet the
    one-step programs have no words, so next is unsatisfiable and
    eventually/always collapse to the current position.
    """
    any_step = None
    acts = sorted(sigma, key=action_key)
    for a in acts:
        atom = PAtom(a)
        any_step = atom if any_step is None else PChoice(any_step, atom)

    def go(f: Formula) -> Formula:
        if isinstance(f, (FTrue, FLit)):
            return f
        if isinstance(f, FNot):
            return FNot(go(f.sub))
        if isinstance(f, FAnd):
            return FAnd(go(f.left), go(f.right))
        if isinstance(f, FOr):
            return FOr(go(f.left), go(f.right))
        if isinstance(f, FUntil):
            return FUntil(go(f.left), f.prog, go(f.right))
        if isinstance(f, FDiamond):
            return FUntil(TRUE, f.prog, go(f.sub))
        if isinstance(f, FBox):
            return FNot(FUntil(TRUE, f.prog, FNot(go(f.sub))))
        if isinstance(f, FNext):
            if any_step is None:
                return FNot(TRUE)
            return FUntil(TRUE, any_step, go(f.sub))
        if isinstance(f, FEventually):
            if any_step is None:
                return go(f.sub)
            return FUntil(TRUE, PStar(any_step), go(f.sub))
        if isinstance(f, FAlways):
            if any_step is None:
                return go(f.sub)
            return FNot(FUntil(TRUE, PStar(any_step), FNot(go(f.sub))))
        raise TypeError(f"not a formula: {f!r}")

    return go(f)


def eval_formula(
    trace: Trace,
    i: int,
    formula: Formula,
    sigma: Sequence[ActionAtom] = (),
    weak: bool = False,
) -> bool:
    """Truth of a constraint formula at position ``i``.

    Strong semantics: an until needs its witness position within the trace.
    Weak semantics additionally accepts an until whose program can still
    complete past the horizon while the left argument holds to the end.
    """
    f = expand_formula(formula, sigma)

    def ev(f: Formula, i: int) -> bool:
        if isinstance(f, FTrue):
            return True
        if isinstance(f, FLit):
            return f.lit in trace.states[i]
        if isinstance(f, FNot):
            return not ev(f.sub, i)
        if isinstance(f, FAnd):
            return ev(f.left, i) and ev(f.right, i)
        if isinstance(f, FOr):
            return ev(f.left, i) or ev(f.right, i)
        if isinstance(f, FUntil):
            for j in sorted(match_positions(trace, i, f.prog)):
                if ev(f.right, j) and all(ev(f.left, k) for k in range(i, j)):
                    return True
            if weak and _alive_at_horizon(trace, i, f.prog):
                if all(ev(f.left, k) for k in range(i, trace.horizon + 1)):
                    return True
            return False
        raise TypeError(f"unexpanded formula: {f!r}")

    return ev(f, i)


# ---------------------------------------------------------------------------
# Extensions


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("ELTAS_WORKERS", "1")))
    except ValueError:
        return 1


def extensions(
    theory: TranslatedTheory,
    horizon: int,
    upto: bool = False,
    weak: bool = False,
) -> Iterator[Trace]:
    """Yield every extension of the theory with the given horizon.

    Traces appear in lexicographic order of their action names and state
    patterns.  With ``upto``, shorter traces are yielded as they are reached.
    Every trace passes the global answer-set check, is total, and satisfies
    all constraint formulas.
    """
    inits = initial_states(theory)
    workers = _workers()
    if workers > 1 and len(inits) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(
                lambda w0: list(_extend(theory, Trace((w0,)), horizon, upto, weak)),
                inits,
            )
            for chunk in chunks:
                yield from chunk
        return
    for w0 in inits:
        yield from _extend(theory, Trace((w0,)), horizon, upto, weak)


def _extend(
    theory: TranslatedTheory, trace: Trace, horizon: int, upto: bool, weak: bool
) -> Iterator[Trace]:
    depth = trace.horizon
    if depth == horizon or upto:
        if _accept(theory, trace, weak):
            yield trace
    if depth == horizon:
        return
    last = trace.states[-1]
    for action in theory.actions:
        succs, _ = successors(theory, last, action)
        for w in succs:
            yield from _extend(
                theory,
                Trace(trace.states + (w,), trace.actions + (action,)),
                horizon,
                upto,
                weak,
            )


def _accept(theory: TranslatedTheory, trace: Trace, weak: bool) -> bool:
    if not is_total(trace, theory):
        return False
    if not is_temporal_answer_set(trace, theory.ground_laws):
        return False
    return all(
        eval_formula(trace, 0, f, theory.actions, weak) for f in theory.constraints
    )


def traces_along(
    theory: TranslatedTheory,
    seq: Sequence[ActionAtom],
    weak: bool = False,
) -> tuple[tuple[Trace, ...], bool]:
    """All extensions whose action sequence is exactly ``seq``.

    The second component reports that the walk died at a step where every
    frontier state had the next action blocked by an executability law.
    """
    frontier = [Trace((w,)) for w in initial_states(theory)]
    for action in seq:
        new: list[Trace] = []
        all_blocked = bool(frontier)
        for t in frontier:
            succs, blocked = successors(theory, t.states[-1], action)
            if not blocked:
                all_blocked = False
            for w in succs:
                new.append(Trace(t.states + (w,), t.actions + (action,)))
        if not new:
            return (), all_blocked
        frontier = new
    accepted = tuple(t for t in frontier if _accept(theory, t, weak))
    return accepted, False
