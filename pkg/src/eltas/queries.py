"""Executability and projection queries over a translated theory.

Both queries walk the trace frontier along a fixed action sequence.  An
executability query asks whether some extension performs exactly that
sequence; a projection query additionally checks a goal literal in the final
state of every such extension.  Verdicts distinguish a sequence that cannot
even be attempted (an executability law blocks it) from one that merely has
no consistent outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .el import Axiom, Bot, Exists
from .action import ActionAtom, After, Atom, Lit, Rule, RuleKind, classify_rule
from .encoder import OntologySignature, TranslatedTheory, _axiom_shape, _clit
from .solver import (
    State,
    Trace,
    derive_closure,
    state_key,
    traces_along,
)


@dataclass(frozen=True)
class Violation:
    """A TBox axiom instance a state fails: which axiom, at which constant,
    and which of the four constraint templates caught it."""

    axiom: Axiom
    constant: str
    template: int

    def __repr__(self) -> str:
        return f"axiom [{self.axiom!r}] violated at {self.constant} (template {self.template})"


@dataclass(frozen=True)
class QueryResult:
    verdict: str
    witnesses: tuple[Trace, ...] = ()
    countermodel: Trace | None = None
    diagnostics: tuple[Violation, ...] = ()


def diagnose_state(
    state: Iterable[Lit], tbox: Iterable[Axiom], sig: OntologySignature
) -> tuple[Violation, ...]:
    """Every axiom/constant pair whose state constraint fires on ``state``.

    Constraints are instantiated over the KB and auxiliary constants; the
    membership tests mirror the bodies of the per-axiom templates.
    """
    lits = set(state)
    consts = tuple(sorted(set(sig.individuals) | set(sig.aux)))
    out: list[Violation] = []

    def holds(concept, x) -> bool:
        return _clit(concept, x) in lits

    for ax in tbox:
        shape = _axiom_shape(ax)
        for x in consts:
            if shape == 1:
                fired = holds(ax.lhs, x)
            elif shape == 2:
                fired = holds(ax.lhs.left, x) and holds(ax.lhs.right, x)
            elif shape == 3:
                fired = holds(ax.lhs, x) and not holds(ax.rhs, x)
            else:
                fired = holds(ax.lhs, x)
            if shape in (1, 2, 4) and not isinstance(ax.rhs, Bot):
                fired = fired and not holds(ax.rhs, x)
            if fired:
                out.append(Violation(ax, x, shape))
    return tuple(out)


def naive_successor(
    theory: TranslatedTheory, state: State, action: ActionAtom
) -> State:
    """The frame-based update of ``state`` by the direct effects of
    ``action``, ignoring causal propagation and constraints.  Used only to
    explain why no real successor exists."""
    effects: dict[Atom, Lit] = {}
    for law in theory.ground_laws:
        if classify_rule(law) is not RuleKind.ACTION_LAW:
            continue
        if law.head.action != action:
            continue
        simple_pos = [b for b in law.pos if isinstance(b, Lit)]
        simple_neg = [b for b in law.neg if isinstance(b, Lit)]
        if all(b in state for b in simple_pos) and not any(
            b in state for b in simple_neg
        ):
            lit = law.head.what
            effects[lit.atom] = lit
    updated = [
        effects.get(atom, Lit(atom, Lit(atom) in state))
        for atom in theory.simple_atoms
    ]
    return derive_closure(updated, theory)


def _sequence_diagnostics(
    theory: TranslatedTheory, seq: Sequence[ActionAtom], tbox
) -> tuple[Violation, ...]:
    """Explain a failed walk: replay the sequence with naive updates and
    report the first state that violates the TBox."""
    from .solver import initial_states

    if not tbox:
        return ()
    for w0 in initial_states(theory):
        w = w0
        for action in seq:
            w = naive_successor(theory, w, action)
            found = diagnose_state(w, tbox, theory.sig)
            if found:
                return found
    return ()


def executability(
    theory: TranslatedTheory,
    seq: Sequence[ActionAtom],
    tbox=(),
    max_witnesses: int = 10,
    weak: bool = False,
) -> QueryResult:
    """Can the sequence be performed?  ``yes`` with witness extensions when
    some extension has exactly this action sequence, ``notExecutable`` when
    an executability law blocks the walk everywhere, and ``no`` otherwise."""
    traces, blocked = traces_along(theory, seq, weak)
    if traces:
        return QueryResult("yes", witnesses=traces[:max_witnesses])
    if blocked:
        return QueryResult("notExecutable")
    return QueryResult(
        "no", diagnostics=_sequence_diagnostics(theory, seq, tbox)
    )


def projection(
    theory: TranslatedTheory,
    seq: Sequence[ActionAtom],
    goal: Lit,
    tbox=(),
    max_witnesses: int = 10,
    weak: bool = False,
    along: bool = False,
) -> QueryResult:
    """Does ``goal`` hold after the sequence in every extension performing
    it?  ``notExecutable`` when no extension performs the sequence at all;
    otherwise ``yes``, or ``no`` with the first countermodel.  With ``along``
    the goal must hold in every state reached after the first action, not
    just the final one."""
    traces, _ = traces_along(theory, seq, weak)
    if not traces:
        return QueryResult("notExecutable")

    def satisfies(trace) -> bool:
        if along:
            return all(goal in s for s in trace.states[1:])
        return goal in trace.states[-1]

    failing = [t for t in traces if not satisfies(t)]
    if not failing:
        return QueryResult("yes", witnesses=traces[:max_witnesses])
    return QueryResult(
        "no",
        witnesses=tuple(t for t in traces if satisfies(t))[:max_witnesses],
        countermodel=failing[0],
    )
