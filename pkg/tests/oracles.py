"""Reference implementations used to cross-check the package.

Everything here recomputes results from first principles using the most
direct algorithm available, sharing only the data types with the package.
The package's optimized paths (rule indexing, watch-based enumeration,
automaton matching) must agree with these on every input.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from eltas.action import (
    After,
    Atom,
    AuxExists,
    Role,
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
    Falsum,
    Lit,
    NextLit,
    PAtom,
    PChoice,
    PSeq,
    PStar,
    Rule,
)
from eltas.el import (
    And,
    Axiom,
    Bot,
    Exists,
    Name,
    Nominal,
    Top,
)
from eltas.solver import Trace


# ---------------------------------------------------------------------------
# Temporal answer sets, by the book


def holds(item, trace: Trace, k: int) -> bool:
    """Truth of a rule body item at stage k, final stage vacuously true for
    temporal items."""
    h = trace.horizon
    if isinstance(item, Lit):
        return item in trace.states[k]
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
    raise TypeError(item)


def oracle_reduct(laws: Iterable[Rule], trace: Trace) -> list[tuple[int, Rule]]:
    """Stage-instantiated laws surviving default negation, as (stage, law)."""
    out = []
    for law in laws:
        stages = range(trace.horizon + 1) if law.always else (0,)
        for k in stages:
            if any(holds(item, trace, k) for item in law.neg):
                continue
            out.append((k, law))
    return out


def oracle_least_model(pairs: Sequence[tuple[int, Rule]], trace: Trace):
    """Least timed-literal set closed under the positive parts, or None.

    Plain iteration to a fixpoint.  None signals a fired falsum head or a
    complementary pair.
    """
    h = trace.horizon
    derived: set[tuple[int, Lit]] = set()

    def body_ok(law: Rule, k: int) -> bool:
        for item in law.pos:
            if isinstance(item, Lit):
                if (k, item) not in derived:
                    return False
            elif isinstance(item, After):
                if k == h or trace.actions[k] != item.action:
                    continue
                if isinstance(item.what, Falsum):
                    return False
                if (k + 1, item.what) not in derived:
                    return False
            elif isinstance(item, NextLit):
                if k == h:
                    continue
                if (k + 1, item.lit) not in derived:
                    return False
        return True

    changed = True
    while changed:
        changed = False
        for k, law in pairs:
            if not body_ok(law, k):
                continue
            head = law.head
            if isinstance(head, Falsum):
                return None
            if isinstance(head, Lit):
                new = (k, head)
            elif isinstance(head, After):
                if k == h or trace.actions[k] != head.action:
                    continue
                if isinstance(head.what, Falsum):
                    return None
                new = (k + 1, head.what)
            elif isinstance(head, NextLit):
                if k == h:
                    continue
                new = (k + 1, head.lit)
            else:
                raise TypeError(head)
            if new not in derived:
                derived.add(new)
                changed = True
    for k, lit in derived:
        if (k, lit.negated()) in derived:
            return None
    return derived


def oracle_is_answer_set(trace: Trace, laws: Iterable[Rule]) -> bool:
    model = oracle_least_model(oracle_reduct(laws, trace), trace)
    if model is None:
        return False
    timed = {
        (k, lit) for k, state in enumerate(trace.states) for lit in state
    }
    return model == timed


# ---------------------------------------------------------------------------
# State closure and exhaustive trace enumeration


def oracle_close(simple: Iterable[Lit], theory) -> frozenset:
    """A full state from a simple-literal assignment: add top atoms and both
    flavors of existential atom, by direct appeal to the definitions."""
    lits = set(simple)
    if theory.kb_present:
        for x in theory.universe:
            lits.add(Lit(Atom(Top(), (x,))))
    for pair in theory.sig.exists:
        for x in theory.universe:
            witness = None
            for y in theory.universe:
                if Lit(Atom(Role(pair.role), (x, y))) not in lits:
                    continue
                if _filler_true(pair.filler, y, lits):
                    witness = y
                    break
            if witness is None:
                lits.add(Lit(Atom(pair, (x,)), False))
            else:
                lits.add(Lit(Atom(AuxExists(pair.role, pair.filler), (x,))))
                lits.add(Lit(Atom(pair, (x,))))
    return frozenset(lits)


def _filler_true(filler, y: str, lits: set) -> bool:
    if isinstance(filler, Top):
        return True
    return Lit(Atom(filler, (y,))) in lits


def oracle_extensions(theory, horizon: int, weak: bool = False) -> set:
    """Every extension, found by brute force over all total state sequences
    and action sequences.  Returns canonical (actions, states) pairs."""
    atoms = theory.simple_atoms
    all_states = []
    for bits in itertools.product((True, False), repeat=len(atoms)):
        simple = [Lit(a, b) for a, b in zip(atoms, bits)]
        all_states.append(oracle_close(simple, theory))
    found = set()
    for acts in itertools.product(theory.actions, repeat=horizon):
        for states in itertools.product(all_states, repeat=horizon + 1):
            trace = Trace(tuple(states), tuple(acts))
            if not oracle_is_answer_set(trace, theory.ground_laws):
                continue
            if not all(
                oracle_eval(trace, 0, f, theory.actions, weak)
                for f in theory.constraints
            ):
                continue
            found.add(canonical(trace))
    return found


def canonical(trace: Trace) -> tuple:
    return (
        tuple(repr(a) for a in trace.actions),
        tuple(frozenset(s) for s in trace.states),
    )


# ---------------------------------------------------------------------------
# Program matching and formula evaluation


def oracle_match(trace: Trace, i: int, prog) -> frozenset:
    """Positions reachable from i by spelling a word of the program, found by
    structural recursion over the program."""

    def go(p, start: int) -> set[int]:
        if isinstance(p, PAtom):
            if start < trace.horizon and trace.actions[start] == p.action:
                return {start + 1}
            return set()
        if isinstance(p, PSeq):
            out: set[int] = set()
            for mid in go(p.left, start):
                out |= go(p.right, mid)
            return out
        if isinstance(p, PChoice):
            return go(p.left, start) | go(p.right, start)
        if isinstance(p, PStar):
            reached = {start}
            frontier = {start}
            while frontier:
                step: set[int] = set()
                for pos in frontier:
                    step |= go(p.inner, pos)
                frontier = step - reached
                reached |= step
            return reached
        raise TypeError(p)

    return frozenset(go(prog, i))


class _EmptyLang:
    """Regular expression denoting no word at all."""


class _EpsLang:
    """Regular expression denoting exactly the empty word."""


_EMPTY = _EmptyLang()
_EPS = _EpsLang()


def _lang_seq(a, b):
    if a is _EMPTY or b is _EMPTY:
        return _EMPTY
    if a is _EPS:
        return b
    if b is _EPS:
        return a
    return PSeq(a, b)


def _lang_choice(a, b):
    if a is _EMPTY:
        return b
    if b is _EMPTY:
        return a
    return PChoice(a, b)


def _nullable(p) -> bool:
    if p is _EPS or isinstance(p, PStar):
        return True
    if p is _EMPTY or isinstance(p, PAtom):
        return False
    if isinstance(p, PSeq):
        return _nullable(p.left) and _nullable(p.right)
    if isinstance(p, PChoice):
        return _nullable(p.left) or _nullable(p.right)
    raise TypeError(p)


def _derivative(p, action):
    """Brzozowski derivative: the words of p that start with the action,
    with that first action removed."""
    if p is _EMPTY or p is _EPS:
        return _EMPTY
    if isinstance(p, PAtom):
        return _EPS if p.action == action else _EMPTY
    if isinstance(p, PSeq):
        d = _lang_seq(_derivative(p.left, action), p.right)
        if _nullable(p.left):
            d = _lang_choice(d, _derivative(p.right, action))
        return d
    if isinstance(p, PChoice):
        return _lang_choice(_derivative(p.left, action),
                            _derivative(p.right, action))
    if isinstance(p, PStar):
        return _lang_seq(_derivative(p.inner, action), p)
    raise TypeError(p)


def _has_nonempty_word(p) -> bool:
    if p is _EMPTY or p is _EPS:
        return False
    if isinstance(p, PAtom):
        return True
    if isinstance(p, PChoice):
        return _has_nonempty_word(p.left) or _has_nonempty_word(p.right)
    if isinstance(p, PStar):
        return _has_nonempty_word(p.inner)
    if isinstance(p, PSeq):
        left_some = _nullable(p.left) or _has_nonempty_word(p.left)
        right_some = _nullable(p.right) or _has_nonempty_word(p.right)
        if not (left_some and right_some):
            return False
        return _has_nonempty_word(p.left) or _has_nonempty_word(p.right)
    raise TypeError(p)


def _prefix_alive(trace: Trace, i: int, prog) -> bool:
    """Whether the actions from i to the end spell a proper prefix of some
    word of the program (so the program could still finish past the end).
    Computed by taking word derivatives along the remaining actions."""
    residual = prog
    for action in trace.actions[i:]:
        residual = _derivative(residual, action)
        if residual is _EMPTY:
            return False
    return _has_nonempty_word(residual)


def oracle_eval(trace, i, f, sigma=(), weak: bool = False) -> bool:
    acts = sorted(sigma, key=repr)

    def any_step():
        prog = None
        for a in acts:
            prog = PAtom(a) if prog is None else PChoice(prog, PAtom(a))
        return prog

    def ev(f, i: int) -> bool:
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
        if isinstance(f, FDiamond):
            return until(TRUE_, f.prog, f.sub, i)
        if isinstance(f, FBox):
            return not until(TRUE_, f.prog, FNot(f.sub), i)
        if isinstance(f, FNext):
            step = any_step()
            if step is None:
                return False
            return until(TRUE_, step, f.sub, i)
        if isinstance(f, FEventually):
            step = any_step()
            if step is None:
                return ev(f.sub, i)
            return until(TRUE_, PStar(step), f.sub, i)
        if isinstance(f, FAlways):
            step = any_step()
            if step is None:
                return ev(f.sub, i)
            return not until(TRUE_, PStar(step), FNot(f.sub), i)
        if isinstance(f, FUntil):
            return until(f.left, f.prog, f.right, i)
        raise TypeError(f)

    def until(left, prog, right, i: int) -> bool:
        for j in sorted(oracle_match(trace, i, prog)):
            if ev(right, j) and all(ev(left, k) for k in range(i, j)):
                return True
        if weak and _prefix_alive(trace, i, prog):
            if all(ev(left, k) for k in range(i, trace.horizon + 1)):
                return True
        return False

    TRUE_ = FTrue()
    return ev(f, i)


# ---------------------------------------------------------------------------
# Description logic checks


def concept_members(concept, state_lits: set, universe) -> set:
    """Extension of a concept read directly off a state's literals."""
    if isinstance(concept, Top):
        return set(universe)
    if isinstance(concept, Bot):
        return set()
    if isinstance(concept, (Name, Nominal)):
        return {
            x for x in universe if Lit(Atom(concept, (x,))) in state_lits
        }
    if isinstance(concept, And):
        return concept_members(concept.left, state_lits, universe) & concept_members(
            concept.right, state_lits, universe
        )
    if isinstance(concept, Exists):
        out = set()
        fillers = concept_members(concept.filler, state_lits, universe)
        for x in universe:
            for y in universe:
                if Lit(Atom(Role(concept.role), (x, y))) in state_lits and y in fillers:
                    out.add(x)
                    break
        return out
    raise TypeError(concept)


def oracle_satisfies_tbox(state: Iterable[Lit], tbox, universe) -> bool:
    """Axiom satisfaction by direct subset tests over literal membership.

    No quotienting: assumes the state does not merge nominals.
    """
    lits = set(state)
    for ax in tbox:
        lhs = concept_members(ax.lhs, lits, universe)
        rhs = concept_members(ax.rhs, lits, universe)
        if not lhs <= rhs:
            return False
    return True


def oracle_conservative(original, normalized, max_domain: int = 2) -> bool:
    """Conservativity by full enumeration over the extended signature.

    Compares the projections of the normalized TBox's models onto the
    original signature with the original TBox's models.
    """
    from eltas.el import (
        KnowledgeBase,
        concept_names,
        enumerate_models,
        individuals,
        role_names,
    )

    okb = KnowledgeBase(tuple(original), ())
    nkb = KnowledgeBase(tuple(normalized), ())
    sig = (concept_names(okb), role_names(okb), individuals(okb))
    orig_models = {_project(m, sig) for m in enumerate_models(okb, max_domain)}
    norm_models = {_project(m, sig) for m in enumerate_models(nkb, max_domain)}
    return orig_models == norm_models


def _project(interp, sig) -> tuple:
    concepts, roles, inds = sig
    return (
        len(interp.domain),
        tuple(frozenset(interp.concept_ext.get(c, frozenset())) for c in concepts),
        tuple(frozenset(interp.role_ext.get(r, frozenset())) for r in roles),
        tuple(sorted((a, interp.ind_map[a]) for a in inds if a in interp.ind_map)),
    )
