"""Seeded random theories and states for the property suites.

The generated theories stay tiny (at most three concept names, one role, two
individuals, two actions) so that exhaustive solving stays cheap.  Initial
states are pinned with init laws so the initial-state count stays small; one
atom may be left free.  Nominal atoms follow the identity pattern, so no two
constants are merged; merged-constant behavior is covered by handwritten
tests instead.
"""

from __future__ import annotations

import random

from eltas.action import (
    ActionAtom,
    ActionDecl,
    After,
    Atom,
    DomainDescription,
    FALSUM,
    Lit,
    Role,
    Rule,
)
from eltas.el import (
    And,
    Axiom,
    BOT,
    Bot,
    ConceptAssertion,
    Exists,
    KnowledgeBase,
    Name,
    Nominal,
    RoleAssertion,
    TOP,
    Top,
)
from eltas.encoder import aux_individuals
from eltas.normalizer import is_normal_tbox

CONCEPTS = ("a", "b", "c")
INDS = ("i", "j")
ROLE = "r"


def random_kb(rng: random.Random, allow_bot: bool = True):
    concepts = CONCEPTS[: rng.randint(1, 3)]
    inds = INDS[: rng.randint(1, 2)]
    has_role = rng.random() < 0.7
    base = [Name(c) for c in concepts] + [Nominal(a) for a in inds] + [TOP]

    def some_base():
        return rng.choice(base)

    def some_rhs():
        pool = list(base)
        if allow_bot and rng.random() < 0.15:
            return BOT
        return rng.choice(pool)

    tbox = []
    used_shape3 = False
    for _ in range(rng.randint(0, 3)):
        shape = rng.choice((1, 1, 2, 3, 4))
        if shape in (3, 4) and not has_role:
            shape = 1
        if shape == 1:
            tbox.append(Axiom(some_base(), some_rhs()))
        elif shape == 2:
            tbox.append(Axiom(And(some_base(), some_base()), some_rhs()))
        elif shape == 3:
            if used_shape3:
                shape = 1
                tbox.append(Axiom(some_base(), some_rhs()))
            else:
                used_shape3 = True
                tbox.append(Axiom(some_base(), Exists(ROLE, some_base())))
        else:
            tbox.append(Axiom(Exists(ROLE, some_base()), some_rhs()))
    tbox = tuple(tbox)
    assert is_normal_tbox(tbox)
    return tbox, concepts, inds, has_role


def _forward_close(pin: dict, tbox, universe, aux_map) -> bool:
    """Make the assignment satisfy the axioms by forcing right-hand sides
    true, the way the repair laws would.  Returns False when a bottom axiom
    cannot be satisfied by flipping its left side off."""

    def get(concept, x) -> bool:
        if isinstance(concept, Top):
            return True
        if isinstance(concept, Exists):
            return any(
                pin.get(("r", concept.role, x, y), False) and get(concept.filler, y)
                for y in universe
            )
        return pin.get(("c", concept, x), False)

    def put(concept, x, value) -> bool:
        if isinstance(concept, Top):
            return value
        if isinstance(concept, Nominal) and value and x != concept.individual:
            return False  # would merge constants; treat as unsatisfiable here
        pin[("c", concept, x)] = value
        return True

    for _ in range(40):
        changed = False
        for ax in tbox:
            for x in universe:
                lhs = ax.lhs
                if isinstance(lhs, And):
                    fired = get(lhs.left, x) and get(lhs.right, x)
                elif isinstance(lhs, Exists):
                    fired = get(lhs, x)
                else:
                    fired = get(lhs, x)
                if not fired:
                    continue
                rhs = ax.rhs
                if isinstance(rhs, Bot):
                    flipped = _flip_lhs_off(pin, lhs, x, universe)
                    if not flipped:
                        return False
                    changed = True
                    continue
                if isinstance(rhs, Exists):
                    aux = aux_map[ax]
                    if not pin.get(("r", rhs.role, x, aux), False) or not get(
                        rhs.filler, aux
                    ):
                        pin[("r", rhs.role, x, aux)] = True
                        if not put(rhs.filler, aux, True):
                            return False
                        changed = True
                    continue
                if not get(rhs, x):
                    if not put(rhs, x, True):
                        if not _flip_lhs_off(pin, lhs, x, universe):
                            return False
                    changed = True
        if not changed:
            return True
    return False


def _flip_lhs_off(pin: dict, lhs, x, universe) -> bool:
    """Force the left-hand side false at x by clearing one contributing atom."""
    if isinstance(lhs, And):
        return _flip_lhs_off(pin, lhs.left, x, universe)
    if isinstance(lhs, Exists):
        ok = False
        for y in universe:
            if pin.get(("r", lhs.role, x, y), False):
                pin[("r", lhs.role, x, y)] = False
                ok = True
        return ok
    if isinstance(lhs, Top):
        return False
    if isinstance(lhs, Nominal):
        if x == lhs.individual:
            return False
        pin[("c", lhs, x)] = False
        return True
    pin[("c", lhs, x)] = False
    return True


def random_domain(rng: random.Random) -> DomainDescription | None:
    """A pinned, well-defined domain over a small random ontology, or None
    when the sampled combination cannot be made consistent."""
    tbox, concepts, inds, has_role = random_kb(rng)
    aux_map = aux_individuals(tbox)
    universe = tuple(inds) + tuple(sorted(set(aux_map.values())))
    roles = (ROLE,) if has_role else ()

    # sample and repair a total assignment of the simple atoms
    pin: dict = {}
    for c in concepts:
        for x in universe:
            pin[("c", Name(c), x)] = rng.random() < 0.5
    for a in inds:
        for x in universe:
            pin[("c", Nominal(a), x)] = x == a
    for r in roles:
        for x in universe:
            for y in universe:
                pin[("r", r, x, y)] = rng.random() < 0.3
    if not _forward_close(pin, tbox, universe, aux_map):
        return None

    def pin_key(lit: Lit):
        atom = lit.atom
        if isinstance(atom.pred, Role):
            return ("r", atom.pred.name, atom.args[0], atom.args[1])
        return ("c", atom.pred, atom.args[0])

    def random_lit() -> Lit:
        if roles and rng.random() < 0.3:
            x, y = rng.choice(universe), rng.choice(universe)
            return Lit(Atom(Role(ROLE), (x, y)), rng.random() < 0.6)
        c = rng.choice(concepts)
        x = rng.choice(universe)
        return Lit(Atom(Name(c), (x,)), rng.random() < 0.6)

    rules: list[Rule] = []

    # optional static causal law, adjusted so the pinned state satisfies it
    if concepts and rng.random() < 0.3:
        head, body_lit = random_lit(), random_lit()
        body_true = pin[pin_key(body_lit)] == body_lit.positive
        head_true = pin[pin_key(head)] == head.positive
        if body_true and not head_true:
            saved = dict(pin)
            pin[pin_key(head)] = head.positive
            closed = _forward_close(pin, tbox, universe, aux_map)
            satisfied = closed and (
                pin[pin_key(body_lit)] != body_lit.positive
                or pin[pin_key(head)] == head.positive
            )
            if satisfied:
                rules.append(Rule(head, pos=(body_lit,)))
            else:
                pin.clear()
                pin.update(saved)
        else:
            rules.append(Rule(head, pos=(body_lit,)))

    # abox: a couple of facts that the pin makes true
    abox = []
    true_concepts = [
        (c, x)
        for c in concepts
        for x in inds
        if pin[("c", Name(c), x)]
    ]
    rng.shuffle(true_concepts)
    for c, x in true_concepts[: rng.randint(0, 2)]:
        abox.append(ConceptAssertion(Name(c), x))
    if roles:
        true_roles = [
            (x, y)
            for x in inds
            for y in inds
            if pin[("r", ROLE, x, y)]
        ]
        if true_roles and rng.random() < 0.5:
            x, y = rng.choice(true_roles)
            abox.append(RoleAssertion(ROLE, x, y))

    kb = KnowledgeBase(tbox, tuple(abox))

    # actions with ground effect laws over the pinned vocabulary; one law
    # per effect atom so laws for the same action cannot contradict
    n_actions = rng.randint(1, 2)
    actions = tuple(ActionDecl(f"act{k}", 0) for k in range(1, n_actions + 1))
    for decl in actions:
        act = ActionAtom(decl.name, ())
        effect_atoms: set[Atom] = set()
        for _ in range(rng.randint(0, 2)):
            effect = random_lit()
            if effect.atom in effect_atoms:
                continue
            effect_atoms.add(effect.atom)
            body = tuple(random_lit() for _ in range(rng.randint(0, 1)))
            rules.append(Rule(After(act, effect), pos=body))
        if rng.random() < 0.25:
            rules.append(Rule(After(act, FALSUM), pos=(random_lit(),)))

    # pin the initial state, possibly leaving one concept atom free
    free: set = set()
    if concepts and rng.random() < 0.5:
        free.add(("c", Name(rng.choice(concepts)), rng.choice(universe)))
    for key, value in pin.items():
        if key in free:
            continue
        if key[0] == "c":
            _, concept, x = key
            lit = Lit(Atom(concept, (x,)), value)
        else:
            _, r, x, y = key
            lit = Lit(Atom(Role(r), (x, y)), value)
        rules.append(Rule(lit, always=False))

    frame_decls = tuple((c, True) for c in concepts) + tuple(
        (r, rng.random() < 0.9) for r in roles
    )
    return DomainDescription(
        kb=kb,
        actions=actions,
        rules=tuple(rules),
        constraints=(),
        frame_decls=frame_decls,
    )


def random_state(rng: random.Random, theory) -> frozenset:
    """A total consistent coherent state for the theory's signature."""
    from eltas.solver import derive_closure

    simple = []
    for atom in theory.simple_atoms:
        if isinstance(atom.pred, Nominal):
            simple.append(Lit(atom, atom.args[0] == atom.pred.individual))
        else:
            simple.append(Lit(atom, rng.random() < 0.5))
    return derive_closure(simple, theory)
