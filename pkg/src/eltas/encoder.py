"""Compilation of a knowledge base and action domain into ground laws.

The translation produces several law families, each tagged with a provenance:

* ``lang1``..``lang9``: laws that give the ontology predicates their meaning
  in every state (bottom is inconsistent, top is everywhere, nominals name
  themselves and behave congruently, existential-concept atoms are derived
  from role and filler atoms).
* ``tbox``: one state constraint per normal axiom and constant, forbidding
  states that violate the axiom (strict mode).
* ``repair``: causal laws that propagate axiom consequences instead of
  forbidding violations, so action effects ripple through the ontology
  (repair mode).
* ``abox``: initial-state constraints requiring the asserted literals.
* ``persistency``/``nonframe``/``completion``: inertia, oscillation and
  initial-choice laws for every ground simple fluent.
* ``test``: executability laws for test actions compiled out of programs.

All emitted laws are ground; only user rules go through `ground_program`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import el
from .el import (
    And,
    Axiom,
    Bot,
    Concept,
    ConceptAssertion,
    EltasError,
    Exists,
    Interpretation,
    KnowledgeBase,
    Name,
    Nominal,
    RoleAssertion,
    Top,
    TOP,
    BOT,
    concept_key,
    extension_of,
    is_base_concept,
)
from .action import (
    ActionAtom,
    ActionDecl,
    After,
    Atom,
    AuxExists,
    DomainDescription,
    FALSUM,
    Falsum,
    Formula,
    Lit,
    NextLit,
    Plain,
    Role,
    Rule,
    RuleKind,
    Var,
    WellDefinedReport,
    classify_rule,
    constraint_constants,
    formula_actions,
    formula_literals,
    ground_actions,
    ground_program,
    lit_key,
    plain_predicates,
    rule_constants,
    rule_literals,
    test_action,
)
from .normalizer import FRESH_PREFIX, is_normal, is_normal_tbox


class EncodingError(EltasError):
    pass


class ComplexAssertionError(EncodingError):
    """An ABox assertion mentions a non-base concept; normalize first."""


# ---------------------------------------------------------------------------
# Signature


@dataclass(frozen=True)
class OntologySignature:
    """Everything the translation needs to know about the vocabulary.

    ``individuals`` are the KB's own individual names; ``aux`` the constants
    invented for right-hand existential axioms; ``universe`` the full constant
    pool (individuals, aux, and constants appearing in laws or constraints).
    ``base`` holds the base concepts and ``exists`` the existential concepts
    that are tracked per state.
    """

    base: tuple[Concept, ...]
    exists: tuple[Exists, ...]
    concept_names: tuple[str, ...]
    roles: tuple[str, ...]
    individuals: tuple[str, ...]
    aux: tuple[str, ...]
    universe: tuple[str, ...]


def aux_individuals(tbox: Iterable[Axiom]) -> dict[Axiom, str]:
    """One fresh constant per axiom of shape ``B1 sub (r some B2)``."""
    out: dict[Axiom, str] = {}
    counter = 0
    for ax in tbox:
        if isinstance(ax.rhs, Exists):
            counter += 1
            out[ax] = f"aux{counter}"
    return out


def build_signature(
    kb: KnowledgeBase,
    extra_constants: Iterable[str] = (),
    full_exists: bool = False,
    extra_concepts: Iterable[str] = (),
    extra_roles: Iterable[str] = (),
    extra_individuals: Iterable[str] = (),
    extra_exists: Iterable[Exists] = (),
) -> OntologySignature:
    """Signature of the KB vocabulary, widened by names used elsewhere.

    The extra names come from the action domain: a concept declared in the
    knowledge base but mentioned only by laws still needs its per-state atoms.
    """
    if not is_normal_tbox(kb.tbox):
        raise EncodingError("knowledge base must be in normal form")
    aux = tuple(aux_individuals(kb.tbox).values())
    inds = tuple(sorted(set(el.individuals(kb)) | set(extra_individuals)))
    universe = tuple(sorted(set(inds) | set(aux) | set(extra_constants)))
    roles = tuple(sorted(set(el.role_names(kb)) | set(extra_roles)))
    cnames = tuple(sorted(set(el.concept_names(kb)) | set(extra_concepts)))
    base_list: list[Concept] = [TOP]
    base_list.extend(Name(n) for n in cnames)
    base_list.extend(Nominal(a) for a in inds)
    base = tuple(sorted(base_list, key=concept_key))
    if full_exists:
        pairs = tuple(
            Exists(r, b)
            for r in roles
            for b in base
        )
        pairs = tuple(sorted(pairs, key=concept_key))
    else:
        pairs = tuple(
            sorted(set(el.exists_pairs(kb)) | set(extra_exists), key=concept_key)
        )
    return OntologySignature(
        base=base,
        exists=pairs,
        concept_names=cnames,
        roles=roles,
        individuals=inds,
        aux=aux,
        universe=universe,
    )


def ontology_vocabulary(
    dd: DomainDescription,
) -> tuple[set[str], set[str], set[str], set[Exists]]:
    """Ontology predicates used directly by the laws and constraints.

    Returns concept names, role names, individual names, and existential
    concepts.  Parsing resolves any name declared in the knowledge base, so
    a law may mention a concept no axiom or assertion uses; those names still
    need per-state atoms.
    """
    names: set[str] = set()
    roles: set[str] = set()
    inds: set[str] = set()
    pairs: set[Exists] = set()

    def from_filler(filler) -> None:
        if isinstance(filler, Name):
            names.add(filler.name)
        elif isinstance(filler, Nominal):
            inds.add(filler.individual)

    for lit in itertools.chain(
        rule_literals(dd.rules), formula_literals(dd.constraints)
    ):
        pred = lit.atom.pred
        if isinstance(pred, Name):
            names.add(pred.name)
        elif isinstance(pred, Nominal):
            inds.add(pred.individual)
        elif isinstance(pred, Role):
            roles.add(pred.name)
        elif isinstance(pred, AuxExists):
            roles.add(pred.role)
            from_filler(pred.filler)
            pairs.add(Exists(pred.role, pred.filler))
        elif isinstance(pred, Exists):
            roles.add(pred.role)
            from_filler(pred.filler)
            if is_base_concept(pred.filler):
                pairs.add(pred)
    return names, roles, inds, pairs


def domain_signature(
    dd: DomainDescription, full_exists: bool = False
) -> OntologySignature:
    """The signature `encode_all` works over: the KB vocabulary widened by
    the names and constants the laws and constraints use."""
    extra = sorted(rule_constants(dd.rules) | constraint_constants(dd.constraints))
    names, roles, inds, pairs = ontology_vocabulary(dd)
    return build_signature(
        dd.kb,
        extra_constants=extra,
        full_exists=full_exists,
        extra_concepts=names,
        extra_roles=roles,
        extra_individuals=inds,
        extra_exists=pairs,
    )


def _clit(concept: Concept, term, positive: bool = True) -> Lit:
    return Lit(Atom(concept, (term,)), positive)


def _rlit(role: str, s, o, positive: bool = True) -> Lit:
    return Lit(Atom(Role(role), (s, o)), positive)


def _xlit(pair: Exists, term, positive: bool = True) -> Lit:
    return Lit(Atom(AuxExists(pair.role, pair.filler), (term,)), positive)


# ---------------------------------------------------------------------------
# Language laws


def encode_language_laws(sig: OntologySignature) -> tuple[Rule, ...]:
    """Ground laws fixing the behavior of the ontology predicates per state."""
    out: list[Rule] = []
    u = sig.universe
    for x in u:
        out.append(Rule(FALSUM, pos=(_clit(BOT, x),), provenance="lang1"))
    for x in u:
        out.append(Rule(_clit(TOP, x), provenance="lang2"))
    for a in sig.individuals:
        out.append(Rule(_clit(Nominal(a), a), provenance="lang3"))
    for pair in sig.exists:
        for x in u:
            for y in u:
                out.append(
                    Rule(
                        _xlit(pair, x),
                        pos=(_rlit(pair.role, x, y), _clit(pair.filler, y)),
                        provenance="lang4",
                    )
                )
    for pair in sig.exists:
        for x in u:
            out.append(
                Rule(_clit(pair, x), pos=(_xlit(pair, x),), provenance="lang5")
            )
            out.append(
                Rule(
                    _clit(pair, x, positive=False),
                    neg=(_xlit(pair, x),),
                    provenance="lang6",
                )
            )
    for a in sig.individuals:
        nom = Nominal(a)
        for x in u:
            if x == a:
                continue
            for b in sig.base:
                out.append(
                    Rule(
                        FALSUM,
                        pos=(_clit(nom, x), _clit(b, x)),
                        neg=(_clit(b, a),),
                        provenance="lang7",
                    )
                )
                out.append(
                    Rule(
                        FALSUM,
                        pos=(_clit(nom, x), _clit(b, a)),
                        neg=(_clit(b, x),),
                        provenance="lang8",
                    )
                )
    for a in sig.individuals:
        nom = Nominal(a)
        for x in u:
            if x == a:
                continue
            for z in u:
                for r in sig.roles:
                    out.append(
                        Rule(
                            FALSUM,
                            pos=(_clit(nom, x), _rlit(r, z, x)),
                            neg=(_rlit(r, z, a),),
                            provenance="lang9",
                        )
                    )
    return tuple(out)


# ---------------------------------------------------------------------------
# TBox state constraints and ABox initial constraints


def _axiom_shape(ax: Axiom) -> int:
    """Template index 1-4 of a normal axiom."""
    if isinstance(ax.lhs, Exists):
        return 4
    if isinstance(ax.rhs, Exists):
        return 3
    if isinstance(ax.lhs, And):
        return 2
    return 1


def encode_tbox_constraints(
    tbox: Iterable[Axiom], sig: OntologySignature
) -> tuple[Rule, ...]:
    """One constraint per axiom and per KB/aux constant.

    The ``not D(x)`` condition is dropped when the right-hand side is bottom,
    leaving the body positive.
    """
    out: list[Rule] = []
    consts = tuple(sorted(set(sig.individuals) | set(sig.aux)))
    for ax in tbox:
        if not is_normal(ax):
            raise EncodingError(f"axiom not in normal form: {ax!r}")
        shape = _axiom_shape(ax)
        for x in consts:
            pos: list[Lit] = []
            neg: list[Lit] = []
            if shape == 1:
                pos.append(_clit(ax.lhs, x))
            elif shape == 2:
                pos.append(_clit(ax.lhs.left, x))
                pos.append(_clit(ax.lhs.right, x))
            elif shape == 3:
                pos.append(_clit(ax.lhs, x))
                neg.append(_clit(ax.rhs, x))
            else:
                pos.append(_clit(ax.lhs, x))
            if shape != 3 and not isinstance(ax.rhs, Bot):
                neg.append(_clit(ax.rhs, x))
            out.append(Rule(FALSUM, pos=tuple(pos), neg=tuple(neg), provenance="tbox"))
    return out and tuple(out) or ()


def encode_abox_constraints(abox: Iterable) -> tuple[Rule, ...]:
    """Initial-state constraints requiring every asserted literal to hold."""
    out: list[Rule] = []
    for a in abox:
        if isinstance(a, ConceptAssertion):
            if not is_base_concept(a.concept):
                raise ComplexAssertionError(
                    f"assertion {a!r} must be normalized away first"
                )
            out.append(
                Rule(
                    FALSUM,
                    neg=(_clit(a.concept, a.individual),),
                    always=False,
                    provenance="abox",
                )
            )
        elif isinstance(a, RoleAssertion):
            out.append(
                Rule(
                    FALSUM,
                    neg=(_rlit(a.role, a.subject, a.object),),
                    always=False,
                    provenance="abox",
                )
            )
        else:
            raise EncodingError(f"unknown assertion {a!r}")
    return tuple(out)


# ---------------------------------------------------------------------------
# Repair laws


CONJ_CHOICES = ("dropA", "dropB", "both")
EXISTS_CHOICES = ("dropRole", "dropFiller", "both")


@dataclass(frozen=True)
class RepairPolicy:
    """Which contrapositive direction to emit for ambiguous axiom shapes.

    Conjunction axioms ``B1 and B2 sub D`` can retract the left conjunct
    (``dropA``), the right (``dropB``) or try both; left-hand existential
    axioms ``(r some B) sub D`` can retract the role edge (``dropRole``), the
    filler membership (``dropFiller``) or both.  ``overrides`` maps an axiom's
    index in the normalized TBox to a choice.
    """

    conj_default: str = "dropA"
    exists_default: str = "dropRole"
    overrides: Mapping[int, str] = field(default_factory=dict)

    def conj_choice(self, index: int) -> str:
        choice = self.overrides.get(index, self.conj_default)
        if choice not in CONJ_CHOICES:
            raise EncodingError(
                f"axiom {index}: conjunction repair must be one of {CONJ_CHOICES}"
            )
        return choice

    def exists_choice(self, index: int) -> str:
        choice = self.overrides.get(index, self.exists_default)
        if choice not in EXISTS_CHOICES:
            raise EncodingError(
                f"axiom {index}: existential repair must be one of {EXISTS_CHOICES}"
            )
        return choice


def _neg_side(concept: Concept, x) -> tuple[Lit, ...]:
    """Body condition ``-D(x)``, empty when D is bottom (never satisfiable
    positively, so the contrapositive fires unconditionally)."""
    if isinstance(concept, Bot):
        return ()
    return (_clit(concept, x, positive=False),)


def _forward_head(concept: Concept, x):
    return FALSUM if isinstance(concept, Bot) else _clit(concept, x)


def encode_repair_laws(
    tbox: tuple[Axiom, ...],
    sig: OntologySignature,
    policy: RepairPolicy | None = None,
) -> tuple[Rule, ...]:
    """Causal laws that push axiom consequences into successor states.

    Every axiom gets a forward law deriving its right-hand side and one or
    more contrapositive laws retracting part of its left-hand side when the
    right-hand side has been explicitly denied.
    """
    policy = policy or RepairPolicy()
    aux_map = aux_individuals(tbox)
    out: list[Rule] = []
    u = sig.universe

    def emit(head, pos=(), neg=()):
        out.append(Rule(head, pos=tuple(pos), neg=tuple(neg), provenance="repair"))

    for index, ax in enumerate(tbox):
        shape = _axiom_shape(ax)
        if shape == 1:
            for x in u:
                emit(_forward_head(ax.rhs, x), pos=(_clit(ax.lhs, x),))
                emit(
                    _clit(ax.lhs, x, positive=False),
                    pos=_neg_side(ax.rhs, x),
                )
        elif shape == 2:
            choice = policy.conj_choice(index)
            left, right = ax.lhs.left, ax.lhs.right
            for x in u:
                emit(_forward_head(ax.rhs, x), pos=(_clit(left, x), _clit(right, x)))
                if choice in ("dropA", "both"):
                    emit(
                        _clit(left, x, positive=False),
                        pos=_neg_side(ax.rhs, x) + (_clit(right, x),),
                    )
                if choice in ("dropB", "both"):
                    emit(
                        _clit(right, x, positive=False),
                        pos=_neg_side(ax.rhs, x) + (_clit(left, x),),
                    )
        elif shape == 3:
            aux = aux_map[ax]
            pair = ax.rhs
            for x in u:
                emit(_rlit(pair.role, x, aux), pos=(_clit(ax.lhs, x),))
                emit(_clit(pair.filler, aux), pos=(_clit(ax.lhs, x),))
                emit(
                    _clit(ax.lhs, x, positive=False),
                    pos=(_clit(pair, x, positive=False),),
                )
        else:
            choice = policy.exists_choice(index)
            pair = ax.lhs
            for x in u:
                emit(_forward_head(ax.rhs, x), pos=(_clit(pair, x),))
                emit(
                    _clit(pair, x, positive=False),
                    pos=_neg_side(ax.rhs, x),
                )
            for x in u:
                for y in u:
                    if choice in ("dropRole", "both"):
                        emit(
                            _rlit(pair.role, x, y, positive=False),
                            pos=_neg_side(ax.rhs, x) + (_clit(pair.filler, y),),
                        )
                    if choice in ("dropFiller", "both"):
                        emit(
                            _clit(pair.filler, y, positive=False),
                            pos=_neg_side(ax.rhs, x) + (_rlit(pair.role, x, y),),
                        )
    return tuple(out)


# ---------------------------------------------------------------------------
# Frame axioms, completion, inventories


def simple_atom_inventory(sig: OntologySignature, plains: Iterable[Plain]) -> tuple[Atom, ...]:
    """Every ground simple fluent atom: concept names, nominals, roles over
    the universe, plus plain fluents.  Top, bottom and the derived existential
    predicates are excluded; they are recomputed in every state."""
    out: list[Atom] = []
    u = sig.universe
    for name in sig.concept_names:
        for x in u:
            out.append(Atom(Name(name), (x,)))
    for a in sig.individuals:
        for x in u:
            out.append(Atom(Nominal(a), (x,)))
    for r in sig.roles:
        for x in u:
            for y in u:
                out.append(Atom(Role(r), (x, y)))
    for p in sorted(set(plains), key=lambda p: (p.name, p.arity)):
        if p.arity == 0:
            out.append(Atom(p))
        else:
            for combo in itertools.product(u, repeat=p.arity):
                out.append(Atom(p, combo))
    return tuple(out)


def effective_plains(dd: DomainDescription) -> set[Plain]:
    """Plain fluents occurring in rules, plus zero-arity fluents brought into
    existence by a frame or nonframe declaration of an otherwise unknown name.
    The latter lets a domain declare a fluent without writing any law for it."""
    plains = set(plain_predicates(dd))
    names, roles, _, _ = ontology_vocabulary(dd)
    known = (
        set(el.concept_names(dd.kb))
        | set(el.role_names(dd.kb))
        | names
        | roles
        | {p.name for p in plains}
    )
    for name, _ in dd.frame_decls:
        if name not in known:
            plains.add(Plain(name, 0))
            known.add(name)
    return plains


def resolve_frame(
    sig: OntologySignature,
    plains: Iterable[Plain],
    frame_decls: Iterable[tuple[str, bool]],
) -> tuple[dict, list[str]]:
    """Resolve frame/nonframe declarations to predicates.

    Nominal predicates and fresh normalization names are always frame; every
    other simple fluent predicate must be declared exactly once.  Returns the
    predicate table and a list of problems.
    """
    problems: list[str] = []
    decls: dict[str, bool] = {}
    for name, is_frame in frame_decls:
        if name in decls:
            if decls[name] != is_frame:
                problems.append(f"predicate {name} declared both frame and nonframe")
            else:
                problems.append(f"predicate {name} declared frame/nonframe twice")
            continue
        decls[name] = is_frame
    table: dict = {}
    known: dict[str, object] = {}
    for name in sig.concept_names:
        known[name] = Name(name)
    for r in sig.roles:
        known[r] = Role(r)
    for p in set(plains):
        known[p.name] = p
    for name, pred in sorted(known.items()):
        if isinstance(pred, Name) and name.startswith(FRESH_PREFIX):
            table[pred] = True
            continue
        if name in decls:
            table[pred] = decls.pop(name)
        else:
            problems.append(f"predicate {name} has no frame/nonframe declaration")
    for a in sig.individuals:
        table[Nominal(a)] = True
    for name in decls:
        problems.append(f"frame declaration for unknown predicate {name}")
    return table, problems


def encode_frame_axioms(
    atoms: Iterable[Atom], frame_table: Mapping
) -> tuple[Rule, ...]:
    """Inertia and initial-choice laws for every ground simple fluent.

    A frame fluent persists in both polarities unless the opposite value is
    caused; a nonframe fluent may take either value at every step.  The
    completion pair makes both initial values available, so initial states
    are exactly the complete consistent valuations closed under the static
    laws.
    """
    out: list[Rule] = []
    for atom in atoms:
        pos = Lit(atom)
        neg = Lit(atom, False)
        if frame_table.get(atom.pred, True):
            out.append(
                Rule(
                    NextLit(pos),
                    pos=(pos,),
                    neg=(NextLit(neg),),
                    provenance="persistency",
                )
            )
            out.append(
                Rule(
                    NextLit(neg),
                    pos=(neg,),
                    neg=(NextLit(pos),),
                    provenance="persistency",
                )
            )
        else:
            out.append(
                Rule(NextLit(pos), neg=(NextLit(neg),), provenance="nonframe")
            )
            out.append(
                Rule(NextLit(neg), neg=(NextLit(pos),), provenance="nonframe")
            )
        out.append(Rule(pos, neg=(neg,), always=False, provenance="completion"))
        out.append(Rule(neg, neg=(pos,), always=False, provenance="completion"))
    return tuple(out)


# ---------------------------------------------------------------------------
# Well-definedness


def check_well_defined(dd: DomainDescription) -> WellDefinedReport:
    """Verify that the domain declares inertia for every simple fluent.

    Checks that every concept name, role and plain fluent has exactly one
    frame/nonframe declaration, that declarations do not name unknown
    predicates, and that every rule is well-formed.
    """
    problems: list[str] = []
    try:
        sig = domain_signature(dd)
    except EncodingError as exc:
        return WellDefinedReport(False, (str(exc),))
    _, frame_problems = resolve_frame(sig, effective_plains(dd), dd.frame_decls)
    problems.extend(frame_problems)
    from .action import validate_rule, MalformedRuleError, UnsafeRuleError

    declared = {d.name: d.arity for d in dd.actions}
    for rule in dd.rules:
        try:
            validate_rule(rule)
        except (MalformedRuleError, UnsafeRuleError) as exc:
            problems.append(str(exc))
        for item in itertools.chain([rule.head], rule.body_items()):
            if isinstance(item, After) and item.action.test is None:
                if item.action.name not in declared:
                    problems.append(f"undeclared action {item.action.name}")
                elif declared[item.action.name] != len(item.action.args):
                    problems.append(
                        f"action {item.action.name} used with wrong arity"
                    )
    return WellDefinedReport(not problems, tuple(problems))


# ---------------------------------------------------------------------------
# Full translation


@dataclass(frozen=True, eq=False)
class TranslatedTheory:
    """The ground theory a solver works on.

    ``ground_laws`` carries every law with its provenance tag; ``actions`` is
    the ground action alphabet including test actions; ``simple_atoms`` is the
    inventory used for totality and initial-state enumeration.  Instances
    compare by identity so solvers can key caches on them.
    """

    ground_laws: tuple[Rule, ...]
    constraints: tuple[Formula, ...]
    universe: tuple[str, ...]
    sig: OntologySignature
    actions: tuple[ActionAtom, ...]
    simple_atoms: tuple[Atom, ...]
    frame_table: Mapping
    mode: str = "strict"
    kb_present: bool = True

    def laws_tagged(self, provenance: str) -> tuple[Rule, ...]:
        return tuple(r for r in self.ground_laws if r.provenance == provenance)


def encode_all(
    dd: DomainDescription,
    mode: str = "strict",
    policy: RepairPolicy | None = None,
    full_exists: bool = False,
) -> TranslatedTheory:
    """Compile a domain description into a ground `TranslatedTheory`.

    ``mode`` selects strict TBox state constraints or repair causal laws.
    Raises EncodingError when the KB is not normal or the domain is not
    well-defined.
    """
    if mode not in ("strict", "repair"):
        raise EncodingError(f"unknown mode {mode!r}")
    report = check_well_defined(dd)
    if not report.ok:
        raise EncodingError("; ".join(report.problems))
    sig = domain_signature(dd, full_exists=full_exists)
    plains = effective_plains(dd)
    ontology_used = not dd.kb.is_empty() or bool(
        sig.concept_names or sig.roles or sig.individuals or sig.exists
    )
    laws: list[Rule] = []
    laws.extend(ground_program(dd.rules, sig.universe))
    tests = sorted(
        {
            act
            for f in dd.constraints
            for act in formula_actions(f)
            if act.test is not None
        },
        key=lambda a: repr(a.test),
    )
    for t in tests:
        laws.append(
            Rule(
                After(t, FALSUM),
                neg=(t.test,),
                provenance="test",
            )
        )
    if ontology_used:
        laws.extend(encode_language_laws(sig))
        if mode == "strict":
            laws.extend(encode_tbox_constraints(dd.kb.tbox, sig))
        else:
            laws.extend(encode_repair_laws(dd.kb.tbox, sig, policy))
        laws.extend(encode_abox_constraints(dd.kb.abox))
    atoms = simple_atom_inventory(sig, plains)
    frame_table, problems = resolve_frame(sig, plains, dd.frame_decls)
    if problems:
        raise EncodingError("; ".join(problems))
    laws.extend(encode_frame_axioms(atoms, frame_table))
    sigma = tuple(ground_actions(dd.actions, sig.universe)) + tuple(tests)
    return TranslatedTheory(
        ground_laws=tuple(laws),
        constraints=tuple(dd.constraints),
        universe=sig.universe,
        sig=sig,
        actions=sigma,
        simple_atoms=atoms,
        frame_table=frame_table,
        mode=mode,
        kb_present=ontology_used,
    )


# ---------------------------------------------------------------------------
# States as interpretations


@dataclass(frozen=True)
class InducedResult:
    interpretation: Interpretation | None
    witness: Lit | None = None

    @property
    def ok(self) -> bool:
        return self.interpretation is not None


def induced_interpretation(state: Iterable[Lit], sig: OntologySignature) -> InducedResult:
    """Read a state as an interpretation over the constant universe.

    Constants are identified when a nominal atom links them; the quotient's
    class representatives form the domain.  The result must agree with the
    state: every positive assertion in it is satisfied and every explicitly
    negated one falsified.  On disagreement the offending literal is returned
    instead (no interpretation can then agree with the state).
    """
    lits = set(state)
    parent: dict[str, str] = {c: c for c in sig.universe}

    def find(c: str) -> str:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            ra, rb = sorted((ra, rb))
            parent[rb] = ra

    for lit in lits:
        if lit.positive and isinstance(lit.atom.pred, Nominal):
            union(lit.atom.pred.individual, lit.atom.args[0])
    domain = frozenset(find(c) for c in sig.universe)
    concept_ext: dict[str, set] = {n: set() for n in sig.concept_names}
    role_ext: dict[str, set] = {r: set() for r in sig.roles}
    for lit in lits:
        if not lit.positive:
            continue
        pred = lit.atom.pred
        if isinstance(pred, Name):
            concept_ext.setdefault(pred.name, set()).add(find(lit.atom.args[0]))
        elif isinstance(pred, Role):
            role_ext.setdefault(pred.name, set()).add(
                (find(lit.atom.args[0]), find(lit.atom.args[1]))
            )
    interp = Interpretation(
        domain=domain,
        concept_ext={n: frozenset(v) for n, v in concept_ext.items()},
        role_ext={r: frozenset(v) for r, v in role_ext.items()},
        ind_map={c: find(c) for c in sig.universe},
    )
    for lit in sorted(lits, key=lit_key):
        pred = lit.atom.pred
        if isinstance(pred, AuxExists):
            continue
        if isinstance(pred, (Plain,)):
            continue
        if isinstance(pred, Role):
            pair = (find(lit.atom.args[0]), find(lit.atom.args[1]))
            holds = pair in interp.role_ext.get(pred.name, frozenset())
        else:
            holds = find(lit.atom.args[0]) in extension_of(pred, interp)
        if holds != lit.positive:
            return InducedResult(None, lit)
    return InducedResult(interp, None)


def state_satisfies_tbox(
    state: Iterable[Lit], tbox: Iterable[Axiom], sig: OntologySignature
) -> bool:
    """Whether the state's induced interpretation satisfies every axiom.

    A state no interpretation agrees with is reported as not satisfying.
    """
    result = induced_interpretation(state, sig)
    if not result.ok:
        return False
    return all(el.satisfies_axiom(result.interpretation, ax) for ax in tbox)
