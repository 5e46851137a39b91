"""Rewriting of TBoxes into the four-shape normal form.

A normal axiom has one of the shapes

    B1 sub D        B1 and B2 sub D        B1 sub (r some B2)        (r some B2) sub D

where B1, B2 are base concepts (top, names, nominals) and D is a base concept
or bottom.  Complex subconcepts are replaced by fresh names linked in a single
direction chosen by the polarity of the position they occupy: a concept E
replaced on a left-hand side gets the linking axiom ``E sub N``, one replaced
on a right-hand side gets ``N sub E``.  The output is a conservative extension
of the input over the original signature, which `conservativity_check`
verifies by bounded model enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .el import (
    And,
    Axiom,
    BOT,
    Bot,
    Concept,
    ConceptAssertion,
    EltasError,
    Exists,
    KnowledgeBase,
    Name,
    Nominal,
    Top,
    _RawInterp,
    _iter_raw,
    _raw_extension,
    _raw_satisfies_tbox,
    DEFAULT_ENUMERATION_BUDGET,
    is_base_concept,
    subconcepts,
)

FRESH_PREFIX = "_n"


class NormalizationError(EltasError):
    pass


@dataclass(frozen=True)
class NormalizationResult:
    """Outcome of `normalize`.

    ``axioms`` are all in normal form; ``fresh`` maps each introduced name to
    the concept it stands for, in introduction order (later entries may
    mention earlier fresh names); ``dropped`` lists input axioms discarded
    because they hold in every interpretation.
    """

    axioms: tuple[Axiom, ...]
    fresh: Mapping[str, Concept]
    dropped: tuple[Axiom, ...] = ()


def is_normal(axiom: Axiom) -> bool:
    """True if the axiom has one of the four normal shapes."""
    lhs, rhs = axiom.lhs, axiom.rhs
    rhs_ok = is_base_concept(rhs) or isinstance(rhs, Bot)
    if is_base_concept(lhs) and rhs_ok:
        return True
    if (
        isinstance(lhs, And)
        and is_base_concept(lhs.left)
        and is_base_concept(lhs.right)
        and rhs_ok
    ):
        return True
    if (
        is_base_concept(lhs)
        and isinstance(rhs, Exists)
        and is_base_concept(rhs.filler)
    ):
        return True
    if (
        isinstance(lhs, Exists)
        and is_base_concept(lhs.filler)
        and rhs_ok
    ):
        return True
    return False


def is_normal_tbox(tbox) -> bool:
    return all(is_normal(ax) for ax in tbox)


def _unsatisfiable(c: Concept) -> bool:
    """Syntactic emptiness: the concept denotes {} in every interpretation."""
    if isinstance(c, Bot):
        return True
    if isinstance(c, And):
        return _unsatisfiable(c.left) or _unsatisfiable(c.right)
    if isinstance(c, Exists):
        return _unsatisfiable(c.filler)
    return False


class _FreshNames:
    def __init__(self, used: set[str]):
        self.used = used
        self.counter = 0
        self.mapping: dict[str, Concept] = {}

    def make(self, origin: Concept) -> Name:
        while True:
            self.counter += 1
            candidate = f"{FRESH_PREFIX}{self.counter}"
            if candidate not in self.used:
                break
        self.used.add(candidate)
        self.mapping[candidate] = origin
        return Name(candidate)


def normalize(tbox) -> NormalizationResult:
    """Rewrite ``tbox`` into normal form.

    Right-hand conjunctions split into one axiom per conjunct without fresh
    names.  Every other complex subconcept in a non-normal position is pulled
    out into a fresh name with a single linking axiom oriented by polarity.
    Axioms that are vacuously true (an unsatisfiable left-hand side, or a
    complex left-hand side under a top right-hand side) are dropped.
    """
    used = set()
    for ax in tbox:
        for c in (ax.lhs, ax.rhs):
            for sc in subconcepts(c):
                if isinstance(sc, Name):
                    used.add(sc.name)
    fresh = _FreshNames(used)
    queue = list(tbox)
    out: list[Axiom] = []
    dropped: list[Axiom] = []
    originals = set(tbox)
    while queue:
        ax = queue.pop(0)
        lhs, rhs = ax.lhs, ax.rhs
        if _unsatisfiable(lhs) or (
            isinstance(rhs, Top) and not is_base_concept(lhs)
        ):
            if ax in originals:
                dropped.append(ax)
            continue
        if isinstance(rhs, And):
            queue.insert(0, Axiom(lhs, rhs.right))
            queue.insert(0, Axiom(lhs, rhs.left))
            continue
        if isinstance(rhs, Exists):
            if _unsatisfiable(rhs.filler):
                queue.insert(0, Axiom(lhs, BOT))
                continue
            if not is_base_concept(rhs.filler):
                n = fresh.make(rhs.filler)
                queue.insert(0, Axiom(n, rhs.filler))
                queue.insert(0, Axiom(lhs, Exists(rhs.role, n)))
                continue
            if not is_base_concept(lhs):
                n = fresh.make(lhs)
                queue.insert(0, Axiom(n, rhs))
                queue.insert(0, Axiom(lhs, n))
                continue
            out.append(ax)
            continue
        # rhs is now a base concept or bottom
        if is_base_concept(lhs) or isinstance(lhs, Bot):
            out.append(ax)
            continue
        if isinstance(lhs, And):
            left, right = lhs.left, lhs.right
            if is_base_concept(left) and is_base_concept(right):
                out.append(ax)
                continue
            if not is_base_concept(left):
                n = fresh.make(left)
                queue.insert(0, Axiom(And(n, right), rhs))
                queue.insert(0, Axiom(left, n))
            else:
                n = fresh.make(right)
                queue.insert(0, Axiom(And(left, n), rhs))
                queue.insert(0, Axiom(right, n))
            continue
        if isinstance(lhs, Exists):
            if is_base_concept(lhs.filler):
                out.append(ax)
                continue
            n = fresh.make(lhs.filler)
            queue.insert(0, Axiom(Exists(lhs.role, n), rhs))
            queue.insert(0, Axiom(lhs.filler, n))
            continue
        raise NormalizationError(f"cannot normalize axiom {ax!r}")
    result = NormalizationResult(tuple(out), dict(fresh.mapping), tuple(dropped))
    for ax in result.axioms:
        if not is_normal(ax):
            raise NormalizationError(f"rewriting left a non-normal axiom: {ax!r}")
    return result


def normalize_kb(kb: KnowledgeBase) -> tuple[KnowledgeBase, Mapping[str, Concept]]:
    """Normalize a whole knowledge base.

    Complex concept assertions C(a) become N(a) plus the axiom N sub C for a
    fresh N, then the TBox (with those linking axioms) is normalized.
    """
    extra_axioms: list[Axiom] = []
    abox: list = []
    used = set()
    for c in [ax.lhs for ax in kb.tbox] + [ax.rhs for ax in kb.tbox] + [
        a.concept for a in kb.abox if isinstance(a, ConceptAssertion)
    ]:
        for sc in subconcepts(c):
            if isinstance(sc, Name):
                used.add(sc.name)
    fresh = _FreshNames(used)
    for a in kb.abox:
        if isinstance(a, ConceptAssertion) and not is_base_concept(a.concept):
            n = fresh.make(a.concept)
            extra_axioms.append(Axiom(n, a.concept))
            abox.append(ConceptAssertion(n, a.individual))
        else:
            abox.append(a)
    result = normalize(tuple(kb.tbox) + tuple(extra_axioms))
    mapping = dict(fresh.mapping)
    mapping.update(result.fresh)
    out = KnowledgeBase(
        result.axioms,
        tuple(abox),
        kb.declared_concepts,
        kb.declared_roles,
        kb.declared_individuals,
    )
    return out, mapping


def conservativity_check(
    original,
    result: NormalizationResult,
    max_domain: int = 4,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> bool:
    """Decide whether ``result`` extends ``original`` conservatively.

    Enumerates every interpretation of the original signature with domain
    size up to ``max_domain`` and extends each one canonically: every fresh
    name receives, in introduction order, the extension of the concept it
    stands for.  The polarity discipline of `normalize` makes that canonical
    value feasible whenever any value is (a fresh name linked from the left
    occurs elsewhere only on left-hand sides, so feasibility is antitone in
    its extension; dually for right-linked names).  The check therefore holds
    exactly when the two TBoxes have the same models over the original
    signature within the bound.
    """
    concepts: set[str] = set()
    roles: set[str] = set()
    inds: set[str] = set()
    for ax in original:
        for c in (ax.lhs, ax.rhs):
            for sc in subconcepts(c):
                if isinstance(sc, Name):
                    concepts.add(sc.name)
                elif isinstance(sc, Exists):
                    roles.add(sc.role)
                elif isinstance(sc, Nominal):
                    inds.add(sc.individual)
    for raw in _iter_raw(
        tuple(sorted(concepts)),
        tuple(sorted(roles)),
        tuple(sorted(inds)),
        max_domain,
        budget,
    ):
        masks = dict(raw.concept_masks)
        extended = _RawInterp(raw.n, masks, raw.role_rows, raw.ind_map)
        for name, origin in result.fresh.items():
            masks[name] = _raw_extension(origin, extended)
        if _raw_satisfies_tbox(original, raw) != _raw_satisfies_tbox(
            result.axioms, extended
        ):
            return False
    return True
