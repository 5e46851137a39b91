"""Lightweight description logic core: concepts, knowledge bases, interpretations.

The concept language has conjunction, existential restriction, nominals and the
top/bottom concepts; there is no negation, disjunction or universal restriction.
Knowledge bases pair a TBox (inclusion axioms) with an ABox (concept and role
assertions).  Interpretations use the standard set-theoretic semantics, and the
module provides a brute-force model enumerator over bounded domains that acts
as the semantic ground truth for the rest of the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class EltasError(Exception):
    """Base class for errors raised by this package."""


class BudgetExceededError(EltasError):
    """Raised when a bounded enumeration would exceed its work budget."""


# ---------------------------------------------------------------------------
# Concepts


class Concept:
    """Base class for concept expressions.  Instances are immutable."""

    __slots__ = ()


@dataclass(frozen=True, repr=False)
class Top(Concept):
    __slots__ = ()

    def __repr__(self) -> str:
        return "top"


@dataclass(frozen=True, repr=False)
class Bot(Concept):
    __slots__ = ()

    def __repr__(self) -> str:
        return "bot"


@dataclass(frozen=True, repr=False)
class Name(Concept):
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, repr=False)
class Nominal(Concept):
    individual: str

    def __repr__(self) -> str:
        return "{%s}" % self.individual


@dataclass(frozen=True, repr=False)
class And(Concept):
    left: Concept
    right: Concept

    def __repr__(self) -> str:
        return f"({self.left!r} and {self.right!r})"


@dataclass(frozen=True, repr=False)
class Exists(Concept):
    role: str
    filler: Concept

    def __repr__(self) -> str:
        return f"({self.role} some {self.filler!r})"


TOP = Top()
BOT = Bot()


def concept_key(c: Concept) -> tuple:
    """Deterministic sort key giving concepts a total order."""
    if isinstance(c, Top):
        return (0,)
    if isinstance(c, Bot):
        return (1,)
    if isinstance(c, Name):
        return (2, c.name)
    if isinstance(c, Nominal):
        return (3, c.individual)
    if isinstance(c, Exists):
        return (4, c.role, concept_key(c.filler))
    if isinstance(c, And):
        return (5, concept_key(c.left), concept_key(c.right))
    raise TypeError(f"not a concept: {c!r}")


def is_base_concept(c: Concept) -> bool:
    """Base concepts are top, concept names and nominals."""
    return isinstance(c, (Top, Name, Nominal))


def subconcepts(c: Concept) -> Iterator[Concept]:
    """Yield every subconcept occurrence of ``c``, including ``c`` itself.

    Occurrences are yielded once per syntactic position, so the number of
    items equals the node count of the concept tree.
    """
    yield c
    if isinstance(c, And):
        yield from subconcepts(c.left)
        yield from subconcepts(c.right)
    elif isinstance(c, Exists):
        yield from subconcepts(c.filler)


# ---------------------------------------------------------------------------
# Knowledge bases


@dataclass(frozen=True)
class Axiom:
    """Concept inclusion ``lhs sub rhs``."""

    lhs: Concept
    rhs: Concept

    def __repr__(self) -> str:
        return f"{self.lhs!r} sub {self.rhs!r}"


@dataclass(frozen=True)
class ConceptAssertion:
    concept: Concept
    individual: str

    def __repr__(self) -> str:
        return f"{self.concept!r}({self.individual})"


@dataclass(frozen=True)
class RoleAssertion:
    role: str
    subject: str
    object: str

    def __repr__(self) -> str:
        return f"{self.role}({self.subject},{self.object})"


Assertion = ConceptAssertion | RoleAssertion


@dataclass(frozen=True)
class KnowledgeBase:
    """A TBox plus an ABox, with optionally declared extra vocabulary.

    The ``declared_*`` tuples carry names introduced by explicit declarations
    rather than by occurrence in an axiom or assertion; the accessor functions
    below merge both sources.  They are kept in sorted, deduplicated form.
    """

    tbox: tuple[Axiom, ...] = ()
    abox: tuple[Assertion, ...] = ()
    declared_concepts: tuple[str, ...] = ()
    declared_roles: tuple[str, ...] = ()
    declared_individuals: tuple[str, ...] = ()

    def __post_init__(self):
        for f in ("declared_concepts", "declared_roles", "declared_individuals"):
            object.__setattr__(self, f, tuple(sorted(set(getattr(self, f)))))

    def is_empty(self) -> bool:
        return not self.tbox and not self.abox


def concept_names(kb: KnowledgeBase) -> tuple[str, ...]:
    found: set[str] = set(kb.declared_concepts)
    for c in _all_concepts(kb):
        for sc in subconcepts(c):
            if isinstance(sc, Name):
                found.add(sc.name)
    return tuple(sorted(found))


def role_names(kb: KnowledgeBase) -> tuple[str, ...]:
    found: set[str] = set(kb.declared_roles)
    for c in _all_concepts(kb):
        for sc in subconcepts(c):
            if isinstance(sc, Exists):
                found.add(sc.role)
    for a in kb.abox:
        if isinstance(a, RoleAssertion):
            found.add(a.role)
    return tuple(sorted(found))


def individuals(kb: KnowledgeBase) -> tuple[str, ...]:
    """Individual names declared or occurring in the knowledge base, sorted."""
    found: set[str] = set(kb.declared_individuals)
    for c in _all_concepts(kb):
        for sc in subconcepts(c):
            if isinstance(sc, Nominal):
                found.add(sc.individual)
    for a in kb.abox:
        if isinstance(a, ConceptAssertion):
            found.add(a.individual)
        else:
            found.add(a.subject)
            found.add(a.object)
    return tuple(sorted(found))


def base_concepts(kb: KnowledgeBase) -> tuple[Concept, ...]:
    """Top, every concept name of the KB, and one nominal per KB individual."""
    out: list[Concept] = [TOP]
    out.extend(Name(n) for n in concept_names(kb))
    out.extend(Nominal(a) for a in individuals(kb))
    return tuple(sorted(out, key=concept_key))


def exists_pairs(kb: KnowledgeBase) -> tuple[Exists, ...]:
    """Existential restrictions over base fillers occurring in the KB."""
    found: set[Exists] = set()
    for c in _all_concepts(kb):
        for sc in subconcepts(c):
            if isinstance(sc, Exists) and is_base_concept(sc.filler):
                found.add(sc)
    return tuple(sorted(found, key=concept_key))


def subconcept_occurrences(tbox: Iterable[Axiom]) -> int:
    """Total node count of all concept trees in the TBox."""
    return sum(
        sum(1 for _ in subconcepts(ax.lhs)) + sum(1 for _ in subconcepts(ax.rhs))
        for ax in tbox
    )


def _all_concepts(kb: KnowledgeBase) -> Iterator[Concept]:
    for ax in kb.tbox:
        yield ax.lhs
        yield ax.rhs
    for a in kb.abox:
        if isinstance(a, ConceptAssertion):
            yield a.concept


# ---------------------------------------------------------------------------
# Interpretations


@dataclass(frozen=True, eq=True)
class Interpretation:
    """A finite interpretation.

    ``domain`` is a nonempty frozenset of elements; ``concept_ext`` maps each
    concept name to the set of its members, ``role_ext`` maps each role name
    to a set of (subject, object) pairs, and ``ind_map`` sends each individual
    name to a domain element.
    """

    domain: frozenset
    concept_ext: Mapping[str, frozenset]
    role_ext: Mapping[str, frozenset]
    ind_map: Mapping[str, object]


def extension_of(concept: Concept, interp: Interpretation) -> frozenset:
    """The set of domain elements that belong to ``concept``.

    Top denotes the whole domain and bottom the empty set; a nominal denotes
    the singleton of its individual; conjunction intersects; an existential
    restriction collects the elements with at least one role successor in the
    filler's extension.  Unlisted concept names denote the empty set.
    """
    if isinstance(concept, Top):
        return interp.domain
    if isinstance(concept, Bot):
        return frozenset()
    if isinstance(concept, Name):
        return frozenset(interp.concept_ext.get(concept.name, frozenset()))
    if isinstance(concept, Nominal):
        if concept.individual not in interp.ind_map:
            raise EltasError(f"individual {concept.individual} not interpreted")
        return frozenset({interp.ind_map[concept.individual]})
    if isinstance(concept, And):
        return extension_of(concept.left, interp) & extension_of(concept.right, interp)
    if isinstance(concept, Exists):
        filler = extension_of(concept.filler, interp)
        pairs = interp.role_ext.get(concept.role, frozenset())
        return frozenset(x for x, y in pairs if y in filler)
    raise TypeError(f"not a concept: {concept!r}")


def satisfies_axiom(interp: Interpretation, axiom: Axiom) -> bool:
    return extension_of(axiom.lhs, interp) <= extension_of(axiom.rhs, interp)


def satisfies_assertion(interp: Interpretation, assertion: Assertion) -> bool:
    if isinstance(assertion, ConceptAssertion):
        return interp.ind_map[assertion.individual] in extension_of(
            assertion.concept, interp
        )
    pair = (interp.ind_map[assertion.subject], interp.ind_map[assertion.object])
    return pair in interp.role_ext.get(assertion.role, frozenset())


def is_model(interp: Interpretation, kb: KnowledgeBase) -> bool:
    return all(satisfies_axiom(interp, ax) for ax in kb.tbox) and all(
        satisfies_assertion(interp, a) for a in kb.abox
    )


# ---------------------------------------------------------------------------
# Bounded model enumeration
#
# Interpretations over a domain {0,..,n-1} are represented internally as bit
# masks: a concept extension is an int, a role extension is a tuple of n ints
# (successor mask per element).  This keeps exhaustive enumeration cheap
# enough to serve as an oracle for the normalizer and the encoder.

DEFAULT_ENUMERATION_BUDGET = 5_000_000


@dataclass(frozen=True)
class _RawInterp:
    n: int
    concept_masks: Mapping[str, int]
    role_rows: Mapping[str, tuple[int, ...]]
    ind_map: Mapping[str, int]


def _raw_extension(concept: Concept, raw: _RawInterp) -> int:
    if isinstance(concept, Top):
        return (1 << raw.n) - 1
    if isinstance(concept, Bot):
        return 0
    if isinstance(concept, Name):
        return raw.concept_masks.get(concept.name, 0)
    if isinstance(concept, Nominal):
        return 1 << raw.ind_map[concept.individual]
    if isinstance(concept, And):
        return _raw_extension(concept.left, raw) & _raw_extension(concept.right, raw)
    if isinstance(concept, Exists):
        filler = _raw_extension(concept.filler, raw)
        rows = raw.role_rows.get(concept.role)
        if rows is None:
            return 0
        out = 0
        for x in range(raw.n):
            if rows[x] & filler:
                out |= 1 << x
        return out
    raise TypeError(f"not a concept: {concept!r}")


def _raw_satisfies_tbox(tbox: Iterable[Axiom], raw: _RawInterp) -> bool:
    for ax in tbox:
        if _raw_extension(ax.lhs, raw) & ~_raw_extension(ax.rhs, raw):
            return False
    return True


def _raw_satisfies_abox(abox: Iterable[Assertion], raw: _RawInterp) -> bool:
    for a in abox:
        if isinstance(a, ConceptAssertion):
            if not (_raw_extension(a.concept, raw) >> raw.ind_map[a.individual]) & 1:
                return False
        else:
            rows = raw.role_rows.get(a.role)
            if rows is None:
                return False
            if not (rows[raw.ind_map[a.subject]] >> raw.ind_map[a.object]) & 1:
                return False
    return True


def _enumeration_size(n: int, n_concepts: int, n_roles: int, n_inds: int) -> int:
    return (n**n_inds) * (2 ** (n * n_concepts)) * (2 ** (n * n * n_roles))


def _iter_raw(
    concepts: tuple[str, ...],
    roles: tuple[str, ...],
    inds: tuple[str, ...],
    max_domain: int,
    budget: int,
) -> Iterator[_RawInterp]:
    total = sum(
        _enumeration_size(n, len(concepts), len(roles), len(inds))
        for n in range(1, max_domain + 1)
    )
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate interpretations exceed budget {budget}"
        )
    for n in range(1, max_domain + 1):
        full_rows = itertools.product(range(1 << n), repeat=n)
        row_choices = list(full_rows)
        for ind_assign in itertools.product(range(n), repeat=len(inds)):
            ind_map = dict(zip(inds, ind_assign))
            for cmasks in itertools.product(range(1 << n), repeat=len(concepts)):
                concept_masks = dict(zip(concepts, cmasks))
                for rrows in itertools.product(row_choices, repeat=len(roles)):
                    yield _RawInterp(n, concept_masks, dict(zip(roles, rrows)), ind_map)


def _publish(raw: _RawInterp) -> Interpretation:
    domain = frozenset(range(raw.n))
    concept_ext = {
        name: frozenset(x for x in range(raw.n) if (mask >> x) & 1)
        for name, mask in raw.concept_masks.items()
    }
    role_ext = {
        name: frozenset(
            (x, y) for x in range(raw.n) for y in range(raw.n) if (rows[x] >> y) & 1
        )
        for name, rows in raw.role_rows.items()
    }
    return Interpretation(domain, concept_ext, role_ext, dict(raw.ind_map))


def enumerate_models(
    kb: KnowledgeBase,
    max_domain: int = 4,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Iterator[Interpretation]:
    """Yield every model of ``kb`` with domain size up to ``max_domain``.

    Enumeration covers all interpretations of the KB's signature over domains
    {0}, {0,1}, ... and filters by modelhood.  Raises BudgetExceededError
    before yielding anything if the candidate count exceeds ``budget``.
    """
    concepts = concept_names(kb)
    roles = role_names(kb)
    inds = individuals(kb)
    for raw in _iter_raw(concepts, roles, inds, max_domain, budget):
        if _raw_satisfies_tbox(kb.tbox, raw) and _raw_satisfies_abox(kb.abox, raw):
            yield _publish(raw)


def count_models(
    kb: KnowledgeBase,
    max_domain: int = 4,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> int:
    return sum(1 for _ in enumerate_models(kb, max_domain, budget))
