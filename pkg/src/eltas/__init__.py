"""Temporal answer set reasoning over action domains with an EL-style
ontology: normalize the ontology, compile it into causal laws and state
constraints, enumerate bounded extensions, and answer executability and
projection queries."""

from .el import (
    And,
    Axiom,
    BOT,
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
    TOP,
    Top,
    base_concepts,
    concept_names,
    count_models,
    enumerate_models,
    exists_pairs,
    individuals,
    is_base_concept,
    role_names,
    subconcepts,
)
from .normalizer import (
    NormalizationResult,
    conservativity_check,
    is_normal,
    is_normal_tbox,
    normalize,
    normalize_kb,
)
from .action import (
    ActionAtom,
    ActionDecl,
    After,
    Atom,
    AuxExists,
    DomainDescription,
    FALSUM,
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
    ground_program,
    test_action,
    validate_rule,
)
from .encoder import (
    RepairPolicy,
    TranslatedTheory,
    build_signature,
    check_well_defined,
    encode_all,
    induced_interpretation,
    simple_atom_inventory,
    state_satisfies_tbox,
)
from .solver import (
    Trace,
    eval_formula,
    extensions,
    initial_states,
    is_temporal_answer_set,
    least_model,
    match_positions,
    reduct,
    successors,
    traces_along,
)
from .queries import QueryResult, Violation, diagnose_state, executability, projection
from .parser import (
    ParseError,
    format_kb,
    format_rule,
    format_state,
    parse_adl,
    parse_kb,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
