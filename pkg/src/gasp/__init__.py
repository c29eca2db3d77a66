"""Answer-set engine for propositional programs with generalized-atom bodies.

Rule bodies are structures: Boolean functions of interpretations with a
finite relevant domain (literal conjunctions, count/sum aggregates, truth
tables, DNFs).  The package implements the FLP and PSP answer-set semantics
side by side, classifies bodies by monotonicity and convexity, and carries
the 2-QBF reduction plus differential fuzz suites that exercise the
relationship between the two semantics.
"""

from ._kernel import backend as kernel_backend
from .classify import StructureClass, classify, decompose_convex
from .core import (
    Atom,
    Count,
    Dnf,
    Interpretation,
    LiteralConjunction,
    Program,
    Renaming,
    Rule,
    Structure,
    Sum,
    TruthTable,
    atoms,
    evaluate,
    head_atoms,
    models_program,
    rename,
    rename_interpretation,
    tabulate,
)
from .errors import (
    DomainTooLarge,
    EmptyMatrix,
    GaspError,
    InterpretationTooLarge,
    NotConvex,
    NotNormalProgram,
    ParseError,
    PreconditionViolated,
    TooManyHeads,
    TooManyVariables,
    UnboundVariable,
)
from .flp import (
    Reduct,
    enumerate_flp_answer_sets,
    flp_reduct,
    gl_stable_models,
    is_flp_answer_set,
    is_minimal_model,
)
from .parser import format_program, format_rule, format_structure, parse_program
from .psp import (
    FixpointTrace,
    cond_sat,
    enumerate_psp_answer_sets,
    is_psp_answer_set,
    k_operator,
    lfp_k,
)
from .qbf import (
    Dnf3,
    Qbf,
    build_reduction,
    negate_to_dnf,
    parse_qbf,
    parse_qdimacs,
    qbf_valid,
    verify_reduction,
)
from .reasoning import (
    FuzzResult,
    GeneratorConfig,
    SemanticsReport,
    brave,
    cautious,
    compare,
    format_report,
    generate,
    run_fuzz,
)

__version__ = "0.1.0"
