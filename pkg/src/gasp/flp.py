"""FLP semantics: reducts, minimal-model checks, answer-set enumeration.

An interpretation is an FLP answer set when it is a minimal model of its own
reduct, the reduct being the rules whose bodies it satisfies.  Enumeration
searches subsets of the head atoms only; this is complete because removing a
non-head atom from any model of the reduct leaves a model, so nothing outside
the head atoms can be minimal.

The Gelfond-Lifschitz construction for normal programs is included as an
independent oracle used by the differential test suites.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernel
from ._kernel.lowering import atoms_of, flags_of, lower_program
from .core import (
    HEAD_CAP_DEFAULT,
    INTERPRETATION_CAP_DEFAULT,
    Interpretation,
    LiteralConjunction,
    Program,
    Rule,
    evaluate,
    head_atoms,
)
from .errors import InterpretationTooLarge, NotNormalProgram, TooManyHeads


@dataclass(frozen=True)
class Reduct:
    """The rules of ``source`` whose bodies are true under ``wrt``."""

    rules: tuple[Rule, ...]
    source: Program
    wrt: Interpretation


def flp_reduct(program: Program, interpretation: Interpretation) -> Reduct:
    """The reduct of a program with respect to an interpretation."""
    kept = tuple(
        rule for rule in program.rules if evaluate(rule.body, interpretation)
    )
    return Reduct(kept, program, interpretation)


def is_minimal_model(
    interpretation: Interpretation,
    reduct: Reduct,
    *,
    max_interpretation: int = INTERPRETATION_CAP_DEFAULT,
) -> bool:
    """Whether the interpretation models the reduct and no proper subset does.

    Subsets are enumerated exhaustively (single-atom removals first as an
    early exit), so the interpretation size is capped.
    """
    if len(interpretation) > max_interpretation:
        raise InterpretationTooLarge(
            f"interpretation of {len(interpretation)} atoms exceeds the "
            f"subset-enumeration cap of {max_interpretation}"
        )
    kernel = _kernel.impl
    cp = lower_program(Program(reduct.rules), extra_atoms=interpretation.atoms)
    flags = flags_of(cp, interpretation)
    if not kernel.models(cp, flags):
        return False
    base = tuple(cp.index[a.name] for a in interpretation)
    return not kernel.has_proper_submodel(cp, base)


def is_flp_answer_set(
    program: Program,
    interpretation: Interpretation,
    *,
    max_interpretation: int = INTERPRETATION_CAP_DEFAULT,
) -> bool:
    """Whether the interpretation is a minimal model of its own reduct."""
    reduct = flp_reduct(program, interpretation)
    return is_minimal_model(
        interpretation, reduct, max_interpretation=max_interpretation
    )


def _check_head_cap(program: Program, max_heads: int) -> tuple:
    heads = head_atoms(program)
    if len(heads) > max_heads:
        raise TooManyHeads(
            f"program has {len(heads)} head atoms, beyond the enumeration "
            f"cap of {max_heads}"
        )
    return heads


def _canonical(sets: list[Interpretation]) -> list[Interpretation]:
    return sorted(sets, key=lambda s: (len(s), tuple(a.name for a in s)))


def enumerate_flp_answer_sets(
    program: Program, *, max_heads: int = HEAD_CAP_DEFAULT
) -> list[Interpretation]:
    """All FLP answer sets, by cardinality then lexicographically."""
    _check_head_cap(program, max_heads)
    kernel = _kernel.impl
    cp = lower_program(program)
    found = []
    for mask in kernel.enum_flp(cp):
        indices = [cp.head_idx[j] for j in range(len(cp.head_idx)) if mask >> j & 1]
        found.append(Interpretation(atoms_of(cp, indices)))
    return _canonical(found)


def _least_model(rules: list[tuple]) -> frozenset:
    """Least model of a definite program given as (head, positive-set) pairs."""
    model: set = set()
    changed = True
    while changed:
        changed = False
        for head, positive in rules:
            if head not in model and positive <= model:
                model.add(head)
                changed = True
    return frozenset(model)


def gl_stable_models(program: Program) -> list[Interpretation]:
    """Stable models of a normal program via the classic reduct.

    Rules whose negative literals intersect the candidate are deleted, the
    remaining negative literals dropped, and the candidate is stable when it
    equals the least model of the resulting definite program.  This is a
    desk-scale test oracle; candidates range over subsets of the head atoms.
    """
    for rule in program.rules:
        if not isinstance(rule.body, LiteralConjunction):
            raise NotNormalProgram(
                "stable-model oracle requires literal-conjunction bodies"
            )
    heads = head_atoms(program)
    stable = []
    for mask in range(1 << len(heads)):
        candidate = frozenset(a for i, a in enumerate(heads) if mask >> i & 1)
        reduct_rules = [
            (rule.head, rule.body.positive)
            for rule in program.rules
            if not (rule.body.negative & candidate)
        ]
        if _least_model(reduct_rules) == candidate:
            stable.append(Interpretation(candidate))
    return _canonical(stable)
