"""PSP semantics: conditional satisfaction, least fixpoints, answer sets.

A pair (I, M) with I ⊆ M conditionally satisfies a structure when every
interpretation between I and M satisfies it.  Because truth only depends on
the structure's domain, the check tests I extended by each subset of
(M ∩ D) \\ (I ∩ D): at most 2^|D| evaluations, never the full lattice.

An interpretation M is a PSP answer set when it equals the least fixpoint of
the operator deriving the heads of rules whose bodies (I, M) conditionally
satisfies.  The iteration starts from the empty set and grows monotonically;
if a stage ever leaves M the fixpoint can no longer equal M, so iteration
stops there and the answer-set check fails (conditional satisfaction is only
ever invoked with I ⊆ M, keeping its precondition intact).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernel
from ._kernel.lowering import (
    CompiledProgram,
    atoms_of,
    flags_of,
    lower_program,
    lower_structure,
)
from .core import (
    DOMAIN_CAP_DEFAULT,
    HEAD_CAP_DEFAULT,
    Interpretation,
    Program,
    Structure,
    head_atoms,
)
from .errors import DomainTooLarge, PreconditionViolated, TooManyHeads


@dataclass(frozen=True)
class FixpointTrace:
    """Stages of the fixpoint iteration, starting from the empty set.

    On convergence the last two stages are equal; otherwise the iteration
    was cut short because a stage escaped the candidate interpretation.
    """

    stages: tuple[Interpretation, ...]
    converged: bool

    @property
    def fixpoint(self) -> Interpretation:
        return self.stages[-1]


def _require_subset(inner: Interpretation, outer: Interpretation) -> None:
    if not inner <= outer:
        raise PreconditionViolated(
            "conditional satisfaction requires the first interpretation to "
            "be a subset of the second"
        )


def _check_domain_cap(size: int, max_domain: int) -> None:
    if size > max_domain:
        raise DomainTooLarge(
            f"structure domain of {size} atoms exceeds the "
            f"conditional-satisfaction cap of {max_domain}"
        )


def cond_sat(
    structure: Structure,
    lower: Interpretation,
    upper: Interpretation,
    *,
    max_domain: int = DOMAIN_CAP_DEFAULT,
) -> bool:
    """Whether every interpretation between ``lower`` and ``upper`` satisfies
    the structure.  Requires lower ⊆ upper."""
    _require_subset(lower, upper)
    _check_domain_cap(len(structure.domain), max_domain)
    cp = lower_structure(structure)
    return _kernel.impl.cond_sat(
        cp, 0, flags_of(cp, lower), flags_of(cp, upper)
    )


def _lower_checked(program: Program, max_domain: int) -> CompiledProgram:
    cp = lower_program(program)
    _check_domain_cap(cp.max_dom, max_domain)
    return cp


def k_operator(
    program: Program,
    upper: Interpretation,
    lower: Interpretation,
    *,
    max_domain: int = DOMAIN_CAP_DEFAULT,
) -> Interpretation:
    """Heads of the rules whose bodies (lower, upper) conditionally satisfies."""
    _require_subset(lower, upper)
    cp = _lower_checked(program, max_domain)
    kernel = _kernel.impl
    i_flags = flags_of(cp, lower)
    m_flags = flags_of(cp, upper)
    derived = {
        cp.head[r]
        for r in range(cp.n_rules)
        if kernel.cond_sat(cp, r, i_flags, m_flags)
    }
    return Interpretation(atoms_of(cp, derived))


def lfp_k(
    program: Program,
    upper: Interpretation,
    *,
    max_domain: int = DOMAIN_CAP_DEFAULT,
) -> FixpointTrace:
    """Iterate the head-derivation operator from the empty set under ``upper``."""
    cp = _lower_checked(program, max_domain)
    stages, converged = _kernel.impl.lfp_stages(cp, flags_of(cp, upper))
    return FixpointTrace(
        tuple(Interpretation(atoms_of(cp, stage)) for stage in stages),
        converged,
    )


def is_psp_answer_set(
    program: Program,
    candidate: Interpretation,
    *,
    max_domain: int = DOMAIN_CAP_DEFAULT,
) -> bool:
    """Whether the candidate equals the least fixpoint of its own operator."""
    if not candidate.atoms <= set(head_atoms(program)):
        # Fixpoint stages consist of head atoms only, so nothing outside
        # the head atoms can be reached.
        return False
    cp = _lower_checked(program, max_domain)
    return _kernel.impl.is_psp(cp, flags_of(cp, candidate))


def enumerate_psp_answer_sets(
    program: Program,
    *,
    max_heads: int = HEAD_CAP_DEFAULT,
    max_domain: int = DOMAIN_CAP_DEFAULT,
) -> list[Interpretation]:
    """All PSP answer sets, by cardinality then lexicographically."""
    heads = head_atoms(program)
    if len(heads) > max_heads:
        raise TooManyHeads(
            f"program has {len(heads)} head atoms, beyond the enumeration "
            f"cap of {max_heads}"
        )
    cp = _lower_checked(program, max_domain)
    kernel = _kernel.impl
    found = []
    for mask in kernel.enum_psp(cp):
        indices = [cp.head_idx[j] for j in range(len(cp.head_idx)) if mask >> j & 1]
        found.append(Interpretation(atoms_of(cp, indices)))
    return sorted(found, key=lambda s: (len(s), tuple(a.name for a in s)))
