"""Lowering of programs into the flat form consumed by the kernels.

A compiled program indexes every atom (name order) and stores each rule body
as parallel flat arrays so that both the pure-Python kernel and the compiled
extension can evaluate bodies against a byte-per-atom membership vector
without touching any Python-level structure objects.

Body kinds are collapsed where evaluation allows it: counts become unit-weight
sums, and literal conjunctions keep a +1/-1 sign per domain slot.  Truth
tables and DNFs work on a local bitmask (bit j = j-th domain atom of the
rule), which restricts those kinds to at most 63 domain atoms; sums and
literal conjunctions have no such limit because they never build a mask.
"""

from __future__ import annotations

from array import array
from typing import Iterable

from ..core import (
    Atom,
    Count,
    Dnf,
    Interpretation,
    LiteralConjunction,
    Program,
    Rule,
    Structure,
    Sum,
    TruthTable,
)
from ..errors import DomainTooLarge

KIND_LITCONJ = 0
KIND_SUM = 1
KIND_TABLE = 2
KIND_DNF = 3

CMP_CODE = {"=": 0, "!=": 1, "<=": 2, "<": 3, ">=": 4, ">": 5}

# Local bitmasks are single machine words in the compiled kernel.
MASK_BITS = 63


class CompiledProgram:
    """Flat, immutable-by-convention view of a program for the kernels."""

    __slots__ = (
        "n_atoms",
        "n_rules",
        "names",
        "index",
        "head",
        "kind",
        "dom_off",
        "dom_len",
        "dom_atom",
        "weight",
        "cmp",
        "guard",
        "tab_off",
        "tab_len",
        "tab_mask",
        "dnf_off",
        "dnf_len",
        "dnf_pos",
        "dnf_neg",
        "head_idx",
        "max_dom",
    )

    def __init__(self, n_atoms, names, index):
        self.n_atoms = n_atoms
        self.names = names
        self.index = index
        self.n_rules = 0
        self.head = array("l")
        self.kind = array("b")
        self.dom_off = array("l")
        self.dom_len = array("l")
        self.dom_atom = array("l")
        self.weight = array("q")
        self.cmp = array("b")
        self.guard = array("q")
        self.tab_off = array("l")
        self.tab_len = array("l")
        self.tab_mask = array("Q")
        self.dnf_off = array("l")
        self.dnf_len = array("l")
        self.dnf_pos = array("Q")
        self.dnf_neg = array("Q")
        self.head_idx = ()
        self.max_dom = 0


def _atom_index(
    program: Program, extra_atoms: Iterable[Atom]
) -> tuple[tuple[str, ...], dict[str, int]]:
    seen = {a.name for a in extra_atoms}
    for rule in program.rules:
        seen.add(rule.head.name)
        seen.update(a.name for a in rule.body.domain)
    names = tuple(sorted(seen))
    return names, {name: i for i, name in enumerate(names)}


def lower_program(program: Program, extra_atoms: Iterable[Atom] = ()) -> CompiledProgram:
    """Compile a program; ``extra_atoms`` widens the index (e.g. for a model
    whose atoms fall outside the program)."""
    names, index = _atom_index(program, extra_atoms)
    # At least one flag slot so kernel buffers are never zero length.
    cp = CompiledProgram(max(1, len(names)), names, index)
    for rule in program.rules:
        _lower_rule(cp, rule)
    cp.head_idx = tuple(sorted({index[r.head.name] for r in program.rules}))
    return cp


def lower_structure(structure: Structure) -> CompiledProgram:
    """Compile a single structure as a one-rule program over its own domain."""
    names = tuple(sorted(a.name for a in structure.domain))
    index = {name: i for i, name in enumerate(names)}
    cp = CompiledProgram(len(names), names, index)
    head = structure.domain[0] if structure.domain else Atom("a")
    if not structure.domain:
        # Degenerate index for a domain-free structure; the head is unused.
        cp.names = (head.name,)
        cp.index = {head.name: 0}
        cp.n_atoms = 1
    _lower_rule(cp, Rule(head, structure))
    cp.head_idx = (cp.index[head.name],)
    return cp


def flags_of(cp: CompiledProgram, interpretation: Interpretation) -> bytearray:
    """Membership vector of an interpretation, restricted to indexed atoms."""
    flags = bytearray(cp.n_atoms)
    for a in interpretation.atoms:
        i = cp.index.get(a.name)
        if i is not None:
            flags[i] = 1
    return flags


def atoms_of(cp: CompiledProgram, indices: Iterable[int]) -> frozenset[Atom]:
    return frozenset(Atom(cp.names[i]) for i in indices)


def _push_domain(cp: CompiledProgram, domain: tuple[Atom, ...]) -> None:
    cp.dom_off.append(len(cp.dom_atom))
    cp.dom_len.append(len(domain))
    for a in domain:
        cp.dom_atom.append(cp.index[a.name])
    cp.max_dom = max(cp.max_dom, len(domain))


def _pad_weights(cp: CompiledProgram, values: Iterable[int]) -> None:
    for v in values:
        cp.weight.append(v)


def _local_mask(domain: tuple[Atom, ...], members: Iterable[Atom]) -> int:
    pos = {a: i for i, a in enumerate(domain)}
    mask = 0
    for a in members:
        mask |= 1 << pos[a]
    return mask


def _lower_rule(cp: CompiledProgram, rule: Rule) -> None:
    body = rule.body
    cp.head.append(cp.index[rule.head.name])
    _push_domain(cp, body.domain)
    # Defaults for slots unused by this kind.
    cp.cmp.append(0)
    cp.guard.append(0)
    cp.tab_off.append(len(cp.tab_mask))
    cp.tab_len.append(0)
    cp.dnf_off.append(len(cp.dnf_pos))
    cp.dnf_len.append(0)

    if isinstance(body, LiteralConjunction):
        cp.kind.append(KIND_LITCONJ)
        _pad_weights(cp, (1 if a in body.positive else -1 for a in body.domain))
    elif isinstance(body, Count):
        cp.kind.append(KIND_SUM)
        cp.cmp[-1] = CMP_CODE[body.comparator]
        cp.guard[-1] = body.guard
        _pad_weights(cp, (1 for _ in body.domain))
    elif isinstance(body, Sum):
        cp.kind.append(KIND_SUM)
        cp.cmp[-1] = CMP_CODE[body.comparator]
        cp.guard[-1] = body.guard
        _pad_weights(cp, body.weights)
    elif isinstance(body, TruthTable):
        if len(body.domain) > MASK_BITS:
            raise DomainTooLarge(
                f"truth-table domain of {len(body.domain)} atoms exceeds "
                f"the kernel word size of {MASK_BITS} bits"
            )
        cp.kind.append(KIND_TABLE)
        _pad_weights(cp, (0 for _ in body.domain))
        masks = sorted(body.satisfied)
        cp.tab_len[-1] = len(masks)
        for m in masks:
            cp.tab_mask.append(m)
    elif isinstance(body, Dnf):
        if len(body.domain) > MASK_BITS:
            raise DomainTooLarge(
                f"DNF domain of {len(body.domain)} atoms exceeds "
                f"the kernel word size of {MASK_BITS} bits"
            )
        cp.kind.append(KIND_DNF)
        _pad_weights(cp, (0 for _ in body.domain))
        cp.dnf_len[-1] = len(body.disjuncts)
        for pos, neg in body.disjuncts:
            cp.dnf_pos.append(_local_mask(body.domain, pos))
            cp.dnf_neg.append(_local_mask(body.domain, neg))
    else:
        raise TypeError(f"cannot lower structure of type {type(body).__name__}")
    cp.n_rules += 1
