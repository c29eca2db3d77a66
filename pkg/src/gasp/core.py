"""Atoms, interpretations, structures, rules, and programs.

A structure is a Boolean function of interpretations with a finite relevant
domain: its truth value depends only on which domain atoms are present, so
atoms outside the domain never affect evaluation.  Five concrete kinds are
provided (literal conjunctions, count and sum aggregates, explicit truth
tables, and DNFs of literals); all of them can be tabulated into a truth
table, which is the representation-independent ground truth used by the
classifier and by the brute-force test oracles.

All types are immutable after construction and evaluation is pure, so values
may be shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import DomainTooLarge

#: Default cap on structure-domain sizes for exhaustive operations
#: (tabulation, classification, conditional satisfaction).
DOMAIN_CAP_DEFAULT = 20
#: Default cap on interpretation size for minimal-model subset enumeration.
INTERPRETATION_CAP_DEFAULT = 22
#: Default cap on the number of distinct head atoms for answer-set enumeration.
HEAD_CAP_DEFAULT = 22
#: Default cap on total variable count for the brute-force QBF oracle.
QBF_VARIABLE_CAP_DEFAULT = 24

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

#: Comparator tokens accepted by count and sum aggregates.
COMPARATORS = ("=", "!=", "<=", "<", ">=", ">")

#: Comparator complements: `not sum{...} >= g` is `sum{...} < g`.
COMPLEMENT_COMPARATOR = {
    "=": "!=",
    "!=": "=",
    "<=": ">",
    ">": "<=",
    "<": ">=",
    ">=": "<",
}


def compare(comparator: str, lhs: int, rhs: int) -> bool:
    if comparator == "=":
        return lhs == rhs
    if comparator == "!=":
        return lhs != rhs
    if comparator == "<=":
        return lhs <= rhs
    if comparator == "<":
        return lhs < rhs
    if comparator == ">=":
        return lhs >= rhs
    if comparator == ">":
        return lhs > rhs
    raise ValueError(f"unknown comparator {comparator!r}")


@dataclass(frozen=True, order=True)
class Atom:
    """A propositional atom, identified by its name."""

    name: str

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self):
        return self.name


def _freeze_atoms(atoms: Iterable[Atom]) -> frozenset[Atom]:
    out = frozenset(atoms)
    for a in out:
        if not isinstance(a, Atom):
            raise TypeError(f"expected Atom, got {a!r}")
    return out


@dataclass(frozen=True)
class Interpretation:
    """A finite set of atoms considered true, iterated in name order."""

    atoms: frozenset[Atom] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "atoms", _freeze_atoms(self.atoms))

    @classmethod
    def of(cls, *names: str) -> "Interpretation":
        return cls(frozenset(Atom(n) for n in names))

    def __contains__(self, atom: Atom) -> bool:
        return atom in self.atoms

    def __iter__(self) -> Iterator[Atom]:
        return iter(sorted(self.atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def __bool__(self) -> bool:
        return bool(self.atoms)

    def __le__(self, other: "Interpretation") -> bool:
        return self.atoms <= other.atoms

    def __lt__(self, other: "Interpretation") -> bool:
        return self.atoms < other.atoms

    def __or__(self, other: "Interpretation") -> "Interpretation":
        return Interpretation(self.atoms | other.atoms)

    def __and__(self, other: "Interpretation") -> "Interpretation":
        return Interpretation(self.atoms & other.atoms)

    def __sub__(self, other: "Interpretation") -> "Interpretation":
        return Interpretation(self.atoms - other.atoms)

    def __str__(self):
        return "{" + ", ".join(a.name for a in self) + "}"


EMPTY = Interpretation()


def _check_domain(domain: tuple[Atom, ...]) -> None:
    if len(set(domain)) != len(domain):
        raise ValueError("structure domain contains duplicate atoms")
    for a in domain:
        if not isinstance(a, Atom):
            raise TypeError(f"expected Atom in domain, got {a!r}")


class Structure:
    """Base class for structures; concrete kinds implement ``eval_subset``."""

    domain: tuple[Atom, ...]

    @cached_property
    def domain_set(self) -> frozenset[Atom]:
        return frozenset(self.domain)

    def eval_subset(self, present: frozenset[Atom]) -> bool:
        """Truth value on a subset of the domain (the restriction of some I)."""
        raise NotImplementedError

    def rename(self, renaming: "Renaming") -> "Structure":
        raise NotImplementedError


@dataclass(frozen=True)
class LiteralConjunction(Structure):
    """Conjunction of atoms and negated atoms; a bare fact has empty domain."""

    domain: tuple[Atom, ...]
    positive: frozenset[Atom]
    negative: frozenset[Atom]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "positive", _freeze_atoms(self.positive))
        object.__setattr__(self, "negative", _freeze_atoms(self.negative))
        _check_domain(self.domain)
        if self.positive & self.negative:
            raise ValueError("positive and negative literals overlap")
        if self.positive | self.negative != frozenset(self.domain):
            raise ValueError("literals do not cover the declared domain")

    def eval_subset(self, present):
        return self.positive <= present and not (self.negative & present)

    def rename(self, renaming):
        return LiteralConjunction(
            tuple(renaming.apply(a) for a in self.domain),
            frozenset(renaming.apply(a) for a in self.positive),
            frozenset(renaming.apply(a) for a in self.negative),
        )


@dataclass(frozen=True)
class Count(Structure):
    """Cardinality aggregate: |I ∩ domain| compared against a guard."""

    domain: tuple[Atom, ...]
    comparator: str
    guard: int

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        _check_domain(self.domain)
        if self.comparator not in COMPARATORS:
            raise ValueError(f"unknown comparator {self.comparator!r}")

    def eval_subset(self, present):
        return compare(self.comparator, len(present), self.guard)

    def rename(self, renaming):
        return Count(
            tuple(renaming.apply(a) for a in self.domain),
            self.comparator,
            self.guard,
        )


@dataclass(frozen=True)
class Sum(Structure):
    """Weighted sum aggregate; ``weights`` aligns with the domain order."""

    domain: tuple[Atom, ...]
    weights: tuple[int, ...]
    comparator: str
    guard: int

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "weights", tuple(self.weights))
        _check_domain(self.domain)
        if len(self.weights) != len(self.domain):
            raise ValueError("one weight per domain atom required")
        if self.comparator not in COMPARATORS:
            raise ValueError(f"unknown comparator {self.comparator!r}")

    @classmethod
    def of(cls, weight_map: Mapping[Atom, int], comparator: str, guard: int) -> "Sum":
        domain = tuple(weight_map)
        return cls(domain, tuple(weight_map[a] for a in domain), comparator, guard)

    @property
    def weight_map(self) -> dict[Atom, int]:
        return dict(zip(self.domain, self.weights))

    def eval_subset(self, present):
        total = sum(w for a, w in zip(self.domain, self.weights) if a in present)
        return compare(self.comparator, total, self.guard)

    def rename(self, renaming):
        return Sum(
            tuple(renaming.apply(a) for a in self.domain),
            self.weights,
            self.comparator,
            self.guard,
        )


@dataclass(frozen=True)
class TruthTable(Structure):
    """Extensional structure: the set of satisfied domain subsets, as bitmasks.

    Bit i of a mask corresponds to ``domain[i]``.
    """

    domain: tuple[Atom, ...]
    satisfied: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "satisfied", frozenset(self.satisfied))
        _check_domain(self.domain)
        top = 1 << len(self.domain)
        for mask in self.satisfied:
            if not 0 <= mask < top:
                raise ValueError(f"satisfied mask {mask} outside the domain lattice")

    def mask_of(self, present: frozenset[Atom]) -> int:
        mask = 0
        for i, a in enumerate(self.domain):
            if a in present:
                mask |= 1 << i
        return mask

    def eval_subset(self, present):
        return self.mask_of(present) in self.satisfied

    def rename(self, renaming):
        return TruthTable(
            tuple(renaming.apply(a) for a in self.domain),
            self.satisfied,
        )


@dataclass(frozen=True)
class Dnf(Structure):
    """Disjunction of literal conjunctions over subsets of the domain.

    A disjunct is a (positive, negative) pair of disjoint atom sets.
    """

    domain: tuple[Atom, ...]
    disjuncts: tuple[tuple[frozenset[Atom], frozenset[Atom]], ...]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(
            self,
            "disjuncts",
            tuple((_freeze_atoms(p), _freeze_atoms(n)) for p, n in self.disjuncts),
        )
        _check_domain(self.domain)
        if not self.disjuncts:
            raise ValueError("a DNF needs at least one disjunct")
        dom = frozenset(self.domain)
        for pos, neg in self.disjuncts:
            if pos & neg:
                raise ValueError("disjunct literals overlap")
            if not (pos | neg) <= dom:
                raise ValueError("disjunct mentions atoms outside the domain")

    def eval_subset(self, present):
        return any(
            pos <= present and not (neg & present) for pos, neg in self.disjuncts
        )

    def rename(self, renaming):
        return Dnf(
            tuple(renaming.apply(a) for a in self.domain),
            tuple(
                (
                    frozenset(renaming.apply(a) for a in pos),
                    frozenset(renaming.apply(a) for a in neg),
                )
                for pos, neg in self.disjuncts
            ),
        )


@dataclass(frozen=True)
class Renaming:
    """A finite permutation of atoms, identity outside its explicit entries."""

    entries: tuple[tuple[Atom, Atom], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))
        keys = [k for k, _ in self.entries]
        values = [v for _, v in self.entries]
        if len(set(keys)) != len(keys) or len(set(values)) != len(values):
            raise ValueError("renaming entries are not injective")
        if set(keys) != set(values):
            raise ValueError(
                "renaming is not a bijection on the union of its keys and values"
            )

    @classmethod
    def of(cls, mapping: Mapping[Atom, Atom]) -> "Renaming":
        return cls(tuple(mapping.items()))

    @cached_property
    def _map(self) -> dict[Atom, Atom]:
        return dict(self.entries)

    def apply(self, atom: Atom) -> Atom:
        return self._map.get(atom, atom)


@dataclass(frozen=True)
class Rule:
    """An atomic head implied by a structure body."""

    head: Atom
    body: Structure

    def __post_init__(self):
        if not isinstance(self.head, Atom):
            raise TypeError("rule head must be an Atom")
        if not isinstance(self.body, Structure):
            raise TypeError("rule body must be a Structure")


@dataclass(frozen=True)
class Program:
    """A finite set of rules; duplicates (by structural equality) are dropped."""

    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        seen = set()
        unique = []
        for r in self.rules:
            if r not in seen:
                seen.add(r)
                unique.append(r)
        object.__setattr__(self, "rules", tuple(unique))

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def evaluate(structure: Structure, interpretation: Interpretation) -> bool:
    """Truth value of a structure on an interpretation.

    Only the intersection with the structure's domain matters, so atoms
    unknown to the structure never change the result.
    """
    return structure.eval_subset(interpretation.atoms & structure.domain_set)


def rename(structure: Structure, renaming: Renaming) -> Structure:
    """The variant of a structure under an atom permutation."""
    return structure.rename(renaming)


def rename_interpretation(
    interpretation: Interpretation, renaming: Renaming
) -> Interpretation:
    return Interpretation(frozenset(renaming.apply(a) for a in interpretation.atoms))


def models_program(interpretation: Interpretation, program: Program) -> bool:
    """True iff every rule with a true body has its head in the interpretation."""
    return all(
        rule.head in interpretation or not evaluate(rule.body, interpretation)
        for rule in program.rules
    )


def atoms(program: Program) -> tuple[Atom, ...]:
    """All atoms mentioned by the program (heads and body domains), name order."""
    seen = set()
    for rule in program.rules:
        seen.add(rule.head)
        seen.update(rule.body.domain)
    return tuple(sorted(seen))


def head_atoms(program: Program) -> tuple[Atom, ...]:
    """The distinct head atoms of the program, in name order."""
    return tuple(sorted({rule.head for rule in program.rules}))


def tabulate(
    structure: Structure, *, max_domain: int = DOMAIN_CAP_DEFAULT
) -> TruthTable:
    """The truth table of a structure over its own domain.

    This is the representation-independent view used by classification and
    by brute-force oracles; it enumerates all 2^|domain| subsets.
    """
    k = len(structure.domain)
    if k > max_domain:
        raise DomainTooLarge(
            f"domain of {k} atoms exceeds the tabulation cap of {max_domain}"
        )
    satisfied = set()
    for mask in range(1 << k):
        present = frozenset(
            a for i, a in enumerate(structure.domain) if mask >> i & 1
        )
        if structure.eval_subset(present):
            satisfied.add(mask)
    return TruthTable(structure.domain, frozenset(satisfied))
