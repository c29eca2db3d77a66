"""Monotonicity, antimonotonicity, and convexity of structures.

Classification is decided by exhaustive inspection of the structure's domain
lattice.  Convexity is checked through the existential closures of the truth
table: a structure is convex exactly when every subset that has a true point
below it and a true point above it is itself true.  The same two closures are
monotone and antimonotone by construction, which gives the decomposition of a
convex structure into a conjunction of a monotone and an antimonotone part.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernel
from ._kernel.lowering import lower_structure
from .core import DOMAIN_CAP_DEFAULT, Structure, TruthTable
from .errors import DomainTooLarge, NotConvex


@dataclass(frozen=True)
class StructureClass:
    """Classification flags; monotone or antimonotone structures are convex."""

    monotone: bool
    antimonotone: bool
    convex: bool

    def __post_init__(self):
        if (self.monotone or self.antimonotone) and not self.convex:
            raise ValueError("monotone and antimonotone structures are convex")

    @property
    def label(self) -> str:
        """Most specific label, precedence monotone > antimonotone > convex."""
        if self.monotone:
            return "monotone"
        if self.antimonotone:
            return "antimonotone"
        if self.convex:
            return "convex"
        return "non-convex"


def _closures(structure: Structure, max_domain: int):
    k = len(structure.domain)
    if k > max_domain:
        raise DomainTooLarge(
            f"domain of {k} atoms exceeds the classification cap of {max_domain}"
        )
    kernel = _kernel.impl
    cp = lower_structure(structure)
    bits = kernel.tabulate(cp, 0)
    below = kernel.closure_below(bits, k)
    above = kernel.closure_above(bits, k)
    return bits, below, above


def classify(
    structure: Structure, *, max_domain: int = DOMAIN_CAP_DEFAULT
) -> StructureClass:
    """Classify a structure by tabulating it over its domain lattice."""
    bits, below, above = _closures(structure, max_domain)
    monotone = bits == below
    antimonotone = bits == above
    convex = all(b == (lo & hi) for b, lo, hi in zip(bits, below, above))
    return StructureClass(monotone, antimonotone, convex)


def decompose_convex(
    structure: Structure, *, max_domain: int = DOMAIN_CAP_DEFAULT
) -> tuple[TruthTable, TruthTable]:
    """Split a convex structure into monotone and antimonotone truth tables.

    The monotone part is true where some subset satisfies the structure, the
    antimonotone part where some superset does; their conjunction reproduces
    the structure exactly (this is re-checked before returning).
    """
    bits, below, above = _closures(structure, max_domain)
    if any(b != (lo & hi) for b, lo, hi in zip(bits, below, above)):
        raise NotConvex("structure is not convex")
    mono = TruthTable(
        structure.domain, frozenset(m for m, b in enumerate(below) if b)
    )
    anti = TruthTable(
        structure.domain, frozenset(m for m, b in enumerate(above) if b)
    )
    conj = mono.satisfied & anti.satisfied
    if conj != frozenset(m for m, b in enumerate(bits) if b):
        raise AssertionError("convex decomposition failed to round-trip")
    return mono, anti
