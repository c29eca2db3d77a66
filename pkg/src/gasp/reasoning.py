"""Cautious and brave consequence, semantics comparison, program generation.

The comparison report runs both semantics side by side, classifies every rule
body, and, when all bodies are convex, re-verifies the two obligations that
make the semantics coincide on such programs: the fixpoint below each FLP
answer set models the reduct and stays inside the answer set.

The generator produces seeded random programs whose rule bodies fall into
requested classes.  Bodies are sampled and then rejection-checked against the
classifier, which is the trusted oracle; a guaranteed fallback per class
keeps generation total.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .classify import StructureClass, classify
from .core import (
    HEAD_CAP_DEFAULT,
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
    evaluate,
    head_atoms,
)
from .errors import GaspError
from .flp import enumerate_flp_answer_sets, flp_reduct
from .psp import enumerate_psp_answer_sets, lfp_k

SEMANTICS = ("flp", "psp")


def _answer_sets(program: Program, semantics: str, max_heads: int):
    if semantics == "flp":
        return enumerate_flp_answer_sets(program, max_heads=max_heads)
    if semantics == "psp":
        return enumerate_psp_answer_sets(program, max_heads=max_heads)
    raise ValueError(f"unknown semantics {semantics!r}; use 'flp' or 'psp'")


def cautious(
    program: Program,
    atom: Atom,
    semantics: str,
    *,
    max_heads: int = HEAD_CAP_DEFAULT,
) -> bool:
    """Whether the atom belongs to every answer set under the given semantics.

    Vacuously true when the program has no answer sets at all.
    """
    return all(
        atom in answer_set
        for answer_set in _answer_sets(program, semantics, max_heads)
    )


def brave(
    program: Program,
    atom: Atom,
    semantics: str,
    *,
    max_heads: int = HEAD_CAP_DEFAULT,
) -> bool:
    """Whether the atom belongs to some answer set under the given semantics."""
    return any(
        atom in answer_set
        for answer_set in _answer_sets(program, semantics, max_heads)
    )


@dataclass(frozen=True)
class SemanticsReport:
    """Side-by-side answer sets of both semantics plus body classifications."""

    flp_sets: tuple[Interpretation, ...]
    psp_sets: tuple[Interpretation, ...]
    psp_minus_flp: tuple[Interpretation, ...]
    flp_minus_psp: tuple[Interpretation, ...]
    per_rule_class: tuple[StructureClass, ...]
    all_convex: bool

    def __post_init__(self):
        if self.psp_minus_flp:
            raise ValueError("PSP answer sets must all be FLP answer sets")
        if self.all_convex and self.flp_sets != self.psp_sets:
            raise ValueError("convex programs must have coinciding semantics")


def compare(
    program: Program, *, max_heads: int = HEAD_CAP_DEFAULT
) -> SemanticsReport:
    """Enumerate both semantics, classify every body, and diff the results."""
    flp_sets = tuple(enumerate_flp_answer_sets(program, max_heads=max_heads))
    psp_sets = tuple(enumerate_psp_answer_sets(program, max_heads=max_heads))
    flp_lookup = set(flp_sets)
    psp_lookup = set(psp_sets)
    classes = tuple(classify(rule.body) for rule in program.rules)
    all_convex = all(c.convex for c in classes)
    if all_convex:
        _verify_coincidence_obligations(program, flp_sets)
    return SemanticsReport(
        flp_sets=flp_sets,
        psp_sets=psp_sets,
        psp_minus_flp=tuple(s for s in psp_sets if s not in flp_lookup),
        flp_minus_psp=tuple(s for s in flp_sets if s not in psp_lookup),
        per_rule_class=classes,
        all_convex=all_convex,
    )


def _verify_coincidence_obligations(program, flp_sets) -> None:
    """For convex programs, each FLP answer set must dominate its fixpoint:
    the fixpoint models the reduct and is contained in the answer set."""
    for answer_set in flp_sets:
        trace = lfp_k(program, answer_set)
        fix = trace.fixpoint
        if not trace.converged or not fix <= answer_set:
            raise GaspError(
                f"fixpoint below {answer_set} escaped the answer set"
            )
        for rule in flp_reduct(program, answer_set).rules:
            if evaluate(rule.body, fix) and rule.head not in fix:
                raise GaspError(
                    f"fixpoint below {answer_set} does not model the reduct"
                )


def format_report(report: SemanticsReport, style: str = "text") -> str:
    """Render a report; ``text`` is human oriented, ``kv`` line-structured."""

    def join(sets):
        return ",".join(str(s) for s in sets)

    if style == "kv":
        lines = [
            f"flp={join(report.flp_sets)}",
            f"psp={join(report.psp_sets)}",
            f"flp_minus_psp={join(report.flp_minus_psp)}",
            f"psp_minus_flp={join(report.psp_minus_flp)}",
            "classes=" + ",".join(c.label for c in report.per_rule_class),
            f"all_convex={'true' if report.all_convex else 'false'}",
        ]
        return "".join(line + "\n" for line in lines)
    if style != "text":
        raise ValueError(f"unknown report style {style!r}")
    lines = ["FLP answer sets:"]
    lines += [f"  {s}" for s in report.flp_sets] or ["  (none)"]
    lines.append("PSP answer sets:")
    lines += [f"  {s}" for s in report.psp_sets] or ["  (none)"]
    if report.flp_minus_psp:
        lines.append("FLP-only answer sets:")
        lines += [f"  {s}" for s in report.flp_minus_psp]
    else:
        lines.append("FLP-only answer sets: (none)")
    lines.append(
        "rule classes: "
        + (", ".join(c.label for c in report.per_rule_class) or "(no rules)")
    )
    lines.append(f"all bodies convex: {'yes' if report.all_convex else 'no'}")
    if report.all_convex:
        lines.append("semantics coincide (as they must on convex bodies)")
    elif report.flp_minus_psp:
        lines.append("semantics diverge on this program")
    else:
        lines.append("semantics coincide on this program")
    return "".join(line + "\n" for line in lines)


_CLASS_RE = re.compile(
    r"monotone|antimonotone|convex|nonconvex(?:-bounded\((\d+)\))?\Z"
)


def _parse_class(spec: str) -> tuple[str, int | None]:
    m = _CLASS_RE.fullmatch(spec)
    if m is None:
        raise ValueError(f"unknown structure class {spec!r}")
    if spec.startswith("nonconvex"):
        bound = int(m.group(1)) if m.group(1) else None
        if bound is not None and bound < 2:
            raise ValueError("a non-convex structure needs at least 2 atoms")
        return "nonconvex", bound
    return spec, None


@dataclass(frozen=True)
class GeneratorConfig:
    """Shape of a random program: atom pool, rule count, body classes, seed.

    Classes are drawn from ``monotone``, ``antimonotone``, ``convex``,
    ``nonconvex`` and ``nonconvex-bounded(k)`` (non-convex bodies over at
    most k atoms).
    """

    atom_count: int
    rule_count: int
    structure_classes: frozenset[str]
    seed: int

    def __post_init__(self):
        object.__setattr__(
            self, "structure_classes", frozenset(self.structure_classes)
        )
        if self.atom_count < 1:
            raise ValueError("atom_count must be at least 1")
        if self.rule_count < 0:
            raise ValueError("rule_count must not be negative")
        if not self.structure_classes:
            raise ValueError("at least one structure class is required")
        for spec in self.structure_classes:
            _parse_class(spec)


def _below_closure(masks: set[int], k: int) -> frozenset[int]:
    out = set(masks)
    for i in range(k):
        for s in range(1 << k):
            if s >> i & 1 and (s ^ (1 << i)) in out:
                out.add(s)
    return frozenset(out)


def _above_closure(masks: set[int], k: int) -> frozenset[int]:
    out = set(masks)
    for i in range(k):
        for s in range(1 << k):
            if not s >> i & 1 and (s | 1 << i) in out:
                out.add(s)
    return frozenset(out)


def _random_domain(rng: random.Random, pool, lo: int, hi: int):
    size = rng.randint(lo, min(hi, len(pool)))
    return tuple(rng.sample(pool, size))


def _random_masks(rng: random.Random, k: int) -> set[int]:
    return {mask for mask in range(1 << k) if rng.random() < 0.5}


def _sample_candidate(kind: str, rng: random.Random, pool, bound) -> Structure:
    if kind == "monotone":
        pick = rng.randrange(3)
        if pick == 0:
            domain = _random_domain(rng, pool, 1, 3)
            return LiteralConjunction(domain, frozenset(domain), frozenset())
        if pick == 1:
            domain = _random_domain(rng, pool, 1, 4)
            return Count(domain, rng.choice((">=", ">")), rng.randint(0, len(domain)))
        domain = _random_domain(rng, pool, 1, 3)
        k = len(domain)
        return TruthTable(domain, _below_closure(_random_masks(rng, k), k))
    if kind == "antimonotone":
        pick = rng.randrange(3)
        if pick == 0:
            domain = _random_domain(rng, pool, 1, 3)
            return LiteralConjunction(domain, frozenset(), frozenset(domain))
        if pick == 1:
            domain = _random_domain(rng, pool, 1, 4)
            return Count(domain, rng.choice(("<=", "<")), rng.randint(0, len(domain)))
        domain = _random_domain(rng, pool, 1, 3)
        k = len(domain)
        return TruthTable(domain, _above_closure(_random_masks(rng, k), k))
    if kind == "convex":
        pick = rng.randrange(4)
        if pick == 0:
            domain = _random_domain(rng, pool, 1, 4)
            split = rng.randint(0, len(domain))
            return LiteralConjunction(
                domain, frozenset(domain[:split]), frozenset(domain[split:])
            )
        if pick == 1:
            domain = _random_domain(rng, pool, 1, 4)
            return Count(domain, "=", rng.randint(0, len(domain)))
        if pick == 2:
            domain = _random_domain(rng, pool, 1, 3)
            weights = tuple(rng.randint(1, 3) for _ in domain)
            return Sum(domain, weights, rng.choice((">=", "<=")), rng.randint(0, 4))
        domain = _random_domain(rng, pool, 1, 3)
        k = len(domain)
        below = _below_closure(_random_masks(rng, k), k)
        above = _above_closure(_random_masks(rng, k), k)
        return TruthTable(domain, below & above)
    # non-convex, possibly with a bounded domain size
    hi = bound if bound is not None else 4
    domain = _random_domain(rng, pool, 2, hi)
    k = len(domain)
    if rng.random() < 0.25:
        disjuncts = []
        for _ in range(rng.randint(2, 3)):
            split = rng.randint(0, k)
            shuffled = list(domain)
            rng.shuffle(shuffled)
            disjuncts.append(
                (frozenset(shuffled[:split]), frozenset(shuffled[split:]))
            )
        return Dnf(domain, tuple(disjuncts))
    return TruthTable(domain, frozenset(_random_masks(rng, k)))


def _matches(kind: str, cls: StructureClass) -> bool:
    if kind == "monotone":
        return cls.monotone
    if kind == "antimonotone":
        return cls.antimonotone
    if kind == "convex":
        return cls.convex
    return not cls.convex


def _fallback(kind: str, rng: random.Random, pool) -> Structure:
    if kind == "monotone":
        a = rng.choice(pool)
        return LiteralConjunction((a,), frozenset({a}), frozenset())
    if kind == "antimonotone":
        a = rng.choice(pool)
        return LiteralConjunction((a,), frozenset(), frozenset({a}))
    if kind == "convex":
        domain = _random_domain(rng, pool, 1, 2)
        return Count(domain, "=", len(domain))
    domain = tuple(rng.sample(pool, 2))
    return Count(domain, "!=", 1)


def _sample_body(kind: str, rng: random.Random, pool, bound) -> Structure:
    if kind == "nonconvex" and len(pool) < 2:
        raise ValueError("non-convex bodies need an atom pool of at least 2")
    for _ in range(50):
        candidate = _sample_candidate(kind, rng, pool, bound)
        if _matches(kind, classify(candidate)):
            return candidate
    fallback = _fallback(kind, rng, pool)
    if not _matches(kind, classify(fallback)):
        raise AssertionError(f"fallback body failed the {kind} class check")
    return fallback


def generate(config: GeneratorConfig) -> Program:
    """Deterministically generate a program whose bodies match the config."""
    rng = random.Random(config.seed)
    pool = [Atom(f"a{i}") for i in range(1, config.atom_count + 1)]
    kinds = [_parse_class(spec) for spec in sorted(config.structure_classes)]
    rules = []
    for _ in range(config.rule_count):
        kind, bound = rng.choice(kinds)
        head = rng.choice(pool)
        rules.append(Rule(head, _sample_body(kind, rng, pool, bound)))
    return Program(tuple(rules))


@dataclass(frozen=True)
class FuzzResult:
    """Outcome of a differential fuzz batch."""

    mode: str
    cases: int
    failures: tuple[str, ...]
    divergent: int

    @property
    def ok(self) -> bool:
        if self.mode == "divergence":
            return not self.failures and self.divergent > 0
        return not self.failures


def _loop_fixture() -> Program:
    """Two mutually supporting sum rules plus an even loop: the canonical
    program whose FLP and PSP answer sets differ."""
    a, b = Atom("a"), Atom("b")
    return Program(
        (
            Rule(a, Sum((a, b), (1, -1), ">=", 0)),
            Rule(b, Sum((a, b), (-1, 1), ">=", 0)),
            Rule(a, LiteralConjunction((b,), frozenset({b}), frozenset())),
            Rule(b, LiteralConjunction((a,), frozenset({a}), frozenset())),
        )
    )


_FUZZ_CLASSES = {
    "convex-coincide": frozenset({"monotone", "antimonotone", "convex"}),
    "psp-subset-flp": frozenset(
        {"monotone", "antimonotone", "convex", "nonconvex-bounded(3)"}
    ),
    "divergence": frozenset({"convex", "nonconvex-bounded(3)"}),
}


def run_fuzz(mode: str, cases: int, seed: int) -> FuzzResult:
    """Run a differential suite over seeded random programs.

    ``convex-coincide`` asserts that both semantics agree on convex programs,
    ``psp-subset-flp`` that every PSP answer set is an FLP answer set, and
    ``divergence`` that non-convex programs produce at least one case where
    the semantics differ (seeded by a fixed regression program).
    """
    if mode not in _FUZZ_CLASSES:
        raise ValueError(f"unknown fuzz mode {mode!r}")
    rng = random.Random(seed)
    failures: list[str] = []
    divergent = 0

    def check(program: Program, label: str) -> None:
        nonlocal divergent
        report = compare(program)
        if report.psp_minus_flp:
            failures.append(f"{label}: PSP answer set outside FLP")
        if mode == "convex-coincide" and report.flp_sets != report.psp_sets:
            failures.append(f"{label}: semantics differ on a convex program")
        if report.flp_minus_psp:
            divergent += 1

    if mode == "divergence":
        check(_loop_fixture(), "fixture")
    for case in range(cases):
        config = GeneratorConfig(
            atom_count=rng.randint(2, 6),
            rule_count=rng.randint(0, 8),
            structure_classes=_FUZZ_CLASSES[mode],
            seed=rng.getrandbits(64),
        )
        try:
            check(generate(config), f"case {case} (seed {config.seed})")
        except (GaspError, ValueError) as exc:
            failures.append(f"case {case} (seed {config.seed}): {exc}")
    return FuzzResult(mode, cases, tuple(failures), divergent)
