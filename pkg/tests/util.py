"""Shared fixtures and brute-force oracles for the test suite.

The oracles here are deliberately definitional and independent of the
production code paths: answer sets are found by enumerating the full lattice,
conditional satisfaction checks every interpretation between its bounds, and
classification loops over all subset triples.
"""

import random

from gasp.core import (
    Atom,
    Count,
    Interpretation,
    LiteralConjunction,
    Program,
    Rule,
    Sum,
    TruthTable,
    evaluate,
)


def A(name):
    return Atom(name)


def I(*names):
    return Interpretation.of(*names)


def lits(*specs):
    """Literal-conjunction builder: ``lits("a", "-b")`` is ``a, not b``."""
    domain = []
    positive = set()
    negative = set()
    for spec in specs:
        if spec.startswith("-"):
            atom = Atom(spec[1:])
            negative.add(atom)
        else:
            atom = Atom(spec)
            positive.add(atom)
        domain.append(atom)
    return LiteralConjunction(tuple(domain), frozenset(positive), frozenset(negative))


def rule(head, body):
    return Rule(Atom(head), body)


def sum_pair():
    """Two rules with mirrored mixed-sign sum bodies; answer sets {a} and {b}."""
    a, b = Atom("a"), Atom("b")
    return Program(
        (
            Rule(a, Sum((a, b), (1, -1), ">=", 0)),
            Rule(b, Sum((a, b), (-1, 1), ">=", 0)),
        )
    )


def sum_pair_loop():
    """The sum pair plus an even support loop; FLP keeps {a,b}, PSP nothing."""
    a, b = Atom("a"), Atom("b")
    return Program(
        sum_pair().rules
        + (
            Rule(a, lits("b")),
            Rule(b, lits("a")),
        )
    )


def hole_table():
    """Truth table over {xt, xf} that is true everywhere except at {xf}."""
    xt, xf = Atom("xt"), Atom("xf")
    return TruthTable((xt, xf), frozenset({0b00, 0b01, 0b11}))


def mirror_hole_table():
    """The mirrored pattern: true everywhere except at {xt}."""
    xt, xf = Atom("xt"), Atom("xf")
    return TruthTable((xt, xf), frozenset({0b00, 0b10, 0b11}))


def count_hole(x="x", y="y"):
    """Two-atom cardinality-is-not-one aggregate, the smallest non-convex body."""
    return Count((Atom(x), Atom(y)), "!=", 1)


def literal_conjunction(m, n, prefix="a"):
    """Conjunction of m positive then n-m negated atoms over n atoms."""
    atoms = tuple(Atom(f"{prefix}{i}") for i in range(1, n + 1))
    return LiteralConjunction(atoms, frozenset(atoms[:m]), frozenset(atoms[m:]))


def subsets(atoms):
    atoms = list(atoms)
    for mask in range(1 << len(atoms)):
        yield frozenset(a for i, a in enumerate(atoms) if mask >> i & 1)


def brute_models(rules, members):
    candidate = Interpretation(members)
    return all(
        r.head in members or not evaluate(r.body, candidate) for r in rules
    )


def brute_flp_answer_sets(program, universe=None):
    """Definitional FLP answer sets over subsets of an atom universe."""
    if universe is None:
        universe = set()
        for r in program.rules:
            universe.add(r.head)
            universe.update(r.body.domain)
    found = []
    for candidate in subsets(universe):
        reduct = [
            r for r in program.rules if evaluate(r.body, Interpretation(candidate))
        ]
        if not brute_models(reduct, candidate):
            continue
        if any(
            brute_models(reduct, sub)
            for sub in subsets(candidate)
            if sub != candidate
        ):
            continue
        found.append(Interpretation(candidate))
    return sorted(found, key=lambda s: (len(s), tuple(a.name for a in s)))


def brute_cond_sat(structure, lower, upper):
    """Definitional conditional satisfaction over the full [lower, upper] span."""
    assert lower <= upper
    extra = upper.atoms - lower.atoms
    return all(
        evaluate(structure, Interpretation(lower.atoms | more))
        for more in subsets(extra)
    )


def brute_k(program, upper, lower):
    return frozenset(
        r.head for r in program.rules if brute_cond_sat(r.body, lower, upper)
    )


def brute_is_psp(program, candidate):
    current = Interpretation(frozenset())
    for _ in range(len(program.rules) + len(candidate) + 2):
        nxt = Interpretation(brute_k(program, candidate, current))
        if nxt == current:
            return current == candidate
        current = nxt
        if not current <= candidate:
            return False
    raise AssertionError("fixpoint iteration failed to settle")


def brute_psp_answer_sets(program):
    heads = sorted({r.head for r in program.rules})
    found = [
        Interpretation(candidate)
        for candidate in subsets(heads)
        if brute_is_psp(program, Interpretation(candidate))
    ]
    return sorted(found, key=lambda s: (len(s), tuple(a.name for a in s)))


def brute_classify(structure):
    """Triple-loop classification over the subsets of the domain."""
    values = {
        members: evaluate(structure, Interpretation(members))
        for members in subsets(structure.domain)
    }
    keys = list(values)
    monotone = all(
        values[y]
        for x in keys
        for y in keys
        if x < y and values[x]
    )
    antimonotone = all(
        values[y]
        for y in keys
        for z in keys
        if y < z and values[z]
    )
    convex = all(
        values[y]
        for x in keys
        for y in keys
        for z in keys
        if x < y < z and values[x] and values[z]
    )
    return monotone, antimonotone, convex


def random_normal_program(rng, atom_count, rule_count):
    """Seeded random program with literal-conjunction bodies only."""
    pool = [Atom(f"a{i}") for i in range(1, atom_count + 1)]
    rules = []
    for _ in range(rule_count):
        head = rng.choice(pool)
        size = rng.randint(0, min(3, len(pool)))
        body_atoms = tuple(rng.sample(pool, size))
        negative = frozenset(a for a in body_atoms if rng.random() < 0.5)
        positive = frozenset(a for a in body_atoms if a not in negative)
        rules.append(Rule(head, LiteralConjunction(body_atoms, positive, negative)))
    return Program(tuple(rules))


def chain_program(length):
    """`length` rules from two facts plus a chain of two-atom count bodies.

    Each chain body is a variant of the cardinality-is-not-one aggregate, and
    each fixpoint stage derives exactly one new atom, so answer-set checking
    performs work quadratic in the rule count.
    """
    assert length >= 2
    c1, c2 = Atom("c1"), Atom("c2")
    rules = [Rule(c1, lits()), Rule(c2, lits())]
    prev = c2
    for i in range(1, length - 1):
        head = Atom(f"h{i:04d}")
        rules.append(Rule(head, Count((prev, c1), "!=", 1)))
        prev = head
    program = Program(tuple(rules))
    model = Interpretation(frozenset(r.head for r in rules))
    return program, model


def make_rng(seed):
    return random.Random(seed)
