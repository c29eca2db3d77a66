import pytest

from gasp.classify import classify
from gasp.core import Atom, Interpretation, Program, Sum, evaluate
from gasp.errors import DomainTooLarge, PreconditionViolated, TooManyHeads
from gasp.flp import enumerate_flp_answer_sets, flp_reduct
from gasp.psp import (
    cond_sat,
    enumerate_psp_answer_sets,
    is_psp_answer_set,
    k_operator,
    lfp_k,
)
from gasp.reasoning import GeneratorConfig, generate

from util import (
    A,
    I,
    brute_cond_sat,
    brute_psp_answer_sets,
    hole_table,
    lits,
    make_rng,
    rule,
    subsets,
    sum_pair,
    sum_pair_loop,
)


def mirrored_sums():
    keep_a = Sum((A("a"), A("b")), (1, -1), ">=", 0)
    keep_b = Sum((A("a"), A("b")), (-1, 1), ">=", 0)
    return keep_a, keep_b


# --- conditional satisfaction ---------------------------------------------


def test_cond_sat_on_the_sum_pair():
    keep_a, keep_b = mirrored_sums()
    assert cond_sat(keep_a, I(), I("a"))
    assert not cond_sat(keep_b, I(), I("a"))
    assert not cond_sat(keep_b, I("a"), I("a"))


def test_cond_sat_with_equal_bounds_is_plain_evaluation():
    keep_a, _ = mirrored_sums()
    for members in subsets((A("a"), A("b"))):
        interp = Interpretation(members)
        assert cond_sat(keep_a, interp, interp) == evaluate(keep_a, interp)


def test_cond_sat_sees_the_hole():
    structure = hole_table()
    assert not cond_sat(structure, I(), I("xt", "xf"))
    assert cond_sat(structure, I("xt"), I("xt", "xf"))


def test_cond_sat_precondition():
    keep_a, _ = mirrored_sums()
    with pytest.raises(PreconditionViolated):
        cond_sat(keep_a, I("a"), I("b"))


def test_cond_sat_domain_cap():
    domain = tuple(Atom(f"d{i}") for i in range(8))
    wide = Sum(domain, tuple(1 for _ in domain), ">=", 0)
    with pytest.raises(DomainTooLarge):
        cond_sat(wide, I(), I(), max_domain=7)


def test_cond_sat_matches_full_lattice_oracle():
    rng = make_rng(31)
    config = GeneratorConfig(
        atom_count=4,
        rule_count=40,
        structure_classes={"monotone", "convex", "nonconvex-bounded(3)"},
        seed=8,
    )
    bodies = [r.body for r in generate(config).rules]
    extra = (A("a1"), A("a2"), A("a3"), A("a4"), A("q1"), A("q2"))
    for body in bodies:
        for _ in range(6):
            upper = frozenset(a for a in extra if rng.random() < 0.5)
            lower = frozenset(a for a in upper if rng.random() < 0.5)
            low, up = Interpretation(lower), Interpretation(upper)
            assert cond_sat(body, low, up) == brute_cond_sat(body, low, up)


def test_cond_sat_monotone_in_lower_bound():
    rng = make_rng(13)
    config = GeneratorConfig(
        atom_count=4,
        rule_count=30,
        structure_classes={"convex", "nonconvex-bounded(3)"},
        seed=9,
    )
    pool = (A("a1"), A("a2"), A("a3"), A("a4"))
    for body in [r.body for r in generate(config).rules]:
        upper = frozenset(a for a in pool if rng.random() < 0.6)
        lower = frozenset(a for a in upper if rng.random() < 0.5)
        middle = frozenset(a for a in upper if a in lower or rng.random() < 0.5)
        low, mid, up = map(Interpretation, (lower, middle, upper))
        if cond_sat(body, low, up):
            assert cond_sat(body, mid, up)


def test_convex_shortcut():
    config = GeneratorConfig(
        atom_count=4, rule_count=40, structure_classes={"convex"}, seed=55
    )
    rng = make_rng(56)
    pool = (A("a1"), A("a2"), A("a3"), A("a4"))
    for body in [r.body for r in generate(config).rules]:
        assert classify(body).convex
        upper = frozenset(a for a in pool if rng.random() < 0.6)
        lower = frozenset(a for a in upper if rng.random() < 0.5)
        low, up = Interpretation(lower), Interpretation(upper)
        assert cond_sat(body, low, up) == (
            evaluate(body, low) and evaluate(body, up)
        )


# --- the derivation operator -----------------------------------------------


def test_k_operator_on_sum_pair():
    program = sum_pair()
    assert k_operator(program, I("a"), I()) == I("a")


def test_k_operator_with_empty_upper_bound():
    program = sum_pair()
    # Both sum bodies are true at the empty set.
    assert k_operator(program, I(), I()) == I("a", "b")


def test_k_operator_precondition():
    with pytest.raises(PreconditionViolated):
        k_operator(sum_pair(), I("a"), I("b"))


def test_k_operator_agrees_with_reduct_form():
    rng = make_rng(300)
    for seed in range(20):
        config = GeneratorConfig(
            atom_count=rng.randint(2, 5),
            rule_count=rng.randint(1, 6),
            structure_classes={"convex", "nonconvex-bounded(3)"},
            seed=seed,
        )
        program = generate(config)
        heads = {r.head for r in program.rules}
        upper = Interpretation(frozenset(a for a in heads if rng.random() < 0.6))
        lower = Interpretation(
            frozenset(a for a in upper.atoms if rng.random() < 0.5)
        )
        restricted = Program(flp_reduct(program, upper).rules)
        assert k_operator(program, upper, lower) == k_operator(
            restricted, upper, lower
        )


# --- fixpoints ----------------------------------------------------------------


def test_lfp_stages_on_sum_pair():
    trace = lfp_k(sum_pair(), I("a"))
    assert trace.stages == (I(), I("a"), I("a"))
    assert trace.converged
    assert trace.fixpoint == I("a")


def test_lfp_on_empty_program():
    trace = lfp_k(Program(()), I())
    assert trace.stages == (I(), I())
    assert trace.converged


def test_lfp_on_the_loop_program_stalls_at_the_bottom():
    trace = lfp_k(sum_pair_loop(), I("a", "b"))
    assert trace.converged
    assert trace.fixpoint == I()
    assert trace.fixpoint != I("a", "b")


def test_lfp_aborts_when_a_stage_escapes():
    program = Program((rule("b", lits()),))
    trace = lfp_k(program, I("a"))
    assert not trace.converged
    assert trace.stages[-1] == I("b")


def test_lfp_stage_growth_and_length_bound():
    rng = make_rng(71)
    for seed in range(25):
        config = GeneratorConfig(
            atom_count=rng.randint(2, 5),
            rule_count=rng.randint(0, 7),
            structure_classes={"monotone", "convex", "nonconvex-bounded(3)"},
            seed=seed,
        )
        program = generate(config)
        heads = {r.head for r in program.rules}
        upper = Interpretation(frozenset(a for a in heads if rng.random() < 0.7))
        trace = lfp_k(program, upper)
        assert len(trace.stages) <= len(heads) + 2
        for earlier, later in zip(trace.stages, trace.stages[1:]):
            assert earlier <= later
        if trace.converged:
            assert trace.stages[-2] == trace.stages[-1]


# --- answer sets ----------------------------------------------------------------


def test_answer_set_examples():
    program = sum_pair()
    assert is_psp_answer_set(program, I("a"))
    assert is_psp_answer_set(program, I("b"))
    assert not is_psp_answer_set(sum_pair_loop(), I("a", "b"))
    assert is_psp_answer_set(Program(()), I())


def test_candidates_outside_the_head_atoms_are_rejected():
    assert not is_psp_answer_set(sum_pair(), I("a", "z"))


def test_enumerate_examples():
    assert enumerate_psp_answer_sets(sum_pair()) == [I("a"), I("b")]
    assert enumerate_psp_answer_sets(sum_pair_loop()) == []
    assert enumerate_psp_answer_sets(Program(())) == [I()]


def test_enumerate_head_cap():
    program = Program(tuple(rule(f"h{i}", lits()) for i in range(5)))
    with pytest.raises(TooManyHeads):
        enumerate_psp_answer_sets(program, max_heads=4)


def test_enumeration_matches_brute_force():
    rng = make_rng(47)
    for seed in range(25):
        config = GeneratorConfig(
            atom_count=rng.randint(2, 5),
            rule_count=rng.randint(0, 6),
            structure_classes={"antimonotone", "convex", "nonconvex-bounded(3)"},
            seed=3000 + seed,
        )
        program = generate(config)
        assert enumerate_psp_answer_sets(program) == brute_psp_answer_sets(program)


def test_every_psp_answer_set_is_an_flp_answer_set():
    rng = make_rng(86)
    for seed in range(30):
        config = GeneratorConfig(
            atom_count=rng.randint(2, 6),
            rule_count=rng.randint(0, 7),
            structure_classes={"convex", "nonconvex-bounded(3)", "nonconvex"},
            seed=4000 + seed,
        )
        program = generate(config)
        flp_sets = set(enumerate_flp_answer_sets(program))
        for answer_set in enumerate_psp_answer_sets(program):
            assert answer_set in flp_sets
