import pytest

from gasp.classify import classify
from gasp.core import Atom, Program
from gasp.parser import format_program, parse_program
from gasp.reasoning import (
    GeneratorConfig,
    SemanticsReport,
    brave,
    cautious,
    compare,
    format_report,
    generate,
    run_fuzz,
)

from util import A, I, sum_pair, sum_pair_loop


# --- cautious and brave -------------------------------------------------------


def test_cautious_on_sum_pair():
    program = sum_pair()
    for semantics in ("flp", "psp"):
        assert not cautious(program, A("a"), semantics)
        assert not cautious(program, A("b"), semantics)


def test_cautious_on_the_loop_program_is_vacuous_for_psp():
    program = sum_pair_loop()
    for semantics in ("flp", "psp"):
        assert cautious(program, A("a"), semantics)
        assert cautious(program, A("b"), semantics)


def test_cautious_on_empty_program():
    # The sole answer set is the empty set.
    assert not cautious(Program(()), A("a"), "flp")
    assert not cautious(Program(()), A("a"), "psp")


def test_brave_queries():
    assert brave(sum_pair(), A("a"), "flp")
    assert brave(sum_pair(), A("a"), "psp")
    assert not brave(sum_pair_loop(), A("a"), "psp")
    assert brave(sum_pair_loop(), A("a"), "flp")
    assert not brave(Program(()), A("a"), "flp")


def test_unknown_semantics_is_rejected():
    with pytest.raises(ValueError):
        cautious(sum_pair(), A("a"), "glp")


# --- compare -------------------------------------------------------------------


def test_compare_sum_pair():
    report = compare(sum_pair())
    assert report.flp_sets == (I("a"), I("b"))
    assert report.psp_sets == (I("a"), I("b"))
    assert report.flp_minus_psp == ()
    assert report.psp_minus_flp == ()
    # Mixed-sign sums are non-convex; the semantics coincide here anyway.
    assert not report.all_convex
    assert [c.label for c in report.per_rule_class] == ["non-convex", "non-convex"]


def test_compare_loop_program_shows_the_divergence():
    report = compare(sum_pair_loop())
    assert report.flp_sets == (I("a", "b"),)
    assert report.psp_sets == ()
    assert report.flp_minus_psp == (I("a", "b"),)
    assert report.psp_minus_flp == ()


def test_compare_empty_program():
    report = compare(Program(()))
    assert report.flp_sets == report.psp_sets == (I(),)
    assert report.all_convex
    assert report.per_rule_class == ()


def test_compare_runs_coincidence_obligations_on_convex_programs():
    program = parse_program("a :- count{b} <= 0.\nb :- a.\nc :- a, b.\n")
    assert all(classify(r.body).convex for r in program.rules)
    report = compare(program)
    assert report.all_convex
    assert report.flp_sets == report.psp_sets


def test_report_invariants():
    with pytest.raises(ValueError):
        SemanticsReport(
            flp_sets=(),
            psp_sets=(I("a"),),
            psp_minus_flp=(I("a"),),
            flp_minus_psp=(),
            per_rule_class=(),
            all_convex=False,
        )
    with pytest.raises(ValueError):
        SemanticsReport(
            flp_sets=(I("a"),),
            psp_sets=(),
            psp_minus_flp=(),
            flp_minus_psp=(I("a"),),
            per_rule_class=(),
            all_convex=True,
        )


def test_kv_report_format():
    got = format_report(compare(sum_pair_loop()), style="kv")
    assert got == (
        "flp={a, b}\n"
        "psp=\n"
        "flp_minus_psp={a, b}\n"
        "psp_minus_flp=\n"
        "classes=non-convex,non-convex,monotone,monotone\n"
        "all_convex=false\n"
    )


def test_text_report_mentions_divergence():
    text = format_report(compare(sum_pair_loop()), style="text")
    assert "semantics diverge" in text
    text = format_report(compare(Program(())), style="text")
    assert "coincide" in text


# --- generator -------------------------------------------------------------------


@pytest.mark.parametrize(
    "spec,predicate",
    [
        ("monotone", lambda c: c.monotone),
        ("antimonotone", lambda c: c.antimonotone),
        ("convex", lambda c: c.convex),
        ("nonconvex", lambda c: not c.convex),
        ("nonconvex-bounded(2)", lambda c: not c.convex),
    ],
)
def test_generated_bodies_match_their_class(spec, predicate):
    config = GeneratorConfig(
        atom_count=5, rule_count=30, structure_classes={spec}, seed=12
    )
    program = generate(config)
    assert len(program.rules) > 0
    for rule in program.rules:
        assert predicate(classify(rule.body))


def test_bounded_nonconvex_bodies_respect_the_bound():
    config = GeneratorConfig(
        atom_count=6,
        rule_count=30,
        structure_classes={"nonconvex-bounded(2)"},
        seed=21,
    )
    for rule in generate(config).rules:
        assert len(rule.body.domain) <= 2
        assert not classify(rule.body).convex


def test_generation_is_deterministic():
    config = GeneratorConfig(
        atom_count=5,
        rule_count=15,
        structure_classes={"convex", "nonconvex"},
        seed=987,
    )
    assert format_program(generate(config)) == format_program(generate(config))


def test_generated_programs_parse_back():
    config = GeneratorConfig(
        atom_count=4,
        rule_count=20,
        structure_classes={"monotone", "nonconvex-bounded(3)"},
        seed=5,
    )
    program = generate(config)
    assert parse_program(format_program(program)) == program


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(atom_count=0, rule_count=1, structure_classes={"convex"}, seed=1)
    with pytest.raises(ValueError):
        GeneratorConfig(atom_count=3, rule_count=-1, structure_classes={"convex"}, seed=1)
    with pytest.raises(ValueError):
        GeneratorConfig(atom_count=3, rule_count=1, structure_classes=set(), seed=1)
    with pytest.raises(ValueError):
        GeneratorConfig(
            atom_count=3, rule_count=1, structure_classes={"weird"}, seed=1
        )
    with pytest.raises(ValueError):
        GeneratorConfig(
            atom_count=3,
            rule_count=1,
            structure_classes={"nonconvex-bounded(1)"},
            seed=1,
        )
    with pytest.raises(ValueError):
        generate(
            GeneratorConfig(
                atom_count=1, rule_count=1, structure_classes={"nonconvex"}, seed=1
            )
        )


# --- fuzz runner ------------------------------------------------------------------


def test_fuzz_convex_coincide_smoke():
    result = run_fuzz("convex-coincide", cases=40, seed=11)
    assert result.ok
    assert result.failures == ()


def test_fuzz_subset_smoke():
    result = run_fuzz("psp-subset-flp", cases=40, seed=12)
    assert result.ok


def test_fuzz_divergence_finds_a_witness():
    result = run_fuzz("divergence", cases=30, seed=13)
    assert result.ok
    assert result.divergent >= 1


def test_fuzz_unknown_mode():
    with pytest.raises(ValueError):
        run_fuzz("who-knows", cases=1, seed=1)
