import pytest

from gasp.core import (
    Atom,
    Count,
    Dnf,
    Interpretation,
    LiteralConjunction,
    Program,
    Renaming,
    Rule,
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
from gasp.errors import DomainTooLarge
from gasp.reasoning import GeneratorConfig, generate

from util import I, A, hole_table, lits, subsets, sum_pair


# --- evaluation per kind ---------------------------------------------------


def test_count_not_equal_true_on_full_domain():
    domain = tuple(Atom(f"a{i}") for i in range(1, 6))
    structure = Count(domain, "!=", 3)
    assert evaluate(structure, Interpretation(frozenset(domain)))


def test_sum_pair_truth_pattern():
    # True exactly when the restriction to {a, b} is not {b}.
    structure = Sum((A("a"), A("b")), (1, -1), ">=", 0)
    assert evaluate(structure, I())
    assert evaluate(structure, I("a"))
    assert evaluate(structure, I("a", "b"))
    assert not evaluate(structure, I("b"))


def test_empty_domain_table_is_constant():
    structure = TruthTable((), frozenset({0}))
    for interp in (I(), I("a"), I("x", "y", "z")):
        assert evaluate(structure, interp)
    never = TruthTable((), frozenset())
    assert not evaluate(never, I())
    assert not evaluate(never, I("q"))


def test_hole_table_satisfaction_pattern():
    structure = hole_table()
    assert evaluate(structure, I())
    assert evaluate(structure, I("xt"))
    assert not evaluate(structure, I("xf"))
    assert evaluate(structure, I("xt", "xf"))


def test_literal_conjunction_eval():
    structure = lits("a", "-b")
    assert evaluate(structure, I("a"))
    assert evaluate(structure, I("a", "c"))
    assert not evaluate(structure, I("a", "b"))
    assert not evaluate(structure, I())


def test_dnf_eval():
    a, b = A("a"), A("b")
    structure = Dnf(
        (a, b),
        ((frozenset({a}), frozenset({b})), (frozenset({b}), frozenset())),
    )
    assert evaluate(structure, I("a"))
    assert evaluate(structure, I("b"))
    assert evaluate(structure, I("a", "b"))  # second disjunct
    assert not evaluate(structure, I())


@pytest.mark.parametrize(
    "comparator,size,guard,expected",
    [
        ("=", 2, 2, True),
        ("!=", 2, 2, False),
        ("<=", 1, 2, True),
        ("<", 2, 2, False),
        (">=", 2, 2, True),
        (">", 3, 2, True),
    ],
)
def test_count_comparators(comparator, size, guard, expected):
    domain = tuple(Atom(f"c{i}") for i in range(size))
    structure = Count(domain, comparator, guard)
    assert evaluate(structure, Interpretation(frozenset(domain))) is expected


# --- irrelevance and renaming ----------------------------------------------


def _generated_bodies(seed, classes, cases=25):
    config = GeneratorConfig(
        atom_count=5, rule_count=cases, structure_classes=classes, seed=seed
    )
    return [r.body for r in generate(config).rules]


def test_evaluation_ignores_atoms_outside_domain():
    fresh = I("zz1", "zz2", "zz3")
    bodies = _generated_bodies(11, {"convex", "nonconvex"})
    for body in bodies:
        for members in subsets(body.domain):
            interp = Interpretation(members)
            assert evaluate(body, interp) == evaluate(body, interp | fresh)


def test_rename_swaps_sum_into_its_mirror():
    original = Sum((A("a"), A("b")), (1, -1), ">=", 0)
    mirror = Sum((A("a"), A("b")), (-1, 1), ">=", 0)
    swap = Renaming.of({A("a"): A("b"), A("b"): A("a")})
    variant = rename(original, swap)
    assert set(variant.domain) == {A("a"), A("b")}
    for members in subsets((A("a"), A("b"))):
        interp = Interpretation(members)
        assert evaluate(variant, interp) == evaluate(mirror, interp)


def test_identity_renaming_is_structural_identity():
    structure = Count((A("x"), A("y")), "!=", 1)
    assert rename(structure, Renaming(())) == structure


def test_rename_count_exhaustive_agreement():
    structure = Count((A("x"), A("y")), "!=", 1)
    renamed = rename(
        structure, Renaming.of({A("x"): A("u"), A("u"): A("x"), A("y"): A("v"), A("v"): A("y")})
    )
    assert renamed == Count((A("u"), A("v")), "!=", 1)
    mapping = {A("x"): A("u"), A("y"): A("v")}
    for members in subsets((A("x"), A("y"))):
        image = frozenset(mapping[a] for a in members)
        assert evaluate(structure, Interpretation(members)) == evaluate(
            renamed, Interpretation(image)
        )


def test_renaming_equivariance_fuzz():
    swap = Renaming.of(
        {A("a1"): A("a2"), A("a2"): A("a3"), A("a3"): A("a1")}
    )
    for body in _generated_bodies(23, {"monotone", "nonconvex"}):
        for members in subsets(body.domain):
            interp = Interpretation(members)
            assert evaluate(body, interp) == evaluate(
                rename(body, swap), rename_interpretation(interp, swap)
            )


def test_renaming_validation():
    with pytest.raises(ValueError):
        Renaming(((A("a"), A("c")), (A("b"), A("c"))))
    with pytest.raises(ValueError):
        # Not a bijection: nothing maps back onto a.
        Renaming.of({A("a"): A("b")})


# --- tabulation (kind agreement) -------------------------------------------


def test_tabulate_agrees_with_direct_evaluation():
    bodies = _generated_bodies(37, {"antimonotone", "convex", "nonconvex"})
    bodies.append(Sum((A("a"), A("b")), (1, -1), ">=", 0))
    bodies.append(lits("a", "-b", "c"))
    for body in bodies:
        table = tabulate(body)
        assert table.domain == body.domain
        for members in subsets(body.domain):
            interp = Interpretation(members)
            assert evaluate(table, interp) == evaluate(body, interp)


def test_tabulate_rejects_oversized_domains():
    domain = tuple(Atom(f"b{i}") for i in range(25))
    with pytest.raises(DomainTooLarge):
        tabulate(Count(domain, ">=", 1))


# --- rules and programs ----------------------------------------------------


def test_models_program_on_sum_pair():
    program = sum_pair()
    assert not models_program(I(), program)
    # Both bodies are true at {a, b} and both heads are present, so it is
    # a model (just not a minimal one, as the answer-set tests show).
    assert models_program(I("a", "b"), program)
    assert models_program(I("a"), program)
    assert models_program(I("b"), program)


def test_models_program_empty_program():
    assert models_program(I(), Program(()))
    assert models_program(I("x", "y"), Program(()))


def test_models_program_antitone_under_rule_addition():
    base = sum_pair()
    extra = Rule(A("c"), lits("a"))
    extended = Program(base.rules + (extra,))
    for members in subsets((A("a"), A("b"), A("c"))):
        interp = Interpretation(members)
        if not models_program(interp, base):
            assert not models_program(interp, extended)


def test_atoms_and_head_atoms():
    program = sum_pair()
    assert atoms(program) == (A("a"), A("b"))
    assert head_atoms(program) == (A("a"), A("b"))
    assert atoms(Program(())) == ()
    assert head_atoms(Program(())) == ()
    single = Program((Rule(A("h"), Count((A("x"), A("y")), "!=", 1)),))
    assert atoms(single) == (A("h"), A("x"), A("y"))
    assert head_atoms(single) == (A("h"),)


def test_program_deduplicates_rules_preserving_order():
    r1 = Rule(A("a"), lits("b"))
    r2 = Rule(A("b"), lits())
    program = Program((r1, r2, r1, r2, r1))
    assert program.rules == (r1, r2)


def test_structural_equality_is_domain_order_sensitive():
    one = Count((A("x"), A("y")), "=", 1)
    other = Count((A("y"), A("x")), "=", 1)
    assert one != other


# --- type validation --------------------------------------------------------


def test_atom_name_validation():
    with pytest.raises(ValueError):
        Atom("9lives")
    with pytest.raises(ValueError):
        Atom("")
    with pytest.raises(ValueError):
        Atom("has space")


def test_interpretation_is_canonically_ordered():
    interp = I("c", "a", "b")
    assert [a.name for a in interp] == ["a", "b", "c"]
    assert str(interp) == "{a, b, c}"
    assert str(I()) == "{}"


def test_structure_invariants():
    with pytest.raises(ValueError):
        LiteralConjunction((A("a"),), frozenset({A("a")}), frozenset({A("a")}))
    with pytest.raises(ValueError):
        LiteralConjunction((A("a"), A("b")), frozenset({A("a")}), frozenset())
    with pytest.raises(ValueError):
        TruthTable((A("a"),), frozenset({2}))
    with pytest.raises(ValueError):
        Sum((A("a"),), (1, 2), ">=", 0)
    with pytest.raises(ValueError):
        Count((A("a"), A("a")), "=", 1)
    with pytest.raises(ValueError):
        Dnf((A("a"),), ())
