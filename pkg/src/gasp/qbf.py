"""2-QBF machinery: parsing, negation to 3DNF, and the reduction program.

A formula ∀x₁…x_m ∃y₁…y_n E with E in 3CNF is valid exactly when its
negation ∃x⃗ ∀y⃗ E' (E' the De Morgan 3DNF of ¬E) is invalid.  The reduction
builds a program whose PSP-cautious consequences include the witness atom
``w`` precisely for valid formulas: a pair of negation-as-failure rules per
variable guesses an assignment, a DNF body derives ``sat`` from satisfied
disjuncts of E', saturation rules force every existential atom once ``sat``
holds, and ``w`` follows from the failure of ``sat``.

The brute-force validity oracle enumerates assignments directly and shares
no code with the reduction path, so the two sides check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    HEAD_CAP_DEFAULT,
    QBF_VARIABLE_CAP_DEFAULT,
    Atom,
    Dnf,
    LiteralConjunction,
    Program,
    Rule,
)
from .errors import EmptyMatrix, ParseError, TooManyVariables, UnboundVariable
from .reasoning import cautious

#: A literal is a (variable name, polarity) pair; positive literals are True.
Literal = tuple[str, bool]
Clause = tuple[Literal, Literal, Literal]


@dataclass(frozen=True)
class Qbf:
    """∀-then-∃ prefix over a 3CNF matrix."""

    universals: tuple[str, ...]
    existentials: tuple[str, ...]
    matrix: tuple[Clause, ...]

    def __post_init__(self):
        if not self.universals or not self.existentials:
            raise ValueError("both quantifier blocks must be non-empty")
        declared = set(self.universals) | set(self.existentials)
        if len(declared) != len(self.universals) + len(self.existentials):
            raise ValueError("a variable is quantified twice")
        if not self.matrix:
            raise EmptyMatrix("the formula has no clauses")
        for clause in self.matrix:
            if len(clause) != 3:
                raise ValueError("clauses must have exactly 3 literals")
            for var, _ in clause:
                if var not in declared:
                    raise UnboundVariable(f"variable {var!r} is not quantified")


@dataclass(frozen=True)
class Dnf3:
    """A disjunction of 3-literal conjunctions."""

    disjuncts: tuple[Clause, ...]

    def __post_init__(self):
        for disjunct in self.disjuncts:
            if len(disjunct) != 3:
                raise ValueError("disjuncts must have exactly 3 literals")


_NAME = r"[A-Za-z][A-Za-z0-9_]*"


class _QbfScanner:
    """Token scanner for the bespoke prefix/clause grammar."""

    def __init__(self, text: str):
        import re

        self.tokens: list[tuple[str, int, int]] = []
        pattern = re.compile(
            rf"(?P<ws>[ \t\r]+)|(?P<comment>%[^\n]*)|(?P<nl>\n)"
            rf"|(?P<word>{_NAME})|(?P<sym>[.,()|&-])"
        )
        pos, line, line_start = 0, 1, 0
        while pos < len(text):
            m = pattern.match(text, pos)
            if m is None:
                raise ParseError(
                    f"unexpected character {text[pos]!r}",
                    line,
                    pos - line_start + 1,
                )
            if m.lastgroup == "nl":
                line += 1
                line_start = m.end()
            elif m.lastgroup in ("word", "sym"):
                self.tokens.append((m.group(), line, m.start() - line_start + 1))
            pos = m.end()
        self.tokens.append(("", line, pos - line_start + 1))
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def advance(self) -> str:
        text, _, _ = self.tokens[self.pos]
        if text:
            self.pos += 1
        return text

    def error(self, message: str):
        _, line, column = self.tokens[self.pos]
        raise ParseError(message, line, column)

    def expect(self, text: str) -> None:
        if self.peek() != text:
            self.error(f"expected {text!r}, found {self.peek() or 'end of input'!r}")
        self.advance()

    def name(self) -> str:
        tok = self.peek()
        if not tok or not tok[0].isalpha() or tok in ("forall", "exists"):
            self.error("expected a variable name")
        return self.advance()


def parse_qbf(text: str) -> Qbf:
    """Parse ``forall v, … . exists v, … . (l|l|l) & …`` into a Qbf.

    Clauses may list one to three literals; shorter clauses are padded by
    repeating their last literal.
    """
    scanner = _QbfScanner(text)
    scanner.expect("forall")
    universals = _var_block(scanner)
    scanner.expect("exists")
    existentials = _var_block(scanner)
    if not scanner.peek():
        raise EmptyMatrix("the formula has no clauses")
    declared = set(universals) | set(existentials)
    if len(declared) != len(universals) + len(existentials):
        scanner.error("a variable is quantified twice")
    clauses = [_clause(scanner, declared)]
    while scanner.peek() == "&":
        scanner.advance()
        clauses.append(_clause(scanner, declared))
    if scanner.peek():
        scanner.error(f"unexpected trailing input {scanner.peek()!r}")
    return Qbf(tuple(universals), tuple(existentials), tuple(clauses))


def _var_block(scanner: _QbfScanner) -> list[str]:
    names = [scanner.name()]
    while scanner.peek() == ",":
        scanner.advance()
        names.append(scanner.name())
    scanner.expect(".")
    return names


def _clause(scanner: _QbfScanner, declared: set[str]) -> Clause:
    scanner.expect("(")
    literals = [_literal(scanner, declared)]
    while scanner.peek() == "|":
        scanner.advance()
        literals.append(_literal(scanner, declared))
    scanner.expect(")")
    if len(literals) > 3:
        scanner.error("clauses are limited to 3 literals")
    while len(literals) < 3:
        literals.append(literals[-1])
    return tuple(literals)


def _literal(scanner: _QbfScanner, declared: set[str]) -> Literal:
    positive = True
    if scanner.peek() == "-":
        scanner.advance()
        positive = False
    _, line, column = scanner.tokens[scanner.pos]
    var = scanner.name()
    if var not in declared:
        raise UnboundVariable(f"variable {var!r} is not quantified", line, column)
    return (var, positive)


def parse_qdimacs(text: str) -> Qbf:
    """Read the QDIMACS subset: a ``p cnf`` header, one ``a`` line, one ``e``
    line, then 3-literal clauses terminated by 0.  Variable i becomes v<i>."""
    header = None
    a_vars: list[int] | None = None
    e_vars: list[int] | None = None
    clauses: list[Clause] = []
    names: dict[int, str] = {}

    def lit(value: int, declared: set[int], line_no: int) -> Literal:
        var = abs(value)
        if var not in declared:
            raise UnboundVariable(f"variable {var} is not quantified", line_no, 1)
        return (names[var], value > 0)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if header is not None:
                raise ParseError("duplicate problem line", line_no, 1)
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError("malformed problem line", line_no, 1)
            header = (int(fields[2]), int(fields[3]))
        elif fields[0] in ("a", "e"):
            if header is None:
                raise ParseError("quantifier line before problem line", line_no, 1)
            if fields[-1] != "0":
                raise ParseError("quantifier line must end in 0", line_no, 1)
            values = [int(f) for f in fields[1:-1]]
            if any(v <= 0 or v > header[0] for v in values):
                raise ParseError("quantified variable out of range", line_no, 1)
            for v in values:
                names[v] = f"v{v}"
            if fields[0] == "a":
                if a_vars is not None or e_vars is not None:
                    raise ParseError(
                        "expected a single a-line before the e-line", line_no, 1
                    )
                a_vars = values
            else:
                if a_vars is None or e_vars is not None:
                    raise ParseError(
                        "expected a single e-line after the a-line", line_no, 1
                    )
                e_vars = values
        else:
            if a_vars is None or e_vars is None:
                raise ParseError("clause before quantifier prefix", line_no, 1)
            if fields[-1] != "0":
                raise ParseError("clause must end in 0", line_no, 1)
            values = [int(f) for f in fields[:-1]]
            if not 1 <= len(values) <= 3:
                raise ParseError("clauses are limited to 3 literals", line_no, 1)
            declared = set(a_vars) | set(e_vars)
            literals = [lit(v, declared, line_no) for v in values]
            while len(literals) < 3:
                literals.append(literals[-1])
            clauses.append(tuple(literals))
    if header is None:
        raise ParseError("missing problem line", 1, 1)
    if a_vars is None or e_vars is None:
        raise ParseError("missing quantifier prefix", 1, 1)
    if header[1] != len(clauses):
        raise ParseError(
            f"problem line declares {header[1]} clauses, found {len(clauses)}", 1, 1
        )
    return Qbf(
        tuple(names[v] for v in a_vars),
        tuple(names[v] for v in e_vars),
        tuple(clauses),
    )


def sniff_and_parse(text: str) -> Qbf:
    """Parse either format, deciding by the first meaningful token."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith(("p", "c", "a", "e")) and not line.startswith(
            ("forall", "exists")
        ):
            return parse_qdimacs(text)
        break
    return parse_qbf(text)


def negate_to_dnf(matrix: tuple[Clause, ...]) -> Dnf3:
    """De Morgan: clause by clause, literal by literal complementation."""
    return Dnf3(
        tuple(
            tuple((var, not positive) for var, positive in clause)
            for clause in matrix
        )
    )


def _assignment_atom(qbf: Qbf, literal: Literal) -> Atom:
    var, positive = literal
    suffix = "T" if positive else "F"
    if var in qbf.universals:
        return Atom(f"x{qbf.universals.index(var) + 1}_{suffix}")
    return Atom(f"y{qbf.existentials.index(var) + 1}_{suffix}")


def _guess_pair(true_atom: Atom, false_atom: Atom) -> tuple[Rule, Rule]:
    return (
        Rule(
            true_atom,
            LiteralConjunction((false_atom,), frozenset(), frozenset({false_atom})),
        ),
        Rule(
            false_atom,
            LiteralConjunction((true_atom,), frozenset(), frozenset({true_atom})),
        ),
    )


def build_reduction(qbf: Qbf) -> Program:
    """The program whose PSP-cautious witness atom tracks formula validity.

    Universal variable i contributes the guessing pair ``xi_T ← not xi_F``
    and ``xi_F ← not xi_T`` (existentials likewise with ``yi_*``), each
    existential adds the saturation pair ``yi_T ← sat`` and ``yi_F ← sat``,
    the negated matrix becomes the single rule ``sat ← dnf{...}``, and the
    witness rule is ``w ← not sat``.
    """
    sat = Atom("sat")
    witness = Atom("w")
    rules: list[Rule] = []
    for i in range(1, len(qbf.universals) + 1):
        rules.extend(_guess_pair(Atom(f"x{i}_T"), Atom(f"x{i}_F")))
    for i in range(1, len(qbf.existentials) + 1):
        rules.extend(_guess_pair(Atom(f"y{i}_T"), Atom(f"y{i}_F")))
    for i in range(1, len(qbf.existentials) + 1):
        body = LiteralConjunction((sat,), frozenset({sat}), frozenset())
        rules.append(Rule(Atom(f"y{i}_T"), body))
        rules.append(Rule(Atom(f"y{i}_F"), body))
    negated = negate_to_dnf(qbf.matrix)
    domain: list[Atom] = []
    disjuncts = []
    for disjunct in negated.disjuncts:
        positive = set()
        for literal in disjunct:
            atom = _assignment_atom(qbf, literal)
            positive.add(atom)
            if atom not in domain:
                domain.append(atom)
        disjuncts.append((frozenset(positive), frozenset()))
    rules.append(Rule(sat, Dnf(tuple(domain), tuple(disjuncts))))
    rules.append(
        Rule(witness, LiteralConjunction((sat,), frozenset(), frozenset({sat})))
    )
    return Program(tuple(rules))


def qbf_valid(qbf: Qbf, *, max_variables: int = QBF_VARIABLE_CAP_DEFAULT) -> bool:
    """Brute-force validity: every universal assignment has an existential
    extension satisfying the matrix."""
    m = len(qbf.universals)
    n = len(qbf.existentials)
    if m + n > max_variables:
        raise TooManyVariables(
            f"{m + n} variables exceed the oracle cap of {max_variables}"
        )
    index = {var: i for i, var in enumerate(qbf.universals + qbf.existentials)}
    clause_masks = []
    for clause in qbf.matrix:
        pos = neg = 0
        for var, positive in clause:
            if positive:
                pos |= 1 << index[var]
            else:
                neg |= 1 << index[var]
        clause_masks.append((pos, neg))

    def matrix_true(assignment: int) -> bool:
        return all(
            assignment & pos or ~assignment & neg for pos, neg in clause_masks
        )

    for x_bits in range(1 << m):
        if not any(
            matrix_true(x_bits | (y_bits << m)) for y_bits in range(1 << n)
        ):
            return False
    return True


def verify_reduction(qbf: Qbf, *, max_heads: int = HEAD_CAP_DEFAULT) -> bool:
    """Whether PSP-cautious reasoning on the reduction agrees with the oracle."""
    program = build_reduction(qbf)
    return cautious(program, Atom("w"), "psp", max_heads=max_heads) == qbf_valid(qbf)
