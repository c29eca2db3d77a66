"""Text format for programs (``.gasp`` files) and its pretty-printer.

Grammar (``%`` starts a line comment)::

    rule      := atom ":-" body "." | atom "."
    body      := structure | lit ("," lit)*
    lit       := atom | "not" atom
    structure := "count" "{" atomlist "}" cmp int
               | "sum" "{" atom "=" int ("," atom "=" int)* "}" cmp int
               | "table" "{" atomlist ":" rows "}"
               | "dnf" "{" atomlist ":" disjunct ("|" disjunct)* "}"
               | "not" structure
    cmp       := "=" | "!=" | "<=" | "<" | ">=" | ">"

A bare fact is a rule with an empty literal-conjunction body.  Table rows are
comma-separated bitstrings whose i-th character says whether the i-th listed
atom is present ('1') or absent ('0'); the listing order also fixes the
bitmask convention of the resulting truth table.  ``not`` before a structure
complements it at parse time: count and sum flip their comparator, tables
complement their satisfied rows, and DNFs are tabulated and complemented.
The ``dnf`` form lists its domain explicitly, then disjuncts of literals
separated by ``|``.

The printer emits this same grammar, so ``parse_program(format_program(p))``
reproduces ``p`` structurally.
"""

from __future__ import annotations

import re

from .core import (
    COMPARATORS,
    COMPLEMENT_COMPARATOR,
    Atom,
    Count,
    Dnf,
    LiteralConjunction,
    Program,
    Rule,
    Structure,
    Sum,
    TruthTable,
    tabulate,
)
from .errors import ParseError

KEYWORDS = frozenset({"not", "count", "sum", "table", "dnf"})

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>%[^\n]*)
      | (?P<nl>\n)
      | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
      | (?P<digits>[0-9]+)
      | (?P<sym>:-|!=|<=|>=|[.,{}:=<>|\-])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"_Token({self.kind}, {self.text!r})"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(
                _Token(kind, m.group(), line, m.start() - line_start + 1)
            )
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text:
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def atom(self) -> Atom:
        tok = self.peek()
        if tok.kind != "ident":
            self.error(f"expected an atom, found {tok.text or 'end of input'!r}")
        if tok.text in KEYWORDS:
            self.error(f"{tok.text!r} is a reserved word")
        self.advance()
        return Atom(tok.text)

    def integer(self) -> int:
        sign = 1
        if self.peek().text == "-":
            self.advance()
            sign = -1
        tok = self.peek()
        if tok.kind != "digits":
            self.error("expected an integer")
        self.advance()
        return sign * int(tok.text)

    def comparator(self) -> str:
        tok = self.peek()
        if tok.text not in COMPARATORS:
            self.error("expected a comparator (= != <= < >= >)")
        self.advance()
        return tok.text

    def program(self) -> Program:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.rule())
        return Program(tuple(rules))

    def rule(self) -> Rule:
        head = self.atom()
        if self.peek().text == ":-":
            self.advance()
            body = self.body()
        else:
            body = LiteralConjunction((), frozenset(), frozenset())
        self.expect(".")
        return Rule(head, body)

    def body(self) -> Structure:
        tok = self.peek()
        if tok.text in ("count", "sum", "table", "dnf"):
            return self.structure()
        if tok.text == "not" and self.peek(1).text in (
            "count",
            "sum",
            "table",
            "dnf",
            "not",
        ):
            return self.structure()
        return self.literal_list()

    def literal_list(self) -> LiteralConjunction:
        domain: list[Atom] = []
        positive: set[Atom] = set()
        negative: set[Atom] = set()
        while True:
            tok = self.peek()
            negated = False
            if tok.text == "not":
                self.advance()
                negated = True
            a = self.atom()
            bucket = negative if negated else positive
            other = positive if negated else negative
            if a in other:
                self.error(f"conflicting literals on {a.name!r}", tok)
            if a not in bucket:
                bucket.add(a)
                domain.append(a)
            if self.peek().text != ",":
                break
            self.advance()
        return LiteralConjunction(
            tuple(domain), frozenset(positive), frozenset(negative)
        )

    def atom_list(self, closer: str) -> list[Atom]:
        out: list[Atom] = []
        if self.peek().text == closer:
            return out
        while True:
            a = self.atom()
            if a in out:
                self.error(f"duplicate atom {a.name!r} in listing")
            out.append(a)
            if self.peek().text != ",":
                return out
            self.advance()

    def structure(self) -> Structure:
        tok = self.peek()
        if tok.text == "not":
            self.advance()
            return _complement(self.structure(), self, tok)
        if tok.text == "count":
            self.advance()
            self.expect("{")
            domain = self.atom_list("}")
            self.expect("}")
            return Count(tuple(domain), self.comparator(), self.integer())
        if tok.text == "sum":
            self.advance()
            self.expect("{")
            domain: list[Atom] = []
            weights: list[int] = []
            if self.peek().text != "}":
                while True:
                    a = self.atom()
                    if a in domain:
                        self.error(f"duplicate atom {a.name!r} in sum")
                    self.expect("=")
                    domain.append(a)
                    weights.append(self.integer())
                    if self.peek().text != ",":
                        break
                    self.advance()
            self.expect("}")
            return Sum(
                tuple(domain), tuple(weights), self.comparator(), self.integer()
            )
        if tok.text == "table":
            self.advance()
            self.expect("{")
            domain = self.atom_list(":")
            if not domain:
                self.error("a table needs at least one domain atom")
            self.expect(":")
            satisfied = self.rows(len(domain))
            self.expect("}")
            return TruthTable(tuple(domain), frozenset(satisfied))
        if tok.text == "dnf":
            self.advance()
            self.expect("{")
            domain = self.atom_list(":")
            if not domain:
                self.error("a dnf needs at least one domain atom")
            self.expect(":")
            disjuncts = [self.disjunct(domain)]
            while self.peek().text == "|":
                self.advance()
                disjuncts.append(self.disjunct(domain))
            self.expect("}")
            return Dnf(tuple(domain), tuple(disjuncts))
        self.error(
            f"expected a structure, found {tok.text or 'end of input'!r}"
        )

    def rows(self, width: int) -> set[int]:
        satisfied: set[int] = set()
        if self.peek().text == "}":
            return satisfied
        while True:
            tok = self.peek()
            if tok.kind != "digits":
                self.error("expected a bitstring row")
            self.advance()
            if len(tok.text) != width or set(tok.text) - {"0", "1"}:
                self.error(
                    f"row {tok.text!r} is not a bitstring of length {width}", tok
                )
            mask = 0
            for i, ch in enumerate(tok.text):
                if ch == "1":
                    mask |= 1 << i
            satisfied.add(mask)
            if self.peek().text != ",":
                return satisfied
            self.advance()

    def disjunct(self, domain: list[Atom]) -> tuple[frozenset[Atom], frozenset[Atom]]:
        positive: set[Atom] = set()
        negative: set[Atom] = set()
        while True:
            tok = self.peek()
            negated = False
            if tok.text == "not":
                self.advance()
                negated = True
            a = self.atom()
            if a not in domain:
                self.error(f"atom {a.name!r} is not in the dnf domain", tok)
            if a in (positive if negated else negative):
                self.error(f"conflicting literals on {a.name!r}", tok)
            (negative if negated else positive).add(a)
            if self.peek().text != ",":
                return frozenset(positive), frozenset(negative)
            self.advance()


def _complement(structure: Structure, parser: _Parser, tok: _Token) -> Structure:
    if isinstance(structure, (Count, Sum)):
        flipped = COMPLEMENT_COMPARATOR[structure.comparator]
        if isinstance(structure, Count):
            return Count(structure.domain, flipped, structure.guard)
        return Sum(structure.domain, structure.weights, flipped, structure.guard)
    if isinstance(structure, TruthTable):
        full = frozenset(range(1 << len(structure.domain)))
        return TruthTable(structure.domain, full - structure.satisfied)
    if isinstance(structure, Dnf):
        table = tabulate(structure)
        full = frozenset(range(1 << len(table.domain)))
        return TruthTable(table.domain, full - table.satisfied)
    parser.error("cannot complement this body", tok)


def parse_program(text: str) -> Program:
    """Parse program text into a Program; raises ParseError with position."""
    return _Parser(text).program()


def format_structure(structure: Structure) -> str:
    if isinstance(structure, LiteralConjunction):
        return ", ".join(
            ("not " if a in structure.negative else "") + a.name
            for a in structure.domain
        )
    if isinstance(structure, Count):
        names = ", ".join(a.name for a in structure.domain)
        return f"count{{{names}}} {structure.comparator} {structure.guard}"
    if isinstance(structure, Sum):
        entries = ", ".join(
            f"{a.name} = {w}" for a, w in zip(structure.domain, structure.weights)
        )
        return f"sum{{{entries}}} {structure.comparator} {structure.guard}"
    if isinstance(structure, TruthTable):
        names = ", ".join(a.name for a in structure.domain)
        k = len(structure.domain)
        rows = ", ".join(
            "".join("1" if mask >> i & 1 else "0" for i in range(k))
            for mask in sorted(structure.satisfied)
        )
        return f"table{{{names} : {rows}}}"
    if isinstance(structure, Dnf):
        names = ", ".join(a.name for a in structure.domain)
        parts = []
        for pos, neg in structure.disjuncts:
            lits = [
                ("not " if a in neg else "") + a.name
                for a in structure.domain
                if a in pos or a in neg
            ]
            parts.append(", ".join(lits))
        return f"dnf{{{names} : {' | '.join(parts)}}}"
    raise TypeError(f"cannot format structure of type {type(structure).__name__}")


def format_rule(rule: Rule) -> str:
    body = format_structure(rule.body)
    if body:
        return f"{rule.head.name} :- {body}."
    return f"{rule.head.name}."


def format_program(program: Program) -> str:
    return "".join(format_rule(r) + "\n" for r in program.rules)
