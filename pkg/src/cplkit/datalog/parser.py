"""Datalog program syntax.

::

    % comment
    edge(a,b).
    path(X,Z) :- edge(X,Y), path(Y,Z).
    noedge(X,Y) :- path(X,Y), !edge(X,Y).
    p.

Predicates and constants start lowercase (constants may also be digits);
variables start uppercase or with ``_``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, RangeRestrictionError


def is_var(term: str) -> bool:
    return term[0].isupper() or term[0] == "_"


@dataclass(frozen=True)
class DAtom:
    pred: str
    args: tuple = ()

    def __str__(self):
        return self.pred if not self.args else f"{self.pred}({','.join(self.args)})"

    def variables(self) -> set:
        return {a for a in self.args if is_var(a)}


@dataclass(frozen=True)
class Literal:
    atom: DAtom
    negated: bool = False

    def __str__(self):
        return ("!" if self.negated else "") + str(self.atom)


@dataclass(frozen=True)
class Clause:
    head: DAtom
    body: tuple = ()
    line: int = 0

    def __str__(self):
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


@dataclass(frozen=True)
class Program:
    clauses: tuple

    def __str__(self):
        return "\n".join(map(str, self.clauses)) + ("\n" if self.clauses else "")


_TOK = re.compile(r"\s*(?:(%[^\n]*)|(:-)|([(),.!])|([A-Za-z0-9_][A-Za-z0-9_']*)|(\S))")


def _tokens(text: str, source: str):
    out = []
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(pos):
        line = 0
        lo, hi = 0, len(line_starts)
        while lo < hi:
            mid = (lo + hi) // 2
            if line_starts[mid] <= pos:
                line = mid
                lo = mid + 1
            else:
                hi = mid
        return line + 1, pos - line_starts[line] + 1

    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if m is None:
            break
        pos = m.end()
        kind = m.lastindex
        if kind is None or kind == 1:
            continue
        start = m.start(kind)
        line, col = where(start)
        if kind == 5:
            raise ParseError(f"unexpected character {m.group(5)!r}", line, col, source)
        out.append((m.group(kind), line, col))
    end = where(len(text))
    out.append(("<end>", *end))
    return out


class _Parser:
    def __init__(self, text, source):
        self.toks = _tokens(text, source)
        self.i = 0
        self.source = source

    def peek(self):
        return self.toks[self.i][0]

    def fail(self, msg, tok=None):
        _, line, col = tok or self.toks[self.i]
        raise ParseError(msg, line, col, self.source)

    def take(self, want=None):
        tok = self.toks[self.i]
        if want is not None and tok[0] != want:
            self.fail(f"expected {want!r}, found {tok[0]!r}")
        self.i += 1
        return tok

    def ident(self, what):
        tok = self.toks[self.i]
        if not re.fullmatch(r"[A-Za-z0-9_][A-Za-z0-9_']*", tok[0]) or tok[0] == "<end>":
            self.fail(f"expected {what}, found {tok[0]!r}")
        self.i += 1
        return tok

    def atom(self):
        tok = self.ident("a predicate")
        name = tok[0]
        if not name[0].islower():
            self.fail(f"predicate names start lowercase: {name!r}", tok)
        args = []
        if self.peek() == "(":
            self.take("(")
            while True:
                args.append(self.ident("a constant or variable")[0])
                if self.peek() == ",":
                    self.take()
                    continue
                self.take(")")
                break
        return DAtom(name, tuple(args)), tok

    def clause(self):
        if self.peek() == "!":
            self.fail("negation is only allowed in clause bodies")
        head, tok = self.atom()
        body = []
        if self.peek() == ":-":
            self.take()
            while True:
                neg = False
                if self.peek() == "!":
                    self.take()
                    neg = True
                atom, _ = self.atom()
                body.append(Literal(atom, neg))
                if self.peek() == ",":
                    self.take()
                    continue
                break
        self.take(".")
        clause = Clause(head, tuple(body), tok[1])
        bound = set().union(set(), *(lit.atom.variables() for lit in body if not lit.negated))
        free = sorted(head.variables() - bound)
        if free:
            raise RangeRestrictionError(
                f"head variable {free[0]} of {head} does not occur in a positive body literal",
                tok[1], tok[2], self.source)
        for lit in body:
            loose = sorted(lit.atom.variables() - bound)
            if lit.negated and loose:
                raise RangeRestrictionError(
                    f"variable {loose[0]} of {lit} does not occur in a positive body literal",
                    tok[1], tok[2], self.source)
        return clause

    def program(self):
        out = []
        while self.peek() != "<end>":
            out.append(self.clause())
        return Program(tuple(out))


def parse_program(text: str, source: str = "<program>") -> Program:
    return _Parser(text, source).program()


def parse_atom(text: str) -> DAtom:
    """A single ground or non-ground atom, e.g. ``noedge(a, a)``."""
    p = _Parser(text, "<atom>")
    atom, _ = p.atom()
    if p.peek() == ".":
        p.take()
    if p.peek() != "<end>":
        p.fail("trailing input after atom")
    return atom
