"""Herbrand grounding over the constants that occur in the program."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..errors import EmptyDomainError
from .parser import Clause, DAtom, Program, is_var


@dataclass(frozen=True)
class GroundRule:
    head: str
    pos: tuple
    neg: tuple
    clause: Clause | None = None

    def __str__(self):
        body = list(self.pos) + ["!" + a for a in self.neg]
        return f"{self.head} :- {', '.join(body)}." if body else f"{self.head}."


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple
    constants: tuple
    # predicate of every ground atom mentioned anywhere
    preds: dict

    def atoms(self) -> list:
        return sorted(self.preds)


def constants_of(program: Program) -> tuple:
    out = set()
    for c in program.clauses:
        for atom in [c.head] + [lit.atom for lit in c.body]:
            out.update(a for a in atom.args if not is_var(a))
    return tuple(sorted(out))


def _inst(atom: DAtom, env: dict) -> DAtom:
    return DAtom(atom.pred, tuple(env.get(a, a) for a in atom.args))


def ground(program: Program) -> GroundProgram:
    consts = constants_of(program)
    rules, preds = [], {}
    for c in program.clauses:
        vs = sorted(set().union(c.head.variables(), *(lit.atom.variables() for lit in c.body)))
        if vs and not consts:
            raise EmptyDomainError(f"clause on line {c.line} has variables but the program has no constants")
        for values in product(consts, repeat=len(vs)):
            env = dict(zip(vs, values))
            head = _inst(c.head, env)
            pos = tuple(str(_inst(l.atom, env)) for l in c.body if not l.negated)
            neg = tuple(str(_inst(l.atom, env)) for l in c.body if l.negated)
            preds[str(head)] = head.pred
            for l in c.body:
                preds[str(_inst(l.atom, env))] = l.atom.pred
            rules.append(GroundRule(str(head), pos, neg, c))
    return GroundProgram(tuple(rules), consts, preds)
