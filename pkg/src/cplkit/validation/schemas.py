"""Axiom schemas with their expected status in each logic."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from ..syntax import Atom, Box, Dia, Imp, Prop, atoms_of, parse_prop

METAVARS = ("A", "B", "C")

VALID, INVALID, UNKNOWN = "valid", "invalid", "unknown"


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    template: Prop
    # logic -> expected verdict; logics missing here are not checked
    expected: dict
    transitive: bool = False

    def metavars(self) -> list[str]:
        return sorted(a for a in atoms_of(self.template) if a in METAVARS)


def instantiate(template: Prop, env: dict) -> Prop:
    if isinstance(template, Atom):
        return env.get(template.name, template)
    if isinstance(template, Imp):
        return Imp(instantiate(template.left, env), instantiate(template.right, env))
    if isinstance(template, Dia):
        return Dia(instantiate(template.body, env))
    if isinstance(template, Box):
        return Box(instantiate(template.body, env))
    return template


def instances(schema: AxiomSchema, samples, rng: random.Random, limit: int = 12) -> list:
    """All instances for one metavariable, a seeded subsample of ``limit`` otherwise."""
    vs = schema.metavars()
    if not vs:
        return [schema.template]
    combos = list(product(samples, repeat=len(vs)))
    if len(vs) > 1 and len(combos) > limit:
        combos = rng.sample(combos, limit)
    return [instantiate(schema.template, dict(zip(vs, c))) for c in combos]


BOTH = ("cpl", "cpl*")


def _s(name, text, expected, transitive=False):
    return AxiomSchema(name, parse_prop(text), expected, transitive)


SCHEMAS = (
    _s("I", "A -> A", dict.fromkeys(BOTH, VALID)),
    _s("K", "A -> B -> A", dict.fromkeys(BOTH, VALID)),
    _s("S", "(A -> B -> C) -> (A -> B) -> A -> C", dict.fromkeys(BOTH, VALID)),
    _s("botE", "bot -> A", dict.fromkeys(BOTH, VALID)),
    _s("Kbox", "box (A -> B) -> box A -> box B", dict.fromkeys(BOTH, VALID)),
    _s("Kdia", "box (A -> B) -> dia A -> dia B", dict.fromkeys(BOTH, VALID)),
    _s("4box", "box A -> box box A", dict.fromkeys(BOTH, VALID), transitive=True),
    _s("GL", "box (box A -> A) -> box A", dict.fromkeys(BOTH, VALID), transitive=True),
    _s("diabot", "~dia bot", {"cpl": INVALID, "cpl*": VALID}),
    _s("4dia", "dia dia A -> dia A", {"cpl": UNKNOWN, "cpl*": VALID}, transitive=True),
    _s("dia-box-imp", "(dia A -> box B) -> box (A -> B)", dict.fromkeys(BOTH, INVALID)),
    _s("DM-dia-neg", "dia ~A -> ~box A", {"cpl": INVALID, "cpl*": VALID}),
    _s("DM-box-neg", "box ~A -> ~dia A", {"cpl": INVALID, "cpl*": VALID}),
    _s("DM-neg-dia", "~dia A -> box ~A", dict.fromkeys(BOTH, INVALID)),
    _s("DM-neg-box", "~box A -> dia ~A", dict.fromkeys(BOTH, INVALID)),
)

SCHEMA_BY_NAME = {s.name: s for s in SCHEMAS}
