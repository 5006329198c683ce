"""Bottom-up saturation, queries and the prover cross-check."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..focused import FocusedSearch, Inv
from ..kernels import compile_rules, fixpoint, immediate_step
from ..syntax import PAtom, Up
from .ground import GroundProgram, ground
from .parser import parse_atom, parse_program
from .stratify import StratifiedProgram, stratify
from .translate import FRAME, translate, world_of


@dataclass
class Database:
    strata: dict
    preds: dict
    facts: dict = field(default_factory=dict)     # world -> frozenset of atoms
    # (phase, round, atom) in derivation order
    log: list = field(default_factory=list)

    def at(self, world: str) -> frozenset:
        return self.facts.get(world, frozenset())

    def lines(self) -> list[str]:
        return sorted(f"{a}@{w}" for w, atoms in self.facts.items() for a in atoms)

    def __contains__(self, item) -> bool:
        atom, world = item
        return atom in self.at(world)


class _Index:
    def __init__(self, atoms):
        self.names = sorted(atoms)
        self.ids = {a: i for i, a in enumerate(self.names)}

    def vector(self, atoms) -> np.ndarray:
        v = np.zeros(len(self.names), dtype=np.bool_)
        for a in atoms:
            v[self.ids[a]] = True
        return v

    def decode(self, vec) -> set:
        return {self.names[i] for i in np.flatnonzero(vec)}


def _compiled(index: _Index, rules):
    return compile_rules(len(index.names),
                         [(index.ids[r.head], [index.ids[a] for a in r.pos],
                           [index.ids[a] for a in r.neg]) for r in rules])


def immediate(stratum: int, rules, db: Database, use_numba: bool | None = None) -> set:
    """Heads of ``rules`` whose premises hold in ``db`` and that are not already derived.

    Lower-stratum premises are read at ``gamma`` and upper-stratum ones at
    ``beta``; negated premises must be absent from ``gamma``.
    """
    own = world_of(stratum)
    known = set(db.at("gamma")) | set(db.at("beta"))
    index = _Index(known | {r.head for r in rules}
                   | {a for r in rules for a in r.pos + r.neg})
    vec = index.vector(known)
    new = immediate_step(_compiled(index, rules), vec, use_numba)
    return index.decode(new) - set(db.at(own))


def saturate(sp: StratifiedProgram, semi_naive: bool = False, use_numba: bool | None = None,
             order=None) -> Database:
    """Saturate the lower stratum, then the upper one.

    ``order`` optionally permutes rule indices within each stratum (the
    fixpoint must not depend on it).
    """
    gp: GroundProgram = sp.program
    index = _Index(set(gp.preds))
    db = Database(sp.strata, gp.preds)
    vec = np.zeros(len(index.names), dtype=np.bool_)
    for phase, rules in ((1, sp.rules1), (2, sp.rules2)):
        rules = list(rules)
        if order is not None:
            rules = [rules[i] for i in order(len(rules))]
        if not rules:
            continue
        vec, added, _ = fixpoint(_compiled(index, rules), vec, semi_naive, use_numba)
        fresh = np.flatnonzero(added)
        for i in sorted(fresh, key=lambda i: (added[i], index.names[i])):
            db.log.append((phase, int(added[i]), index.names[i]))
    derived = index.decode(vec)
    db.facts = {
        "gamma": frozenset(a for a in derived if sp.stratum_of(a) == 1),
        "beta": frozenset(a for a in derived if sp.stratum_of(a) == 2),
    }
    return db


def _canon(atom) -> str:
    return str(parse_atom(atom)) if isinstance(atom, str) else str(atom)


def query(db: Database, atom) -> bool:
    name = _canon(atom)
    pred = db.preds.get(name)
    if pred is None:
        return False
    return name in db.at(world_of(db.strata.get(pred, 1)))


def crosscheck(sp: StratifiedProgram, atom, search: FocusedSearch | None = None) -> bool:
    """Verdict of the focused prover on the translated program."""
    name = _canon(atom)
    frame, ctx = translate(sp)
    world = world_of(sp.stratum_of(name))
    search = search or FocusedSearch(frame)
    return search.decide(Inv(ctx, None, Up(PAtom(name)), world)).provable


def run_program(text: str, source: str = "<program>") -> tuple[StratifiedProgram, Database]:
    sp = stratify(ground(parse_program(text, source)))
    return sp, saturate(sp)


__all__ = ["Database", "immediate", "saturate", "query", "crosscheck", "run_program", "FRAME"]
