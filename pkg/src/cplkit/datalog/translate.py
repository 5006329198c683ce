"""Compile a two-stratum program into a polarized context over ``beta < gamma``.

Lower-stratum clauses live at ``gamma``; upper-stratum clauses live at
``beta`` and see lower-stratum atoms through a box.  A negated premise
becomes ``↓(□Q ⊃ ↑⊥)``, which right-focuses successfully exactly when ``Q``
is not provable at ``gamma``.
"""

from __future__ import annotations

from ..context import Judgment
from ..frames import build_frame
from ..syntax import PBOT, Down, PAtom, PBox, PImp, Up, pimps
from .stratify import StratifiedProgram

LOW, HIGH = "gamma", "beta"
FRAME = build_frame([HIGH, LOW], [(HIGH, LOW)])


def world_of(stratum: int) -> str:
    return LOW if stratum == 1 else HIGH


def clause_prop(sp: StratifiedProgram, rule):
    """Polarized hypothesis for one ground rule."""
    head = Up(PAtom(rule.head))
    if sp.stratum_of(rule.head) == 1:
        return Down(pimps(*[PAtom(a) for a in rule.pos], head))
    prem = []
    for a in rule.pos:
        prem.append(PAtom(a) if sp.stratum_of(a) == 2 else PBox(PAtom(a)))
    for a in rule.neg:
        prem.append(Down(PImp(PBox(PAtom(a)), Up(PBOT))))
    return Down(pimps(*prem, head))


def translate(sp: StratifiedProgram):
    """Returns ``(frame, context)``."""
    ctx = set()
    for r in sp.rules1:
        ctx.add(Judgment(clause_prop(sp, r), LOW))
    for r in sp.rules2:
        ctx.add(Judgment(clause_prop(sp, r), HIGH))
    return FRAME, frozenset(ctx)
