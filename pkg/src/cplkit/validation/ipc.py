"""Contraction-free decision procedure for intuitionistic implication and falsehood.

Deliberately shares no code with the modal provers: formulas are converted to
plain tuples (``("p", name)``, ``("bot",)``, ``("imp", a, b)``) and searched
with the terminating left-implication rules, which need no loop check.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import FragmentError
from ..syntax import Atom, Bot, Imp, Prop

BOT_T = ("bot",)


def to_tuple(p: Prop):
    if isinstance(p, Atom):
        return ("p", p.name)
    if isinstance(p, Bot):
        return BOT_T
    if isinstance(p, Imp):
        return ("imp", to_tuple(p.left), to_tuple(p.right))
    raise FragmentError(f"{p} is outside the implication/falsehood fragment")


def _simplify(gamma: frozenset) -> frozenset:
    """Apply the invertible left rules to a fixpoint."""
    gamma = set(gamma)
    changed = True
    while changed:
        changed = False
        for f in list(gamma):
            if f[0] != "imp":
                continue
            ante = f[1]
            if ante == BOT_T:
                gamma.discard(f)
                changed = True
            elif ante[0] == "p" and ante in gamma:
                gamma.discard(f)
                gamma.add(f[2])
                changed = True
    return frozenset(gamma)


@lru_cache(maxsize=None)
def _prove(gamma: frozenset, goal) -> bool:
    gamma = _simplify(gamma)
    if BOT_T in gamma or goal in gamma:
        return True
    if goal[0] == "imp":
        return _prove(gamma | {goal[1]}, goal[2])
    for f in sorted(gamma, key=repr):
        if f[0] == "imp" and f[1][0] == "imp":
            d, b = f[1][2], f[2]
            rest = gamma - {f}
            if _prove(rest | {("imp", d, b)}, f[1]) and _prove(rest | {b}, goal):
                return True
    return False


def ipc_decide(p: Prop, hyps=()) -> bool:
    """Intuitionistic provability of ``hyps |- p`` for atoms, ``bot`` and ``->``."""
    return _prove(frozenset(to_tuple(h) for h in hyps), to_tuple(p))
