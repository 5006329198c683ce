"""Polarization of propositions and contexts, and erasure back."""

from __future__ import annotations

from collections.abc import Mapping

from .context import Judgment
from .errors import PolarityClashError
from .syntax import (BOT, PBOT, Atom, Bot, Box, Dia, Down, Imp, NAtom, PAtom, PBot, PBox,
                     PDia, PImp, Prop, Up, _Node)


class Polarities:
    """Per-problem atom polarity table.  Undeclared atoms are positive."""

    def __init__(self, table: Mapping[str, str] | None = None):
        self._table: dict[str, str] = {}
        for name, sign in (table or {}).items():
            self.declare(name, sign)

    def declare(self, name: str, sign: str) -> None:
        if sign not in ("+", "-"):
            raise ValueError(f"polarity must be '+' or '-', not {sign!r}")
        old = self._table.get(name)
        if old is not None and old != sign:
            raise PolarityClashError(f"atom {name!r} declared both {old} and {sign}")
        self._table[name] = sign

    def __getitem__(self, name: str) -> str:
        return self._table.get(name, "+")

    def atom(self, name: str):
        return NAtom(name) if self[name] == "-" else PAtom(name)


_DEFAULT = Polarities()


def _table(polarities) -> Polarities:
    if polarities is None:
        return _DEFAULT
    if isinstance(polarities, Polarities):
        return polarities
    return Polarities(polarities)


def pos(a: Prop, pol: Polarities):
    if isinstance(a, Atom):
        q = pol.atom(a.name)
        return q if q.positive else Down(q)
    if isinstance(a, Bot):
        return PBOT
    if isinstance(a, Dia):
        return PDia(pos(a.body, pol))
    if isinstance(a, Box):
        return PBox(pos(a.body, pol))
    if isinstance(a, Imp):
        return Down(PImp(pos(a.left, pol), neg(a.right, pol)))
    raise TypeError(f"not an unpolarized proposition: {a!r}")


def neg(a: Prop, pol: Polarities):
    if isinstance(a, Atom):
        q = pol.atom(a.name)
        return Up(q) if q.positive else q
    if isinstance(a, Imp):
        return PImp(pos(a.left, pol), neg(a.right, pol))
    if isinstance(a, (Bot, Dia, Box)):
        return Up(pos(a, pol))
    raise TypeError(f"not an unpolarized proposition: {a!r}")


def hyp(a: Prop, pol: Polarities):
    """Stable-positive form of a hypothesis."""
    if isinstance(a, Atom):
        q = pol.atom(a.name)
        return q if q.positive else Down(q)
    if isinstance(a, (Bot, Dia, Box)):
        return Down(Up(pos(a, pol)))
    if isinstance(a, Imp):
        return Down(PImp(pos(a.left, pol), neg(a.right, pol)))
    raise TypeError(f"not an unpolarized proposition: {a!r}")


def polarize(item, mode: str, polarities=None):
    """Translate a proposition (``mode`` ``pos``/``neg``) or a context (``ctx``)."""
    pol = _table(polarities)
    if mode == "pos":
        return pos(item, pol)
    if mode == "neg":
        return neg(item, pol)
    if mode == "ctx":
        return frozenset(Judgment(hyp(j.prop, pol), j.world) for j in item)
    raise ValueError(f"mode must be 'pos', 'neg' or 'ctx', not {mode!r}")


def erase(item):
    """Drop shifts and atom polarities; contexts are erased point-wise."""
    if isinstance(item, (frozenset, set)):
        return frozenset(Judgment(erase(j.prop), j.world) for j in item)
    if isinstance(item, Judgment):
        return Judgment(erase(item.prop), item.world)
    if isinstance(item, (PAtom, NAtom)):
        return Atom(item.name)
    if isinstance(item, (Down, Up)):
        return erase(item.body)
    if isinstance(item, PBot):
        return BOT
    if isinstance(item, PDia):
        return Dia(erase(item.body))
    if isinstance(item, PBox):
        return Box(erase(item.body))
    if isinstance(item, PImp):
        return Imp(erase(item.left), erase(item.right))
    raise TypeError(f"not a polarized proposition: {item!r}")


def check_polarities(items) -> None:
    """Raise if any atom name occurs both positively and negatively."""
    seen: dict[str, str] = {}
    for node in items:
        if isinstance(node, Judgment):
            node = node.prop
        for sub in node.subformulas():
            if isinstance(sub, (PAtom, NAtom)):
                sign = "+" if isinstance(sub, PAtom) else "-"
                if seen.setdefault(sub.name, sign) != sign:
                    raise PolarityClashError(f"atom {sub.name!r} used with both polarities")


def is_polarized(node: _Node) -> bool:
    return not isinstance(node, Prop)
