"""Judgments, contexts and the world-indexed context order."""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .frames import Frame, World
from .syntax import _Node


class Judgment(NamedTuple):
    prop: _Node
    world: World

    def __str__(self):
        return f"{self.prop} @ {self.world}"


Context = frozenset


def make_context(items: Iterable = ()) -> frozenset:
    """Build a context from judgments or ``(prop, world)`` pairs."""
    return frozenset(Judgment(p, w) for p, w in items)


def sort_key(j: Judgment):
    return (j.world, str(j.prop))


def ordered(ctx) -> tuple:
    """Canonical listing: by world name, then by printed proposition."""
    return tuple(sorted(ctx, key=sort_key))


def check_worlds(frame: Frame, ctx) -> None:
    for j in ctx:
        frame.idx(j.world)


def project(frame: Frame, ctx, w: World) -> frozenset:
    """Judgments at worlds reachable (reflexively) from ``w``."""
    row = frame.star_matrix[frame.idx(w)]
    index = frame.index
    return frozenset(j for j in ctx if row[index[j.world]])


def ctx_leq(frame: Frame, gamma, gamma2, w: World) -> bool:
    """``gamma`` below ``gamma2`` at ``w``: grow at ``w``, stay fixed strictly above it."""
    i = frame.idx(w)
    star, plus = frame.star_matrix[i], frame.plus_matrix[i]
    index = frame.index
    for j in gamma:
        if star[index[j.world]] and j not in gamma2:
            return False
    for j in gamma2:
        if plus[index[j.world]] and j not in gamma:
            return False
    return True


def format_context(ctx) -> str:
    return ", ".join(str(j) for j in ordered(ctx)) or "."
