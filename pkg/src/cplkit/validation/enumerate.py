"""Exhaustive formula enumeration by depth (atoms and ``bot`` have depth 1)."""

from __future__ import annotations

from ..syntax import BOT, Atom, Box, Dia, Imp


def formulas(depth: int, atoms=("p", "q"), modal: bool = True, bottom: bool = True) -> list:
    """All formulas of depth at most ``depth``, ordered by depth then construction."""
    base = [Atom(a) for a in atoms] + ([BOT] if bottom else [])
    if depth < 1:
        return []
    levels = [base]
    allf = list(base)
    for _ in range(depth - 1):
        new = []
        prev = levels[-1]
        older = allf[:len(allf) - len(prev)]
        if modal:
            new += [Dia(a) for a in prev] + [Box(a) for a in prev]
        # at least one side from the previous level
        for a in prev:
            for b in allf:
                new.append(Imp(a, b))
        for a in older:
            for b in prev:
                new.append(Imp(a, b))
        levels.append(new)
        allf += new
    return allf


def count(depth: int, n_base: int = 3, modal: bool = True) -> int:
    """Closed-form count used as a cross-check of :func:`formulas`."""
    total = 0
    for _ in range(depth):
        total = n_base + (2 * total if modal else 0) + total * total
    return total
