"""Finite frames: worlds plus an acyclic accessibility relation."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import CyclicError, ParseError, UnknownWorldError
from .kernels import transitive_closure

World = str


class Frame:
    """Immutable finite frame.

    Worlds are kept in canonical (lexicographic) order and interned to their
    position in that order; ``index[w]`` gives the integer id.  Closure tables
    are computed once at construction.
    """

    def __init__(self, worlds, edges):
        self.worlds = tuple(sorted(set(worlds)))
        self.index = {w: i for i, w in enumerate(self.worlds)}
        self.edges = frozenset((a, b) for a, b in edges)
        n = len(self.worlds)
        adj = np.zeros((n, n), dtype=np.bool_)
        for a, b in self.edges:
            adj[self.index[a], self.index[b]] = True
        self.succ = tuple(tuple(j for j in range(n) if adj[i, j]) for i in range(n))
        plus = transitive_closure(adj)
        star = plus | np.eye(n, dtype=np.bool_)
        plus.setflags(write=False)
        star.setflags(write=False)
        self._plus = plus
        self._star = star
        self.plus_sets = tuple(frozenset(np.flatnonzero(plus[i]).tolist()) for i in range(n))
        self.star_sets = tuple(frozenset(np.flatnonzero(star[i]).tolist()) for i in range(n))
        self._hash = hash((self.worlds, self.edges))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (isinstance(other, Frame) and self.worlds == other.worlds
                and self.edges == other.edges)

    def __repr__(self):
        es = ", ".join(f"{a}<{b}" for a, b in sorted(self.edges))
        return f"Frame([{', '.join(self.worlds)}]; {es})"

    def __reduce__(self):
        return (Frame, (self.worlds, tuple(sorted(self.edges))))

    def __contains__(self, w):
        return w in self.index

    def __len__(self):
        return len(self.worlds)

    @property
    def plus_matrix(self) -> np.ndarray:
        return self._plus

    @property
    def star_matrix(self) -> np.ndarray:
        return self._star

    def idx(self, w: World) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise UnknownWorldError(w) from None

    @cached_property
    def scan_order(self) -> tuple[int, ...]:
        # worlds with the fewest reachable worlds first, ties by name
        return tuple(sorted(range(len(self.worlds)),
                            key=lambda i: (len(self.plus_sets[i]), self.worlds[i])))

    def is_transitive(self) -> bool:
        adj = np.zeros_like(self._plus)
        for a, b in self.edges:
            adj[self.index[a], self.index[b]] = True
        return bool((adj == self._plus).all())

    def to_text(self) -> str:
        lines = [f"world {w}" for w in self.worlds]
        lines += [f"edge {a} {b}" for a, b in sorted(self.edges)]
        return "\n".join(lines) + "\n"


def _find_cycle(worlds, edges):
    adj = {w: [] for w in worlds}
    for a, b in edges:
        adj[a].append(b)
    for w in adj:
        adj[w].sort()
    color = dict.fromkeys(worlds, 0)
    for root in sorted(worlds):
        if color[root]:
            continue
        path = [root]
        stack = [iter(adj[root])]
        color[root] = 1
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                color[path.pop()] = 2
                stack.pop()
                continue
            if color[nxt] == 1:
                return path[path.index(nxt):] + [nxt]
            if color[nxt] == 0:
                color[nxt] = 1
                path.append(nxt)
                stack.append(iter(adj[nxt]))
    return None


def build_frame(worlds, edges) -> Frame:
    """Validate and build a frame; raises on undeclared endpoints or cycles."""
    worlds = list(worlds)
    declared = set(worlds)
    edges = [tuple(e) for e in edges]
    for a, b in edges:
        for w in (a, b):
            if w not in declared:
                raise UnknownWorldError(w)
    cycle = _find_cycle(declared, edges)
    if cycle is not None:
        raise CyclicError(cycle)
    return Frame(worlds, edges)


def successors(frame: Frame, w: World) -> list[World]:
    i = frame.idx(w)
    return [frame.worlds[j] for j in frame.succ[i]]


def reaches(frame: Frame, w: World, w2: World, mode: str = "star") -> bool:
    i, j = frame.idx(w), frame.idx(w2)
    if mode == "star":
        return bool(frame.star_matrix[i, j])
    if mode == "plus":
        return bool(frame.plus_matrix[i, j])
    raise ValueError(f"mode must be 'star' or 'plus', not {mode!r}")


RUNNING_FRAME = build_frame(["alpha", "beta", "gamma"],
                            [("alpha", "beta"), ("alpha", "gamma"), ("beta", "gamma")])


def parse_frame(text: str, source: str = "<frame>") -> Frame:
    """Parse the line format ``world <name>`` / ``edge <a> <b>`` ('#' comments)."""
    worlds, edges, where = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        parts = line.split()
        if not parts:
            continue
        col = len(line) - len(line.lstrip()) + 1
        kw = parts[0]
        if kw == "world" and len(parts) == 2:
            if parts[1] in worlds:
                raise ParseError(f"world {parts[1]!r} declared twice", lineno, col, source)
            worlds.append(parts[1])
        elif kw == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
            where[(parts[1], parts[2])] = lineno
        else:
            raise ParseError(f"expected 'world <name>' or 'edge <a> <b>', got {line.strip()!r}",
                             lineno, col, source)
    try:
        return build_frame(worlds, edges)
    except UnknownWorldError as exc:
        line = next((ln for (a, b), ln in where.items() if exc.world in (a, b)), 0)
        raise ParseError(str(exc), line, 1, source) from exc
    except CyclicError as exc:
        raise ParseError(str(exc), where.get((exc.cycle[0], exc.cycle[1]), 0), 1, source) from exc
