"""Sequent files: ``hyp <prop> @ <world>`` lines and exactly one ``goal``."""

from __future__ import annotations

from typing import NamedTuple

from .context import Judgment, ordered
from .errors import ParseError
from .frames import Frame
from .syntax import Prop, parse_prop


class Sequent(NamedTuple):
    context: frozenset
    goal: Prop
    world: str


def _judgment(body: str, offset: int, lineno: int, source: str):
    at = body.rfind("@")
    if at < 0:
        raise ParseError("expected '<prop> @ <world>'", lineno, offset + 1, source)
    world = body[at + 1:].strip()
    if not world or len(world.split()) != 1:
        raise ParseError("expected a single world name after '@'", lineno, offset + at + 2, source)
    prop = parse_prop(body[:at], source, lineno, offset + 1)
    return Judgment(prop, world)


def parse_sequent(text: str, source: str = "<sequent>", frame: Frame | None = None) -> Sequent:
    hyps, goal = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        col = len(line) - len(stripped)
        kw, _, rest = stripped.partition(" ")
        offset = col + len(kw) + 1
        if kw == "hyp":
            j = _judgment(rest, offset, lineno, source)
            hyps.append((j, lineno))
        elif kw == "goal":
            if goal is not None:
                raise ParseError("more than one goal line", lineno, col + 1, source)
            goal = (_judgment(rest, offset, lineno, source), lineno)
        else:
            raise ParseError(f"expected 'hyp' or 'goal', got {kw!r}", lineno, col + 1, source)
    if goal is None:
        raise ParseError("missing goal line", 0, 0, source)
    if frame is not None:
        for j, lineno in hyps + [goal]:
            if j.world not in frame:
                raise ParseError(f"undeclared world {j.world!r}", lineno, 1, source)
    return Sequent(frozenset(j for j, _ in hyps), goal[0].prop, goal[0].world)


def format_sequent(seq: Sequent) -> str:
    lines = [f"hyp {j.prop} @ {j.world}" for j in ordered(seq.context)]
    lines.append(f"goal {seq.goal} @ {seq.world}")
    return "\n".join(lines) + "\n"
