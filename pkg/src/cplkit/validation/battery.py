"""Seeded frame batteries and sampled contexts."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..context import Judgment
from ..frames import Frame, build_frame
from ..syntax import BOT, parse_prop

SAMPLE_TEXTS = ("p", "q", "bot", "p -> p", "~p", "dia p", "box q", "p -> q", "box (p -> p)")


def default_samples() -> tuple:
    return tuple(parse_prop(s) for s in SAMPLE_TEXTS)


@dataclass(frozen=True)
class FrameBattery:
    seed: int
    frames: tuple
    transitive: bool = False

    def __len__(self):
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)


def _random_frame(rng: random.Random, max_worlds: int) -> Frame:
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    order = rng.sample(worlds, n)
    edges = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return build_frame(worlds, edges)


def transitive_closure_frame(frame: Frame) -> Frame:
    plus = frame.plus_matrix
    ws = frame.worlds
    edges = [(ws[i], ws[j]) for i in range(len(ws)) for j in range(len(ws)) if plus[i, j]]
    return build_frame(ws, edges)


def gen_frames(seed: int, count: int, max_worlds: int, transitive: bool = False) -> FrameBattery:
    """Random DAGs: a random topological order, each forward pair an edge with probability 1/2."""
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    rng = random.Random(seed)
    frames = [_random_frame(rng, max_worlds) for _ in range(count)]
    if transitive:
        frames = [transitive_closure_frame(f) for f in frames]
    return FrameBattery(seed, tuple(frames), transitive)


def sample_contexts(frame: Frame, samples, rng: random.Random, n_random: int = 2,
                    max_size: int = 4) -> list:
    """The empty context, one inconsistent world, and ``n_random`` small random contexts.

    The same contexts are used at every world of the frame.
    """
    worlds = frame.worlds
    out = [frozenset(), frozenset({Judgment(BOT, rng.choice(worlds))})]
    for _ in range(n_random):
        k = rng.randint(1, max_size)
        out.append(frozenset(Judgment(rng.choice(samples), rng.choice(worlds)) for _ in range(k)))
    return out


def battery_contexts(battery: FrameBattery, samples) -> list:
    """Per-frame context lists; depends only on the seed and the frames' world sets."""
    rng = random.Random(battery.seed * 7919 + 1)
    return [sample_contexts(f, samples, rng) for f in battery.frames]
