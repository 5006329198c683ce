"""Decision procedure for the focused, polarized de-tethered calculus.

Three sequent forms are searched: right focus, inversion (with an inversion
context holding at most one judgment) and left focus.  Inversion with a
nonempty inversion context is deterministic, so the only choice points are at
*neutral* sequents (inversion, empty inversion context, stable goal) and in
picking a successor for a right-focused diamond.

Loop checking happens on neutral sequents only, with the same stack-depth
bookkeeping as :mod:`cplkit.cpl`.  Contexts are projected onto the worlds
reachable from the goal world before they become cache keys.

Eager commit: when a left-focus phase ends by blurring a stable positive
``B`` at ``u`` that is not yet a hypothesis, ``B @ u`` is provable from the
current context, so adding it changes no verdict.  The search then continues
from the enlarged context without revisiting other focus choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .context import Judgment, check_worlds, ordered
from .cpl import INF, REFUTED, ProofResult
from .errors import CplkitError
from .frames import Frame, World
from .polarity import check_polarities, polarize
from .syntax import (Down, NAtom, PAtom, PBot, PBox, PDia, PImp, PolProp, Prop, Up,
                     is_stable, is_stable_neg, is_stable_pos)

__all__ = ["RFoc", "Inv", "LFoc", "FocProof", "FocusedSearch", "decide_foc", "prove_neg",
           "is_stable", "check_phases", "SearchBudgetExceeded"]


class RFoc(NamedTuple):
    ctx: frozenset
    focus: PolProp
    world: World


class Inv(NamedTuple):
    ctx: frozenset
    omega: Judgment | None
    goal: PolProp
    world: World


class LFoc(NamedTuple):
    ctx: frozenset
    focus: PolProp
    fworld: World
    goal: PolProp
    world: World


RFOC_RULES = {"QR+", "↓R", "◇R", "□R"}
INV_EMPTY_RULES = {"⊃R", "↓L", "↑R"}
INV_OMEGA_RULES = {"L", "⊥L", "◇L", "□L"}
LFOC_RULES = {"QL-", "↑L", "⊃L"}


@dataclass(frozen=True, eq=False)
class FocProof:
    """A derivation node: the rule, the sequent it concludes and its premises.

    ``subs`` are ordinary premises; ``table`` maps worlds to subproofs for
    □R (every successor) and ◇L (every witness world).  ``principal`` is the
    ↓L hypothesis, ``succ`` the ◇R successor.
    """

    rule: str
    seq: tuple
    subs: tuple = ()
    table: tuple = ()
    principal: Judgment | None = None
    succ: World | None = None

    def children(self):
        yield from self.subs
        for _, p in self.table:
            yield p

    def walk(self) -> Iterator["FocProof"]:
        todo, seen = [self], set()
        while todo:
            node = todo.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            todo.extend(node.children())

    def __repr__(self):
        return f"FocProof({self.rule}, {type(self.seq).__name__})"


class SearchBudgetExceeded(CplkitError):
    pass


class FocusedSearch:
    """Search state for one frame; reusable across queries like ``CplProver``."""

    def __init__(self, frame: Frame, eager: bool = True, max_steps: int | None = None):
        self.frame = frame
        self.eager = eager
        self.max_steps = max_steps
        self._up = [frozenset(frame.worlds[j] for j in frame.star_sets[i])
                    for i in range(len(frame.worlds))]
        self._succ = {w: [frame.worlds[j] for j in frame.succ[i]]
                      for i, w in enumerate(frame.worlds)}
        rank = {frame.worlds[i]: r for r, i in enumerate(frame.scan_order)}
        self._rank = rank
        self._proved: dict = {}
        self._refuted: set = set()
        self._cands: dict = {}
        self.steps = 0

    def project(self, ctx, w: World) -> frozenset:
        up = self._up[self.frame.idx(w)]
        return frozenset(j for j in ctx if j.world in up)

    # -- entry points ---------------------------------------------------------

    def decide(self, seq) -> ProofResult:
        _validate(self.frame, seq)
        if isinstance(seq, Inv):
            ctx = self.project(seq.ctx, seq.world)
            proof, _ = self._inv(ctx, seq.omega, seq.goal, seq.world, {})
        elif isinstance(seq, RFoc):
            ctx = self.project(seq.ctx, seq.world)
            proof, _ = self._rfoc(ctx, seq.focus, seq.world, {})
        elif isinstance(seq, LFoc):
            ctx = self.project(seq.ctx, seq.world)
            proof, _, _ = self._lfoc(ctx, seq.focus, seq.fworld, seq.goal, seq.world, {})
        else:
            raise TypeError(f"not a focused sequent: {seq!r}")
        return ProofResult(True, proof) if proof is not None else REFUTED

    def prove_neg(self, ctx, a: Prop, w: World, polarities=None) -> ProofResult:
        """Decide ``ctx |- a @ w`` through the polarization of both sides."""
        check_worlds(self.frame, ctx)
        self.frame.idx(w)
        pctx = polarize(ctx, "ctx", polarities)
        goal = polarize(a, "neg", polarities)
        proof, _ = self._inv(self.project(pctx, w), None, goal, w, {})
        return ProofResult(True, proof) if proof is not None else REFUTED

    # -- search ---------------------------------------------------------------

    def _fresh(self, ctx, goal, w):
        proof, _ = self._inv(self.project(ctx, w), None, goal, w, {})
        return proof

    def _tick(self):
        self.steps += 1
        if self.max_steps is not None and self.steps > self.max_steps:
            raise SearchBudgetExceeded(f"focused search exceeded {self.max_steps} steps")

    def _inv(self, ctx, omega, goal, w, stack):
        if omega is not None:
            return self._omega(ctx, omega, goal, w, stack)
        if isinstance(goal, PImp):
            seq = Inv(ctx, None, goal, w)
            sub, low = self._inv(ctx, Judgment(goal.left, w), goal.right, w, stack)
            if sub is None:
                return None, low
            return FocProof("⊃R", seq, subs=(sub,)), INF
        return self._neutral(ctx, goal, w, stack)

    def _omega(self, ctx, omega, goal, w, stack):
        seq = Inv(ctx, omega, goal, w)
        a, u = omega
        if is_stable_pos(a):
            sub, low = self._inv(ctx | {omega}, None, goal, w, stack)
            if sub is None:
                return None, low
            return FocProof("L", seq, subs=(sub,)), INF
        if isinstance(a, PBot):
            return FocProof("⊥L", seq), INF
        if isinstance(a, PDia):
            wit = [v for v in self._succ[u] if self._fresh(ctx, Up(a.body), v) is not None]
            if not wit:
                return FocProof("◇L", seq), INF
            sub, low = self._inv(ctx, None, goal, w, stack)
            if sub is None:
                return None, low
            return FocProof("◇L", seq, table=tuple((v, sub) for v in wit)), INF
        if isinstance(a, PBox):
            if any(self._fresh(ctx, Up(a.body), v) is None for v in self._succ[u]):
                return FocProof("□L", seq), INF
            sub, low = self._inv(ctx, None, goal, w, stack)
            if sub is None:
                return None, low
            return FocProof("□L", seq, subs=(sub,)), INF
        raise TypeError(f"inversion context holds a non-positive proposition: {a}")

    def _candidates(self, ctx):
        out = self._cands.get(ctx)
        if out is None:
            rank = self._rank
            out = tuple(sorted((j for j in ctx if isinstance(j.prop, Down)),
                               key=lambda j: (rank[j.world], str(j.prop))))
            self._cands[ctx] = out
        return out

    def _neutral(self, ctx, goal, w, stack):
        key = (ctx, goal, w)
        hit = self._proved.get(key)
        if hit is not None:
            return hit, INF
        if key in self._refuted:
            return None, INF
        seen = stack.get(key)
        if seen is not None:
            return None, seen
        depth = len(stack)
        stack[key] = depth
        self._tick()
        try:
            proof, low = self._expand(ctx, goal, w, stack)
        finally:
            del stack[key]
        if proof is not None:
            self._proved[key] = proof
            return proof, INF
        if low >= depth:
            self._refuted.add(key)
            return None, INF
        return None, low

    def _expand(self, ctx, goal, w, stack):
        seq = Inv(ctx, None, goal, w)
        low = INF
        if isinstance(goal, Up):
            sub, lo = self._rfoc(ctx, goal.body, w, stack)
            if sub is not None:
                return FocProof("↑R", seq, subs=(sub,)), INF
            low = min(low, lo)
        for hyp in self._candidates(ctx):
            sub, lo, committed = self._lfoc(ctx, hyp.prop.body, hyp.world, goal, w, stack)
            if sub is not None:
                return FocProof("↓L", seq, subs=(sub,), principal=hyp), INF
            low = min(low, lo)
            if committed and self.eager:
                return None, low
        return None, low

    def _rfoc(self, ctx, a, w, stack):
        seq = RFoc(ctx, a, w)
        if isinstance(a, PAtom):
            if Judgment(a, w) in ctx:
                return FocProof("QR+", seq), INF
            return None, INF
        if isinstance(a, Down):
            sub, low = self._inv(ctx, None, a.body, w, stack)
            if sub is None:
                return None, low
            return FocProof("↓R", seq, subs=(sub,)), INF
        if isinstance(a, PDia):
            for v in self._succ[w]:
                sub = self._fresh(ctx, Up(a.body), v)
                if sub is not None:
                    return FocProof("◇R", seq, subs=(sub,), succ=v), INF
            return None, INF
        if isinstance(a, PBox):
            tab = []
            for v in self._succ[w]:
                sub = self._fresh(ctx, Up(a.body), v)
                if sub is None:
                    return None, INF
                tab.append((v, sub))
            return FocProof("□R", seq, table=tuple(tab)), INF
        if isinstance(a, PBot):
            return None, INF
        raise TypeError(f"right focus on a non-positive proposition: {a}")

    def _lfoc(self, ctx, n, fw, goal, w, stack):
        """Returns ``(proof, low, committed)``."""
        seq = LFoc(ctx, n, fw, goal, w)
        if isinstance(n, NAtom):
            if n is goal and fw == w:
                return FocProof("QL-", seq), INF, False
            return None, INF, False
        if isinstance(n, Up):
            b = n.body
            omega = Judgment(b, fw)
            committed = is_stable_pos(b) and omega not in ctx
            sub, low = self._inv(ctx, omega, goal, w, stack)
            if sub is None:
                return None, low, committed
            return FocProof("↑L", seq, subs=(sub,)), INF, committed
        if isinstance(n, PImp):
            if fw == w:
                first, low = self._rfoc(ctx, n.left, fw, stack)
            else:
                first, low = self._rfoc(self.project(ctx, fw), n.left, fw, {})
            if first is None:
                return None, low, False
            rest, low, committed = self._lfoc(ctx, n.right, fw, goal, w, stack)
            if rest is None:
                return None, low, committed
            return FocProof("⊃L", seq, subs=(first, rest)), INF, committed
        raise TypeError(f"left focus on a non-negative proposition: {n}")


def _validate(frame: Frame, seq) -> None:
    check_worlds(frame, seq.ctx)
    frame.idx(seq.world)
    for j in seq.ctx:
        if not is_stable_pos(j.prop):
            raise ValueError(f"context judgment {j} is not stable-positive")
    props = [j.prop for j in seq.ctx]
    star = frame.star_matrix
    w = frame.index[seq.world]
    if isinstance(seq, Inv):
        props.append(seq.goal)
        if seq.omega is not None:
            props.append(seq.omega.prop)
            if not star[w, frame.idx(seq.omega.world)]:
                raise ValueError("inversion context judgment is not above the goal world")
    elif isinstance(seq, LFoc):
        props += [seq.focus, seq.goal]
        if not star[w, frame.idx(seq.fworld)]:
            raise ValueError("left focus is not above the goal world")
    else:
        props.append(seq.focus)
    check_polarities(props)


def decide_foc(frame: Frame, seq, search: FocusedSearch | None = None) -> ProofResult:
    return (search or FocusedSearch(frame)).decide(seq)


def prove_neg(frame: Frame, ctx, a: Prop, w: World, polarities=None,
              search: FocusedSearch | None = None) -> ProofResult:
    return (search or FocusedSearch(frame)).prove_neg(ctx, a, w, polarities)


# -- proof invariants ---------------------------------------------------------

def check_phases(frame: Frame, proof: FocProof) -> list[str]:
    """Violations of the phase discipline and world invariant (empty when fine)."""
    bad = []
    star = frame.star_matrix
    idx = frame.index
    for node in proof.walk():
        seq = node.seq
        w = idx[seq.world]
        if isinstance(seq, RFoc):
            if node.rule not in RFOC_RULES:
                bad.append(f"{node.rule} under right focus")
        elif isinstance(seq, LFoc):
            if node.rule not in LFOC_RULES:
                bad.append(f"{node.rule} under left focus")
            if not star[w, idx[seq.fworld]]:
                bad.append("left focus below the goal world")
        elif isinstance(seq, Inv):
            if seq.omega is None:
                if node.rule not in INV_EMPTY_RULES:
                    bad.append(f"{node.rule} with empty inversion context")
                if node.rule in ("↓L", "↑R") and not is_stable_neg(seq.goal):
                    bad.append(f"{node.rule} on an unstable goal")
                if node.rule == "↓L" and not star[w, idx[node.principal.world]]:
                    bad.append("↓L on a hypothesis below the goal world")
            else:
                if not isinstance(seq.omega, Judgment):
                    bad.append("inversion context is not a single judgment")
                if node.rule not in INV_OMEGA_RULES:
                    bad.append(f"{node.rule} with nonempty inversion context")
                if not star[w, idx[seq.omega.world]]:
                    bad.append("inversion context below the goal world")
        else:
            bad.append(f"unknown sequent {seq!r}")
        for j in seq.ctx:
            if not is_stable_pos(j.prop):
                bad.append(f"unstable hypothesis {j}")
    return bad


def format_seq(seq) -> str:
    ctx = ", ".join(f"{j.prop}[{j.world}]" for j in ordered(seq.ctx)) or "."
    if isinstance(seq, RFoc):
        return f"{ctx} ⊢ [{seq.focus}][{seq.world}]"
    if isinstance(seq, LFoc):
        return f"{ctx}; [{seq.focus}][{seq.fworld}] ⊢ {seq.goal}[{seq.world}]"
    om = "." if seq.omega is None else f"{seq.omega.prop}[{seq.omega.world}]"
    return f"{ctx}; {om} ⊢ {seq.goal}[{seq.world}]"
