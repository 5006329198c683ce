"""Decision procedure for the tethered sequent calculus.

Backward, goal-directed search.  The only source of non-termination in a
naive search is a sequent recurring on its own branch, so a branch fails
when it revisits a sequent on its stack.  Each result carries the shallowest
stack depth that a loop check touched (``low``); a refutation is cached only
when it did not depend on anything below the current node.

Left rules only ever inspect hypotheses at the goal world and right rules only
move the goal to successors, so provability at ``w`` depends on the context
restricted to worlds reachable from ``w``.  Every cache key uses that
projection.  Queries at a successor start with an empty stack: no sequent up
there can lead back down to ``w``, so their verdicts are absolute.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .context import Judgment, check_worlds, ordered
from .errors import CplkitError
from .frames import Frame, World
from .syntax import BOT, Atom, Box, Dia, Imp, Prop

INF = float("inf")

RULES = ("Init", "BotL", "ImpR", "ImpL", "DiaR", "BoxR", "DiaL", "BoxL")


@dataclass(frozen=True, eq=False)
class CplProof:
    """One node of a sequent derivation.

    ``subs`` holds ordinary premises: the body for ImpR, both premises for
    ImpL, the successor proof for DiaR and the (optional) continuation for
    BoxL.  ``table`` maps worlds to subproofs for BoxR (every successor) and
    DiaL (every witness world).
    """

    rule: str
    goal: Prop
    world: World
    principal: Judgment | None = None
    succ: World | None = None
    subs: tuple = ()
    table: tuple = ()

    def children(self):
        yield from self.subs
        for _, p in self.table:
            yield p

    def walk(self) -> Iterator["CplProof"]:
        todo = [self]
        while todo:
            node = todo.pop()
            yield node
            todo.extend(node.children())

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def __repr__(self):
        return f"CplProof({self.rule}, {self.goal} @ {self.world})"


class ProofResult(NamedTuple):
    provable: bool
    proof: object = None

    def __bool__(self):
        return self.provable


REFUTED = ProofResult(False, None)


class CplProver:
    """Search state for one frame.

    Verdicts do not depend on what was asked before, so one instance may be
    reused across many queries on the same frame to share its caches.  With
    ``eager=False`` the search backtracks over every ImpL choice instead of
    committing after the first premise succeeds; it is kept as a reference.
    """

    def __init__(self, frame: Frame, eager: bool = True):
        self.frame = frame
        self.eager = eager
        self._up = [frozenset(frame.worlds[j] for j in frame.star_sets[i])
                    for i in range(len(frame.worlds))]
        self._succ = {w: [frame.worlds[j] for j in frame.succ[i]]
                      for i, w in enumerate(frame.worlds)}
        self._proved: dict = {}
        self._refuted: set = set()
        self._left: dict = {}
        self.steps = 0

    def project(self, ctx, w: World) -> frozenset:
        up = self._up[self.frame.idx(w)]
        return frozenset(j for j in ctx if j.world in up)

    def decide(self, ctx, goal: Prop, w: World) -> ProofResult:
        check_worlds(self.frame, ctx)
        self.frame.idx(w)
        proof = self._fresh(frozenset(ctx), goal, w)
        return ProofResult(True, proof) if proof is not None else REFUTED

    def provable(self, ctx, goal: Prop, w: World) -> bool:
        return self._fresh(frozenset(ctx), goal, w) is not None

    def witnesses(self, ctx, body: Prop, w: World) -> list[World]:
        """Successors of ``w`` at which ``body`` is provable from ``ctx``."""
        return [v for v in self._succ[w] if self._fresh(ctx, body, v) is not None]

    # -- search ---------------------------------------------------------------

    def _fresh(self, ctx, goal, w):
        proof, _ = self._solve(self.project(ctx, w), goal, w, {})
        return proof

    def _solve(self, ctx, goal, w, stack):
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
        self.steps += 1
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

    def _hyps_at(self, ctx, w):
        key = (ctx, w)
        out = self._left.get(key)
        if out is None:
            out = tuple(j for j in ordered(ctx) if j.world == w)
            self._left[key] = out
        return out

    def _expand(self, ctx, goal, w, stack):
        if isinstance(goal, Atom) and Judgment(goal, w) in ctx:
            return CplProof("Init", goal, w, principal=Judgment(goal, w)), INF
        if Judgment(BOT, w) in ctx:
            return CplProof("BotL", goal, w, principal=Judgment(BOT, w)), INF
        low = INF

        if isinstance(goal, Imp):
            sub, lo = self._solve(ctx | {Judgment(goal.left, w)}, goal.right, w, stack)
            if sub is not None:
                return CplProof("ImpR", goal, w, subs=(sub,)), INF
            if self.eager:
                # the rule is invertible
                return None, lo
            low = min(low, lo)
        elif isinstance(goal, Dia):
            for v in self._succ[w]:
                sub = self._fresh(ctx, goal.body, v)
                if sub is not None:
                    return CplProof("DiaR", goal, w, succ=v, subs=(sub,)), INF
        elif isinstance(goal, Box):
            table = []
            for v in self._succ[w]:
                sub = self._fresh(ctx, goal.body, v)
                if sub is None:
                    break
                table.append((v, sub))
            else:
                return CplProof("BoxR", goal, w, table=tuple(table)), INF

        for hyp in self._hyps_at(ctx, w):
            p = hyp.prop
            if isinstance(p, Imp):
                first, lo = self._solve(ctx, p.left, w, stack)
                if first is None:
                    low = min(low, lo)
                    continue
                extra = Judgment(p.right, w)
                if extra in ctx:
                    # the second premise would be this very sequent
                    continue
                second, lo = self._solve(ctx | {extra}, goal, w, stack)
                if second is not None:
                    return CplProof("ImpL", goal, w, principal=hyp, subs=(first, second)), INF
                low = min(low, lo)
                if self.eager:
                    # with the first premise proved, adding p.right is harmless
                    return None, low
            elif isinstance(p, Dia):
                if not any(self._fresh(ctx, p.body, v) is not None for v in self._succ[w]):
                    return CplProof("DiaL", goal, w, principal=hyp), INF
            elif isinstance(p, Box):
                if any(self._fresh(ctx, p.body, v) is None for v in self._succ[w]):
                    return CplProof("BoxL", goal, w, principal=hyp), INF
        return None, low


def decide_cpl(frame: Frame, ctx, goal: Prop, w: World, prover: CplProver | None = None) -> ProofResult:
    """Decide ``ctx => goal @ w``; pass ``prover`` to share caches across calls."""
    return (prover or CplProver(frame)).decide(ctx, goal, w)


# -- replay -------------------------------------------------------------------

class _Reject(CplkitError):
    pass


def replay_cpl(frame: Frame, ctx, goal: Prop, w: World, proof, prover: CplProver | None = None) -> bool:
    """Check ``proof`` rule by rule, recomputing witness sets with the decider."""
    prover = prover or CplProver(frame)
    try:
        check_worlds(frame, ctx)
        frame.idx(w)
        _replay(frame, prover, frozenset(ctx), goal, w, proof)
    except (_Reject, CplkitError):
        return False
    return True


def _need(cond, msg="rejected"):
    if not cond:
        raise _Reject(msg)


def _replay(frame, prover, ctx, goal, w, node):
    _need(isinstance(node, CplProof))
    _need(node.goal is goal and node.world == w, "conclusion mismatch")
    succ = [frame.worlds[j] for j in frame.succ[frame.idx(w)]]
    rule = node.rule
    if rule == "Init":
        _need(isinstance(goal, Atom) and Judgment(goal, w) in ctx)
        _need(not node.subs and not node.table)
    elif rule == "BotL":
        _need(Judgment(BOT, w) in ctx)
        _need(not node.subs and not node.table)
    elif rule == "ImpR":
        _need(isinstance(goal, Imp) and len(node.subs) == 1 and not node.table)
        _replay(frame, prover, ctx | {Judgment(goal.left, w)}, goal.right, w, node.subs[0])
    elif rule == "ImpL":
        hyp = node.principal
        _need(hyp in ctx and hyp.world == w and isinstance(hyp.prop, Imp))
        _need(len(node.subs) == 2 and not node.table)
        _replay(frame, prover, ctx, hyp.prop.left, w, node.subs[0])
        _replay(frame, prover, ctx | {Judgment(hyp.prop.right, w)}, goal, w, node.subs[1])
    elif rule == "DiaR":
        _need(isinstance(goal, Dia) and node.succ in succ and len(node.subs) == 1)
        _replay(frame, prover, ctx, goal.body, node.succ, node.subs[0])
    elif rule == "BoxR":
        _need(isinstance(goal, Box) and not node.subs)
        _need([v for v, _ in node.table] == succ)
        for v, sub in node.table:
            _replay(frame, prover, ctx, goal.body, v, sub)
    elif rule == "DiaL":
        hyp = node.principal
        _need(hyp in ctx and hyp.world == w and isinstance(hyp.prop, Dia) and not node.subs)
        wit = prover.witnesses(ctx, hyp.prop.body, w)
        _need([v for v, _ in node.table] == wit, "witness table does not match")
        for _, sub in node.table:
            _replay(frame, prover, ctx, goal, w, sub)
    elif rule == "BoxL":
        hyp = node.principal
        _need(hyp in ctx and hyp.world == w and isinstance(hyp.prop, Box) and not node.table)
        full = len(prover.witnesses(ctx, hyp.prop.body, w)) == len(succ)
        _need(len(node.subs) == (1 if full else 0), "continuation presence mismatch")
        for sub in node.subs:
            _replay(frame, prover, ctx, goal, w, sub)
    else:
        raise _Reject(f"unknown rule {rule!r}")


def proof_judgments(ctx, goal: Prop, w: World, proof: CplProof) -> Iterator[Judgment]:
    """Every judgment mentioned anywhere in ``proof`` (for the sub-formula check)."""
    todo = [(frozenset(ctx), proof)]
    while todo:
        gamma, node = todo.pop()
        yield Judgment(node.goal, node.world)
        yield from gamma
        if node.rule == "ImpR":
            todo.append((gamma | {Judgment(node.goal.left, node.world)}, node.subs[0]))
        elif node.rule == "ImpL":
            todo.append((gamma, node.subs[0]))
            todo.append((gamma | {Judgment(node.principal.prop.right, node.world)}, node.subs[1]))
        else:
            for sub in node.children():
                todo.append((gamma, sub))
