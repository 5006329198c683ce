"""Battery-wide checks of axiom schemas and admissible rules."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..context import format_context, make_context
from ..cpl import CplProver
from ..focused import FocusedSearch
from ..frames import RUNNING_FRAME, Frame, build_frame
from ..syntax import BOT, Atom, Box, Imp, Prop, parse_prop
from .battery import FrameBattery, battery_contexts, default_samples, gen_frames
from .schemas import INVALID, SCHEMA_BY_NAME, SCHEMAS, UNKNOWN, VALID, AxiomSchema, instances

LOGICS = ("cpl", "cpl*")


class Deciders:
    """One shared prover per (logic, frame)."""

    def __init__(self):
        self._cpl: dict = {}
        self._foc: dict = {}

    def provable(self, logic: str, frame: Frame, ctx, prop: Prop, w: str) -> bool:
        if logic == "cpl":
            prover = self._cpl.get(frame)
            if prover is None:
                prover = self._cpl[frame] = CplProver(frame)
            return prover.provable(ctx, prop, w)
        search = self._foc.get(frame)
        if search is None:
            search = self._foc[frame] = FocusedSearch(frame)
        return search.prove_neg(ctx, prop, w).provable


def fresh_verdict(logic: str, frame: Frame, ctx, prop: Prop, w: str) -> bool:
    """Decide with brand-new prover state (used to replay counterexamples)."""
    return Deciders().provable(logic, frame, ctx, prop, w)


@dataclass(frozen=True)
class Counterexample:
    frame: Frame
    ctx: frozenset
    world: str
    prop: Prop

    def describe(self) -> str:
        return f"{self.frame!r}; {format_context(self.ctx)} => {self.prop} @ {self.world}"


@dataclass
class Report:
    name: str
    logic: str
    frames: int
    instances: int
    verdict: str
    expected: str | None = None
    counterexample: Counterexample | None = None
    note: str = ""

    @property
    def inconclusive(self) -> bool:
        # a battery too small to refute a non-axiom says nothing either way
        return self.expected == INVALID and self.verdict == VALID

    @property
    def ok(self) -> bool:
        return self.expected in (None, UNKNOWN) or self.verdict == self.expected or self.inconclusive


@dataclass
class _Points:
    """Every (frame, world, context) point of a battery."""

    battery: FrameBattery
    contexts: list

    def __iter__(self):
        for frame, ctxs in zip(self.battery.frames, self.contexts):
            for w in frame.worlds:
                for ctx in ctxs:
                    yield frame, w, ctx


def _points(battery, samples):
    return _Points(battery, battery_contexts(battery, samples))


def check_schema(schema: AxiomSchema, battery: FrameBattery, samples, logic: str,
                 deciders: Deciders | None = None, limit: int = 12) -> Report:
    if schema.transitive and not battery.transitive:
        raise ValueError(f"schema {schema.name} needs a transitive battery")
    deciders = deciders or Deciders()
    rng = random.Random(f"{battery.seed}:{schema.name}")
    insts = instances(schema, samples, rng, limit)
    n = 0
    pts = _points(battery, samples)
    for fi, (frame, ctxs) in enumerate(zip(battery.frames, pts.contexts), 1):
        for w in frame.worlds:
            for ctx in ctxs:
                for inst in insts:
                    n += 1
                    if not deciders.provable(logic, frame, ctx, inst, w):
                        return Report(schema.name, logic, fi, n, INVALID, schema.expected.get(logic),
                                      Counterexample(frame, ctx, w, inst))
    return Report(schema.name, logic, len(battery), n, VALID, schema.expected.get(logic))


class Universality:
    """Caches "provable at every point of the battery" per proposition."""

    def __init__(self, battery, samples, logic, deciders):
        self.points = list(_points(battery, samples))
        self.logic = logic
        self.deciders = deciders
        self._memo: dict = {}
        self.checked = 0

    def failure(self, prop):
        """First point refuting ``prop``, or None."""
        if prop not in self._memo:
            hit = None
            for frame, w, ctx in self.points:
                self.checked += 1
                if not self.deciders.provable(self.logic, frame, ctx, prop, w):
                    hit = Counterexample(frame, ctx, w, prop)
                    break
            self._memo[prop] = hit
        return self._memo[prop]

    def __call__(self, prop) -> bool:
        return self.failure(prop) is None


def _universe(samples, logic):
    extra = [s.template if not s.metavars() else
             instances(s, samples[:1], random.Random(0))[0]
             for s in SCHEMAS if s.expected.get(logic) == VALID and not s.transitive]
    return list(dict.fromkeys(list(samples) + extra))


def mp_check(battery, samples, logic, deciders=None) -> Report:
    univ = Universality(battery, samples, logic, deciders or Deciders())
    props = _universe(samples, logic)
    cex = None
    for a in props:
        if not univ(a):
            continue
        for b in props:
            if univ(Imp(a, b)) and not univ(b):
                cex = cex or univ.failure(b)
    return Report("MP", logic, len(battery), univ.checked, INVALID if cex else VALID, VALID, cex)


def nec_check(battery, samples, logic, deciders=None) -> Report:
    univ = Universality(battery, samples, logic, deciders or Deciders())
    cex = None
    for a in _universe(samples, logic):
        if univ(a) and not univ(Box(a)):
            cex = cex or univ.failure(Box(a))
    return Report("NEC", logic, len(battery), univ.checked, INVALID if cex else VALID, VALID, cex)


def lob_check(battery, samples, logic="cpl", deciders=None) -> Report:
    """If ``box A -> A`` holds at every point, ``A`` must too."""
    univ = Universality(battery, samples, logic, deciders or Deciders())
    cex, vacuous = None, 0
    for a in samples:
        if univ(Imp(Box(a), a)):
            if not univ(a):
                cex = cex or univ.failure(a)
        else:
            vacuous += 1
    return Report("Lob", logic, len(battery), univ.checked, INVALID if cex else VALID, VALID, cex,
                  note=f"{vacuous} of {len(samples)} samples vacuous")


_DEMORGAN = ("DM-dia-neg", "DM-box-neg")


def demorgan_check(battery, samples, deciders=None) -> list[Report]:
    """Both logics, unconditional laws, plus the consistency-guarded tethered version."""
    deciders = deciders or Deciders()
    laws = [SCHEMA_BY_NAME[n] for n in _DEMORGAN]
    out = [check_schema(s, battery, samples, logic, deciders) for s in laws for logic in LOGICS]
    insts = [inst for s in laws for inst in instances(s, samples, random.Random(0))]
    n, skipped, cex = 0, 0, None
    for frame, w, ctx in _points(battery, samples):
        succ = [frame.worlds[j] for j in frame.succ[frame.index[w]]]
        if any(deciders.provable("cpl", frame, ctx, BOT, v) for v in succ):
            skipped += 1
            continue
        for inst in insts:
            n += 1
            if cex is None and not deciders.provable("cpl", frame, ctx, inst, w):
                cex = Counterexample(frame, ctx, w, inst)
    out.append(Report("DM-consistent", "cpl", len(battery), n, INVALID if cex else VALID, VALID, cex,
                      note=f"{skipped} points skipped (inconsistent successor)"))
    return out


# -- fixed countermodels ------------------------------------------------------

@dataclass(frozen=True)
class KnownCountermodel:
    label: str
    logic: str
    frame: Frame
    ctx: frozenset
    prop: Prop
    world: str

    def replay(self) -> bool:
        """True when the decider refutes the instance, as expected."""
        return not fresh_verdict(self.logic, self.frame, self.ctx, self.prop, self.world)


_CHAIN = build_frame(["a", "b"], [("a", "b")])


def known_countermodels(logic: str) -> list[KnownCountermodel]:
    q = Atom("Q")
    P = parse_prop
    out = []
    if logic == "cpl":
        out += [
            KnownCountermodel("neg-dia-Q", "cpl", RUNNING_FRAME, make_context([(q, "alpha")]),
                              P("~dia Q -> box ~Q"), "alpha"),
            KnownCountermodel("diabot", "cpl", _CHAIN, make_context([(BOT, "b")]), P("~dia bot"), "a"),
            KnownCountermodel("DM-dia-neg", "cpl", _CHAIN, make_context([(BOT, "b")]),
                              P("dia ~p -> ~box p"), "a"),
            KnownCountermodel("DM-box-neg", "cpl", _CHAIN, make_context([(BOT, "b")]),
                              P("box ~p -> ~dia p"), "a"),
        ]
    for lg in (("cpl", "cpl*") if logic == "both" else (logic,)):
        out += [
            KnownCountermodel("dia-box-imp", lg, _CHAIN, frozenset(), P("(dia p -> box q) -> box (p -> q)"), "a"),
            KnownCountermodel("DM-neg-dia", lg, _CHAIN, frozenset(), P("~dia p -> box ~p"), "a"),
            KnownCountermodel("DM-neg-box", lg, _CHAIN, frozenset(), P("~box p -> dia ~p"), "a"),
        ]
    return out


# -- full suite ---------------------------------------------------------------

@dataclass
class SuiteResult:
    seed: int
    frames: int
    max_worlds: int
    reports: list = field(default_factory=list)
    countermodels: list = field(default_factory=list)   # (KnownCountermodel, refuted)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports) and all(ok for _, ok in self.countermodels)


def run_suite(seed: int = 2011, count: int = 50, max_worlds: int = 5,
              samples=None, progress=None) -> SuiteResult:
    samples = tuple(samples or default_samples())
    plain = gen_frames(seed, count, max_worlds)
    trans = gen_frames(seed, count, max_worlds, transitive=True)
    deciders = Deciders()
    res = SuiteResult(seed, count, max_worlds)

    def add(report):
        res.reports.append(report)
        if progress:
            progress(report)

    for logic in LOGICS:
        add(mp_check(plain, samples, logic, deciders))
        add(nec_check(plain, samples, logic, deciders))
        for schema in SCHEMAS:
            if logic not in schema.expected or schema.name in _DEMORGAN:
                continue
            add(check_schema(schema, trans if schema.transitive else plain, samples, logic, deciders))
        add(lob_check(plain, samples, logic, deciders))
    for report in demorgan_check(plain, samples, deciders):
        add(report)
    for logic in LOGICS:
        for cm in known_countermodels(logic):
            res.countermodels.append((cm, cm.replay()))
    return res


def format_report(res: SuiteResult) -> str:
    head = f"{'schema':<14} {'logic':<5} {'frames':>6} {'instances':>9}  {'verdict':<8} {'expected':<8} status"
    lines = [f"battery: seed {res.seed}, {res.frames} frames, at most {res.max_worlds} worlds", head,
             "-" * len(head)]
    for r in res.reports:
        if r.expected == UNKNOWN:
            status = "open, not asserted"
        elif r.inconclusive:
            status = "no counterexample in battery"
        else:
            status = "ok" if r.ok else "DEVIATION"
        lines.append(f"{r.name:<14} {r.logic:<5} {r.frames:>6} {r.instances:>9}  "
                     f"{r.verdict:<8} {r.expected or '-':<8} {status}")
    lines.append("")
    lines.append("countermodels")
    for cm, refuted in res.countermodels:
        status = "refuted, expected" if refuted else "PROVABLE, DEVIATION"
        lines.append(f"  {cm.label:<12} {cm.logic:<5} {format_context(cm.ctx)} => {cm.prop} @ {cm.world}: {status}")
    lines.append("")
    lines.append("all verdicts match" if res.ok else "deviations found")
    return "\n".join(lines) + "\n"
