"""Natural-deduction proof terms for both logic variants.

Hypotheses are de Bruijn *levels*: ``Hyp(i)`` names the ``i``-th entry of the
context list, where the list starts with the canonical ordering of the open
context and every ``ImpI`` appends its hypothesis at the end.  Levels are
stable under extension at the end, which keeps weakening cheap.

Higher-order premises are finite tables keyed by successor world.  Their
domains are fixed by provability, so the checker needs a provability oracle:
the tethered decider for ``cpl`` and the focused decider for ``cpl*``.

Text form (worlds by name, propositions quoted)::

    (hyp I)  (bote W T)  (impi T)  (impe "A" T T)  (diai W T)
    (diae W "A" T ((W T) ...))  (boxi ((W T) ...))  (boxe W "A" T T)  (boxe W "A" T _)

``impe`` carries the antecedent, ``diae``/``boxe`` the modal body and the
world of the eliminated judgment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator

from .context import Judgment, ctx_leq, ordered
from .cpl import CplProof, CplProver
from .errors import CplkitError, NoRedex, OrderError, ParseError, SideConditionError, UnsupportedShape
from .frames import Frame, World
from .syntax import BOT, Box, Dia, Imp, Prop, parse_prop

VARIANTS = ("cpl", "cpl*")


# -- terms --------------------------------------------------------------------

class Term:
    __slots__ = ()

    def children(self) -> tuple:
        return ()


@dataclass(frozen=True, slots=True)
class Hyp(Term):
    index: int


@dataclass(frozen=True, slots=True)
class BotE(Term):
    world: World
    sub: Term

    def children(self):
        return (self.sub,)


@dataclass(frozen=True, slots=True)
class ImpI(Term):
    body: Term

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class ImpE(Term):
    ante: Prop
    fun: Term
    arg: Term

    def children(self):
        return (self.fun, self.arg)


@dataclass(frozen=True, slots=True)
class DiaI(Term):
    world: World
    sub: Term

    def children(self):
        return (self.sub,)


@dataclass(frozen=True, slots=True)
class DiaE(Term):
    world: World
    body: Prop
    scrut: Term
    table: tuple

    def children(self):
        return (self.scrut,) + tuple(t for _, t in self.table)


@dataclass(frozen=True, slots=True)
class BoxI(Term):
    table: tuple

    def children(self):
        return tuple(t for _, t in self.table)


@dataclass(frozen=True, slots=True)
class BoxE(Term):
    world: World
    body: Prop
    scrut: Term
    cont: Term | None

    def children(self):
        return (self.scrut,) if self.cont is None else (self.scrut, self.cont)


def table(pairs) -> tuple:
    return tuple(sorted(pairs, key=lambda p: p[0]))


def term_size(t: Term) -> int:
    return 1 + sum(term_size(c) for c in t.children())


def _variant(v: str) -> str:
    v = {"cpls": "cpl*"}.get(v, v)
    if v not in VARIANTS:
        raise ValueError(f"variant must be 'cpl' or 'cpl*', not {v!r}")
    return v


def _ctx_list(ctx) -> tuple:
    if isinstance(ctx, (set, frozenset)):
        return ordered(ctx)
    return tuple(ctx)


# -- oracles ------------------------------------------------------------------

Oracle = Callable[[frozenset, Prop, World], bool]


def default_oracle(variant: str, frame: Frame) -> Oracle:
    variant = _variant(variant)
    if variant == "cpl":
        prover = CplProver(frame)
        return prover.provable
    from .focused import FocusedSearch

    search = FocusedSearch(frame)
    return lambda ctx, prop, w: search.prove_neg(ctx, prop, w).provable


# -- checking -----------------------------------------------------------------

class _Fail(CplkitError):
    def __init__(self, path, msg):
        self.path = path
        super().__init__(f"at {'/'.join(path) or 'root'}: {msg}")


class _Checker:
    def __init__(self, variant, frame, oracle):
        self.variant = _variant(variant)
        self.frame = frame
        self.oracle = oracle or default_oracle(self.variant, frame)
        self._succ = {w: [frame.worlds[j] for j in frame.succ[i]] for i, w in enumerate(frame.worlds)}

    def world_ok(self, concl, src, path):
        if src not in self.frame:
            raise _Fail(path, f"undeclared world {src!r}")
        if self.variant == "cpl":
            if src != concl:
                raise _Fail(path, f"conclusion world {concl} differs from {src}")
        elif not self.frame.star_matrix[self.frame.index[concl], self.frame.index[src]]:
            raise _Fail(path, f"{concl} does not reach {src}")

    def check(self, ctx, t, a, w, path):
        if isinstance(t, Hyp):
            if not 0 <= t.index < len(ctx):
                raise _Fail(path, f"hypothesis {t.index} out of range")
            if ctx[t.index] != (a, w):
                raise _Fail(path, f"hypothesis {t.index} is {ctx[t.index]}, expected {a} @ {w}")
        elif isinstance(t, BotE):
            self.world_ok(w, t.world, path)
            self.check(ctx, t.sub, BOT, t.world, path + ["bote"])
        elif isinstance(t, ImpI):
            if not isinstance(a, Imp):
                raise _Fail(path, f"impi against {a}")
            self.check(ctx + (Judgment(a.left, w),), t.body, a.right, w, path + ["impi"])
        elif isinstance(t, ImpE):
            self.check(ctx, t.fun, Imp(t.ante, a), w, path + ["impe.fun"])
            self.check(ctx, t.arg, t.ante, w, path + ["impe.arg"])
        elif isinstance(t, DiaI):
            if not isinstance(a, Dia):
                raise _Fail(path, f"diai against {a}")
            if t.world not in self._succ.get(w, ()):
                raise _Fail(path, f"{t.world} is not a successor of {w}")
            self.check(ctx, t.sub, a.body, t.world, path + ["diai"])
        elif isinstance(t, BoxI):
            if not isinstance(a, Box):
                raise _Fail(path, f"boxi against {a}")
            keys = [v for v, _ in t.table]
            if keys != self._succ[w]:
                raise _Fail(path, f"boxi table covers {keys}, successors are {self._succ[w]}")
            for v, sub in t.table:
                self.check(ctx, sub, a.body, v, path + [f"boxi.{v}"])
        elif isinstance(t, DiaE):
            self.world_ok(w, t.world, path)
            self.check(ctx, t.scrut, Dia(t.body), t.world, path + ["diae.scrut"])
            gamma = frozenset(ctx)
            wit = [v for v in self._succ[t.world] if self.oracle(gamma, t.body, v)]
            keys = [v for v, _ in t.table]
            if keys != wit:
                raise _Fail(path, f"diae table covers {keys}, witnesses are {wit}")
            for v, sub in t.table:
                self.check(ctx, sub, a, w, path + [f"diae.{v}"])
        elif isinstance(t, BoxE):
            self.world_ok(w, t.world, path)
            self.check(ctx, t.scrut, Box(t.body), t.world, path + ["boxe.scrut"])
            gamma = frozenset(ctx)
            full = all(self.oracle(gamma, t.body, v) for v in self._succ[t.world])
            if full != (t.cont is not None):
                raise _Fail(path, "boxe continuation must be present exactly when every successor proves the body")
            if t.cont is not None:
                self.check(ctx, t.cont, a, w, path + ["boxe.cont"])
        else:
            raise _Fail(path, f"not a term: {t!r}")


def explain(variant: str, frame: Frame, ctx, term: Term, a: Prop, w: World,
            oracle: Oracle | None = None) -> str | None:
    """``None`` when ``term`` checks, otherwise a message naming the first failing node."""
    if w not in frame:
        return f"undeclared world {w!r}"
    ctx = _ctx_list(ctx)
    for j in ctx:
        if j.world not in frame:
            return f"undeclared world {j.world!r}"
    try:
        _Checker(variant, frame, oracle).check(ctx, term, a, w, [])
    except _Fail as exc:
        return str(exc)
    return None


def check_nd(variant: str, frame: Frame, ctx, term: Term, a: Prop, w: World,
             oracle: Oracle | None = None) -> bool:
    return explain(variant, frame, ctx, term, a, w, oracle) is None


# -- structural operations ----------------------------------------------------

def _map(t: Term, f) -> Term:
    """Rebuild ``t`` with ``f`` applied to every immediate subterm."""
    if isinstance(t, Hyp):
        return t
    if isinstance(t, BotE):
        return BotE(t.world, f(t.sub))
    if isinstance(t, ImpE):
        return ImpE(t.ante, f(t.fun), f(t.arg))
    if isinstance(t, DiaI):
        return DiaI(t.world, f(t.sub))
    if isinstance(t, DiaE):
        return DiaE(t.world, t.body, f(t.scrut), tuple((v, f(s)) for v, s in t.table))
    if isinstance(t, BoxI):
        return BoxI(tuple((v, f(s)) for v, s in t.table))
    if isinstance(t, BoxE):
        return BoxE(t.world, t.body, f(t.scrut), None if t.cont is None else f(t.cont))
    raise TypeError(f"not a term: {t!r}")


def shift(t: Term, cutoff: int, by: int) -> Term:
    """Renumber every level ``>= cutoff`` by ``by``."""
    if by == 0:
        return t
    if isinstance(t, Hyp):
        return Hyp(t.index + by) if t.index >= cutoff else t
    if isinstance(t, ImpI):
        return ImpI(shift(t.body, cutoff, by))
    return _map(t, lambda s: shift(s, cutoff, by))


def _subst(t: Term, n: int, d: Term, k: int) -> Term:
    if isinstance(t, Hyp):
        if t.index == n:
            return shift(d, n, k)
        if t.index > n:
            return Hyp(t.index - 1)
        return t
    if isinstance(t, ImpI):
        return ImpI(_subst(t.body, n, d, k + 1))
    return _map(t, lambda s: _subst(s, n, d, k))


def graft(ctx_len: int, d: Term, e: Term) -> Term:
    """Replace level ``ctx_len`` in ``e`` by ``d`` (no side-condition checks)."""
    return _subst(e, ctx_len, d, 0)


def subst_nd(variant: str, frame: Frame, ctx, d: Term, e: Term, a: Prop, w: World,
             target: World) -> Term:
    """``d`` proves ``a @ w`` from ``ctx``; ``e`` proves something at ``target``
    from ``ctx`` extended by ``a @ w`` (appended last).  Returns the grafted term."""
    variant = _variant(variant)
    frame.idx(w)
    frame.idx(target)
    if variant == "cpl" and target != w:
        raise SideConditionError(f"tethered substitution needs target {target} = {w}")
    if variant == "cpl*" and not frame.star_matrix[frame.index[target], frame.index[w]]:
        raise SideConditionError(f"{target} does not reach {w}")
    return graft(len(_ctx_list(ctx)), d, e)


def weaken_nd(frame: Frame, term: Term, gamma, gamma2, w: World) -> Term:
    """Re-index ``term`` from context ``gamma`` to a context above it at ``w``."""
    old, new = _ctx_list(gamma), _ctx_list(gamma2)
    if not ctx_leq(frame, frozenset(old), frozenset(new), w):
        raise OrderError(f"context is not below the target at {w}")
    if old == new:
        return term
    pos = {}
    for j in reversed(new):
        pos[j] = new.index(j)
    n, n2 = len(old), len(new)
    mapping = [pos.get(j, -1) for j in old]

    def go(t):
        if isinstance(t, Hyp):
            if t.index >= n:
                return Hyp(t.index - n + n2)
            if mapping[t.index] < 0:
                raise OrderError(f"term uses {old[t.index]}, which the target context drops")
            return Hyp(mapping[t.index])
        if isinstance(t, ImpI):
            return ImpI(go(t.body))
        return _map(t, go)

    return go(term)


# -- local reductions and expansions ------------------------------------------

def _find_redex(t: Term, n: int):
    """Outermost-leftmost redex contraction, or None."""
    if isinstance(t, ImpE) and isinstance(t.fun, ImpI):
        return _subst(t.fun.body, n, t.arg, 0)
    if isinstance(t, DiaE) and isinstance(t.scrut, DiaI):
        for v, k in t.table:
            if v == t.scrut.world:
                return k
        raise NoRedex("ill-formed redex: introduced witness missing from the table")
    if isinstance(t, BoxE) and isinstance(t.scrut, BoxI):
        if t.cont is None:
            raise NoRedex("ill-formed redex: missing continuation")
        return t.cont
    if isinstance(t, ImpI):
        r = _find_redex(t.body, n + 1)
        return None if r is None else ImpI(r)
    for i, c in enumerate(t.children()):
        r = _find_redex(c, n)
        if r is not None:
            return _replace_child(t, i, r)
    return None


def _replace_child(t: Term, i: int, new: Term) -> Term:
    seen = -1

    def pick(s):
        nonlocal seen
        seen += 1
        return new if seen == i else s

    return _map(t, pick)


def reduce_redex(variant: str, frame: Frame, ctx, term: Term) -> Term:
    """Contract the outermost introduction-then-elimination redex."""
    _variant(variant)
    out = _find_redex(term, len(_ctx_list(ctx)))
    if out is None:
        raise NoRedex("term has no redex")
    return out


def normalize(variant: str, frame: Frame, ctx, term: Term, limit: int = 10_000) -> Term:
    for _ in range(limit):
        try:
            term = reduce_redex(variant, frame, ctx, term)
        except NoRedex:
            return term
    raise RuntimeError("normalization step limit reached")


def certificate(variant: str, frame: Frame, ctx, a: Prop, w: World,
                prover: CplProver | None = None, oracle: Oracle | None = None) -> Term | None:
    """A term for ``ctx |- a @ w`` extracted from a tethered sequent proof.

    For ``cpl*`` the tethered term is returned only if it also checks as a
    de-tethered derivation (witness tables can differ between the logics).
    """
    variant = _variant(variant)
    prover = prover or CplProver(frame)
    lst = _ctx_list(ctx)
    res = prover.decide(frozenset(lst), a, w)
    if not res:
        return None
    t = _extract(frame, lst, res.proof)
    if variant == "cpl*" and not check_nd("cpl*", frame, lst, t, a, w, oracle):
        return None
    return t


def expand_neutral(variant: str, frame: Frame, ctx, term: Term, a: Prop, w: World,
                   prover: CplProver | None = None, oracle: Oracle | None = None) -> Term:
    """One-step eta-expansion of ``term`` at a connective."""
    variant = _variant(variant)
    lst = _ctx_list(ctx)
    n = len(lst)
    if isinstance(a, Imp):
        return ImpI(ImpE(a.left, shift(term, n, 1), Hyp(n)))
    if not isinstance(a, (Dia, Box)):
        raise UnsupportedShape(f"no expansion at {a}")
    prover = prover or CplProver(frame)
    succ = [frame.worlds[j] for j in frame.succ[frame.idx(w)]]
    gamma = frozenset(lst)
    if variant == "cpl":
        provable = {v: prover.provable(gamma, a.body, v) for v in succ}
    else:
        oracle = oracle or default_oracle("cpl*", frame)
        provable = {v: oracle(gamma, a.body, v) for v in succ}

    def cert(v):
        c = certificate(variant, frame, lst, a.body, v, prover, oracle)
        if c is None:
            raise UnsupportedShape(f"no certificate available for {a.body} @ {v}")
        return c

    if isinstance(a, Dia):
        tab = table((v, DiaI(v, cert(v))) for v in succ if provable[v])
        return DiaE(w, a.body, term, tab)
    if all(provable.values()):
        return BoxE(w, a.body, term, BoxI(table((v, cert(v)) for v in succ)))
    return BoxE(w, a.body, term, None)


# -- extraction from sequent proofs -------------------------------------------

def _extract(frame: Frame, ctx: tuple, node: CplProof) -> Term:
    w = node.world
    rule = node.rule
    if rule == "Init":
        return Hyp(ctx.index(node.principal))
    if rule == "BotL":
        return BotE(w, Hyp(ctx.index(node.principal)))
    if rule == "ImpR":
        return ImpI(_extract(frame, ctx + (Judgment(node.goal.left, w),), node.subs[0]))
    if rule == "ImpL":
        imp = node.principal.prop
        arg = _extract(frame, ctx, node.subs[0])
        cont = _extract(frame, ctx + (Judgment(imp.right, w),), node.subs[1])
        return graft(len(ctx), ImpE(imp.left, Hyp(ctx.index(node.principal)), arg), cont)
    if rule == "DiaR":
        return DiaI(node.succ, _extract(frame, ctx, node.subs[0]))
    if rule == "BoxR":
        return BoxI(tuple((v, _extract(frame, ctx, p)) for v, p in node.table))
    if rule == "DiaL":
        hyp = node.principal
        tab = tuple((v, _extract(frame, ctx, p)) for v, p in node.table)
        return DiaE(w, hyp.prop.body, Hyp(ctx.index(hyp)), tab)
    if rule == "BoxL":
        hyp = node.principal
        cont = _extract(frame, ctx, node.subs[0]) if node.subs else None
        return BoxE(w, hyp.prop.body, Hyp(ctx.index(hyp)), cont)
    raise ValueError(f"unknown rule {rule!r}")


def extract_nd(frame: Frame, ctx, c: Prop, w: World, proof: CplProof) -> Term:
    """Tethered natural-deduction term for the sequent proved by ``proof``."""
    if proof.goal is not c or proof.world != w:
        raise ValueError("proof does not conclude the given judgment")
    return _extract(frame, _ctx_list(ctx), proof)


# -- text form ----------------------------------------------------------------

def to_text(t: Term) -> str:
    if isinstance(t, Hyp):
        return f"(hyp {t.index})"
    if isinstance(t, BotE):
        return f"(bote {t.world} {to_text(t.sub)})"
    if isinstance(t, ImpI):
        return f"(impi {to_text(t.body)})"
    if isinstance(t, ImpE):
        return f'(impe "{t.ante}" {to_text(t.fun)} {to_text(t.arg)})'
    if isinstance(t, DiaI):
        return f"(diai {t.world} {to_text(t.sub)})"
    if isinstance(t, DiaE):
        return f'(diae {t.world} "{t.body}" {to_text(t.scrut)} {_table_text(t.table)})'
    if isinstance(t, BoxI):
        return f"(boxi {_table_text(t.table)})"
    if isinstance(t, BoxE):
        cont = "_" if t.cont is None else to_text(t.cont)
        return f'(boxe {t.world} "{t.body}" {to_text(t.scrut)} {cont})'
    raise TypeError(f"not a term: {t!r}")


def _table_text(tab) -> str:
    return "(" + " ".join(f"({v} {to_text(s)})" for v, s in tab) + ")"


_SEXP_TOKEN = re.compile(r'\s*(?:([()])|"([^"]*)"|([^\s()"]+))')


def _sexp_tokens(text: str, source: str):
    pos, line, col = 0, 1, 1
    toks = []
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError("unterminated string or stray character", line, col, source)
            break
        start = m.start(m.lastindex)
        skipped = text[pos:start]
        nl = skipped.count("\n")
        if nl:
            line += nl
            col = len(skipped) - skipped.rfind("\n")
        else:
            col += len(skipped)
        kind = m.lastindex
        toks.append((kind, m.group(kind), line, col))
        consumed = text[start:m.end()]
        line += consumed.count("\n")
        col += len(consumed)
        pos = m.end()
    return toks


class _SexpParser:
    def __init__(self, text, source, frame):
        self.toks = _sexp_tokens(text, source)
        self.i = 0
        self.source = source
        self.frame = frame

    def fail(self, msg):
        if self.i < len(self.toks):
            _, _, line, col = self.toks[self.i]
        else:
            line, col = 0, 0
        raise ParseError(msg, line, col, self.source)

    def next(self):
        if self.i >= len(self.toks):
            self.fail("unexpected end of input")
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] != 1:
            self.i -= 1
            self.fail(f"expected {value!r}")

    def word(self):
        kind, val, *_ = self.next()
        if kind != 3:
            self.i -= 1
            self.fail("expected a name")
        return val

    def world(self):
        w = self.word()
        if self.frame is not None and w not in self.frame:
            self.i -= 1
            self.fail(f"undeclared world {w!r}")
        return w

    def prop(self):
        kind, val, line, col = self.next()
        if kind != 2:
            self.i -= 1
            self.fail("expected a quoted proposition")
        return parse_prop(val, self.source, line, col + 1)

    def table(self):
        self.expect("(")
        out = []
        while self.i < len(self.toks) and self.toks[self.i][1] != ")":
            self.expect("(")
            v = self.world()
            out.append((v, self.term()))
            self.expect(")")
        self.expect(")")
        return tuple(out)

    def term(self):
        self.expect("(")
        tag = self.word()
        if tag == "hyp":
            raw = self.word()
            if not raw.isdigit():
                self.i -= 1
                self.fail("expected a hypothesis index")
            t = Hyp(int(raw))
        elif tag == "bote":
            t = BotE(self.world(), self.term())
        elif tag == "impi":
            t = ImpI(self.term())
        elif tag == "impe":
            t = ImpE(self.prop(), self.term(), self.term())
        elif tag == "diai":
            t = DiaI(self.world(), self.term())
        elif tag == "diae":
            t = DiaE(self.world(), self.prop(), self.term(), self.table())
        elif tag == "boxi":
            t = BoxI(self.table())
        elif tag == "boxe":
            w, body, scrut = self.world(), self.prop(), self.term()
            if self.i < len(self.toks) and self.toks[self.i][1] == "_":
                self.i += 1
                cont = None
            else:
                cont = self.term()
            t = BoxE(w, body, scrut, cont)
        else:
            self.i -= 1
            self.fail(f"unknown constructor {tag!r}")
        self.expect(")")
        return t


def parse_term(text: str, source: str = "<term>", frame: Frame | None = None) -> Term:
    p = _SexpParser(text, source, frame)
    t = p.term()
    if p.i != len(p.toks):
        p.fail("trailing input after term")
    return t


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c in t.children():
        yield from subterms(c)
