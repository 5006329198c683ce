"""Propositions, unpolarized and polarized.

All formula nodes are hash-consed: building the same tree twice returns the
same object, so equality is identity and hashing is O(1).  Construct them by
calling the classes (``Imp(Atom("p"), BOT)``) or with :func:`parse_prop`.

Concrete syntax of unpolarized propositions::

    P ::= bot | <ident> | ~P | dia P | box P | P -> P | ( P )

``->`` is right-associative and binds loosest; ``~P`` abbreviates ``P -> bot``.
"""

from __future__ import annotations

import re

from .errors import ParseError

_TABLE: dict = {}


class _Node:
    __slots__ = ("__weakref__", "_text", "_size")
    _fields: tuple = ()

    def __new__(cls, *args):
        key = (cls,) + args
        node = _TABLE.get(key)
        if node is None:
            node = object.__new__(cls)
            for name, value in zip(cls._fields, args):
                object.__setattr__(node, name, value)
            object.__setattr__(node, "_text", None)
            object.__setattr__(node, "_size", None)
            _TABLE[key] = node
        return node

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self._fields))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self):
        return f"{type(self).__name__}<{self}>"

    def __str__(self):
        if self._text is None:
            object.__setattr__(self, "_text", self._render())
        return self._text

    def __lt__(self, other):
        return str(self) < str(other)

    @property
    def children(self) -> tuple:
        return tuple(getattr(self, f) for f in self._fields if isinstance(getattr(self, f), _Node))

    def subformulas(self) -> set:
        out, todo = set(), [self]
        while todo:
            node = todo.pop()
            if node not in out:
                out.add(node)
                todo.extend(node.children)
        return out

    @property
    def size(self) -> int:
        if self._size is None:
            object.__setattr__(self, "_size", 1 + sum(c.size for c in self.children))
        return self._size

    @property
    def depth(self) -> int:
        kids = self.children
        return 1 + (max(c.depth for c in kids) if kids else 0)


# -- unpolarized --------------------------------------------------------------

class Prop(_Node):
    __slots__ = ()


class Atom(Prop):
    __slots__ = ("name",)
    _fields = ("name",)

    def _render(self):
        return self.name


class Bot(Prop):
    __slots__ = ()

    def _render(self):
        return "bot"


class Imp(Prop):
    __slots__ = ("left", "right")
    _fields = ("left", "right")

    def _render(self):
        if self.right is BOT:
            return "~" + _unary_operand(self.left)
        left = str(self.left)
        if isinstance(self.left, Imp) and self.left.right is not BOT:
            left = f"({left})"
        return f"{left} -> {self.right}"


class Dia(Prop):
    __slots__ = ("body",)
    _fields = ("body",)

    def _render(self):
        return "dia " + _unary_operand(self.body)


class Box(Prop):
    __slots__ = ("body",)
    _fields = ("body",)

    def _render(self):
        return "box " + _unary_operand(self.body)


def _unary_operand(p: Prop) -> str:
    if isinstance(p, Imp) and p.right is not BOT:
        return f"({p})"
    return str(p)


BOT = Bot()


def Neg(p: Prop) -> Prop:
    """Intuitionistic negation, ``p -> bot``."""
    return Imp(p, BOT)


def imps(*props: Prop) -> Prop:
    """Right-nested implication chain ``p1 -> p2 -> ... -> pn``."""
    out = props[-1]
    for p in reversed(props[:-1]):
        out = Imp(p, out)
    return out


# -- polarized ----------------------------------------------------------------

class PolProp(_Node):
    __slots__ = ()
    positive: bool = True


class PAtom(PolProp):
    """Positive atom ``Q+``."""
    __slots__ = ("name",)
    _fields = ("name",)

    def _render(self):
        return self.name + "+"


class NAtom(PolProp):
    """Negative atom ``Q-``."""
    __slots__ = ("name",)
    _fields = ("name",)
    positive = False

    def _render(self):
        return self.name + "-"


class Down(PolProp):
    __slots__ = ("body",)
    _fields = ("body",)

    def _render(self):
        return "↓" + _pol_operand(self.body)


class Up(PolProp):
    __slots__ = ("body",)
    _fields = ("body",)
    positive = False

    def _render(self):
        return "↑" + _pol_operand(self.body)


class PBot(PolProp):
    __slots__ = ()

    def _render(self):
        return "⊥"


class PDia(PolProp):
    __slots__ = ("body",)
    _fields = ("body",)

    def _render(self):
        return "◇" + _pol_operand(self.body)


class PBox(PolProp):
    __slots__ = ("body",)
    _fields = ("body",)

    def _render(self):
        return "□" + _pol_operand(self.body)


class PImp(PolProp):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    positive = False

    def _render(self):
        left = str(self.left)
        if isinstance(self.left, PImp):
            left = f"({left})"
        return f"{left} ⊃ {self.right}"


def _pol_operand(p: PolProp) -> str:
    return f"({p})" if isinstance(p, PImp) else str(p)


PBOT = PBot()


def pimps(*props: PolProp) -> PolProp:
    out = props[-1]
    for p in reversed(props[:-1]):
        out = PImp(p, out)
    return out


def is_stable(p: PolProp) -> bool:
    """Stable positive (``Q+``, ``↓A-``) or stable negative (``Q-``, ``↑A+``)."""
    return isinstance(p, (PAtom, Down, NAtom, Up))


def is_stable_pos(p: PolProp) -> bool:
    return isinstance(p, (PAtom, Down))


def is_stable_neg(p: PolProp) -> bool:
    return isinstance(p, (NAtom, Up))


# -- parsing ------------------------------------------------------------------

_KEYWORDS = {"bot", "dia", "box"}
_TOKEN = re.compile(r"\s*(?:(->)|([()~])|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def _tokenize(text: str, source: str, line: int, col0: int):
    toks, pos = [], 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos and not text[pos:].strip():
            break
        kind = m.lastindex
        start = m.start(kind)
        if kind == 4:
            raise ParseError(f"unexpected character {m.group(4)!r}", line, col0 + start, source)
        toks.append((m.group(kind), col0 + start))
        pos = m.end()
    toks.append(("<end>", col0 + len(text)))
    return toks


class _PropParser:
    def __init__(self, text, source, line, col0):
        self.toks = _tokenize(text, source, line, col0)
        self.i = 0
        self.source = source
        self.line = line

    def peek(self):
        return self.toks[self.i][0]

    def fail(self, msg):
        raise ParseError(msg, self.line, self.toks[self.i][1], self.source)

    def take(self, tok=None):
        t = self.toks[self.i][0]
        if tok is not None and t != tok:
            self.fail(f"expected {tok!r}, found {t!r}")
        self.i += 1
        return t

    def imp(self):
        left = self.unary()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.imp())
        return left

    def unary(self):
        t = self.peek()
        if t == "~":
            self.take()
            return Neg(self.unary())
        if t == "dia":
            self.take()
            return Dia(self.unary())
        if t == "box":
            self.take()
            return Box(self.unary())
        if t == "(":
            self.take()
            inner = self.imp()
            self.take(")")
            return inner
        if t == "bot":
            self.take()
            return BOT
        if t == "<end>" or t in {")", "->"} or not (t[0].isalpha() or t[0] == "_"):
            self.fail(f"expected a proposition, found {t!r}")
        self.take()
        return Atom(t)


def parse_prop(text: str, source: str = "<prop>", line: int = 0, column: int = 1) -> Prop:
    p = _PropParser(text, source, line, column)
    out = p.imp()
    if p.peek() != "<end>":
        p.fail(f"unexpected {p.peek()!r} after proposition")
    return out


def atoms_of(p: _Node) -> set[str]:
    return {q.name for q in p.subformulas() if isinstance(q, (Atom, PAtom, NAtom))}
