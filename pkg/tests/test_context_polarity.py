import pytest
from hypothesis import given, strategies as st

from cplkit import (BOT, PBOT, Atom, Box, Dia, Down, Imp, Judgment, NAtom, PAtom, PBox, PDia,
                    PImp, ParseError, PolarityClashError, Polarities, Up, ctx_leq, erase,
                    make_context, parse_prop, parse_sequent, polarize, project)
from cplkit.polarity import check_polarities
from cplkit.textio import format_sequent

from strategies import contexts, frames, props

Q = Atom("Q")


def test_ctx_leq_examples(running):
    g = make_context([(Dia(Q), "alpha")])
    assert ctx_leq(running, g, g, "alpha")
    assert ctx_leq(running, g, g | {Judgment(Q, "alpha")}, "alpha")
    assert not ctx_leq(running, g, g | {Judgment(Q, "beta")}, "alpha")
    # judgments at unrelated worlds come and go freely
    assert ctx_leq(running, g | {Judgment(Q, "alpha")}, frozenset(), "beta")


@given(st.data())
def test_ctx_leq_is_a_preorder(data):
    f = data.draw(frames(4))
    w = data.draw(st.sampled_from(f.worlds))
    a, b, c = (data.draw(contexts(f, 4, 2)) for _ in range(3))
    assert ctx_leq(f, a, a, w)
    if ctx_leq(f, a, b, w) and ctx_leq(f, b, c, w):
        assert ctx_leq(f, a, c, w)
    if ctx_leq(f, a, b, w) and ctx_leq(f, b, a, w):
        assert project(f, a, w) == project(f, b, w)


def test_project(running):
    ctx = make_context([(Q, "alpha"), (Q, "beta"), (BOT, "gamma")])
    assert project(running, ctx, "beta") == make_context([(Q, "beta"), (BOT, "gamma")])
    assert project(running, ctx, "alpha") == ctx


def test_polarize_examples():
    a, b = Atom("A"), Atom("B")
    assert polarize(Imp(a, b), "neg") is PImp(PAtom("A"), Up(PAtom("B")))
    ctx = make_context([(BOT, "w")])
    assert polarize(ctx, "ctx") == frozenset({Judgment(Down(Up(PBOT)), "w")})
    assert polarize(frozenset(), "ctx") == frozenset()
    assert polarize(Dia(a), "pos") is PDia(PAtom("A"))
    assert polarize(Box(a), "neg") is Up(PBox(PAtom("A")))


def test_negative_atoms_follow_the_table():
    pol = Polarities()
    pol.declare("n", "-")
    assert polarize(Atom("n"), "neg", pol) is NAtom("n")
    assert polarize(Atom("n"), "pos", pol) is Down(NAtom("n"))
    with pytest.raises(PolarityClashError):
        pol.declare("n", "+")
    with pytest.raises(PolarityClashError):
        check_polarities([PAtom("x"), Up(NAtom("x"))])


def test_erase_examples():
    assert erase(Down(PImp(PAtom("Q"), Up(PAtom("Q"))))) is Imp(Q, Q)
    assert erase(Up(PBOT)) is BOT
    a = parse_prop("dia (P -> Q)")
    assert erase(polarize(a, "neg")) is a


@given(props(10), st.sampled_from(["pos", "neg"]))
def test_erase_inverts_polarize(a, mode):
    assert erase(polarize(a, mode)) is a


@given(st.data())
def test_context_polarization_is_pointwise(data):
    f = data.draw(frames(3))
    ctx = data.draw(contexts(f, 4))
    out = polarize(ctx, "ctx")
    assert out == frozenset().union(*[polarize(frozenset({j}), "ctx") for j in ctx])
    assert erase(out) == ctx


def test_parse_sequent(running):
    seq = parse_sequent("hyp dia Q @ alpha\n# note\ngoal bot @ alpha\n", "s", running)
    assert seq.context == make_context([(Dia(Q), "alpha")])
    assert seq.goal is BOT and seq.world == "alpha"
    assert parse_sequent(format_sequent(seq), "s", running) == seq


@pytest.mark.parametrize("text, line", [
    ("hyp Q @ alpha\n", 0),
    ("goal Q @ alpha\ngoal Q @ beta\n", 2),
    ("goal Q alpha\n", 1),
    ("goal Q @ delta\n", 1),
    ("hyp (Q @ alpha\ngoal Q @ alpha\n", 1),
    ("want Q @ alpha\n", 1),
])
def test_parse_sequent_errors(running, text, line):
    with pytest.raises(ParseError) as info:
        parse_sequent(text, "s", running)
    assert info.value.line == line
