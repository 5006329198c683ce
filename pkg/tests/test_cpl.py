import pytest
from hypothesis import given, strategies as st

from cplkit import (BOT, Atom, Box, CplProof, CplProver, Dia, Imp, Judgment,
                    ctx_leq, decide_cpl, make_context, parse_prop, replay_cpl)
from cplkit.cpl import proof_judgments

from strategies import problems, props

Q = Atom("Q")
DQ = make_context([(Dia(Q), "alpha")])


def test_running_triple(running):
    assert decide_cpl(running, DQ, BOT, "alpha").provable
    assert not decide_cpl(running, DQ, Q, "beta").provable
    assert not decide_cpl(running, DQ, Q, "gamma").provable


def test_trivial_verdicts(single):
    assert decide_cpl(single, make_context([(Q, "w")]), Q, "w")
    assert decide_cpl(single, frozenset(), Imp(Q, Q), "w")
    assert not decide_cpl(single, frozenset(), BOT, "w")


def test_running_proof_shape(running):
    res = decide_cpl(running, DQ, BOT, "alpha")
    assert res.proof.rule == "DiaL" and res.proof.table == ()
    assert replay_cpl(running, DQ, BOT, "alpha", res.proof)


def test_diabot_depends_on_successor_consistency(chain):
    nd = parse_prop("~dia bot")
    assert decide_cpl(chain, frozenset(), nd, "a")
    assert not decide_cpl(chain, make_context([(BOT, "b")]), nd, "a")


def test_replay_rejects_world_mismatch(running):
    ctx = make_context([(Q, "alpha")])
    bad = CplProof("Init", Q, "beta")
    assert not replay_cpl(running, ctx, Q, "alpha", bad)
    assert replay_cpl(running, ctx, Q, "alpha", CplProof("Init", Q, "alpha"))


def test_replay_rejects_missing_dial_continuation(running):
    ctx = make_context([(Dia(Q), "alpha"), (Q, "beta")])
    body = CplProof("DiaR", Dia(Q), "alpha", succ="beta", subs=(CplProof("Init", Q, "beta"),))
    good = CplProof("DiaL", Dia(Q), "alpha", principal=Judgment(Dia(Q), "alpha"),
                    table=(("beta", body),))
    assert replay_cpl(running, ctx, Dia(Q), "alpha", good)
    bad = CplProof("DiaL", Dia(Q), "alpha", principal=Judgment(Dia(Q), "alpha"))
    assert not replay_cpl(running, ctx, Dia(Q), "alpha", bad)


def test_replay_rejects_incomplete_boxr(running):
    good = decide_cpl(running, frozenset(), Box(Imp(Q, Q)), "alpha").proof
    assert good.rule == "BoxR"
    assert replay_cpl(running, frozenset(), Box(Imp(Q, Q)), "alpha", good)
    short = CplProof("BoxR", Box(Imp(Q, Q)), "alpha", table=good.table[:1])
    assert not replay_cpl(running, frozenset(), Box(Imp(Q, Q)), "alpha", short)


def _subformulas(ctx, goal):
    out = set(goal.subformulas())
    for j in ctx:
        out |= set(j.prop.subformulas())
    return out


@given(problems())
def test_proofs_replay_and_have_the_subformula_property(prob):
    frame, ctx, a, w = prob
    res = decide_cpl(frame, ctx, a, w)
    if res:
        assert replay_cpl(frame, ctx, a, w, res.proof)
        allowed = _subformulas(ctx, a)
        assert all(j.prop in allowed for j in proof_judgments(ctx, a, w, res.proof))


@given(problems())
def test_eager_and_backtracking_modes_agree(prob):
    frame, ctx, a, w = prob
    assert CplProver(frame).provable(ctx, a, w) == CplProver(frame, eager=False).provable(ctx, a, w)


@given(problems())
def test_shared_prover_matches_fresh_prover(prob):
    frame, ctx, a, w = prob
    shared = CplProver(frame)
    for v in frame.worlds:
        shared.provable(ctx, a, v)
    assert shared.provable(ctx, a, w) == CplProver(frame).provable(ctx, a, w)


@given(problems())
def test_identity(prob):
    frame, ctx, a, w = prob
    assert decide_cpl(frame, ctx | {Judgment(a, w)}, a, w)


@given(problems(), st.data())
def test_weakening(prob, data):
    frame, ctx, a, w = prob
    if not decide_cpl(frame, ctx, a, w):
        return
    i = frame.index[w]
    plus = frame.plus_matrix[i]
    # grow at w, add or drop anywhere outside the star-range of w
    extra = data.draw(st.lists(st.tuples(props(4), st.sampled_from(frame.worlds)), max_size=2))
    bigger = set(ctx)
    for p, v in extra:
        if v == w or not frame.star_matrix[i, frame.index[v]]:
            bigger.add(Judgment(p, v))
    bigger = {j for j in bigger if frame.star_matrix[i, frame.index[j.world]] or data.draw(st.booleans())}
    bigger = frozenset(bigger)
    assert ctx_leq(frame, ctx, bigger, w)
    assert not any(plus[frame.index[j.world]] for j in bigger ^ ctx)
    assert decide_cpl(frame, bigger, a, w)


@given(problems(), props(4))
def test_cut(prob, c):
    frame, ctx, a, w = prob
    if decide_cpl(frame, ctx, a, w) and decide_cpl(frame, ctx | {Judgment(a, w)}, c, w):
        assert decide_cpl(frame, ctx, c, w)


def test_prover_reuse_counts_steps(running):
    prover = CplProver(running)
    prover.provable(DQ, BOT, "alpha")
    assert prover.steps > 0
    assert prover.witnesses(DQ, Q, "alpha") == []
    assert prover.witnesses(make_context([(Q, "beta")]), Q, "alpha") == ["beta"]


@pytest.mark.parametrize("text, world, expected", [
    # an unprovable box/dia hypothesis is explosive below a successor ...
    ("box p -> q", "a", True),
    ("dia p -> q", "a", True),
    # ... at a leaf a box hypothesis is inert and a dia hypothesis always explodes
    ("box p -> q", "b", False),
    ("dia p -> q", "b", True),
    ("box p -> dia q", "b", False),
])
def test_reflection_on_hypotheses(chain, text, world, expected):
    assert decide_cpl(chain, frozenset(), parse_prop(text), world).provable == expected
