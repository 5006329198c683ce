import pytest
from hypothesis import given, strategies as st

from cplkit import (BOT, Atom, Box, Dia, Imp, Judgment, NoRedex, OrderError, ParseError,
                    SideConditionError, UnsupportedShape, check_nd, decide_cpl, expand_neutral,
                    explain, extract_nd, make_context, normalize, parse_term, reduce_redex,
                    subst_nd, to_text, weaken_nd)
from cplkit.context import ordered
from cplkit.nd import BoxE, BoxI, BotE, DiaE, DiaI, Hyp, ImpE, ImpI, shift, subterms, term_size

from strategies import problems, props

Q, A = Atom("Q"), Atom("A")


def test_check_examples(running):
    assert check_nd("cpl", running, (), ImpI(Hyp(0)), Imp(A, A), "beta")
    dq = (Judgment(Dia(Q), "alpha"),)
    assert check_nd("cpl", running, dq, DiaE("alpha", Q, Hyp(0), ()), BOT, "alpha")
    assert check_nd("cpl", running, (), BoxI(()), Box(A), "gamma")
    qg = (Judgment(Q, "gamma"),)
    assert not check_nd("cpl", running, qg, DiaI("beta", Hyp(0)), Dia(Q), "alpha")


def test_explain_names_the_failing_node(running):
    msg = explain("cpl", running, (), ImpI(Hyp(1)), Imp(A, A), "alpha")
    assert msg.startswith("at impi:")
    assert explain("cpl", running, (), BoxI(()), Box(A), "alpha").startswith("at root:")


def test_tethering_is_what_separates_the_variants(chain):
    ctx = (Judgment(BOT, "b"),)
    term = BotE("b", Hyp(0))
    assert not check_nd("cpl", chain, ctx, term, Q, "a")
    assert check_nd("cpl*", chain, ctx, term, Q, "a")
    # b does not reach a
    assert not check_nd("cpl*", chain, (Judgment(BOT, "a"),), BotE("a", Hyp(0)), Q, "b")


def test_diae_table_must_list_exactly_the_witnesses(running):
    ctx = (Judgment(Dia(Q), "alpha"), Judgment(Q, "beta"))
    body = DiaI("beta", Hyp(1))
    assert check_nd("cpl", running, ctx, DiaE("alpha", Q, Hyp(0), (("beta", body),)), Dia(Q), "alpha")
    assert not check_nd("cpl", running, ctx, DiaE("alpha", Q, Hyp(0), ()), Dia(Q), "alpha")


def test_subst_examples(running):
    ctx = (Judgment(Q, "alpha"),)
    d = Hyp(0)
    assert subst_nd("cpl", running, ctx, d, Hyp(1), Q, "alpha", "alpha") == d
    assert subst_nd("cpl", running, ctx, d, ImpI(Hyp(0)), Q, "alpha", "alpha") == ImpI(Hyp(0))
    # the binder sat at level 2 and drops to level 1
    assert subst_nd("cpl", running, ctx, d, ImpI(Hyp(2)), Q, "alpha", "alpha") == ImpI(Hyp(1))
    e = ImpE(Q, ImpI(Hyp(2)), Hyp(1))
    out = subst_nd("cpl", running, ctx, d, e, Q, "alpha", "alpha")
    assert out == ImpE(Q, ImpI(Hyp(1)), Hyp(0))
    assert check_nd("cpl", running, ctx, out, Q, "alpha")
    with pytest.raises(SideConditionError):
        subst_nd("cpl", running, ctx, d, e, Q, "alpha", "beta")
    with pytest.raises(SideConditionError):
        subst_nd("cpl*", running, ctx, d, e, Q, "beta", "gamma")


def test_weaken_examples(running):
    g = make_context([(Q, "alpha")])
    assert weaken_nd(running, Hyp(0), g, g, "alpha") == Hyp(0)
    g2 = g | {Judgment(A, "alpha")}
    out = weaken_nd(running, Hyp(0), g, g2, "alpha")
    assert out == Hyp(ordered(g2).index(Judgment(Q, "alpha")))
    assert check_nd("cpl", running, g2, out, Q, "alpha")
    with pytest.raises(OrderError):
        weaken_nd(running, Hyp(0), g, g | {Judgment(A, "beta")}, "alpha")


def test_weaken_outside_range_keeps_witness_tables(running):
    ctx = make_context([(Dia(Q), "beta")])
    res = decide_cpl(running, ctx, BOT, "beta")
    t = extract_nd(running, ctx, BOT, "beta", res.proof)
    bigger = ctx | {Judgment(Q, "alpha")}
    t2 = weaken_nd(running, t, ctx, bigger, "beta")
    assert isinstance(t2, DiaE) and t2.table == t.table == ()
    assert check_nd("cpl", running, bigger, t2, BOT, "beta")


def test_reduce_examples(running):
    ctx = (Judgment(Q, "alpha"),)
    d = Hyp(0)
    assert reduce_redex("cpl", running, ctx, ImpE(Q, ImpI(Hyp(1)), d)) == d
    k = Hyp(0)
    t = DiaE("alpha", Q, DiaI("beta", Hyp(1)), (("beta", k), ("gamma", Hyp(2))))
    assert reduce_redex("cpl", running, ctx, t) == k
    with pytest.raises(NoRedex):
        reduce_redex("cpl", running, ctx, Hyp(0))
    assert normalize("cpl", running, ctx, ImpE(Q, ImpI(Hyp(1)), d)) == d


def test_expand_examples(running, chain):
    ctx = (Judgment(Imp(Q, Q), "alpha"),)
    out = expand_neutral("cpl", running, ctx, Hyp(0), Imp(Q, Q), "alpha")
    assert out == ImpI(ImpE(Q, Hyp(0), Hyp(1)))
    assert check_nd("cpl", running, ctx, out, Imp(Q, Q), "alpha")
    ctx = (Judgment(Dia(Q), "alpha"),)
    out = expand_neutral("cpl", running, ctx, Hyp(0), Dia(Q), "alpha")
    assert out == DiaE("alpha", Q, Hyp(0), ())
    ctx = (Judgment(Box(Imp(Q, Q)), "a"),)
    out = expand_neutral("cpl", chain, ctx, Hyp(0), Box(Imp(Q, Q)), "a")
    assert isinstance(out, BoxE) and isinstance(out.cont, BoxI)
    assert check_nd("cpl", chain, ctx, out, Box(Imp(Q, Q)), "a")
    with pytest.raises(UnsupportedShape):
        expand_neutral("cpl", chain, (Judgment(Q, "a"),), Hyp(0), Q, "a")


def test_extract_examples(running):
    ctx = make_context([(Q, "alpha")])
    assert extract_nd(running, ctx, Q, "alpha", decide_cpl(running, ctx, Q, "alpha").proof) == Hyp(0)
    dq = make_context([(Dia(Q), "alpha")])
    t = extract_nd(running, dq, BOT, "alpha", decide_cpl(running, dq, BOT, "alpha").proof)
    assert t == DiaE("alpha", Q, Hyp(0), ())
    assert to_text(t) == '(diae alpha "Q" (hyp 0) ())'


def test_text_round_trip_and_errors(running):
    t = BoxE("alpha", Imp(Q, Q), Hyp(0), ImpI(ImpE(Q, Hyp(0), BotE("alpha", Hyp(1)))))
    assert parse_term(to_text(t), frame=running) == t
    t = DiaE("alpha", Dia(Q), Hyp(0), (("beta", BoxI((("gamma", Hyp(2)),))),))
    assert parse_term(to_text(t)) == t
    assert parse_term(to_text(BoxE("beta", Q, Hyp(0), None))) == BoxE("beta", Q, Hyp(0), None)
    for bad in ['(hyp x)', '(impi (hyp 0)', '(frob (hyp 0))', '(impe "Q ->" (hyp 0) (hyp 1))',
                '(diai delta (hyp 0))']:
        with pytest.raises(ParseError):
            parse_term(bad, frame=running)


@given(problems())
def test_extracted_certificates_check_and_normalize(prob):
    frame, ctx, a, w = prob
    res = decide_cpl(frame, ctx, a, w)
    if not res:
        return
    t = extract_nd(frame, ctx, a, w, res.proof)
    assert check_nd("cpl", frame, ctx, t, a, w)
    assert parse_term(to_text(t)) == t
    n = normalize("cpl", frame, ctx, t)
    assert check_nd("cpl", frame, ctx, n, a, w)


@given(problems(), props(4))
def test_subst_output_rechecks(prob, c):
    frame, ctx, a, w = prob
    j = Judgment(a, w)
    if j in ctx:
        return
    d = decide_cpl(frame, ctx, a, w)
    e = decide_cpl(frame, ctx | {j}, c, w)
    if not (d and e):
        return
    lst = ordered(ctx)
    dt = extract_nd(frame, lst, a, w, d.proof)
    et = extract_nd(frame, lst + (j,), c, w, e.proof)
    out = subst_nd("cpl", frame, lst, dt, et, a, w, w)
    assert check_nd("cpl", frame, lst, out, c, w)


@given(problems(), st.data())
def test_weaken_output_rechecks(prob, data):
    frame, ctx, a, w = prob
    res = decide_cpl(frame, ctx, a, w)
    if not res:
        return
    t = extract_nd(frame, ctx, a, w, res.proof)
    extra = Judgment(data.draw(props(3)), w)
    bigger = ctx | {extra}
    out = weaken_nd(frame, t, ctx, bigger, w)
    assert check_nd("cpl", frame, bigger, out, a, w)


def test_shift_and_subterms():
    t = ImpI(ImpE(Q, Hyp(0), Hyp(3)))
    assert shift(t, 1, 2) == ImpI(ImpE(Q, Hyp(0), Hyp(5)))
    assert term_size(t) == 4
    assert len(list(subterms(t))) == 4
