import random

import pytest

from cplkit import BOT, Atom, FragmentError, Imp, Judgment, decide_cpl, parse_prop, prove_neg, reaches
from cplkit.validation import (SCHEMA_BY_NAME, SCHEMAS, check_schema, count, default_samples,
                               demorgan_check, formulas, gen_frames, instances, ipc_decide,
                               known_countermodels, lob_check, mp_check, nec_check, run_suite)
from cplkit.validation.battery import battery_contexts
from cplkit.validation.suite import fresh_verdict

SAMPLES = default_samples()


@pytest.mark.parametrize("text, expected", [
    ("A -> A", True),
    ("((A -> B) -> A) -> A", False),
    ("~~A -> A", False),
    ("A -> ~~A", True),
    ("~~(((A -> B) -> A) -> A)", True),
    ("((A -> B) -> C) -> (B -> C)", True),
    ("bot -> A", True),
])
def test_ipc_examples(text, expected):
    assert ipc_decide(parse_prop(text)) is expected


def test_ipc_rejects_modal_formulas():
    with pytest.raises(FragmentError):
        ipc_decide(parse_prop("box p"))


def _recurrence(depth, modal):
    n = 0
    for _ in range(depth):
        n = 3 + n * n + (2 * n if modal else 0)
    return n


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_enumeration_matches_recurrence(depth):
    for modal in (True, False):
        fs = formulas(depth, modal=modal)
        assert len(fs) == len(set(fs)) == _recurrence(depth, modal) == count(depth, modal=modal)
        assert max(f.depth for f in fs) == depth


def test_enumeration_sizes_at_depth_four():
    # closed form: 3, 18, 363, 132498 and 3, 12, 147, 21612
    assert count(4) == 132498
    assert count(4, modal=False) == 21612


def test_battery_is_deterministic_and_acyclic():
    a = gen_frames(7, 10, 4)
    assert a == gen_frames(7, 10, 4)
    assert all(1 <= len(f) <= 4 for f in a)
    t = gen_frames(7, 10, 4, transitive=True)
    for f, g in zip(a, t):
        assert f.worlds == g.worlds
        for u in g.worlds:
            for v in g.worlds:
                assert reaches(g, u, v, "plus") == (v in [g.worlds[j] for j in g.succ[g.index[u]]])
                assert reaches(g, u, v, "plus") == reaches(f, u, v, "plus")
    assert battery_contexts(a, SAMPLES) == battery_contexts(a, SAMPLES)
    with pytest.raises(ValueError):
        gen_frames(1, 1, 0)


def test_instances():
    rng = random.Random(0)
    assert len(instances(SCHEMA_BY_NAME["I"], SAMPLES, rng)) == len(SAMPLES)
    assert len(instances(SCHEMA_BY_NAME["S"], SAMPLES, rng, limit=5)) == 5
    assert instances(SCHEMA_BY_NAME["diabot"], SAMPLES, rng) == [parse_prop("~dia bot")]


@pytest.fixture(scope="module")
def small():
    return gen_frames(2011, 12, 4), gen_frames(2011, 12, 4, transitive=True)


@pytest.mark.parametrize("logic", ["cpl", "cpl*"])
def test_schema_examples(small, logic):
    plain, trans = small
    assert check_schema(SCHEMA_BY_NAME["I"], plain, SAMPLES, logic).verdict == "valid"
    assert check_schema(SCHEMA_BY_NAME["GL"], trans, SAMPLES, logic).verdict == "valid"
    rep = check_schema(SCHEMA_BY_NAME["DM-neg-dia"], plain, SAMPLES, logic)
    assert rep.verdict == "invalid"
    cex = rep.counterexample
    assert not fresh_verdict(logic, cex.frame, cex.ctx, cex.prop, cex.world)
    with pytest.raises(ValueError):
        check_schema(SCHEMA_BY_NAME["GL"], plain, SAMPLES, logic)


def test_schema_table_is_well_formed():
    names = [s.name for s in SCHEMAS]
    assert len(names) == len(set(names))
    assert SCHEMA_BY_NAME["4dia"].expected["cpl"] == "unknown"


def test_lob_and_rules(small):
    plain, _ = small
    rep = lob_check(plain, SAMPLES)
    assert rep.verdict == "valid" and "vacuous" in rep.note
    # box (p -> p) -> p -> p holds everywhere, as does p -> p itself
    qq = Imp(Atom("p"), Atom("p"))
    assert lob_check(plain, [qq]).verdict == "valid"
    # for a bare atom the premise fails somewhere, so the rule is vacuous
    assert lob_check(plain, [Atom("p")]).note.startswith("1 of 1")
    for logic in ("cpl", "cpl*"):
        assert mp_check(plain, SAMPLES, logic).verdict == "valid"
        assert nec_check(plain, SAMPLES, logic).verdict == "valid"


def test_demorgan(small):
    plain, _ = small
    reps = {(r.name, r.logic): r for r in demorgan_check(plain, SAMPLES)}
    assert reps["DM-dia-neg", "cpl*"].verdict == "valid"
    assert reps["DM-box-neg", "cpl*"].verdict == "valid"
    assert reps["DM-consistent", "cpl"].verdict == "valid"
    assert reps["DM-dia-neg", "cpl"].verdict == "invalid"


def test_known_countermodels_replay():
    cms = known_countermodels("cpl") + known_countermodels("cpl*")
    assert {cm.label for cm in cms} >= {"neg-dia-Q", "diabot", "dia-box-imp"}
    assert all(cm.replay() for cm in cms)
    # the tethered-only failures are provable in the de-tethered logic
    for cm in known_countermodels("cpl"):
        if cm.label in ("diabot", "DM-dia-neg", "DM-box-neg"):
            assert prove_neg(cm.frame, cm.ctx, cm.prop, cm.world).provable


def test_degenerate_suite_passes():
    res = run_suite(2011, 1, 1)
    assert res.ok
    assert all(r.frames == 1 for r in res.reports)


def test_diabot_needs_an_inconsistent_successor(chain):
    nd = parse_prop("~dia bot")
    assert decide_cpl(chain, frozenset(), nd, "a")
    assert not decide_cpl(chain, frozenset({Judgment(BOT, "b")}), nd, "a")
