import numpy as np
from hypothesis import given, strategies as st

from cplkit.kernels import compile_rules, fixpoint, immediate_step


@st.composite
def rule_sets(draw):
    n = draw(st.integers(1, 12))
    atom = st.integers(0, n - 1)
    rules = draw(st.lists(st.tuples(atom, st.lists(atom, max_size=3), st.lists(atom, max_size=2)),
                          max_size=20))
    db = np.array(draw(st.lists(st.booleans(), min_size=n, max_size=n)), dtype=np.bool_)
    return n, rules, db


def _reference_step(rules, db):
    new = set()
    for head, pos, neg in rules:
        if not db[head] and all(db[a] for a in pos) and not any(db[a] for a in neg):
            new.add(head)
    return new


@given(rule_sets())
def test_step_kernels_match_reference(case):
    n, rules, db = case
    cr = compile_rules(n, rules)
    expected = _reference_step(rules, db)
    for use_numba in (True, False):
        assert set(np.flatnonzero(immediate_step(cr, db, use_numba))) == expected


@given(rule_sets())
def test_fixpoint_variants_agree(case):
    n, rules, db = case
    # negation only on atoms no rule can derive, as within one stratum
    heads = {h for h, _, _ in rules}
    rules = [(h, p, [a for a in ng if a not in heads]) for h, p, ng in rules]
    cr = compile_rules(n, rules)
    outs = [fixpoint(cr, db, semi, nb) for semi in (False, True) for nb in (False, True)]
    for out, added, _ in outs[1:]:
        assert np.array_equal(out, outs[0][0])
        assert np.array_equal(added, outs[0][1])
    final = outs[0][0]
    assert not immediate_step(cr, final).any()
    assert np.all(final >= db)


def test_fixpoint_rounds_on_a_chain():
    rules = [(0, [], [])] + [(i + 1, [i], []) for i in range(5)]
    db, added, rounds = fixpoint(compile_rules(6, rules), np.zeros(6, dtype=np.bool_))
    assert db.all() and rounds == 6
    assert list(added) == [1, 2, 3, 4, 5, 6]


def test_empty_rule_set():
    db = np.array([True, False])
    out, added, rounds = fixpoint(compile_rules(2, []), db)
    assert list(out) == [True, False] and rounds == 0
