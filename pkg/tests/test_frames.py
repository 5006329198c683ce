import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cplkit import CyclicError, ParseError, UnknownWorldError, build_frame, parse_frame, reaches, successors
from cplkit.kernels import closure_numba, closure_numpy, transitive_closure

from strategies import frames


def test_running_frame(running):
    assert running.worlds == ("alpha", "beta", "gamma")
    assert successors(running, "alpha") == ["beta", "gamma"]
    assert successors(running, "gamma") == []
    assert reaches(running, "alpha", "gamma", "plus")
    assert not reaches(running, "gamma", "alpha", "star")


def test_single_and_cycle(single):
    assert successors(single, "w") == []
    with pytest.raises(CyclicError):
        build_frame(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(CyclicError):
        build_frame(["a"], [("a", "a")])
    with pytest.raises(UnknownWorldError):
        build_frame(["a"], [("a", "z")])


def _brute_plus(worlds, edges):
    plus = set(edges)
    while True:
        more = {(a, d) for a, b in plus for c, d in plus if b == c} - plus
        if not more:
            return plus
        plus |= more


def _acyclic(worlds, edges):
    plus = _brute_plus(worlds, edges)
    return all((w, w) not in plus for w in worlds)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_build_frame_accepts_exactly_acyclic_relations(n):
    worlds = [f"w{i}" for i in range(n)]
    pairs = list(itertools.product(worlds, repeat=2))
    for mask in range(1 << len(pairs)):
        edges = [pr for i, pr in enumerate(pairs) if mask >> i & 1]
        if _acyclic(worlds, edges):
            f = build_frame(worlds, edges)
            plus = _brute_plus(worlds, edges)
            for a, b in pairs:
                assert reaches(f, a, b, "plus") == ((a, b) in plus)
                assert reaches(f, a, b, "star") == ((a, b) in plus or a == b)
        else:
            with pytest.raises(CyclicError):
                build_frame(worlds, edges)


@given(frames(5))
def test_closure_matches_brute_force(f):
    edges = [(f.worlds[i], f.worlds[j]) for i in range(len(f)) for j in f.succ[i]]
    plus = _brute_plus(f.worlds, edges)
    for a in f.worlds:
        assert not reaches(f, a, a, "plus")
        assert reaches(f, a, a, "star")
        assert successors(f, a) == sorted(b for x, b in edges if x == a)
        for b in f.worlds:
            assert reaches(f, a, b, "plus") == ((a, b) in plus)


@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 2**32 - 1))
def test_closure_kernels_agree(n, p, seed):
    rng = np.random.default_rng(seed)
    adj = np.triu(rng.random((n, n)) < p, k=1)
    a, b = closure_numba(adj), closure_numpy(adj)
    assert np.array_equal(a, b)
    assert np.array_equal(transitive_closure(adj, True), transitive_closure(adj, False))


def test_parse_frame_round_trip(running):
    assert parse_frame(running.to_text()) == running
    text = "# a comment\nworld a\nworld b  # trailing\nedge a b\n"
    assert successors(parse_frame(text), "a") == ["b"]


@pytest.mark.parametrize("text, line", [
    ("world a\nedge a b\n", 2),
    ("world a\nworld a\n", 2),
    ("world a\nlink a a\n", 2),
    ("world a\nworld b\nedge a b\nedge b a\n", 3),
])
def test_parse_frame_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_frame(text, "f.txt")
    assert info.value.line == line
    assert str(info.value).startswith(f"f.txt:{line}:")
