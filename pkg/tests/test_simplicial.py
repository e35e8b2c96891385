from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_games.errors import (
    EmptyFaceList,
    LengthMismatch,
    SizeLimitExceeded,
    UncoveredVertex,
    UnknownVertexInFace,
)
from simplicial_games.game_core import Outcome
from simplicial_games.simplicial import (
    NimOracle,
    NimTable,
    bits,
    bouton_outcome,
    complex_from_maximal_faces,
    discrete_complex,
    full_simplex,
    nim_moves,
    nim_outcome,
    nim_pset,
)
from simplicial_games.verify import all_complexes

import oracles

TRIANGLE = [["1", "2"], ["2", "3"], ["1", "3"]]


def names(cx, masks):
    return sorted(sorted(cx.face_names(m)) for m in masks)


def test_canonical_forms():
    cx = complex_from_maximal_faces([1, 2, 3], [[1, 2], [3]])
    assert names(cx, cx.maximal_faces) == [[1, 2], [3]]
    cx = complex_from_maximal_faces([1, 2], [[1], [2], [1, 2]])
    assert names(cx, cx.maximal_faces) == [[1, 2]]


def test_complex_errors():
    with pytest.raises(UncoveredVertex):
        complex_from_maximal_faces([1, 2, 3], [[1, 2]])
    with pytest.raises(EmptyFaceList):
        complex_from_maximal_faces([1], [])
    with pytest.raises(UnknownVertexInFace):
        complex_from_maximal_faces([1, 2], [[1, 5], [2]])
    with pytest.raises(SizeLimitExceeded):
        discrete_complex(range(17))


def test_faces():
    cx = complex_from_maximal_faces([1, 2, 3], [[1, 2], [3]])
    assert names(cx, cx.faces()) == [[1], [1, 2], [2], [3]]
    assert names(discrete_complex("abcd"), discrete_complex("abcd").faces()) == [["a"], ["b"], ["c"], ["d"]]
    simplex = full_simplex([1, 2])
    assert names(simplex, simplex.faces()) == [[1], [1, 2], [2]]
    # canonical order: by size, then by vertex indices
    assert [bits(f) for f in full_simplex("abc").faces()] == [[0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]]


def test_is_face():
    cx = complex_from_maximal_faces("123", TRIANGLE)
    assert cx.is_face(0b011) and cx.is_face(0b100)
    assert not cx.is_face(0b111)
    assert not cx.is_face(0)


def test_nim_moves_examples():
    simplex = full_simplex([1, 2])
    assert nim_moves(simplex, (1, 1)) == {(0, 1), (1, 0), (0, 0)}
    assert nim_moves(simplex, (0, 0)) == set()
    assert nim_moves(discrete_complex([1, 2]), (1, 1)) == {(0, 1), (1, 0)}
    with pytest.raises(LengthMismatch):
        nim_moves(simplex, (1,))


def test_sub_faces_generate_moves():
    # (2,1) -> (1,1) lowers only vertex 1, which needs the face {1}, not {1,2}
    assert (1, 1) in nim_moves(full_simplex([1, 2]), (2, 1))


def test_nim_outcome_examples():
    assert nim_outcome(full_simplex("ab"), (0, 0)) == Outcome.P
    assert nim_outcome(full_simplex([1, 2]), (1, 1)) == Outcome.N
    assert nim_outcome(complex_from_maximal_faces("123", TRIANGLE), (1, 1, 1)) == Outcome.P


def test_pset_examples():
    assert nim_pset(discrete_complex([1, 2]), (3, 3)) == [(k, k) for k in range(4)]
    assert nim_pset(full_simplex([1, 2]), (2, 2)) == [(0, 0)]
    assert nim_pset(complex_from_maximal_faces("123", TRIANGLE), (0, 0, 0)) == [(0, 0, 0)]


def test_bouton():
    assert bouton_outcome((1, 2, 3)) == Outcome.P
    assert bouton_outcome((0, 0, 0)) == Outcome.P
    assert bouton_outcome((5,)) == Outcome.N


@pytest.mark.parametrize("n", [1, 2, 3])
def test_discrete_matches_bouton(n):
    table = NimTable(discrete_complex(range(n)), (4,) * n)
    for s in product(range(5), repeat=n):
        assert table.outcome(s) == bouton_outcome(s)


@pytest.mark.parametrize("cx", [cx for n in (1, 2, 3) for cx in all_complexes(n)], ids=repr)
def test_table_matches_recursive_oracle(cx):
    maximal = [set(bits(f)) for f in cx.maximal_faces]
    is_p = oracles.simplicial_nim_is_p(tuple(frozenset(f) for f in maximal))
    table = NimTable(cx, (3,) * cx.n)
    for s in product(range(4), repeat=cx.n):
        assert table.is_p(s) == is_p(s)
        assert nim_moves(cx, s) == oracles.simplicial_nim_options(maximal, s)
        assert all(min(t) >= 0 for t in nim_moves(cx, s))


def test_box_cap():
    with pytest.raises(SizeLimitExceeded):
        NimTable(full_simplex("ab"), (10, 10), cap=50)


def test_box_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SIMPLICIAL_GAMES_MAX_CELLS", "10")
    with pytest.raises(SizeLimitExceeded):
        nim_pset(full_simplex("ab"), (5, 5))


def test_oracle_grows_and_agrees():
    cx = complex_from_maximal_faces("123", TRIANGLE)
    oracle = NimOracle(cx)
    assert oracle.is_p((1, 1, 1))
    small = oracle.table_for((1, 1, 1)).bound
    oracle.is_p((3, 0, 2))
    big = NimTable(cx, (3, 3, 3))
    assert oracle.table_for((0, 0, 0)).bound != small
    for s in product(range(4), range(2), range(3)):
        assert oracle.is_p(s) == big.is_p(s)


def test_oracle_winning_move():
    cx = discrete_complex([1, 2])
    oracle = NimOracle(cx)
    assert oracle.winning_move((2, 2)) is None
    face, target = oracle.winning_move((3, 1))
    assert bits(face) == [0] and target == (1, 1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([cx for n in (1, 2, 3) for cx in all_complexes(n)]), st.data())
def test_lemma2_targets_are_reachable_p_positions(cx, data):
    s = tuple(data.draw(st.lists(st.integers(0, 4), min_size=cx.n, max_size=cx.n)))
    oracle = NimOracle(cx)
    found = oracle.winning_move(s)
    if found is None:
        assert oracle.is_p(s)
    else:
        face, target = found
        assert target in nim_moves(cx, s)
        assert oracle.is_p(target)
        assert all((target[i] < s[i]) == bool(face >> i & 1) for i in range(cx.n))
