import random
from itertools import product

import pytest

from simplicial_games.emperor import (
    BruteEngine,
    EmperorInstance,
    EmperorMove,
    emperor_moves,
    emperor_outcome_brute,
    emperor_outcome_fast,
    emperor_sum_instance,
    emperor_sum_outcome,
    emperor_winning_move,
    is_legal,
    move_to,
)
from simplicial_games.errors import IllegalMove, LengthMismatch, SizeLimitExceeded, ValidationError
from simplicial_games.game_core import GameGraph, Outcome, validate_graph
from simplicial_games.rulesets import multi_heap_index, multi_nim, nim_heap, subtraction_game
from simplicial_games.simplicial import bits, complex_from_maximal_faces, discrete_complex, full_simplex
from simplicial_games.verify import all_complexes, random_dag

import oracles

P, N = Outcome.P, Outcome.N


def single(game):
    return EmperorInstance(discrete_complex(["v1"]), [game])


def test_moves_single_vertex():
    assert emperor_moves(single(nim_heap(2)), (2,)) == {(1,), (0,)}


def test_moves_discrete_pair():
    inst = EmperorInstance(discrete_complex(["v1", "v2"]), [nim_heap(1), nim_heap(1)])
    assert emperor_moves(inst, (1, 1)) == {(0, 1), (1, 0), (0, 0)}


def test_moves_terminal():
    inst = EmperorInstance(full_simplex(["v1", "v2"]), [nim_heap(3), multi_nim((2, 1))])
    assert emperor_moves(inst, (0, 0)) == set()


def test_moves_off_face_single_step():
    # on the discrete complex, choosing {v1} lets v2 move only once: 3 -> 1 needs two steps
    inst = EmperorInstance(discrete_complex(["v1", "v2"]), [nim_heap(0), subtraction_game({1}, 3)])
    assert emperor_moves(inst, (0, 3)) == {(0, 2), (0, 1), (0, 0)}  # v2 is on face {v2}
    inst = EmperorInstance(discrete_complex(["v1", "v2"]), [subtraction_game({1}, 2), subtraction_game({1}, 3)])
    moves = emperor_moves(inst, (2, 3))
    assert (0, 2) in moves  # {v1} face, v2 one step
    assert (0, 1) not in moves  # both take two steps: needs a face containing both


def test_instance_validation():
    with pytest.raises(ValidationError):
        EmperorInstance(discrete_complex(["a", "b"]), [nim_heap(1)])
    inst = single(nim_heap(1))
    with pytest.raises(LengthMismatch):
        emperor_moves(inst, (1, 0))


def test_brute_examples():
    inst = EmperorInstance(full_simplex("ab"), [nim_heap(0), multi_nim(())])
    assert emperor_outcome_brute(inst) == P
    for g in [nim_heap(3), multi_nim((1, 1)), subtraction_game({1, 2}, 3)]:
        assert emperor_outcome_brute(single(g)) == N
    inst = EmperorInstance(discrete_complex(["v1", "v2"]), [multi_nim((1, 1)), multi_nim((1, 1))])
    assert emperor_outcome_brute(inst) == P


def test_fast_examples():
    inst = EmperorInstance(full_simplex("ab"), [nim_heap(0), nim_heap(0)])
    assert emperor_outcome_fast(inst) == P
    inst = single(multi_nim((1, 1)))
    assert emperor_outcome_fast(inst) == N == emperor_outcome_brute(inst)
    inst = EmperorInstance(full_simplex(["v1", "v2"]), [multi_nim((1, 1)), multi_nim((2, 2))])
    assert inst.pl_vector(inst.start()) == (1, 2)
    assert emperor_outcome_fast(inst) == N == emperor_outcome_brute(inst)


def test_winning_move_none_at_p():
    inst = EmperorInstance(discrete_complex(["v1", "v2"]), [multi_nim((2, 2)), multi_nim((2, 2))])
    assert emperor_winning_move(inst) is None


def test_winning_move_single_heap():
    inst = single(nim_heap(3))
    move = emperor_winning_move(inst)
    assert bits(move.face) == [0]
    assert move.paths == ((3, 0),)
    assert move.render(inst) == "face {v1}: v1 path 3→0"


def test_winning_move_lemma2_case():
    inst = EmperorInstance(discrete_complex(["v1", "v2"]), [multi_nim((2, 2)), multi_nim((1, 1))])
    move = emperor_winning_move(inst)
    big = inst.components[0]
    assert bits(move.face) == [0]
    assert big.labels[move.result()[0]] == "(1,1)"
    assert move.kind(1) == "stay"
    assert emperor_outcome_brute(inst, move.result()) == P
    assert move.result() in emperor_moves(inst, inst.start())


def test_winning_move_mixed_case():
    # components that are N get normalized by one step first; check legality on a few mixes
    games = [nim_heap(2), multi_nim((2, 1)), subtraction_game({1, 2}, 4), multi_nim((2, 2))]
    for maximal in ([["a", "b", "c"]], [["a", "b"], ["c"]], [["a"], ["b"], ["c"]]):
        cx = complex_from_maximal_faces("abc", maximal)
        for trio in product(games, repeat=3):
            inst = EmperorInstance(cx, list(trio))
            move = emperor_winning_move(inst)
            if emperor_outcome_brute(inst) == P:
                assert move is None
                continue
            is_legal(inst, move)
            assert move.result() in emperor_moves(inst, inst.start())
            assert emperor_outcome_brute(inst, move.result()) == P


def test_sum_outcome_examples():
    assert emperor_sum_outcome([nim_heap(0), multi_nim(())]) == P
    a, b = multi_nim((1, 1)), multi_nim((2, 2))
    assert emperor_sum_outcome([a, b]) == N == emperor_outcome_brute(emperor_sum_instance([a, b]))
    assert emperor_sum_outcome([b, b]) == P == emperor_outcome_brute(emperor_sum_instance([b, b]))
    with pytest.raises(LengthMismatch):
        emperor_sum_outcome([a, b], [0])


def _literal(inst):
    maximal = tuple(frozenset(bits(f)) for f in inst.complex.maximal_faces)
    comp_options = tuple({g: list(game.options_table[g]) for g in range(len(game))} for game in inst.components)
    return maximal, comp_options


@pytest.mark.parametrize("seed", range(12))
def test_brute_matches_literal_oracle(seed):
    rng = random.Random(seed)
    complexes = [cx for n in (1, 2, 3) for cx in all_complexes(n)]
    cx = rng.choice(complexes)
    comps = [random_dag(rng, rng.randint(1, 5), 0.5) for _ in range(cx.n)]
    inst = EmperorInstance(cx, comps)
    maximal, comp_options = _literal(inst)
    is_p = oracles.emperor_is_p(maximal, comp_options)
    for p in product(*(range(len(g)) for g in comps)):
        assert emperor_outcome_brute(inst, p) == (P if is_p(p) else N)
        assert emperor_outcome_fast(inst, p) == (P if is_p(p) else N)
        assert emperor_moves(inst, p) == oracles.emperor_options(maximal, comp_options, p)


def test_product_game_is_acyclic():
    comps = [multi_nim((1, 1)), subtraction_game({1, 2}, 3), nim_heap(2)]
    for cx in all_complexes(3):
        inst = EmperorInstance(cx, comps)
        positions = list(product(*(range(len(g)) for g in comps)))
        edges = [(p, q) for p in positions for q in emperor_moves(inst, p)]
        validate_graph(positions, edges, inst.start())  # raises CycleDetected on a cycle
        for p, q in edges:
            hp = sum(g.height(x) for g, x in zip(comps, p))
            hq = sum(g.height(x) for g, x in zip(comps, q))
            assert hq < hp


def test_brute_cap():
    inst = EmperorInstance(full_simplex("abc"), [multi_nim((3, 3))] * 3)
    with pytest.raises(SizeLimitExceeded):
        BruteEngine(inst, cap=100).outcome(inst.start())


def test_is_legal_rules():
    cx = complex_from_maximal_faces(["v1", "v2", "v3"], [["v1", "v2"], ["v3"]])
    inst = EmperorInstance(cx, [nim_heap(3), subtraction_game({1}, 3), nim_heap(1)])
    with pytest.raises(IllegalMove, match="not a face of Δ"):
        is_legal(inst, EmperorMove(0b101, ((3, 0), (3,), (1, 0))))
    with pytest.raises(IllegalMove, match="at most one move"):
        is_legal(inst, EmperorMove(0b100, ((3,), (3, 2, 1), (1,))))
    with pytest.raises(IllegalMove, match="is not a move"):
        is_legal(inst, EmperorMove(0b011, ((3,), (3, 1), (1,))))
    with pytest.raises(IllegalMove, match="has to move"):
        is_legal(inst, EmperorMove(0b001, ((3,), (3,), (1,))))
    assert is_legal(inst, EmperorMove(0b011, ((3, 1), (3, 2, 1), (1, 0))))


def test_move_to_round_trip():
    cx = complex_from_maximal_faces(["v1", "v2", "v3"], [["v1", "v2"], ["v3"]])
    inst = EmperorInstance(cx, [nim_heap(3), subtraction_game({1}, 3), nim_heap(1)])
    p = inst.start()
    for q in emperor_moves(inst, p):
        move = move_to(inst, p, q)
        assert move.result() == q and is_legal(inst, move)
    # two-step plays on v2 and v3 need a face containing both, and there is none
    inst = EmperorInstance(cx, [nim_heap(3), subtraction_game({1}, 3), subtraction_game({1}, 3)])
    assert move_to(inst, (3, 3, 3), (3, 1, 2)).render(inst) == "face {v1,v2}: v1 stay; v2 path 3→2→1; v3 step 3→2"
    with pytest.raises(IllegalMove):
        move_to(inst, (3, 3, 3), (3, 1, 1))
