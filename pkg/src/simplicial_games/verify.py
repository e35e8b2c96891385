"""Exhaustive verification sweeps.

The component menu is built from three family graphs (one nim heap, one
two-heap nim box, one subtraction game).  Every menu item is a position of
its family graph and the subgame reachable from it is exactly the menu
game, so solving one instance per (complex, family tuple) covers every menu
tuple on that complex at once: its product positions are exactly the start
positions of the sweep instances.
"""

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .emperor import (
    EmperorInstance,
    brute_engine,
    emperor_moves,
    emperor_outcome_fast,
    emperor_sum_outcome,
    emperor_winning_move,
    fast_condition,
    is_legal,
)
from .errors import NoWitness
from .game_core import GameGraph, Outcome
from .rulesets import multi_heap_index, multi_nim_spec, nim_spec, subtraction_spec
from .simplicial import (
    NimTable,
    bits,
    bouton_outcome,
    complex_from_maximal_faces,
    discrete_complex,
    face_key,
    nim_moves,
)


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    mismatches: int = 0
    first: str = None
    seconds: float = 0.0

    def fail(self, message):
        self.mismatches += 1
        if self.first is None:
            self.first = message

    @property
    def ok(self):
        return self.mismatches == 0

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        text = f"[{status}] {self.name}: {self.checked} checked, {self.mismatches} mismatches ({self.seconds:.2f}s)"
        if self.first:
            text += f"\n       first counterexample: {self.first}"
        return text


def vertex_names(n):
    return [f"v{i + 1}" for i in range(n)]


def all_complexes(n):
    """Every simplicial complex on ``n`` labelled vertices, as canonical antichains."""
    names = vertex_names(n)
    subsets = sorted(range(1, 1 << n), key=face_key, reverse=True)
    full = (1 << n) - 1
    found = []

    def extend(start, chosen, covered):
        if covered == full:
            found.append(list(chosen))
        for k in range(start, len(subsets)):
            s = subsets[k]
            # larger sets come first, so s can only be contained in a chosen face
            if any(s & ~c == 0 for c in chosen):
                continue
            chosen.append(s)
            extend(k + 1, chosen, covered | s)
            chosen.pop()

    extend(0, [], 0)
    complexes = [complex_from_maximal_faces(names, [[names[i] for i in bits(m)] for m in faces]) for faces in found]
    return sorted(complexes, key=lambda cx: [face_key(f) for f in cx.maximal_faces])


def sweep_complexes(max_vertices):
    out = []
    for n in range(1, max_vertices + 1):
        out.extend(all_complexes(n))
    return out


@dataclass
class Menu:
    """Component menu: each item is (spec, family index, position in the family graph)."""

    size: int = 2
    families: list = field(init=False)
    items: list = field(init=False)

    def __post_init__(self):
        s = self.size
        fam_specs = [nim_spec(s), multi_nim_spec((s, s)), subtraction_spec({1, 2}, s + 1)]
        self.family_specs = fam_specs
        self.families = [spec.build() for spec in fam_specs]
        items = [(nim_spec(k), 0, k) for k in range(s + 1)]
        items += [
            (multi_nim_spec((a, b)), 1, multi_heap_index((a, b), (s, s)))
            for a in range(s + 1)
            for b in range(s + 1)
        ]
        items += [(subtraction_spec({1, 2}, k), 2, k) for k in range(s + 2)]
        self.items = items

    def family_positions(self, fam):
        return [pos for _, f, pos in self.items if f == fam]

    def spec_at(self, fam, pos):
        for spec, f, p in self.items:
            if f == fam and p == pos:
                return spec
        raise KeyError((fam, pos))


def family_instances(cx, menu):
    for fams in product(range(len(menu.families)), repeat=cx.n):
        yield fams, EmperorInstance(cx, [menu.families[f] for f in fams])


def sweep_positions(inst, fams, menu):
    return product(*(menu.family_positions(f) for f in fams))


# ---------------------------------------------------------------- simplicial nim


def check_bouton(max_vertices=3, bound=4):
    res = CheckResult("Bouton conformance on discrete complexes")
    t0 = time.perf_counter()
    for n in range(1, max_vertices + 1):
        cx = discrete_complex(vertex_names(n))
        table = NimTable(cx, (bound,) * n)
        for s in product(range(bound + 1), repeat=n):
            res.checked += 1
            if table.outcome(s) != bouton_outcome(s):
                res.fail(f"{s}: table says {table.outcome(s)}, XOR says {bouton_outcome(s)}")
    res.seconds = time.perf_counter() - t0
    return res


def check_lemmas(max_vertices=3, bound=3):
    """Options of P-positions are N; every N-position has a move to a P-position.

    Move sets come from direct enumeration, independent of the retrograde
    marking that produced the table.
    """
    res = CheckResult("simplicial nim P-set lemmas")
    t0 = time.perf_counter()
    for cx in sweep_complexes(max_vertices):
        table = NimTable(cx, (bound,) * cx.n)
        for s in product(range(bound + 1), repeat=cx.n):
            res.checked += 1
            moves = nim_moves(cx, s)
            if table.is_p(s):
                bad = [t for t in moves if table.is_p(t)]
                if bad:
                    res.fail(f"{cx!r}: P-position {s} moves to P-position {min(bad)}")
            elif not any(table.is_p(t) for t in moves):
                res.fail(f"{cx!r}: N-position {s} has no move to a P-position")
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------- emperor sweep


def _new_results():
    return {
        "engines": CheckResult("fast engine agrees with brute engine"),
        "esum": CheckResult("XOR-of-Pl rule agrees on discrete complexes"),
        "strategy": CheckResult("winning moves are legal and reach P-positions"),
        "claim1": CheckResult("moves from P-condition positions break the condition"),
        "dominance": CheckResult("maximal-face and all-face move generation agree"),
    }


def _sweep_complex(args):
    cx, menu_size, fast = args
    menu = Menu(menu_size)
    results = _new_results()
    discrete = cx.is_discrete()
    for fams, inst in family_instances(cx, menu):
        brute = brute_engine(inst)
        for p in sweep_positions(inst, fams, menu):
            desc = lambda: f"{cx!r} with " + ", ".join(
                menu.spec_at(f, x).describe() for f, x in zip(fams, p)
            )
            truth = brute.outcome(p)
            r = results["engines"]
            r.checked += 1
            got = fast(inst, p)
            if got != truth:
                r.fail(f"{desc()}: fast {got}, brute {truth}")
            if discrete:
                r = results["esum"]
                r.checked += 1
                xor_rule = emperor_sum_outcome(inst.components, p)
                if not (xor_rule == truth == emperor_outcome_fast(inst, p)):
                    r.fail(f"{desc()}: XOR rule {xor_rule}, brute {truth}")
            moves = emperor_moves(inst, p)
            r = results["dominance"]
            r.checked += 1
            if moves != emperor_moves(inst, p, all_faces=True):
                r.fail(f"{desc()}: move sets differ")
            r = results["strategy"]
            r.checked += 1
            move = emperor_winning_move(inst, p)
            if truth == Outcome.P:
                if move is not None:
                    r.fail(f"{desc()}: P-position but a winning move was returned")
            elif move is None:
                r.fail(f"{desc()}: N-position without a winning move")
            else:
                q = move.result()
                try:
                    is_legal(inst, move)
                except Exception as exc:
                    r.fail(f"{desc()}: illegal winning move ({exc})")
                else:
                    if move.origin() != p or q not in moves or not brute.is_p(q):
                        r.fail(f"{desc()}: winning move lands on {inst.format_position(q)}, not a P-position")
            if fast_condition(inst, p):
                r = results["claim1"]
                r.checked += 1
                kept = [q for q in moves if fast_condition(inst, q)]
                if kept:
                    r.fail(f"{desc()}: move to {inst.format_position(kept[0])} keeps the condition")
    return results


def _merge(total, part):
    for key, r in part.items():
        t = total[key]
        t.checked += r.checked
        t.mismatches += r.mismatches
        if t.first is None:
            t.first = r.first


def check_emperor_sweep(max_vertices=3, menu_size=2, fast=emperor_outcome_fast, jobs=1):
    t0 = time.perf_counter()
    total = _new_results()
    tasks = [(cx, menu_size, fast) for cx in sweep_complexes(max_vertices)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_sweep_complex, tasks):
                _merge(total, part)
    else:
        for task in tasks:
            _merge(total, _sweep_complex(task))
    elapsed = time.perf_counter() - t0
    for r in total.values():
        r.seconds = elapsed
    return list(total.values())


def sweep_instance_count(max_vertices=3, menu_size=2):
    k = len(Menu(menu_size).items)
    return sum(k ** cx.n for cx in sweep_complexes(max_vertices))


def random_sweep_instances(count, max_vertices=3, menu_size=2, seed=0):
    """Standalone sweep instances built from their own ruleset specs."""
    rng = random.Random(seed)
    menu = Menu(menu_size)
    complexes = sweep_complexes(max_vertices)
    out = []
    for _ in range(count):
        cx = rng.choice(complexes)
        specs = [rng.choice(menu.items)[0] for _ in range(cx.n)]
        out.append((cx, specs, EmperorInstance(cx, [s.build() for s in specs])))
    return out


def check_reachable(count=100, max_vertices=3, menu_size=2, seed=0, fast=emperor_outcome_fast):
    """Engine agreement on every reachable position of random standalone instances."""
    res = CheckResult(f"engine agreement on all reachable positions of {count} random instances")
    t0 = time.perf_counter()
    for cx, specs, inst in random_sweep_instances(count, max_vertices, menu_size, seed):
        brute = brute_engine(inst)
        seen = {inst.start()}
        stack = [inst.start()]
        while stack:
            p = stack.pop()
            res.checked += 1
            if fast(inst, p) != brute.outcome(p):
                res.fail(f"{cx!r} with {[s.describe() for s in specs]} at {inst.format_position(p)}")
            for q in emperor_moves(inst, p):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------- Pl properties


def random_dag(rng, n, density=0.3):
    """Random DAG on ``n`` positions with edges only from higher to lower ids."""
    options = []
    for g in range(n):
        opts = [h for h in range(g) if rng.random() < density]
        options.append(opts)
    return GameGraph(options, start=n - 1)


def naive_pl(game):
    """Pl straight from its definition, with strict followers by plain search."""
    memo = {}

    def followers(g):
        seen = set()
        stack = list(game.options_table[g])
        while stack:
            h = stack.pop()
            if h not in seen:
                seen.add(h)
                stack.extend(game.options_table[h])
        return seen

    def is_p(g):
        return all(not is_p(h) for h in game.options_table[g])

    def pl(g):
        if g not in memo:
            if not game.options_table[g]:
                memo[g] = 0
            else:
                memo[g] = 1 + max(pl(x) for x in followers(g) if is_p(x))
        return memo[g]

    return [pl(g) for g in range(len(game))]


def check_pl_properties(games):
    res = CheckResult("Pl properties (terminal iff 0, strict descent, witnesses, naive agreement)")
    t0 = time.perf_counter()
    for gi, game in enumerate(games):
        naive = naive_pl(game) if len(game) <= 200 else None
        for g in range(len(game)):
            res.checked += 1
            pl = game.pl(g)
            if (pl == 0) != game.is_terminal(g):
                res.fail(f"game {gi} position {g}: Pl {pl}, terminal {game.is_terminal(g)}")
            if naive is not None and naive[g] != pl:
                res.fail(f"game {gi} position {g}: Pl {pl}, naive {naive[g]}")
            followers = game.strict_followers(g)
            if game.is_p(g):
                for x in followers:
                    if game.is_p(x) and game.pl(x) >= pl:
                        res.fail(f"game {gi}: P-follower {x} of {g} has Pl {game.pl(x)} >= {pl}")
            for m in range(pl):
                try:
                    x, path = game.pl_witness(g, m)
                except NoWitness:
                    res.fail(f"game {gi}: no witness for position {g}, m={m}")
                    continue
                ok = (
                    x in followers
                    and game.is_p(x)
                    and game.pl(x) == m
                    and path[0] == g
                    and path[-1] == x
                    and all(b in game.options_table[a] for a, b in zip(path, path[1:]))
                )
                if not ok:
                    res.fail(f"game {gi}: bad witness {x} via {path} for position {g}, m={m}")
    res.seconds = time.perf_counter() - t0
    return res


def pl_test_games(menu_size=2, random_count=60, seed=0):
    menu = Menu(menu_size)
    games = [spec.build() for spec, _, _ in menu.items]
    rng = random.Random(seed)
    for _ in range(random_count):
        games.append(random_dag(rng, rng.randint(1, 200), density=rng.choice([0.02, 0.05, 0.2, 0.5])))
    return games


# ---------------------------------------------------------------- self-play


def play_out(inst, p, engine_first, rng, strategy=emperor_winning_move):
    """Engine against a uniformly random opponent. Returns True if the engine moves last."""
    engine_turn = engine_first
    last_mover_engine = None
    while True:
        moves = sorted(emperor_moves(inst, p))
        if not moves:
            return last_mover_engine is True
        if engine_turn:
            move = strategy(inst, p)
            p = move.result() if move is not None else rng.choice(moves)
        else:
            p = rng.choice(moves)
        last_mover_engine = engine_turn
        engine_turn = not engine_turn


def check_selfplay(games=100, max_vertices=3, menu_size=2, seed=0):
    """Engine plays first from N-positions and second from non-terminal P-positions.

    Start positions are drawn at random from the whole sweep; each draw is
    classified by the brute engine before play.
    """
    res = CheckResult("self-play")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    menu = Menu(menu_size)
    pools = {Outcome.N: [], Outcome.P: []}
    for cx in sweep_complexes(max_vertices):
        for fams, inst in family_instances(cx, menu):
            for p in sweep_positions(inst, fams, menu):
                if any(g.options_table[x] for g, x in zip(inst.components, p)):
                    pools[Outcome.P if fast_condition(inst, p) else Outcome.N].append((inst, p))
    played = {}
    for side, pool in pools.items():
        picks = rng.sample(pool, min(games, len(pool)))
        played[side] = len(picks)
        for inst, p in picks:
            res.checked += 1
            truth = brute_engine(inst).outcome(p)
            if truth != side:
                res.fail(f"{inst.complex!r} at {inst.format_position(p)}: brute says {truth}")
                continue
            engine_first = side == Outcome.N
            if not play_out(inst, p, engine_first, rng):
                res.fail(f"{inst.complex!r} from {inst.format_position(p)}: engine lost (engine first: {engine_first})")
    res.played = played
    res.name = f"self-play from {played[Outcome.N]} N-positions and {played[Outcome.P]} P-positions"
    res.seconds = time.perf_counter() - t0
    return res


def run_all(max_vertices=3, menu_size=2, fast=emperor_outcome_fast, jobs=1, random_instances=100, selfplay_games=100):
    results = [check_bouton(max_vertices), check_lemmas(max_vertices)]
    results += check_emperor_sweep(max_vertices, menu_size, fast=fast, jobs=jobs)
    results.append(check_reachable(random_instances, max_vertices, menu_size, fast=fast))
    results.append(check_pl_properties(pl_test_games(menu_size)))
    results.append(check_selfplay(selfplay_games, max_vertices, menu_size))
    return results
