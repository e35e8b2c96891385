"""Impartial games combined over a simplicial complex.

One component game sits on each vertex.  A move chooses a face; components
on the face may advance any number of moves, every other component at most
one, and at least one component must change.

Two independent engines decide positions: ``emperor_outcome_brute`` runs the
normal-play recursion over the product game, ``emperor_outcome_fast`` uses
the characterization "every component is a P-position and the vector of
P-position lengths is a P-position of nim on the complex".
"""

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import prod
from operator import xor

from .errors import IllegalMove, LengthMismatch, ValidationError
from .game_core import Outcome
from .limits import cell_cap, check_size
from .simplicial import NimOracle, bits, discrete_complex


class EmperorInstance:
    def __init__(self, complex, components):
        components = list(components)
        if len(components) != complex.n:
            raise ValidationError(
                f"{len(components)} components for {complex.n} vertices; need one per vertex"
            )
        self.complex = complex
        self.components = components
        self.oracle = NimOracle(complex)
        self._brute = None

    def start(self):
        return tuple(g.start for g in self.components)

    def check_position(self, p):
        p = tuple(p)
        if len(p) != len(self.components):
            raise LengthMismatch(f"position has {len(p)} entries, instance has {len(self.components)} vertices")
        for g, x in zip(self.components, p):
            g.options(x)  # raises UnknownPosition
        return p

    def pl_vector(self, p):
        return tuple(g.pl(x) for g, x in zip(self.components, p))

    def format_position(self, p):
        return "(" + ", ".join(g.labels[x] for g, x in zip(self.components, p)) + ")"


@dataclass(frozen=True)
class EmperorMove:
    """A move of the sum.

    ``paths[i]`` is the move path taken by component ``i`` including its
    starting position; a path of length one means the component stays.
    """

    face: int
    paths: tuple

    def result(self):
        return tuple(path[-1] for path in self.paths)

    def origin(self):
        return tuple(path[0] for path in self.paths)

    def kind(self, i):
        steps = len(self.paths[i]) - 1
        if steps == 0:
            return "stay"
        return "path" if self.face >> i & 1 else "step"

    def render(self, inst):
        cx = inst.complex
        parts = []
        for i, path in enumerate(self.paths):
            kind = self.kind(i)
            labels = inst.components[i].labels
            if kind == "stay":
                parts.append(f"{cx.vertices[i]} stay")
            else:
                parts.append(f"{cx.vertices[i]} {kind} " + "→".join(labels[x] for x in path))
        return f"face {cx.format_face(self.face)}: " + "; ".join(parts)

    def to_dict(self, inst):
        cx = inst.complex
        return {
            "face": cx.face_names(self.face),
            "moves": [
                {
                    "vertex": cx.vertices[i],
                    "kind": self.kind(i),
                    "path": [inst.components[i].labels[x] for x in path],
                }
                for i, path in enumerate(self.paths)
            ],
            "result": [inst.components[i].labels[x] for i, x in enumerate(self.result())],
        }


def _choices(inst, p, mask):
    out = []
    for i, (g, x) in enumerate(zip(inst.components, p)):
        if mask >> i & 1:
            out.append([x] + g.strict_followers(x))
        else:
            out.append([x] + list(g.options_table[x]))
    return out


def emperor_moves(inst, p, all_faces=False):
    """Every position reachable in one move of the sum from ``p``.

    Iterating maximal faces suffices because a face vertex may also stay or
    move once; ``all_faces=True`` enumerates every non-empty face instead.
    """
    p = inst.check_position(p)
    faces = inst.complex.faces() if all_faces else inst.complex.maximal_faces
    out = set()
    for f in faces:
        out.update(product(*_choices(inst, p, f)))
    out.discard(p)
    return out


def is_legal(inst, move):
    """Raise IllegalMove naming the violated rule, else return True."""
    cx = inst.complex
    if not cx.is_face(move.face):
        raise IllegalMove(f"{cx.format_face(move.face)} is not a face of Δ")
    if len(move.paths) != cx.n:
        raise IllegalMove("a path is needed for every vertex")
    for i, (g, path) in enumerate(zip(inst.components, move.paths)):
        if not path:
            raise IllegalMove(f"empty path at vertex {cx.vertices[i]}")
        for a, b in zip(path, path[1:]):
            if b not in g.options_table[a]:
                raise IllegalMove(
                    f"{g.labels[a]}→{g.labels[b]} is not a move of the component on {cx.vertices[i]}"
                )
        if len(path) > 2 and not move.face >> i & 1:
            raise IllegalMove(
                f"vertex {cx.vertices[i]} is not on the chosen face: at most one move is allowed there"
            )
    if all(len(path) == 1 for path in move.paths):
        raise IllegalMove("at least one component has to move")
    return True


class BruteEngine:
    """Normal-play recursion over the product game, memoized per position.

    Positions are solved box by box: the box of all products of the
    components' followers contains everything reachable, and sorting it by
    total component height gives a valid evaluation order since each move
    strictly lowers the height of some component and raises none.
    """

    def __init__(self, inst, cap=None):
        self.inst = inst
        self.cap = cell_cap() if cap is None else cap
        self.memo = {}

    def _solve_from(self, p):
        comps = self.inst.components
        axes = [[x] + g.strict_followers(x) for g, x in zip(comps, p)]
        check_size(prod(len(a) for a in axes), self.cap, "product game")
        todo = [q for q in product(*axes) if q not in self.memo]
        todo.sort(key=lambda q: sum(g._height[x] for g, x in zip(comps, q)))
        memo = self.memo
        faces = self.inst.complex.maximal_faces
        for q in todo:
            win = False
            for f in faces:
                for r in product(*_choices(self.inst, q, f)):
                    if r != q and memo[r]:
                        win = True
                        break
                if win:
                    break
            memo[q] = not win

    def is_p(self, p):
        p = tuple(p)
        if p not in self.memo:
            self._solve_from(self.inst.check_position(p))
        return self.memo[p]

    def outcome(self, p):
        return Outcome.P if self.is_p(p) else Outcome.N


def brute_engine(inst):
    if inst._brute is None:
        inst._brute = BruteEngine(inst)
    return inst._brute


def emperor_outcome_brute(inst, p=None):
    return brute_engine(inst).outcome(inst.start() if p is None else p)


def fast_condition(inst, p):
    """True when every component is P and the Pl vector is P in nim on the complex."""
    if not all(g._is_p[x] for g, x in zip(inst.components, p)):
        return False
    return inst.oracle.is_p(inst.pl_vector(p))


def emperor_outcome_fast(inst, p=None):
    p = inst.check_position(inst.start() if p is None else p)
    return Outcome.P if fast_condition(inst, p) else Outcome.N


def emperor_winning_move(inst, p=None):
    """A move to a position satisfying the P-condition, or None if ``p`` already does.

    N-components first step to their smallest P-position option.  If the Pl
    vector then lies in the nim P-set that is the whole move; otherwise a
    nim move (face, target Pl vector) is realized on the face components by
    Pl witnesses.
    """
    p = inst.check_position(inst.start() if p is None else p)
    if fast_condition(inst, p):
        return None
    comps = inst.components
    paths = []
    for g, x in zip(comps, p):
        if g._is_p[x]:
            paths.append([x])
        else:
            paths.append([x, min(h for h in g.options_table[x] if g._is_p[h])])
    normalized = tuple(path[-1] for path in paths)
    target = inst.oracle.winning_move(inst.pl_vector(normalized))
    if target is None:
        changed = [i for i, path in enumerate(paths) if len(path) > 1]
        face = 1 << changed[0]
        return EmperorMove(face, tuple(map(tuple, paths)))
    face, pl_target = target
    for i in bits(face):
        _, witness_path = comps[i].pl_witness(normalized[i], pl_target[i])
        paths[i] = paths[i] + witness_path[1:]
    return EmperorMove(face, tuple(map(tuple, paths)))


def move_to(inst, p, q):
    """Build an EmperorMove from ``p`` to the successor ``q``, or raise IllegalMove."""
    comps = inst.components
    for f in inst.complex.maximal_faces:
        paths = []
        for i, (g, a, b) in enumerate(zip(comps, p, q)):
            if a == b:
                paths.append((a,))
            elif b in g.options_table[a]:
                paths.append((a, b))
            elif f >> i & 1 and g.follows(a, b):
                paths.append(tuple(g.path(a, b)))
            else:
                break
        else:
            if p != tuple(q):
                return EmperorMove(f, tuple(paths))
    raise IllegalMove(f"{inst.format_position(q)} is not reachable in one move")


def emperor_sum_outcome(components, positions=None):
    """Products over singleton faces: P iff all components are P and their Pl values XOR to 0."""
    if positions is None:
        positions = [g.start for g in components]
    if len(positions) != len(components):
        raise LengthMismatch("one position per component is required")
    if not all(g.is_p(x) for g, x in zip(components, positions)):
        return Outcome.N
    return Outcome.P if reduce(xor, (g.pl(x) for g, x in zip(components, positions)), 0) == 0 else Outcome.N


def emperor_sum_instance(components):
    """The plain emperor sum as an instance over the discrete complex."""
    names = [f"v{i + 1}" for i in range(len(components))]
    return EmperorInstance(discrete_complex(names), components)
