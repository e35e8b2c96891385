"""Finite loop-free impartial games as explicit option graphs.

Positions are dense integers ``0..n-1``.  All per-position tables (outcome,
Sprague-Grundy value, P-position length, height) are filled in a single pass
over a reverse topological order when the graph is built; afterwards a
``GameGraph`` is never mutated, apart from the lazily built reachability
cache, so it can be shared freely between threads once solved.
"""

from enum import Enum

from .errors import (
    CycleDetected,
    DanglingEdge,
    EmptyPositionSet,
    NoWitness,
    UnknownPosition,
)

# Above this many positions strict-follower sets are found by per-query
# search instead of a materialized bitset table.
BITSET_LIMIT = 5000


class Outcome(str, Enum):
    P = "P"
    N = "N"

    def __str__(self):
        return self.value


def mex(values):
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


def _reverse_topological_order(options):
    """Order in which every position comes after all of its options.

    Raises CycleDetected with one offending cycle.
    """
    n = len(options)
    state = [0] * n  # 0 unseen, 1 on stack, 2 done
    order = []
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, 0)]
        state[root] = 1
        while stack:
            g, i = stack[-1]
            opts = options[g]
            if i < len(opts):
                stack[-1] = (g, i + 1)
                h = opts[i]
                if state[h] == 0:
                    state[h] = 1
                    stack.append((h, 0))
                elif state[h] == 1:
                    path = [x for x, _ in stack]
                    raise CycleDetected(path[path.index(h):] + [h])
            else:
                state[g] = 2
                order.append(g)
                stack.pop()
    return order


class GameGraph:
    """An impartial game given by its option lists.

    ``options[g]`` lists the options of position ``g``; ``start`` is the
    position the game is played from; ``labels`` give display names.
    """

    def __init__(self, options, start=0, labels=None):
        options = [tuple(opts) for opts in options]
        n = len(options)
        if n == 0:
            raise EmptyPositionSet("a game needs at least one position")
        for g, opts in enumerate(options):
            for h in opts:
                if not (isinstance(h, int) and 0 <= h < n):
                    raise DanglingEdge(f"edge {g} -> {h!r} leaves the position set")
            if len(set(opts)) != len(opts):
                raise ValueError(f"duplicate options at position {g}")
        if not (isinstance(start, int) and 0 <= start < n):
            raise UnknownPosition(f"start {start!r} is not a position")
        self.options_table = tuple(options)
        self.start = start
        self.labels = tuple(str(x) for x in labels) if labels is not None else tuple(map(str, range(n)))
        if len(self.labels) != n:
            raise ValueError("labels must match the number of positions")
        self.order = tuple(_reverse_topological_order(options))
        self._solve()
        self._reach = None
        self._label_index = None

    def __len__(self):
        return len(self.options_table)

    def __repr__(self):
        return f"GameGraph(positions={len(self)}, start={self.labels[self.start]})"

    def _solve(self):
        n = len(self)
        is_p = [False] * n
        grundy = [0] * n
        pl = [0] * n
        best = [-1] * n  # max Pl over P-position strict followers, -1 if none
        height = [0] * n
        for g in self.order:
            opts = self.options_table[g]
            if not opts:
                is_p[g] = True
                continue
            is_p[g] = not any(is_p[h] for h in opts)
            grundy[g] = mex(grundy[h] for h in opts)
            b = -1
            for h in opts:
                cand = pl[h] if is_p[h] else best[h]
                if cand > b:
                    b = cand
                if best[h] > b:
                    b = best[h]
            best[g] = b
            pl[g] = b + 1
            height[g] = 1 + max(height[h] for h in opts)
        self._is_p = tuple(is_p)
        self._grundy = tuple(grundy)
        self._pl = tuple(pl)
        self._height = tuple(height)

    def _check(self, g):
        if not (isinstance(g, int) and 0 <= g < len(self)):
            raise UnknownPosition(f"{g!r} is not a position of this game")

    def options(self, g):
        self._check(g)
        return list(self.options_table[g])

    def is_terminal(self, g):
        self._check(g)
        return not self.options_table[g]

    def outcome(self, g):
        self._check(g)
        return Outcome.P if self._is_p[g] else Outcome.N

    def is_p(self, g):
        return self._is_p[g]

    def grundy(self, g):
        self._check(g)
        return self._grundy[g]

    def pl(self, g):
        """P-position length: 0 at terminals, else 1 + max Pl over P-position strict followers."""
        self._check(g)
        return self._pl[g]

    def height(self, g):
        """Length of the longest play from ``g``."""
        self._check(g)
        return self._height[g]

    def _reach_bits(self, g):
        if len(self) <= BITSET_LIMIT:
            if self._reach is None:
                reach = [0] * len(self)
                for x in self.order:
                    bits = 0
                    for h in self.options_table[x]:
                        bits |= (1 << h) | reach[h]
                    reach[x] = bits
                self._reach = reach
            return self._reach[g]
        bits = 0
        stack = list(self.options_table[g])
        while stack:
            h = stack.pop()
            if not bits >> h & 1:
                bits |= 1 << h
                stack.extend(self.options_table[h])
        return bits

    def strict_followers(self, g):
        """Positions reachable from ``g`` in one or more moves."""
        self._check(g)
        bits = self._reach_bits(g)
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def follows(self, g, x):
        """True if ``x`` is a strict follower of ``g``."""
        return bool(self._reach_bits(g) >> x & 1)

    def path(self, g, x):
        """Lexicographically smallest move sequence from ``g`` to the strict follower ``x``."""
        if not self.follows(g, x):
            raise NoWitness(f"{x} does not strictly follow {g}")
        path = [g]
        cur = g
        while cur != x:
            cur = min(h for h in self.options_table[cur] if h == x or self.follows(h, x))
            path.append(cur)
        return path

    def pl_witness(self, g, m):
        """Smallest P-position strict follower of ``g`` whose Pl is ``m``, with a move path to it.

        Requires ``0 <= m < pl(g)``.
        """
        self._check(g)
        if not (0 <= m < self._pl[g]):
            raise NoWitness(f"need 0 <= m < Pl({self.labels[g]}) = {self._pl[g]}, got m={m}")
        for x in self.strict_followers(g):
            if self._is_p[x] and self._pl[x] == m:
                return x, self.path(g, x)
        raise NoWitness(f"no P-position strict follower of {self.labels[g]} with Pl {m}")

    def position(self, token):
        """Look a position up by label, falling back to its integer id."""
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        key = str(token).strip()
        if key in self._label_index:
            return self._label_index[key]
        try:
            g = int(key)
        except ValueError:
            raise UnknownPosition(f"no position named {key!r}") from None
        self._check(g)
        return g

    def at(self, g):
        """Same game played from ``g``."""
        self._check(g)
        clone = object.__new__(GameGraph)
        clone.__dict__.update(self.__dict__)
        clone.start = g
        return clone


def validate_graph(raw_positions, raw_edges, start):
    """Build a GameGraph from arbitrary hashable position names.

    ``raw_edges`` is an iterable of ``(from, to)`` pairs; repeated edges are
    collapsed.  Position ids follow the order of ``raw_positions``.
    """
    names = list(raw_positions)
    if not names:
        raise EmptyPositionSet("a game needs at least one position")
    index = {}
    for name in names:
        if name in index:
            raise ValueError(f"position {name!r} declared twice")
        index[name] = len(index)
    options = [[] for _ in names]
    for edge in raw_edges:
        u, v = edge
        if u not in index or v not in index:
            raise DanglingEdge(f"edge {u!r} -> {v!r} references an undeclared position")
        iu, iv = index[u], index[v]
        if iv not in options[iu]:
            options[iu].append(iv)
    if start not in index:
        raise UnknownPosition(f"start {start!r} is not a declared position")
    try:
        return GameGraph(options, index[start], labels=names)
    except CycleDetected as exc:
        raise CycleDetected([names[i] for i in exc.cycle]) from None
