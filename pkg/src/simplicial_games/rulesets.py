"""Constructors for the component games placed on the vertices of a complex."""

from dataclasses import dataclass, field
from math import prod

from .errors import EmptySubtractionSet, ValidationError
from .game_core import GameGraph, validate_graph
from .limits import DEFAULT_GRAPH_CAP, check_size

KINDS = ("nim_heap", "multi_nim", "subtraction", "explicit")


def _natural(x, what):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ValueError(f"{what} must be a non-negative integer, got {x!r}")
    return x


def nim_heap(n):
    """A single nim heap of ``n`` stones; position ``k`` is a heap of size ``k``."""
    _natural(n, "heap size")
    return GameGraph([range(k - 1, -1, -1) for k in range(n + 1)], start=n)


def multi_heap_index(vector, heaps):
    """Mixed-radix id of ``vector`` inside the box below ``heaps`` (last coordinate fastest)."""
    idx = 0
    for v, h in zip(vector, heaps):
        idx = idx * (h + 1) + v
    return idx


def multi_nim(heaps, cap=DEFAULT_GRAPH_CAP):
    """Several nim heaps packaged as one component game.

    Positions are all heap vectors below ``heaps``, labelled ``(a,b,...)``.
    """
    heaps = tuple(_natural(h, "heap size") for h in heaps)
    radix = [h + 1 for h in heaps]
    size = prod(radix)
    check_size(size, cap, f"multi_nim{heaps}")
    strides = [prod(radix[i + 1:]) for i in range(len(radix))]
    options = []
    labels = []
    for idx in range(size):
        vec = [(idx // s) % r for s, r in zip(strides, radix)]
        labels.append("(" + ",".join(map(str, vec)) + ")")
        opts = []
        for i, v in enumerate(vec):
            opts.extend(idx - d * strides[i] for d in range(1, v + 1))
        options.append(sorted(opts))
    return GameGraph(options, start=size - 1, labels=labels)


def subtraction_game(sub_set, start):
    """Remove ``s`` tokens from a single pile for some ``s`` in ``sub_set``."""
    moves = sorted(set(sub_set))
    if not moves:
        raise EmptySubtractionSet("subtraction set must be non-empty")
    for s in moves:
        if isinstance(s, bool) or not isinstance(s, int) or s <= 0:
            raise ValueError(f"subtraction amounts must be positive integers, got {s!r}")
    _natural(start, "start")
    return GameGraph([[k - s for s in moves if s <= k] for k in range(start + 1)], start=start)


def explicit_game(nodes, edges, start):
    return validate_graph(nodes, [tuple(e) for e in edges], start)


@dataclass(frozen=True)
class RulesetSpec:
    """Serializable description of a component game."""

    kind: str
    params: dict = field(default_factory=dict)

    def build(self):
        p = self.params
        if self.kind == "nim_heap":
            return nim_heap(p["n"])
        if self.kind == "multi_nim":
            return multi_nim(p["heaps"])
        if self.kind == "subtraction":
            return subtraction_game(p["set"], p["start"])
        if self.kind == "explicit":
            return explicit_game(p["nodes"], p["edges"], p["start"])
        raise ValidationError(f"unknown ruleset kind {self.kind!r}")

    def to_dict(self):
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ValidationError("a component must be an object")
        kind = doc.get("kind")
        if kind not in KINDS:
            raise ValidationError(f"unknown ruleset kind {kind!r}; expected one of {', '.join(KINDS)}")
        required = {
            "nim_heap": ("n",),
            "multi_nim": ("heaps",),
            "subtraction": ("set", "start"),
            "explicit": ("nodes", "edges", "start"),
        }[kind]
        params = {k: v for k, v in doc.items() if k != "kind"}
        missing = [k for k in required if k not in params]
        if missing:
            raise ValidationError(f"{kind} component is missing {', '.join(missing)}")
        extra = sorted(set(params) - set(required))
        if extra:
            raise ValidationError(f"{kind} component has unexpected fields {', '.join(extra)}")
        return cls(kind, params)

    def describe(self):
        p = self.params
        if self.kind == "nim_heap":
            return f"nim_heap({p['n']})"
        if self.kind == "multi_nim":
            return "multi_nim(" + ",".join(map(str, p["heaps"])) + ")"
        if self.kind == "subtraction":
            return "subtraction({" + ",".join(map(str, sorted(p["set"]))) + f"}}, {p['start']})"
        return f"explicit({len(p['nodes'])} nodes)"


def nim_spec(n):
    return RulesetSpec("nim_heap", {"n": n})


def multi_nim_spec(heaps):
    return RulesetSpec("multi_nim", {"heaps": list(heaps)})


def subtraction_spec(sub_set, start):
    return RulesetSpec("subtraction", {"set": sorted(sub_set), "start": start})
