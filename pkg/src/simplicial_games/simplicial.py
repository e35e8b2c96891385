"""Simplicial complexes and nim played on them.

Faces are bitmasks over vertex indices: bit ``i`` set means vertex ``i`` is
in the face.  A complex is stored as its antichain of maximal faces; every
non-empty subset of a maximal face is a face.
"""

from functools import reduce
from itertools import product
from math import prod
from operator import xor

import numpy as np

from .errors import (
    EmptyFaceList,
    LengthMismatch,
    SizeLimitExceeded,
    UncoveredVertex,
    UnknownVertexInFace,
    ValidationError,
)
from .game_core import Outcome
from .limits import MAX_VERTICES, cell_cap, check_size


def bits(mask):
    """Vertex indices of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def face_key(mask):
    """Canonical face ordering: by size, then by the sorted vertex indices."""
    return (bin(mask).count("1"), bits(mask))


def submasks(mask):
    """All non-empty submasks of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


class SimplicialComplex:
    def __init__(self, vertices, maximal_faces):
        self.vertices = tuple(vertices)
        self.maximal_faces = tuple(sorted(set(maximal_faces), key=face_key))
        self._faces = None

    @property
    def n(self):
        return len(self.vertices)

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and self.maximal_faces == other.maximal_faces
        )

    def __hash__(self):
        return hash((self.vertices, self.maximal_faces))

    def __repr__(self):
        return f"SimplicialComplex({list(self.vertices)}, {[self.face_names(f) for f in self.maximal_faces]})"

    def faces(self):
        """All non-empty faces, in canonical order."""
        if self._faces is None:
            found = set()
            for f in self.maximal_faces:
                found.update(submasks(f))
            self._faces = tuple(sorted(found, key=face_key))
        return self._faces

    def is_face(self, mask):
        return mask != 0 and any(mask & ~f == 0 for f in self.maximal_faces)

    def is_discrete(self):
        return all(bin(f).count("1") == 1 for f in self.maximal_faces)

    def face_names(self, mask):
        return [self.vertices[i] for i in bits(mask)]

    def format_face(self, mask):
        return "{" + ",".join(map(str, self.face_names(mask))) + "}"

    def vertex_index(self, name):
        try:
            return self.vertices.index(name)
        except ValueError:
            raise UnknownVertexInFace(f"unknown vertex {name!r}") from None

    def mask_of(self, names):
        mask = 0
        for name in names:
            mask |= 1 << self.vertex_index(name)
        return mask

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "maximal_faces": [self.face_names(f) for f in self.maximal_faces],
        }

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ValidationError("complex must be an object with 'vertices' and 'maximal_faces'")
        for key in ("vertices", "maximal_faces"):
            if key not in doc:
                raise ValidationError(f"complex is missing {key!r}")
        vertices = doc["vertices"]
        faces = doc["maximal_faces"]
        if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
            raise ValidationError("'vertices' must be an array of strings")
        if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
            raise ValidationError("'maximal_faces' must be an array of arrays of vertex names")
        return complex_from_maximal_faces(vertices, faces)


def complex_from_maximal_faces(vertices, face_list):
    """Canonicalize a face list (subset absorption) and check vertex coverage."""
    vertices = list(vertices)
    if len(set(vertices)) != len(vertices):
        raise ValidationError("vertex names must be distinct")
    if len(vertices) > MAX_VERTICES:
        raise SizeLimitExceeded(f"{len(vertices)} vertices, at most {MAX_VERTICES} supported")
    face_list = list(face_list)
    if not face_list:
        raise EmptyFaceList("at least one face is required")
    index = {v: i for i, v in enumerate(vertices)}
    masks = set()
    for face in face_list:
        face = list(face)
        if not face:
            raise EmptyFaceList("faces must be non-empty")
        mask = 0
        for v in face:
            if v not in index:
                raise UnknownVertexInFace(f"face {face} uses unknown vertex {v!r}")
            mask |= 1 << index[v]
        masks.add(mask)
    maximal = [m for m in masks if not any(m != o and m & ~o == 0 for o in masks)]
    covered = reduce(lambda a, b: a | b, maximal, 0)
    for i, v in enumerate(vertices):
        if not covered >> i & 1:
            raise UncoveredVertex(f"vertex {v!r} lies in no face")
    return SimplicialComplex(vertices, maximal)


def discrete_complex(vertices):
    return complex_from_maximal_faces(vertices, [[v] for v in vertices])


def full_simplex(vertices):
    return complex_from_maximal_faces(vertices, [list(vertices)])


def _check_length(cx, s):
    if len(s) != cx.n:
        raise LengthMismatch(f"vector of length {len(s)} on a complex with {cx.n} vertices")


def nim_moves(cx, s):
    """All positions reachable in one simplicial nim move from ``s``.

    A move picks a non-empty face whose vertices all carry stones and strictly
    lowers every coordinate on that face, leaving the rest alone.
    """
    s = tuple(s)
    _check_length(cx, s)
    out = set()
    for f in cx.faces():
        idx = bits(f)
        if any(s[i] == 0 for i in idx):
            continue
        for lowered in product(*(range(s[i]) for i in idx)):
            t = list(s)
            for i, v in zip(idx, lowered):
                t[i] = v
            out.add(tuple(t))
    return out


class NimTable:
    """P/N classification of every stone vector below ``bound``.

    Built by retrograde marking: scanning cells in lexicographic order, an
    unmarked cell has no move to a P-position and is therefore P, and every
    cell that can move onto it gets marked N.  Every move lowers some
    coordinate, so lexicographic order visits a cell's options first.
    """

    CHUNK = 4096

    def __init__(self, cx, bound, cap=None):
        bound = tuple(int(b) for b in bound)
        _check_length(cx, bound)
        if any(b < 0 for b in bound):
            raise ValueError("bound must be non-negative")
        self.complex = cx
        self.bound = bound
        shape = tuple(b + 1 for b in bound)
        check_size(prod(shape), cell_cap() if cap is None else cap, f"nim box {bound}")
        self.table = self._solve(cx, shape)

    @staticmethod
    def _solve(cx, shape):
        marked = np.zeros(shape, dtype=bool)
        is_p = np.zeros(shape, dtype=bool)
        flat = marked.reshape(-1)
        size = flat.size
        faces = [bits(f) for f in cx.faces()]
        cur = 0
        while cur < size:
            free = np.flatnonzero(~flat[cur:cur + NimTable.CHUNK])
            if free.size == 0:
                cur += NimTable.CHUNK
                continue
            idx = cur + int(free[0])
            cell = np.unravel_index(idx, shape)
            is_p[cell] = True
            for f in faces:
                sl = [slice(a, a + 1) for a in cell]
                for i in f:
                    sl[i] = slice(cell[i] + 1, None)
                marked[tuple(sl)] = True
            cur = idx + 1
        return is_p

    def covers(self, s):
        return len(s) == len(self.bound) and all(0 <= a <= b for a, b in zip(s, self.bound))

    def is_p(self, s):
        return bool(self.table[tuple(s)])

    def outcome(self, s):
        return Outcome.P if self.is_p(s) else Outcome.N

    def pset(self):
        """P-positions in lexicographic order."""
        return [tuple(int(x) for x in row) for row in np.argwhere(self.table)]


class NimOracle:
    """Lazily grown P-set oracle for one complex.

    Cells below a vector depend only on cells below it, so a table for a
    larger bound answers every smaller query unchanged.
    """

    def __init__(self, cx):
        self.complex = cx
        self._table = None

    def table_for(self, s):
        s = tuple(s)
        _check_length(self.complex, s)
        t = self._table
        if t is None or not t.covers(s):
            old = t.bound if t is not None else (0,) * len(s)
            self._table = NimTable(self.complex, tuple(max(a, b) for a, b in zip(old, s)))
        return self._table

    def is_p(self, s):
        return self.table_for(s).is_p(s)

    def outcome(self, s):
        return Outcome.P if self.is_p(s) else Outcome.N

    def winning_move(self, s):
        """A face and a P-position target reachable from ``s``, or None if ``s`` is P.

        Takes the first face in canonical order that admits one, then the
        lexicographically smallest target.
        """
        s = tuple(s)
        table = self.table_for(s)
        if table.is_p(s):
            return None
        for f in self.complex.faces():
            idx = bits(f)
            if any(s[i] == 0 for i in idx):
                continue
            for lowered in product(*(range(s[i]) for i in idx)):
                t = list(s)
                for i, v in zip(idx, lowered):
                    t[i] = v
                if table.is_p(t):
                    return f, tuple(t)
        raise AssertionError(f"N-position {s} has no move to a P-position")


def nim_outcome(cx, s):
    s = tuple(s)
    _check_length(cx, s)
    return NimTable(cx, s).outcome(s)


def nim_pset(cx, bound):
    return NimTable(cx, bound).pset()


def bouton_outcome(s):
    """Bouton: a nim position is P exactly when the XOR of its heaps is zero."""
    return Outcome.P if reduce(xor, s, 0) == 0 else Outcome.N
