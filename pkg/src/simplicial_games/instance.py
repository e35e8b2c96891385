"""JSON instance and complex documents.

Instance document::

    {
      "complex": {"vertices": ["v1", "v2"], "maximal_faces": [["v1", "v2"]]},
      "components": [
        {"kind": "nim_heap", "n": 3},
        {"kind": "multi_nim", "heaps": [1, 2]},
        {"kind": "subtraction", "set": [1, 2], "start": 3},
        {"kind": "explicit", "nodes": ["a", "b"], "edges": [["a", "b"]], "start": "a"}
      ]
    }

One component per vertex, in vertex order.
"""

import json
from dataclasses import dataclass, field

from .emperor import EmperorInstance
from .errors import GameError, ParseError, ValidationError
from .rulesets import RulesetSpec
from .simplicial import SimplicialComplex


@dataclass
class InstanceDocument:
    complex: SimplicialComplex
    components: list  # of RulesetSpec
    _built: object = field(default=None, repr=False, compare=False)

    def build(self):
        if self._built is not None:
            return self._built
        graphs = []
        for i, spec in enumerate(self.components):
            try:
                graphs.append(spec.build())
            except (GameError, ValueError, TypeError, KeyError) as exc:
                raise ValidationError(f"components[{i}]: {exc}", cause=exc) from exc
        self._built = EmperorInstance(self.complex, graphs)
        return self._built

    def to_dict(self):
        return {
            "complex": self.complex.to_dict(),
            "components": [spec.to_dict() for spec in self.components],
        }


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _complex_from(doc, where):
    try:
        return SimplicialComplex.from_dict(doc)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}", cause=exc.cause or exc) from exc
    except GameError as exc:
        raise ValidationError(f"{where}: {exc}", cause=exc) from exc


def parse_complex(text):
    return _complex_from(_load_json(text), "complex")


def parse_instance(text, build=True):
    """Parse and validate an instance document.

    With ``build`` the component graphs are constructed too, so that errors
    inside a component (cycles, dangling edges, bad parameters) surface here.
    """
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ValidationError("instance must be a JSON object")
    for key in ("complex", "components"):
        if key not in doc:
            raise ValidationError(f"instance is missing {key!r}")
    cx = _complex_from(doc["complex"], "complex")
    comps = doc["components"]
    if not isinstance(comps, list):
        raise ValidationError("'components' must be an array")
    if len(comps) != cx.n:
        raise ValidationError(f"{len(comps)} components for {cx.n} vertices; need one per vertex")
    specs = []
    for i, c in enumerate(comps):
        try:
            specs.append(RulesetSpec.from_dict(c))
        except ValidationError as exc:
            raise ValidationError(f"components[{i}]: {exc}", cause=exc) from exc
    inst_doc = InstanceDocument(cx, specs)
    if build:
        inst_doc.build()
    return inst_doc


def render_instance(inst_doc):
    return json.dumps(inst_doc.to_dict(), indent=2)


def render_complex(cx):
    return json.dumps(cx.to_dict(), indent=2)
