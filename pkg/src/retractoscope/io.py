"""JSON and DOT formats for graphs, morphisms, witnesses and towers."""

from __future__ import annotations

import json
from typing import Any, Hashable

from .evolutions import Evolution
from .graph import Graph, GraphError, from_labeled_edges
from .morphisms import Morphism, MorphismError
from .towers import InverseSystem


class FormatError(ValueError):
    pass


def _label_out(label: Hashable) -> Any:
    if isinstance(label, tuple):
        return [_label_out(x) for x in label]
    return label


def _label_in(value: Any) -> Hashable:
    if isinstance(value, list):
        return tuple(_label_in(x) for x in value)
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        return value
    raise FormatError(f"unsupported vertex label {value!r}")


def graph_to_dict(G: Graph) -> dict:
    return {"labels": [_label_out(lab) for lab in G.labels],
            "edges": [[_label_out(a), _label_out(b)] for a, b in G.labeled_edges()]}


def graph_from_dict(data: Any) -> Graph:
    if not isinstance(data, dict) or "labels" not in data:
        raise FormatError("a graph block needs a 'labels' list")
    labels = [_label_in(x) for x in data["labels"]]
    edges = data.get("edges", [])
    if not isinstance(edges, list) or any(not isinstance(e, list) or len(e) != 2 for e in edges):
        raise FormatError("'edges' must be a list of label pairs")
    try:
        return from_labeled_edges(labels, [(_label_in(a), _label_in(b)) for a, b in edges])
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def morphism_to_dict(f: Morphism) -> dict:
    return {"dom": graph_to_dict(f.dom), "cod": graph_to_dict(f.cod),
            "map": [[_label_out(a), _label_out(b)] for a, b in f.label_map().items()]}


def morphism_from_dict(data: Any) -> Morphism:
    if not isinstance(data, dict) or not {"dom", "cod", "map"} <= set(data):
        raise FormatError("a morphism block needs 'dom', 'cod' and 'map'")
    dom, cod = graph_from_dict(data["dom"]), graph_from_dict(data["cod"])
    try:
        pairs = {_label_in(a): _label_in(b) for a, b in data["map"]}
        return Morphism.from_labels(dom, cod, pairs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad map: {exc}") from None


def witness_to_dict(e: Evolution) -> dict:
    w = e.to_witness()
    w["valid"] = e.is_valid()
    return w


def tower_to_dict(s: InverseSystem) -> dict:
    return {"kind": s.kind, "family": s.family,
            "levels": [graph_to_dict(G) for G in s.levels],
            "bonds": [[[_label_out(a), _label_out(b)] for a, b in bond.label_map().items()]
                      for bond in s.bonds]}


def tower_from_dict(data: Any) -> InverseSystem:
    if not isinstance(data, dict) or "levels" not in data:
        raise FormatError("a tower block needs 'levels'")
    levels = [graph_from_dict(g) for g in data["levels"]]
    pairs = data.get("bonds", [])
    if len(pairs) != len(levels) - 1:
        raise FormatError("a tower needs one bond per consecutive pair of levels")
    try:
        bonds = [Morphism.from_labels(levels[i + 1], levels[i],
                                      {_label_in(a): _label_in(b) for a, b in m})
                 for i, m in enumerate(pairs)]
    except MorphismError as exc:
        raise FormatError(str(exc)) from None
    return InverseSystem(levels, bonds, data.get("kind", "quotient-tower"), data.get("family"))


def _dot_id(label: Hashable) -> str:
    return json.dumps(str(label))


def graph_to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {_dot_id(lab)};" for lab in G.labels]
    lines += [f"  {_dot_id(a)} -- {_dot_id(b)};" for a, b in G.labeled_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc.msg}") from None


def dumps(data: Any) -> str:
    return json.dumps(data, separators=(",", ":"))


__all__ = [
    "FormatError", "dumps", "graph_from_dict", "graph_to_dict", "graph_to_dot", "load_json",
    "morphism_from_dict", "morphism_to_dict", "tower_from_dict", "tower_to_dict",
    "witness_to_dict",
]
