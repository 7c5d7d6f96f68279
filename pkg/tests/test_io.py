import json

import pytest
from hypothesis import given, settings

from retractoscope import io
from retractoscope.evolutions import ppr_witness
from retractoscope.fixtures import example_g6, picture_onto_level1
from retractoscope.graph import from_labeled_edges
from retractoscope.morphisms import Morphism
from retractoscope.towers import envelope_from_evolution, evolution_tower, projective_tower
from retractoscope.universal import rado_envelope_levels
from strategies import graphs, graphs_with_map


@settings(max_examples=100, deadline=None)
@given(graphs(max_size=8))
def test_graph_round_trip(G):
    data = json.loads(io.dumps(io.graph_to_dict(G)))
    assert io.graph_from_dict(data) == G


@settings(max_examples=100, deadline=None)
@given(graphs_with_map(max_size=6))
def test_morphism_round_trip(triple):
    G, H, images = triple
    f = Morphism(G, H, images)
    data = json.loads(io.dumps(io.morphism_to_dict(f)))
    g = io.morphism_from_dict(data)
    assert g.label_map() == f.label_map() and g.dom == f.dom and g.cod == f.cod


def test_tuple_labels_survive():
    G = from_labeled_edges([(0, 1), (1, "x")], [((0, 1), (1, "x"))])
    data = json.loads(io.dumps(io.graph_to_dict(G)))
    assert data["labels"] == [[0, 1], [1, "x"]]
    assert io.graph_from_dict(data) == G


def test_picture_morphism_round_trip():
    _, p = picture_onto_level1()
    back = io.morphism_from_dict(json.loads(io.dumps(io.morphism_to_dict(p))))
    assert back.images == p.images


@pytest.mark.parametrize("tower", [projective_tower(2), evolution_tower(2), rado_envelope_levels(2),
                                   envelope_from_evolution(ppr_witness(example_g6()))])
def test_tower_round_trip(tower):
    back = io.tower_from_dict(json.loads(io.dumps(io.tower_to_dict(tower))))
    assert back.levels == tower.levels and back.kind == tower.kind
    assert [b.images for b in back.bonds] == [b.images for b in tower.bonds]


def test_witness_block():
    w = io.witness_to_dict(ppr_witness(example_g6()))
    assert w["valid"] is True and len(w["order"]) == 5


def test_dot_output():
    G = from_labeled_edges(["a", "b"], [("a", "b")])
    assert io.graph_to_dot(G) == 'graph G {\n  "a";\n  "b";\n  "a" -- "b";\n}\n'


@pytest.mark.parametrize("bad", [[], {"edges": []}, {"labels": ["a"], "edges": [["a"]]},
                                 {"labels": [1.5]}, {"labels": ["a"], "edges": [["a", "z"]]}])
def test_malformed_graphs(bad):
    with pytest.raises(io.FormatError):
        io.graph_from_dict(bad)


def test_malformed_morphism_and_tower():
    with pytest.raises(io.FormatError):
        io.morphism_from_dict({"dom": {"labels": ["a"]}})
    with pytest.raises(io.FormatError):
        io.tower_from_dict({"levels": [{"labels": ["a"]}, {"labels": ["b"]}], "bonds": []})


def test_load_json_errors(tmp_path):
    with pytest.raises(io.FormatError, match="cannot read"):
        io.load_json(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(io.FormatError, match="not valid JSON"):
        io.load_json(str(bad))
