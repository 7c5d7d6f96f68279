import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retractoscope.evolutions import ppr_witness
from retractoscope.fixtures import example_g6
from retractoscope.fraisse import projective_adjacent, projective_level
from retractoscope.graph import complete, cycle
from retractoscope.morphisms import Morphism
from retractoscope.towers import (RETRACTION, InverseSystem, Thread, TowerError, append_pendant,
                                  edge_classes, envelope_from_evolution, evolution_tower,
                                  isolated_density_step, isolated_vertex_certificate,
                                  limit_adjacency, path2_certificate, projective_limit_adjacency,
                                  projective_tower, thread_problem, thread_through,
                                  validate_system)


# -- validity -----------------------------------------------------------------

@pytest.mark.parametrize("depth", [1, 3, 5])
def test_projective_towers_are_valid(depth):
    assert validate_system(projective_tower(depth)).valid


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_evolution_towers_are_valid(depth):
    s = evolution_tower(depth)
    assert s.kind == RETRACTION and validate_system(s).valid


def test_collapsing_bond_is_not_strict():
    s = projective_tower(2)
    G2, G1 = s.levels[2], s.levels[1]
    # the edges 02-03 and 22-23 collapse onto 2 and 3, so the edge 2-3 is never covered
    pick = {"00": "0", "10": "1", "02": "2", "03": "2", "22": "3", "23": "3"}
    loose = Morphism.from_labels(G2, G1, {lab: pick.get(lab, "0") for lab in G2.labels})
    broken = InverseSystem(s.levels, (s.bonds[0], loose), s.kind, s.family)
    report = validate_system(broken)
    assert not report.valid and "not strict" in report.first_problem


def test_moving_bond_breaks_a_retraction_tower():
    s = evolution_tower(2)
    G2, G1 = s.levels[2], s.levels[1]
    swapped = Morphism(G2, G1, [1 - i if G2.labels[v] in ("0", "1") else i
                                for v, i in enumerate(s.bonds[1].images)])
    broken = InverseSystem(s.levels, (s.bonds[0], swapped), s.kind, s.family)
    assert not validate_system(broken).valid


def test_bond_count_must_match():
    s = projective_tower(2)
    with pytest.raises(TowerError):
        InverseSystem(s.levels, s.bonds[:1])


# -- envelopes ------------------------------------------------------------------

@pytest.mark.parametrize("G,levels", [(complete(3), 3), (cycle(4), 4), (example_g6(), 6)])
def test_envelopes_from_witnesses(G, levels):
    s = envelope_from_evolution(ppr_witness(G))
    assert len(s.levels) == levels and s.top == G
    assert validate_system(s).valid


# -- threads and adjacency ----------------------------------------------------

def test_threads_follow_the_bonds():
    s = projective_tower(3)
    t = thread_through(s, 3, "231")
    assert t.entries == ("", "2", "23", "231") and thread_problem(s, t) is None
    assert thread_problem(s, Thread(("", "2", "13", "231"))) is not None


def test_projective_limit_adjacency_examples():
    assert projective_limit_adjacency("000", "100").adjacent
    assert projective_limit_adjacency("201", "301").adjacent
    r = projective_limit_adjacency("021", "121")
    assert not r.adjacent and r.separated_at == 2


@settings(max_examples=200, deadline=None)
@given(st.text("0123", min_size=3, max_size=3), st.text("0123", min_size=3, max_size=3))
def test_prefix_rule_matches_the_tower(x, y):
    s = projective_tower(3)
    direct = projective_limit_adjacency(x, y)
    through = limit_adjacency(s, thread_through(s, 3, x), thread_through(s, 3, y))
    assert direct == through
    assert direct.adjacent <= projective_adjacent(x, y)


def test_limit_adjacency_rejects_bad_threads():
    s = projective_tower(2)
    with pytest.raises(TowerError):
        limit_adjacency(s, Thread(("", "0", "13")), Thread(("", "0", "00")))


def test_path2_certificate():
    assert path2_certificate(projective_tower(4), 4)
    assert not path2_certificate(evolution_tower(2), 2)


def test_edge_classes():
    classes = edge_classes(projective_level(1).graph)
    assert classes == [("0", "1"), ("2", "3")]
    with pytest.raises(TowerError):
        edge_classes(cycle(4))


# -- isolated vertices ----------------------------------------------------------

def test_constant_zero_thread_is_refuted():
    s = evolution_tower(3)
    cert = isolated_vertex_certificate(s, Thread(("0", "0", "0", "0")))
    assert not cert.holds and cert.entries[-1].crossing is not None


def test_shallow_thread_is_not_a_certificate():
    cert = isolated_vertex_certificate(evolution_tower(1), Thread(("0", "0")))
    assert not cert.holds and "below 2" in cert.reason


@pytest.mark.parametrize("level,label", [(0, "0"), (1, "1"), (2, "0/10")])
def test_evolution_density_step(level, label):
    s = evolution_tower(3)
    ext, thread = isolated_density_step(s, level, label)
    assert thread.anchor == level and thread.entries[level] == label
    cert = isolated_vertex_certificate(ext, thread)
    assert cert.holds and cert.entries
    assert cert.as_dict()["holds"] is True


def test_density_step_appends_pendant_levels():
    s = evolution_tower(2)
    ext, thread = isolated_density_step(s, 2, "1")
    assert ext.height == 4 and thread.depth == 4
    assert isolated_vertex_certificate(ext, thread).holds


@pytest.mark.parametrize("level,label", [(0, ""), (1, "2"), (2, "01")])
def test_projective_density_step(level, label):
    ext, thread = isolated_density_step(projective_tower(2), level, label)
    assert ext.height >= level + 2
    assert isolated_vertex_certificate(ext, thread).holds


def test_append_pendant_adds_a_leaf():
    s, label = append_pendant(evolution_tower(1), "0")
    top = s.top
    assert top.neighbors(top.index(label)) == {top.index("0")}
    assert validate_system(s).valid


def test_unknown_family_cannot_extend():
    s = envelope_from_evolution(ppr_witness(cycle(4)))
    with pytest.raises(TowerError):
        isolated_density_step(s, 0, s.levels[0].labels[0])
