import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retractoscope.fixtures import picture_onto_level1, picture_quotient
from retractoscope.fraisse import (CONNECTED, HAT, DepthError, LiftError, embed_one_point_extension,
                                   evolution_level, evolution_lift, evolution_truncation,
                                   lift_depth, projective_adjacent, projective_bond,
                                   projective_label, projective_level, projective_lift,
                                   projective_partners, projective_section, projective_truncation,
                                   shallow_chain)
from retractoscope.graph import diameter, from_labeled_edges, induced_subgraph
from retractoscope.morphisms import Morphism, classify, compose, identity
from retractoscope.suite import g6_lift_fixture, p3_fixture, random_quotient


# -- projective levels --------------------------------------------------------

def test_first_levels_by_hand():
    assert set(projective_level(1).graph.labeled_edges()) == {("0", "1"), ("2", "3")}
    G2 = projective_level(2).graph
    expected = {("00", "10"), ("01", "11"), ("02", "03"), ("12", "13"), ("22", "23"),
                ("32", "33"), ("20", "30"), ("21", "31")}
    assert {tuple(sorted(e)) for e in G2.labeled_edges()} == expected


def test_level_zero_is_a_point():
    G0 = projective_level(0).graph
    assert G0.labels == ("",) and G0.edge_count == 0


@pytest.mark.parametrize("k", range(1, 5))
def test_partner_table_matches_the_pairwise_rule(k):
    partner = projective_partners(k)
    for c in range(4 ** k):
        x = projective_label(c, k)
        for d in range(4 ** k):
            if c != d:
                assert projective_adjacent(x, projective_label(d, k)) == (partner[d] == c)


@pytest.mark.parametrize("k", range(1, 7))
def test_levels_are_perfect_matchings(k):
    G = projective_level(k).graph
    assert len(G) == 4 ** k and G.edge_count == 4 ** k // 2
    assert all(G.degree(v) == 1 for v in G.vertices())


@pytest.mark.parametrize("k", range(0, 5))
def test_bonds_are_quotients_with_a_section(k):
    bond = projective_bond(k)
    assert bond.classification.quotient
    sec = projective_section(k)
    assert sec.classification.embedding
    assert compose(bond, sec) == identity(projective_level(k).graph)


def test_truncations_compose():
    t31 = projective_truncation(3, 1)
    assert t31 == compose(projective_bond(1), projective_bond(2))
    assert t31.classification.quotient


def test_depth_guard():
    with pytest.raises(DepthError):
        projective_level(9)
    with pytest.raises(DepthError):
        projective_level(-1)


# -- projective lifts ---------------------------------------------------------

def _both_routes(lift):
    checks = lift.verify()
    c = classify(lift.as_morphism())
    assert checks["homomorphism"] == c.homomorphism
    assert checks["strict"] == c.strict
    assert checks["surjective"] == c.surjective
    return checks


def test_identity_lift():
    G1 = projective_level(1).graph
    lift = projective_lift(G1, identity(G1))
    assert lift.m == lift_depth(G1, 1) == 5
    checks = _both_routes(lift)
    assert all(checks.values())


def test_two_edges_over_one_level():
    G1 = projective_level(1).graph
    H = from_labeled_edges(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    p = Morphism.from_labels(H, G1, {"a": "0", "b": "1", "c": "2", "d": "3"})
    lift = projective_lift(H, p)
    assert all(_both_routes(lift).values())


def test_fragmented_picture_lifts():
    H, p = picture_onto_level1()
    lift = projective_lift(H, p)
    assert lift.m == 7 and all(lift.verify().values())


def test_picture_quotient_is_a_quotient():
    H, G, p = picture_quotient()
    assert p.classification.quotient and len(H) == 21


def test_lift_rejects_non_quotients_and_wrong_codomains():
    G1 = projective_level(1).graph
    H = from_labeled_edges(["a", "b"], [("a", "b")])
    with pytest.raises(LiftError):
        projective_lift(H, Morphism.from_labels(H, G1, {"a": "0", "b": "1"}))
    K2 = from_labeled_edges(["0", "1"], [("0", "1")])
    with pytest.raises(LiftError):
        projective_lift(K2, identity(K2))


def test_lift_respects_the_vertex_guard():
    G1 = projective_level(1).graph
    with pytest.raises(LiftError, match="guard"):
        projective_lift(G1, identity(G1), max_vertices=4 ** 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(4, 8))
def test_random_quotients_lift(seed, n):
    H, p = random_quotient(random.Random(seed), 1, n)
    lift = projective_lift(H, p)
    checks = lift.verify()
    assert all(checks.values())
    if lift.m <= 5:
        _both_routes(lift)


# -- evolution levels ---------------------------------------------------------

@pytest.mark.parametrize("k,size,diam", [(1, 2, 1), (2, 8, 3), (3, 160, 5)])
def test_connected_levels(k, size, diam):
    G = evolution_level(k).graph
    assert len(G) == size and diameter(G) == diam


@pytest.mark.parametrize("k,size", [(1, 3), (2, 13), (3, 187)])
def test_hat_levels(k, size):
    assert len(evolution_level(k, HAT).graph) == size


@pytest.mark.parametrize("variant", [CONNECTED, HAT])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_bonds_are_retractions(k, variant):
    lvl = evolution_level(k, variant)
    lower = evolution_level(k - 1, variant).graph
    bond = lvl.bond
    assert bond.classification.homomorphism and bond.classification.surjective
    if k > 1:
        keep = {lvl.graph.index(lab) for lab in lower.labels}
        assert induced_subgraph(lvl.graph, sorted(keep)) == lower
        assert all(bond.cod.labels[bond.images[lvl.graph.index(lab)]] == lab for lab in lower.labels)


def test_truncation_composes_bonds():
    t = evolution_truncation(3, 1)
    assert t == compose(evolution_level(2).bond, evolution_level(3).bond)


def test_evolution_depth_guard():
    with pytest.raises(DepthError):
        evolution_level(4)


# -- one-point extensions into the next level ---------------------------------

def _level1_extension(edges):
    G1 = evolution_level(1).graph
    H = from_labeled_edges(["0", "1", "x"], [("0", "1")] + edges)
    r = Morphism.from_labels(H, G1, {"0": "0", "1": "1", "x": "0"})
    return G1, H, r


def test_pendant_at_zero():
    G1, H, r = _level1_extension([("x", "0")])
    label = embed_one_point_extension(evolution_level(1), G1, H, r)
    assert label == "0/10" and evolution_level(2).graph.has_label(label)


def test_twin_of_zero():
    G1, H, r = _level1_extension([("x", "0"), ("x", "1")])
    label = embed_one_point_extension(evolution_level(1), G1, H, r)
    assert label == "0/11"
    G2 = evolution_level(2).graph
    assert {G2.labels[u] for u in G2.neighbors(G2.index(label))} >= {"0", "1"}


def test_isolated_duplicate_needs_the_hat_variant():
    G1, H, r = _level1_extension([])
    with pytest.raises(LiftError):
        embed_one_point_extension(evolution_level(1), G1, H, r)
    assert embed_one_point_extension(evolution_level(1), G1, H, r, variant=HAT) == "0/00"


# -- evolution lifts ----------------------------------------------------------

def test_path_lifts_to_level_two():
    P3, chain = p3_fixture()
    lift = evolution_lift(P3, chain, 1)
    assert lift.level == 2 and len(lift.removals) == 5
    assert lift.verify(chain) and lift.chain().is_valid()


def test_g6_lifts_within_three_levels():
    G6, chain, base = g6_lift_fixture()
    lift = evolution_lift(G6, chain, 1, base=base)
    assert lift.level <= 3 and lift.verify(chain, base)
    assert lift.chain().final == evolution_level(lift.level).graph


def test_shallow_chain_finds_a_lift():
    G6, _, base = g6_lift_fixture()
    chain = shallow_chain(G6, base, 1)
    assert chain is not None and chain.final == G6
    lift = evolution_lift(G6, chain, 1, base=base)
    assert lift.verify(chain, base)


def test_lift_rejects_a_bad_base():
    P3, chain = p3_fixture()
    with pytest.raises(LiftError):
        evolution_lift(P3, chain, 1, base={"0": "0", "1": "0"})
