import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retractoscope.evolutions import sentinel_chain_witness
from retractoscope.graph import Graph, from_labeled_edges, is_clique_free
from retractoscope.towers import validate_system
from retractoscope.universal import (FailureCertificate, HensonContext, UniversalError,
                                     context_problem, fibers_double, henson_growth_step,
                                     henson_host_extend, henson_run, henson_seed, is_accessible,
                                     is_maximal_accessible, property_r_witness, rado_adjacent,
                                     rado_envelope_levels, rado_graph, rado_sentinel_chain)


# -- Rado -----------------------------------------------------------------------

def test_bit_rule_examples():
    assert rado_adjacent(0, 1) and rado_adjacent(1, 2) and rado_adjacent(2, 5)
    assert not rado_adjacent(0, 2) and not rado_adjacent(1, 4)
    assert rado_adjacent(5, 2)
    with pytest.raises(UniversalError):
        rado_adjacent(3, 3)


def test_small_rado_graph():
    G = rado_graph(range(4))
    assert {tuple(sorted(e)) for e in G.labeled_edges()} == {(0, 1), (1, 2), (0, 3), (1, 3)}


def test_property_r_examples():
    assert property_r_witness({0, 2}, {1}) == 13
    assert property_r_witness({0, 2}, {1}, exponent=6) == 69
    with pytest.raises(UniversalError):
        property_r_witness({1}, {1})
    with pytest.raises(UniversalError):
        property_r_witness({5}, set(), exponent=3)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=12))
def test_property_r_separates(colors):
    A = {i for i, c in enumerate(colors) if c == 1}
    B = {i for i, c in enumerate(colors) if c == 2}
    w = property_r_witness(A, B)
    assert w not in A | B
    assert all(rado_adjacent(a, w) for a in A)
    assert not any(rado_adjacent(b, w) for b in B)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_rado_chains_are_sociable(n):
    chain = rado_sentinel_chain(list(range(n)))
    assert chain.check() is None
    e = sentinel_chain_witness(chain)
    assert e.is_sociable() and e.starts_at_origin() and len(e.final) == n + (n > 1)


def test_chain_bit_guard():
    with pytest.raises(UniversalError):
        rado_sentinel_chain([0, 300], bits=256)


def test_envelope_sizes_and_fibers():
    s = rado_envelope_levels(3)
    assert [len(G) for G in s.levels] == [1, 4, 10, 22]
    assert validate_system(s).valid and fibers_double(s)


def test_envelope_carries_rado_points():
    top = rado_envelope_levels(4).top
    xs = [top.index(f"x{i}") for i in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            assert top.adjacent(xs[i], xs[j]) == rado_adjacent(i, j)


def test_envelope_step_guard():
    with pytest.raises(UniversalError):
        rado_envelope_levels(6)


# -- accessible sets ------------------------------------------------------------

def test_accessibility_in_two_edges():
    host = henson_seed(3).host
    assert is_accessible(host, "ab", 3)
    assert not is_accessible(host, "ac", 3)
    assert not is_accessible(host, "a", 3)
    assert is_maximal_accessible(host, "ab", 3)


def test_dominated_set_is_not_accessible():
    # K4 minus the edge ab: c sees a, b and d
    G = from_labeled_edges(list("abcd"), [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")])
    assert not is_accessible(G, "abd", 5)


def test_accessibility_needs_a_clique_bound():
    with pytest.raises(UniversalError):
        is_accessible(henson_seed(3).host, "a", 2)


@pytest.mark.parametrize("ell", [3, 4, 5, 6])
def test_seeds_are_valid_contexts(ell):
    ctx = henson_seed(ell)
    assert context_problem(ctx) is None
    assert is_clique_free(ctx.host, ell)


# -- growth -----------------------------------------------------------------------

def test_seed_host_has_no_witnesses():
    cert = henson_growth_step(henson_seed(3))
    assert isinstance(cert, FailureCertificate) and cert.missing == "p"
    assert cert.as_dict()["target"] == ["a", "b"]


def test_one_step_by_hand():
    seed = henson_seed(3)
    host = henson_host_extend(seed, 1)
    assert len(host) == 6
    ctx = HensonContext(3, host, seed.G, seed.A, seed.B)
    nxt = henson_growth_step(ctx)
    assert isinstance(nxt, HensonContext)
    assert len(nxt.G) == 6 and nxt.A == {"a", "b", "q0"} and nxt.B == {"c", "d", "p0"}
    assert nxt.history == (("p0", "q0"),)


def test_missing_q_is_reported():
    seed = henson_seed(3)
    host = henson_host_extend(seed, 1)
    labels = list(host.labels)
    keep = [i for i, lab in enumerate(labels) if lab != "q0"]
    trimmed = Graph([labels[i] for i in keep],
                    [[keep.index(u) for u in host.neighbors(i) if u in keep] for i in keep])
    cert = henson_growth_step(HensonContext(3, trimmed, seed.G, seed.A, seed.B))
    assert isinstance(cert, FailureCertificate) and cert.missing == "q"


@pytest.mark.parametrize("ell,budget", [(3, 5), (4, 2), (5, 2)])
def test_runs_keep_the_invariants(ell, budget):
    run = henson_run(ell, budget)
    assert all(isinstance(c, HensonContext) for c in run) and len(run) == budget + 1
    base = len(henson_seed(ell).G)
    assert [len(c.G) for c in run] == [base + 2 * n for n in range(budget + 1)]
    assert is_clique_free(run[-1].host, ell)
    assert all(context_problem(c) is None for c in run)


def test_triangle_free_run_sizes():
    run = henson_run(3, 5)
    assert [len(c.G) for c in run] == [4, 6, 8, 10, 12, 14]
    assert len(run[-1].host) == 14


def test_shared_clique_is_flagged():
    # A and B overlapping in an edge at ell = 4 would put a triangle next to q
    ctx = henson_seed(4)
    bad = HensonContext(4, ctx.host, ctx.G, ctx.A | {"k1"}, ctx.B)
    assert context_problem(bad) is not None
