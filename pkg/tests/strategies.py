"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from retractoscope.graph import make_graph


@st.composite
def graphs(draw, min_size=1, max_size=7):
    n = draw(st.integers(min_size, max_size))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_map(draw, max_size=6):
    G = draw(graphs(max_size=max_size))
    H = draw(graphs(max_size=max_size))
    images = draw(st.lists(st.integers(0, len(H) - 1), min_size=len(G), max_size=len(G)))
    return G, H, images
