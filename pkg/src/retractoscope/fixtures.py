"""Small named graphs used by the CLI, the acceptance suite and the tests."""

from __future__ import annotations

from .graph import Graph, from_labeled_edges
from .morphisms import Morphism
from .fraisse import projective_level

G6_EDGES = [("a", "b"), ("b", "c"), ("c", "a"), ("d", "b"),
            ("e", "a"), ("e", "d"), ("f", "c"), ("f", "d")]

# (added vertex, its projection) in order of addition, starting from a
G6_FORWARD = [("b", "a"), ("c", "a"), ("d", "b"), ("e", "b"), ("f", "b")]

# (removed vertex, its image) in order of removal, ending at c
G6_ALTERNATE = [("e", "b"), ("a", "b"), ("f", "b"), ("d", "b"), ("b", "c")]

G6_INDUCED_C5 = ["e", "a", "c", "f", "d"]


def example_g6() -> Graph:
    return from_labeled_edges(list("abcdef"), G6_EDGES)


def picture_quotient() -> tuple[Graph, Graph, Morphism]:
    """A fragmented 21-vertex graph mapped onto a 5-vertex connected graph.

    Seven components are single edges, seven are isolated; every edge of the
    target is covered by exactly one of the five non-collapsed edges.
    """
    G = from_labeled_edges(list("ABCDE"), [("A", "B"), ("B", "D"), ("C", "D"),
                                           ("D", "E"), ("A", "C")])
    shape = {1: "A", 2: "B", 3: "B", 4: "D", 5: "D", 6: "E", 7: "A", 8: "C", 9: "C",
             10: "D", 11: "A", 12: "B", 13: "C", 14: "D", 15: "E", 16: "E", 17: "E",
             18: "C", 19: "C", 20: "E", 21: "E"}
    labels = [f"h{i}" for i in range(1, 22)]
    pairs = [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (16, 17), (18, 19)]
    H = from_labeled_edges(labels, [(f"h{a}", f"h{b}") for a, b in pairs])
    p = Morphism.from_labels(H, G, {f"h{i}": s for i, s in shape.items()})
    return H, G, p


def picture_onto_level1() -> tuple[Graph, Morphism]:
    """The same fragmented graph, sent vertex by vertex onto projective level 1."""
    H, _, _ = picture_quotient()
    target = {1: "0", 2: "1", 3: "2", 4: "3", 5: "3", 6: "2", 7: "0", 8: "1", 9: "2",
              10: "3", 11: "0", 12: "1", 13: "2", 14: "3", 15: "0", 16: "2", 17: "2",
              18: "0", 19: "1", 20: "1", 21: "2"}
    G1 = projective_level(1).graph
    return H, Morphism.from_labels(H, G1, {f"h{i}": t for i, t in target.items()})
