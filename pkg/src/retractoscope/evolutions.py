"""Transitions, evolutions and the point-by-point peeling procedures.

A transition is an embedding-projection pair that adds at most one vertex.
Finite retracts of point-by-point retractable (PPR) graphs are again PPR,
and likewise for sociable graphs, so a greedy peel decides both properties:
any removable vertex may be removed without losing the answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .graph import Graph, GraphError, induced_subgraph, origin
from .morphisms import Morphism, compose, identity, inclusion, iter_retractions

DEFAULT_ORACLE_BOUND = 8


class EvolutionError(ValueError):
    pass


class DecompositionError(EvolutionError):
    def __init__(self, message: str, vertex: Hashable):
        super().__init__(message)
        self.vertex = vertex


@dataclass(frozen=True)
class Transition:
    source: Graph
    target: Graph
    embed: Morphism
    project: Morphism
    new_vertex: int | None = None

    @property
    def trivial(self) -> bool:
        return self.new_vertex is None


@dataclass(frozen=True)
class TransitionReport:
    valid: bool
    sociable: bool
    reason: str = ""


def validate_transition(t: Transition) -> TransitionReport:
    def bad(reason: str) -> TransitionReport:
        return TransitionReport(False, False, reason)

    e, p = t.embed, t.project
    if e.dom.labels != t.source.labels or e.cod.labels != t.target.labels:
        return bad("embed does not run from source to target")
    if p.dom.labels != t.target.labels or p.cod.labels != t.source.labels:
        return bad("project does not run from target to source")
    if not e.classification.embedding:
        return bad("embed is not an embedding")
    if not p.classification.homomorphism:
        return bad("project is not a homomorphism")
    if any(p.images[e.images[v]] != v for v in t.source.vertices()):
        return bad("project after embed is not the identity")
    outside = set(t.target.vertices()) - e.image()
    if len(outside) > 1:
        return bad("more than one vertex added")
    if t.new_vertex is None:
        if outside:
            return bad("new vertex missing from a nontrivial transition")
        return TransitionReport(True, True)
    if outside != {t.new_vertex}:
        return bad("new_vertex is not the vertex outside the embedded copy")
    w = t.new_vertex
    return TransitionReport(True, t.target.adjacent(w, e.images[p.images[w]]))


def one_point_extension(G: Graph, kept: Iterable[int], new: int, image: int) -> Transition:
    """Transition from G[kept] to G[kept + new] sending ``new`` to ``image``."""
    kept = set(kept)
    big = induced_subgraph(G, kept | {new})
    small = induced_subgraph(G, kept)
    e = inclusion(small, big)
    w = big.index(G.labels[new])
    p = Morphism(big, small, [small.index(G.labels[image] if v == w else big.labels[v])
                              for v in big.vertices()])
    return Transition(small, big, e, p, w)


@dataclass(frozen=True)
class Evolution:
    start: Graph
    steps: tuple[Transition, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        prev = self.start
        for i, t in enumerate(self.steps):
            if t.source != prev:
                raise EvolutionError(f"step {i} does not start where the previous one ended")
            prev = t.target

    @property
    def final(self) -> Graph:
        return self.steps[-1].target if self.steps else self.start

    @property
    def graphs(self) -> list[Graph]:
        return [self.start] + [t.target for t in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def starts_at_origin(self) -> bool:
        return len(self.start) == 1

    def is_valid(self) -> bool:
        return all(validate_transition(t).valid for t in self.steps)

    def is_sociable(self) -> bool:
        return all(validate_transition(t).sociable for t in self.steps)

    def composed(self) -> tuple[Morphism, Morphism]:
        e, p = identity(self.start), identity(self.start)
        for t in self.steps:
            e = compose(t.embed, e)
            p = compose(p, t.project)
        return e, p

    def added(self) -> list[tuple[Hashable, Hashable]]:
        """(new label, label of its projection) per nontrivial step."""
        out = []
        for t in self.steps:
            if t.new_vertex is not None:
                w = t.new_vertex
                out.append((t.target.labels[w], t.source.labels[t.project.images[w]]))
        return out

    def to_witness(self) -> dict:
        added = self.added()
        return {"order": [lab for lab, _ in added],
                "targets": {str(lab): str(tgt) for lab, tgt in added},
                "sociable": self.is_sociable(),
                "root": str(self.start.labels[0]) if self.starts_at_origin() else None}


def evolution_from_removals(G: Graph, removals: Sequence[tuple[int, int]]) -> Evolution:
    """Reverse a peel: ``removals`` lists (removed vertex, its image) in removal order."""
    removed = {v for v, _ in removals}
    alive = [v for v in G.vertices() if v not in removed]
    if not alive:
        raise EvolutionError("the peel removed every vertex")
    kept = set(alive)
    start = induced_subgraph(G, kept)
    steps = []
    for v, target in reversed(removals):
        steps.append(one_point_extension(G, kept, v, target))
        kept.add(v)
    return Evolution(start, steps)


def _peel(G: Graph, sociable: bool, keep: Iterable[int] = ()) -> list[tuple[int, int]] | None:
    if len(G) == 0:
        raise GraphError("graph must be nonempty")
    keep = set(keep)
    alive = list(G.vertices())
    removals: list[tuple[int, int]] = []
    while len(alive) > max(1, len(keep)):
        sub = induced_subgraph(G, alive)
        step = None
        for v in sub.vertices():
            if sub.parent[v] in keep:
                continue
            rest = [u for u in sub.vertices() if u != v]
            for imgs in iter_retractions(sub, rest):
                if not sociable or sub.adjacent(v, imgs[v]):
                    step = (sub.parent[v], sub.parent[imgs[v]])
                    break
            if step:
                break
        if step is None:
            return None
        removals.append(step)
        alive.remove(step[0])
    return removals


def ppr_witness(G: Graph) -> Evolution | None:
    removals = _peel(G, sociable=False)
    return None if removals is None else evolution_from_removals(G, removals)


def sociable_witness(G: Graph) -> Evolution | None:
    removals = _peel(G, sociable=True)
    return None if removals is None else evolution_from_removals(G, removals)


def retraction_chain_onto(G: Graph, keep: Iterable[int], sociable: bool = False) -> Evolution | None:
    """One-point steps from G[keep] up to G, found by peeling everything else."""
    keep = set(keep)
    if not keep:
        raise GraphError("nothing to keep")
    removals = _peel(G, sociable, keep)
    return None if removals is None else evolution_from_removals(G, removals)


def is_ppr(G: Graph) -> bool:
    return _peel(G, sociable=False) is not None


def is_sociable(G: Graph) -> bool:
    return _peel(G, sociable=True) is not None


# -- brute-force oracle -----------------------------------------------------

def _oracle(G: Graph, sociable: bool, bound: int) -> bool:
    if len(G) == 0:
        raise GraphError("graph must be nonempty")
    if len(G) > bound:
        raise EvolutionError(f"oracle bound {bound} exceeded by {len(G)} vertices")

    def collapses(S: frozenset[int], v: int, y: int) -> bool:
        # the map fixing S - v and sending v to y, checked edge by edge
        img = {u: u for u in S}
        img[v] = y
        return all(G.adjacent(img[a], img[b]) for a in S for b in S
                   if a < b and G.adjacent(a, b))

    @lru_cache(maxsize=None)
    def peelable(S: frozenset[int]) -> bool:
        if len(S) == 1:
            return True
        for v in S:
            for y in S:
                if y == v or (sociable and not G.adjacent(v, y)):
                    continue
                if collapses(S, v, y) and peelable(S - {v}):
                    return True
        return False

    return peelable(frozenset(G.vertices()))


def is_ppr_oracle(G: Graph, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    return _oracle(G, False, bound)


def is_sociable_oracle(G: Graph, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    return _oracle(G, True, bound)


# -- decomposition ------------------------------------------------------------

def decompose_retraction(H: Graph, G: Graph, p: Morphism) -> Evolution:
    """Split a retraction H -> G into one-vertex transitions.

    Every vertex outside G must have all its neighbors inside the closed
    neighborhood of its image.
    """
    if any(not H.has_label(lab) for lab in G.labels):
        raise EvolutionError("G is not a subgraph of H")
    sub = induced_subgraph(H, [H.index(lab) for lab in G.labels])
    if sub != G:
        raise EvolutionError("G is not an induced subgraph of H")
    if p.dom.labels != H.labels:
        raise EvolutionError("p is not defined on H")
    try:
        img = [H.index(p.cod.labels[w]) for w in p.images]
    except GraphError:
        raise EvolutionError("p does not land in G") from None
    inside = {H.index(lab) for lab in G.labels}
    for s in inside:
        if img[s] != s:
            raise DecompositionError("p moves a vertex of G", H.labels[s])
    for x in H.vertices():
        if img[x] not in inside:
            raise DecompositionError("p sends a vertex outside G", H.labels[x])
    for x in sorted(set(H.vertices()) - inside):
        if not H.neighbors(x) <= H.closed_neighbors(img[x]) & inside:
            raise DecompositionError("neighborhood not inside the closed neighborhood of its image",
                                     H.labels[x])
    kept = set(inside)
    steps = []
    for x in sorted(set(H.vertices()) - inside):
        steps.append(one_point_extension(H, kept, x, img[x]))
        kept.add(x)
    return Evolution(induced_subgraph(H, inside), steps)


# -- sentinel chains ----------------------------------------------------------

def is_sentinel(G: Graph, u: int) -> bool:
    return len(G.neighbors(u)) == len(G) - 1


@dataclass(frozen=True)
class SentinelChain:
    """Nested vertex sets of ``host`` with one dominating vertex per level."""
    host: Graph
    levels: tuple[frozenset[int], ...]
    sentinels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(frozenset(s) for s in self.levels))
        object.__setattr__(self, "sentinels", tuple(self.sentinels))

    def check(self) -> str | None:
        """None when the chain is well formed, else the first problem found."""
        if len(self.levels) != len(self.sentinels) or not self.levels:
            return "one sentinel per level is required"
        for i, (S, u) in enumerate(zip(self.levels, self.sentinels)):
            if i and not self.levels[i - 1] <= S:
                return f"level {i} does not contain level {i - 1}"
            if u not in S:
                return f"sentinel of level {i} lies outside the level"
            if not S - {u} <= self.host.neighbors(u):
                return f"level {i} lacks its declared sentinel"
        return None


def sentinel_chain_witness(c: SentinelChain) -> Evolution:
    problem = c.check()
    if problem:
        raise EvolutionError(problem)
    H = c.host
    levels, sentinels = list(c.levels), list(c.sentinels)
    if len(levels[0]) > 1:
        levels.insert(0, frozenset({sentinels[0]}))
        sentinels.insert(0, sentinels[0])
    kept = set(levels[0])
    steps = []
    for n in range(1, len(levels)):
        prev, top = sentinels[n - 1], sentinels[n]
        new = sorted(levels[n] - levels[n - 1])
        if top in new:
            new.remove(top)
            steps.append(one_point_extension(H, kept, top, prev))
            kept.add(top)
        for v in new:
            steps.append(one_point_extension(H, kept, v, top))
            kept.add(v)
    return Evolution(induced_subgraph(H, levels[0]), steps)


def origin_evolution() -> Evolution:
    return Evolution(origin())


__all__ = [
    "DEFAULT_ORACLE_BOUND", "DecompositionError", "Evolution", "EvolutionError",
    "SentinelChain", "Transition", "TransitionReport", "decompose_retraction",
    "evolution_from_removals", "is_ppr", "is_ppr_oracle", "is_sentinel", "is_sociable",
    "is_sociable_oracle", "one_point_extension", "origin_evolution", "ppr_witness", "retraction_chain_onto",
    "sentinel_chain_witness", "sociable_witness", "validate_transition",
]
