"""Vertex maps between reflexive graphs and their classification.

Because every vertex has a loop, a homomorphism may collapse an edge onto a
single vertex.  Maps are stored as tuples of codomain indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .graph import Graph, GraphError, induced_subgraph


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    homomorphism: bool
    strict: bool
    surjective: bool
    injective: bool
    embedding: bool

    @property
    def quotient(self) -> bool:
        return self.strict and self.surjective

    def as_dict(self) -> dict[str, bool]:
        return {"homomorphism": self.homomorphism, "strict": self.strict,
                "quotient": self.quotient, "embedding": self.embedding,
                "surjective": self.surjective, "injective": self.injective}


class Morphism:
    def __init__(self, dom: Graph, cod: Graph, images: Sequence[int]):
        images = tuple(images)
        if len(images) != len(dom):
            raise MorphismError("a morphism needs one image per domain vertex")
        for w in images:
            if not 0 <= w < len(cod):
                raise MorphismError(f"image index {w} outside the codomain")
        self.dom = dom
        self.cod = cod
        self.images = images

    @classmethod
    def from_labels(cls, dom: Graph, cod: Graph, mapping: Mapping[Hashable, Hashable]) -> Morphism:
        try:
            return cls(dom, cod, [cod.index(mapping[lab]) for lab in dom.labels])
        except KeyError as exc:
            raise MorphismError(f"no image given for {exc.args[0]!r}") from None
        except GraphError as exc:
            raise MorphismError(str(exc)) from None

    def __call__(self, v: int) -> int:
        return self.images[v]

    def label_map(self) -> dict[Hashable, Hashable]:
        return {self.dom.labels[v]: self.cod.labels[w] for v, w in enumerate(self.images)}

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.dom.labels == other.dom.labels and self.cod.labels == other.cod.labels
                and self.images == other.images)

    def __hash__(self) -> int:
        return hash((self.dom.labels, self.cod.labels, self.images))

    def __repr__(self) -> str:
        return f"Morphism({self.label_map()!r})"

    @cached_property
    def classification(self) -> Classification:
        return classify(self)

    def is_homomorphism(self) -> bool:
        return self.classification.homomorphism


def identity(G: Graph) -> Morphism:
    return Morphism(G, G, range(len(G)))


def inclusion(sub: Graph, G: Graph) -> Morphism:
    """Label-preserving inclusion of ``sub`` into ``G``."""
    return Morphism(sub, G, [G.index(lab) for lab in sub.labels])


def compose(f: Morphism, g: Morphism) -> Morphism:
    """f ∘ g: apply ``g`` first."""
    if g.cod.labels != f.dom.labels:
        raise MorphismError("codomain of the inner map is not the domain of the outer map")
    return Morphism(g.dom, f.cod, [f.images[w] for w in g.images])


def classify(f: Morphism) -> Classification:
    dom, cod, img = f.dom, f.cod, f.images
    hom = all(cod.adjacent(img[u], img[v]) for u, v in dom.edge_list)
    covered = {frozenset((img[u], img[v])) for u, v in dom.edge_list if img[u] != img[v]}
    image = set(img)
    strict = hom and all(frozenset((a, b)) in covered
                         for a in image for b in cod.neighbors(a) if b in image and a < b)
    surjective = len(image) == len(cod)
    injective = len(image) == len(dom)
    embedding = False
    if hom and injective:
        pre = {w: v for v, w in enumerate(img)}
        embedding = all(dom.adjacent(pre[a], pre[b])
                        for a in image for b in cod.neighbors(a) if b in pre)
    return Classification(hom, strict, surjective, injective, embedding)


def restrict(f: Morphism, sub: Graph) -> Morphism:
    """Restriction of ``f`` to an induced subgraph given by labels."""
    return Morphism(sub, f.cod, [f.images[f.dom.index(lab)] for lab in sub.labels])


def corestrict(f: Morphism, cod: Graph) -> Morphism:
    """Same map with a smaller codomain (labels must cover the image)."""
    return Morphism(f.dom, cod, [cod.index(f.cod.labels[w]) for w in f.images])


# -- retractions ----------------------------------------------------------

def _as_self_map(G: Graph, r: Morphism) -> tuple[int, ...]:
    if r.dom.labels != G.labels:
        raise MorphismError("retraction must be defined on the whole graph")
    return tuple(G.index(r.cod.labels[w]) for w in r.images)


def is_retraction_onto(G: Graph, S: Iterable[int], r: Morphism) -> bool:
    """``r`` may be given as G -> G or as G -> G[S]."""
    S = frozenset(S)
    if not S:
        raise MorphismError("retraction onto the empty set")
    try:
        img = _as_self_map(G, r)
    except (GraphError, MorphismError):
        return False
    if frozenset(img) != S or any(img[s] != s for s in S):
        return False
    return all(G.adjacent(img[u], img[v]) for u, v in G.edge_list)


def iter_retractions(G: Graph, S: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Self-maps of G fixing S with image S, in lexicographic order of the image tuple."""
    S = sorted(set(S))
    if not S:
        raise MorphismError("retraction onto the empty set")
    in_S = set(S)
    free = [v for v in G.vertices() if v not in in_S]
    # unary pruning: a candidate image must dominate the neighbors already in S
    candidates = {}
    for v in free:
        anchored = [s for s in G.neighbors(v) if s in in_S]
        cands = [c for c in S if all(G.adjacent(c, s) for s in anchored)]
        if not cands:
            return
        candidates[v] = cands
    img = list(G.vertices())

    def backtrack(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(free):
            yield tuple(img)
            return
        v = free[i]
        earlier = [u for u in free[:i] if u in G.neighbors(v)]
        for c in candidates[v]:
            if all(G.adjacent(c, img[u]) for u in earlier):
                img[v] = c
                yield from backtrack(i + 1)
        img[v] = v

    yield from backtrack(0)


def enumerate_retractions(G: Graph, S: Iterable[int]) -> list[Morphism]:
    return [Morphism(G, G, imgs) for imgs in iter_retractions(G, S)]


def first_retraction(G: Graph, S: Iterable[int]) -> Morphism | None:
    imgs = next(iter_retractions(G, S), None)
    return None if imgs is None else Morphism(G, G, imgs)


def as_retraction_onto(r: Morphism) -> Morphism:
    """View a retraction G -> G as the surjection G -> G[image]."""
    return corestrict(r, induced_subgraph(r.cod, r.image()))


def iterate_to_idempotent(f: Morphism) -> tuple[int, Morphism]:
    """Smallest m >= 1 with f^m idempotent, together with f^m."""
    if f.dom.labels != f.cod.labels:
        raise MorphismError("iteration needs a self-map")
    base = f.images
    power = base
    m = 1
    while True:
        if all(power[w] == w for w in set(power)):
            return m, Morphism(f.dom, f.cod, power)
        power = tuple(base[w] for w in power)
        m += 1


def find_right_inverse(p: Morphism) -> Morphism | None:
    """First (lexicographic) homomorphism e with p ∘ e = id, or None."""
    H, G = p.dom, p.cod
    fibers: list[list[int]] = [[] for _ in G.vertices()]
    for h, g in enumerate(p.images):
        fibers[g].append(h)
    if any(not fib for fib in fibers):
        return None
    choice: list[int] = [-1] * len(G)
    # iterative depth-first search in index order, so the first hit is lexicographically least
    cursor = [0] * len(G)
    i = 0
    while 0 <= i < len(G):
        fib = fibers[i]
        placed = False
        while cursor[i] < len(fib):
            h = fib[cursor[i]]
            cursor[i] += 1
            if all(H.adjacent(h, choice[u]) for u in G.neighbors(i) if u < i):
                choice[i] = h
                placed = True
                break
        if placed:
            i += 1
        else:
            cursor[i] = 0
            choice[i] = -1
            i -= 1
    if i < 0:
        return None
    return Morphism(G, H, choice)
