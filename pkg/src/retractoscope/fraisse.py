"""Generators for two explicit towers and their lifting algorithms.

Projective levels live on {0,1,2,3}^k; vertices are encoded as base-4
integers (first digit most significant), so lexicographic label order is
numeric order.  Evolution levels grow by duplicating each vertex along every
nonempty choice of its closed neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

import numpy as np

from .evolutions import Evolution, evolution_from_removals
from .graph import Graph, GraphError
from .morphisms import Morphism

PROJECTIVE_MAX_DEPTH = 8
EVOLUTION_MAX_DEPTH = 3
LIFT_MAX_VERTICES = 4 ** 9


class DepthError(ValueError):
    pass


# -- projective levels ----------------------------------------------------------

def projective_label(code: int, k: int) -> str:
    return np.base_repr(code, 4).zfill(k) if k else ""


def projective_code(label: str) -> int:
    return int(label, 4) if label else 0


def projective_partners(k: int) -> np.ndarray:
    """partner[c] is the unique other vertex adjacent to code c."""
    n = 4 ** k
    codes = np.arange(n, dtype=np.int64)
    if k == 0:
        return codes.copy()
    digits = np.stack([(codes // 4 ** (k - 1 - i)) % 4 for i in range(k)], axis=1)
    high = digits >= 2
    has_high = high.any(axis=1)
    # last position holding a 2 or 3; the tail after it is automatically 0/1
    last = k - 1 - np.argmax(high[:, ::-1], axis=1)
    weight = 4 ** (k - 1 - last)
    at_last = digits[np.arange(n), last]
    swapped = codes + np.where(at_last == 2, weight, -weight)
    first_weight = 4 ** (k - 1)
    flipped = codes + np.where(digits[:, 0] == 0, first_weight, -first_weight)
    return np.where(has_high, swapped, flipped)


def projective_adjacent(x: str, y: str) -> bool:
    """Direct evaluation of the pairwise rule on two labels of equal length."""
    if len(x) != len(y):
        raise GraphError("labels of different depth")
    if x == y:
        return True
    k = len(x)
    low = set("01")
    for l in range(k):
        if x[:l] == y[:l] and {x[l], y[l]} == {"2", "3"} and x[l + 1:] == y[l + 1:] \
                and set(x[l + 1:]) <= low:
            return True
    return {x[0], y[0]} == {"0", "1"} and x[1:] == y[1:] and set(x[1:]) <= low


@dataclass(frozen=True)
class ProjectiveLevel:
    k: int
    graph: Graph


@lru_cache(maxsize=None)
def projective_level(k: int, max_depth: int = PROJECTIVE_MAX_DEPTH) -> ProjectiveLevel:
    if k < 0:
        raise DepthError("depth must be nonnegative")
    if k > max_depth:
        raise DepthError(f"projective depth {k} exceeds the bound {max_depth}")
    partner = projective_partners(k)
    labels = [projective_label(c, k) for c in range(4 ** k)]
    nbrs = [() if p == c else (int(p),) for c, p in enumerate(partner)]
    return ProjectiveLevel(k, Graph(labels, nbrs))


def projective_bond(k: int, max_depth: int = PROJECTIVE_MAX_DEPTH) -> Morphism:
    """Truncation from level k+1 to level k."""
    upper = projective_level(k + 1, max_depth).graph
    lower = projective_level(k, max_depth).graph
    return Morphism(upper, lower, [c // 4 for c in range(len(upper))])


def projective_truncation(m: int, k: int, max_depth: int = PROJECTIVE_MAX_DEPTH) -> Morphism:
    upper = projective_level(m, max_depth).graph
    lower = projective_level(k, max_depth).graph
    step = 4 ** (m - k)
    return Morphism(upper, lower, [c // step for c in range(len(upper))])


def projective_section(k: int, max_depth: int = PROJECTIVE_MAX_DEPTH) -> Morphism:
    """x -> x0, a right inverse of the truncation."""
    upper = projective_level(k + 1, max_depth).graph
    lower = projective_level(k, max_depth).graph
    return Morphism(lower, upper, [4 * c for c in range(len(lower))])


def lift_depth(H: Graph, k: int) -> int:
    """Least m with 2^(m-k-1) > |V(H)| + |E(H)|."""
    return k + 1 + (len(H) + H.edge_count).bit_length()


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectiveLift:
    H: Graph
    p: Morphism
    k: int
    m: int
    images: np.ndarray

    def truncation(self) -> np.ndarray:
        return np.arange(4 ** self.m, dtype=np.int64) // 4 ** (self.m - self.k)

    def verify(self) -> dict[str, bool]:
        """Check homomorphism, strictness, surjectivity and commutation on arrays."""
        H, g = self.H, self.images
        partner = projective_partners(self.m)
        codes = np.arange(4 ** self.m, dtype=np.int64)
        lo = codes[codes < partner]
        hi = partner[lo]
        gu, gv = g[lo], g[hi]
        rows = H.rows
        hom = all(a == b or (rows[a] >> b) & 1 for a, b in zip(gu.tolist(), gv.tolist()))
        covered = {(min(a, b), max(a, b)) for a, b in zip(gu.tolist(), gv.tolist()) if a != b}
        strict = hom and covered == set(H.edge_list)
        surjective = len(np.unique(g)) == len(H)
        p_img = np.asarray(self.p.images, dtype=np.int64)
        commutes = bool(np.array_equal(p_img[g], self.truncation()))
        return {"homomorphism": bool(hom), "strict": bool(strict), "surjective": surjective,
                "quotient": bool(strict and surjective), "commutes": commutes}

    def as_morphism(self) -> Morphism:
        return Morphism(projective_level(self.m, max(self.m, PROJECTIVE_MAX_DEPTH)).graph,
                        self.H, self.images.tolist())


def projective_lift(H: Graph, p: Morphism, max_vertices: int = LIFT_MAX_VERTICES) -> ProjectiveLift:
    if len(H) == 0:
        raise LiftError("H is empty")
    if p.dom.labels != H.labels:
        raise LiftError("p is not defined on H")
    k = len(p.cod).bit_length() // 2
    if 4 ** k != len(p.cod) or k < 1:
        raise LiftError("codomain is not a projective level of depth at least 1")
    if p.cod != projective_level(k, max(k, PROJECTIVE_MAX_DEPTH)).graph:
        raise LiftError("codomain is not a projective level")
    if not p.classification.quotient:
        raise LiftError("p is not a quotient map")
    m = lift_depth(H, k)
    if 4 ** m > max_vertices:
        raise LiftError(f"lift needs depth {m}, beyond the vertex guard {max_vertices}")

    base_partner = projective_partners(k)
    p_img = p.images
    # H-side classes, grouped by the lower endpoint of each level-k edge
    isolated: dict[tuple[int, bool], list[int]] = {}
    mono: dict[tuple[int, bool], list[tuple[int, int]]] = {}
    bichrome: dict[int, list[tuple[int, int]]] = {}

    def edge_of(c: int) -> tuple[int, bool]:
        lo = min(c, int(base_partner[c]))
        return lo, c == lo  # (edge id, is black)

    for x in H.vertices():
        if H.degree(x) == 0:
            isolated.setdefault(edge_of(p_img[x]), []).append(x)
    for x, y in H.edge_list:
        (d, bx), (_, by) = edge_of(p_img[x]), edge_of(p_img[y])
        if bx == by:
            mono.setdefault((d, bx), []).append((x, y))
        else:
            bichrome.setdefault(d, []).append((x, y) if bx else (y, x))

    partner = projective_partners(m)
    step = 4 ** (m - k)
    codes = np.arange(4 ** m, dtype=np.int64)
    lo = codes[codes < partner]
    hi = partner[lo]
    t_lo, t_hi = lo // step, hi // step
    d_id = np.minimum(t_lo, base_partner[t_lo])
    black_lo = t_lo == d_id
    black_hi = t_hi == d_id
    images = np.full(4 ** m, -1, dtype=np.int64)

    for d in np.unique(d_id).tolist():
        if d not in bichrome:
            raise LiftError("an edge of the level has no bicolored edge above it")
        bre = bichrome[d]
        b, r = bre[0]
        in_d = d_id == d
        for black in (True, False):
            sel = np.flatnonzero(in_d & (black_lo == black) & (black_hi == black))
            iso = isolated.get((d, black), [])
            es = mono.get((d, black), [])
            if len(sel) < len(iso) + len(es):
                raise LiftError("fiber too small for the requested partition")
            first, second = sel[:len(iso)], sel[len(iso):len(iso) + len(es)]
            rest = sel[len(iso) + len(es):]
            iso_arr = np.asarray(iso, dtype=np.int64)
            images[lo[first]] = iso_arr
            images[hi[first]] = iso_arr
            if es:
                es_arr = np.asarray(es, dtype=np.int64)
                images[lo[second]] = es_arr[:, 0]
                images[hi[second]] = es_arr[:, 1]
            fill = b if black else r
            images[lo[rest]] = fill
            images[hi[rest]] = fill
        sel = np.flatnonzero(in_d & (black_lo != black_hi))
        if len(sel) < len(bre):
            raise LiftError("fiber too small for the bicolored edges")
        targets = np.asarray(bre + [(b, r)] * (len(sel) - len(bre)), dtype=np.int64)
        lo_black = black_lo[sel]
        images[lo[sel]] = np.where(lo_black, targets[:, 0], targets[:, 1])
        images[hi[sel]] = np.where(lo_black, targets[:, 1], targets[:, 0])

    if (images < 0).any():
        raise LiftError("some vertex received no image")
    return ProjectiveLift(H, p, k, m, images)


# -- evolution levels -----------------------------------------------------------

CONNECTED = "connected"
HAT = "hat"


@dataclass(frozen=True)
class EvolutionLevel:
    k: int
    graph: Graph
    bond: Morphism | None
    variant: str = CONNECTED


def child_label(parent: str, t: str) -> str:
    return f"{parent}/{t}"


def parent_label(label: str) -> str:
    if "/" not in label:
        raise GraphError(f"{label!r} is a base vertex")
    return label.rsplit("/", 1)[0]


def choice_strings(degree: int, allow_zero: bool) -> list[str]:
    """Bit strings t of length degree+1 in lexicographic order."""
    width = degree + 1
    return [format(i, f"0{width}b") for i in range(0 if allow_zero else 1, 2 ** width)]


def grow_level(G: Graph, allow_zero: bool) -> tuple[Graph, Morphism]:
    labels = list(G.labels)
    nbrs: list[set[int]] = [set(G.neighbors(v)) for v in G.vertices()]
    parents = list(G.vertices())
    for x in G.vertices():
        around = sorted(G.neighbors(x))
        for t in choice_strings(len(around), allow_zero):
            w = len(labels)
            labels.append(child_label(str(G.labels[x]), t))
            chosen = ([x] if t[0] == "1" else []) + [y for y, bit in zip(around, t[1:]) if bit == "1"]
            nbrs.append(set(chosen))
            for y in chosen:
                nbrs[y].add(w)
            parents.append(x)
    H = Graph(labels, nbrs)
    return H, Morphism(H, G, parents)


def base_level(variant: str) -> Graph:
    if variant == CONNECTED:
        return Graph(["0", "1"], [(1,), (0,)])
    if variant == HAT:
        return Graph(["0", "1", "2"], [(1,), (0,), ()])
    raise ValueError(f"unknown variant {variant!r}")


@lru_cache(maxsize=None)
def _evolution_level(k: int, variant: str) -> EvolutionLevel:
    if k == 0:
        return EvolutionLevel(0, Graph(["0"], [()]), None, variant)
    if k == 1:
        G1 = base_level(variant)
        origin_graph = _evolution_level(0, variant).graph
        return EvolutionLevel(1, G1, Morphism(G1, origin_graph, [0] * len(G1)), variant)
    lower = _evolution_level(k - 1, variant).graph
    G, bond = grow_level(lower, allow_zero=variant == HAT)
    return EvolutionLevel(k, G, bond, variant)


def evolution_level(k: int, variant: str = CONNECTED,
                    max_depth: int = EVOLUTION_MAX_DEPTH) -> EvolutionLevel:
    if variant not in (CONNECTED, HAT):
        raise ValueError(f"unknown variant {variant!r}")
    if k < 0:
        raise DepthError("depth must be nonnegative")
    if k > max_depth:
        raise DepthError(f"evolution depth {k} exceeds the bound {max_depth}")
    return _evolution_level(k, variant)


def evolution_truncation(m: int, k: int, variant: str = CONNECTED) -> Morphism:
    """Composite bond from level m down to level k."""
    upper = evolution_level(m, variant).graph
    images = list(upper.vertices())
    for j in range(m, k, -1):
        bond = evolution_level(j, variant).bond
        images = [bond.images[v] for v in images]
    return Morphism(upper, evolution_level(k, variant).graph, images)


def embed_one_point_extension(level: EvolutionLevel, G: Graph, H: Graph, r: Morphism,
                              variant: str | None = None) -> str:
    """Label of a level k+1 vertex playing the role of the one new vertex of H."""
    variant = variant or level.variant
    Gk = level.graph
    extra = [lab for lab in H.labels if not G.has_label(lab)]
    if len(extra) != 1 or any(not H.has_label(lab) for lab in G.labels):
        raise LiftError("H must extend G by exactly one vertex")
    if any(not Gk.has_label(lab) for lab in G.labels):
        raise LiftError("G is not inside the level")
    x = H.index(extra[0])
    y_label = r.cod.labels[r.images[x]]
    y = Gk.index(y_label)
    around = {H.labels[u] for u in H.neighbors(x)}
    # reads N_H(x) off the closed neighborhood of y in the level
    ordered = sorted(Gk.neighbors(y))
    t = ("1" if y_label in around else "0") + "".join(
        "1" if Gk.labels[u] in around else "0" for u in ordered)
    if not around <= {Gk.labels[u] for u in Gk.closed_neighbors(y)}:
        raise LiftError("r is not a retraction compatible with the level")
    if "1" not in t and variant != HAT:
        raise LiftError("an isolated duplicate only exists in the hat variant")
    return child_label(str(y_label), t)


@dataclass(frozen=True)
class EvolutionLift:
    k: int
    level: int
    embedding: dict[Hashable, str]
    removals: tuple[tuple[str, str], ...]
    retraction: Morphism
    variant: str = CONNECTED

    def chain(self) -> Evolution:
        """One-point extensions from the embedded copy of H up to the level."""
        G = evolution_level(self.level, self.variant).graph
        return evolution_from_removals(G, [(G.index(a), G.index(b)) for a, b in self.removals])

    def verify(self, chain: Evolution, base: Mapping[Hashable, Hashable] | None = None) -> bool:
        """The chain's projections after the retraction equal the truncation bond."""
        _, proj = chain.composed()
        to_level = base or {lab: lab for lab in chain.start.labels}
        trunc = evolution_truncation(self.level, self.k, self.variant)
        g = self.retraction
        for v in g.dom.vertices():
            h = g.images[v]
            expected = trunc.cod.labels[trunc.images[v]]
            got = to_level[proj.cod.labels[proj.images[h]]]
            if got != expected:
                return False
        return g.classification.quotient


def shallow_chain(H: Graph, base: Iterable[Hashable], k: int,
                  max_depth: int = EVOLUTION_MAX_DEPTH,
                  variant: str = CONNECTED) -> Evolution | None:
    """A chain of one-point retractions from H[base] up to H whose lift stays
    at or below ``max_depth``; depth-first over addition orders."""
    start = {H.index(lab) for lab in base}
    if not start:
        raise LiftError("empty base")
    height = {v: k for v in start}
    order: list[tuple[int, int]] = []

    def search(current: set[int]) -> bool:
        if len(current) == len(H):
            return True
        for x in H.vertices():
            if x in current:
                continue
            early = H.neighbors(x) & current
            if not early and variant != HAT:
                continue
            for y in sorted(current):
                if not early <= H.closed_neighbors(y):
                    continue
                j = 1 + max([height[y]] + [height[u] for u in early])
                if j > max_depth:
                    continue
                height[x] = j
                order.append((x, y))
                current.add(x)
                if search(current):
                    return True
                current.discard(x)
                order.pop()
                del height[x]
        return False

    if not search(set(start)):
        return None
    return evolution_from_removals(H, list(reversed(order)))


def evolution_lift(H: Graph, chain: Evolution, k: int,
                   base: Mapping[Hashable, Hashable] | None = None,
                   variant: str = CONNECTED,
                   max_depth: int = EVOLUTION_MAX_DEPTH) -> EvolutionLift:
    """Embed H above level k and peel the level back down onto it.

    ``chain`` runs from a copy of level k (identified through ``base``) to H by
    one-point retraction steps.  Each new vertex is placed one level above its
    projection and its earlier neighbors, as a duplicate of the image of its
    projection.
    """
    if chain.final != H:
        raise LiftError("the chain does not end at H")
    Gk = evolution_level(k, variant, max_depth).graph
    base = dict(base) if base is not None else {lab: lab for lab in chain.start.labels}
    if sorted(map(str, base.values())) != sorted(map(str, Gk.labels)) or \
            set(base) != set(chain.start.labels):
        raise LiftError("base does not identify the chain start with the level")
    S = chain.start
    at = [Gk.index(base[lab]) for lab in S.labels]
    if any(S.adjacent(u, v) != Gk.adjacent(at[u], at[v])
           for u in S.vertices() for v in S.vertices() if u < v):
        raise LiftError("base is not an isomorphism onto the level")

    placed: dict[Hashable, str] = dict(base)
    height: dict[Hashable, int] = {lab: k for lab in chain.start.labels}
    for t in chain.steps:
        if t.new_vertex is None:
            continue
        w = t.new_vertex
        x = t.target.labels[w]
        y = t.source.labels[t.project.images[w]]
        early = [t.target.labels[u] for u in t.target.neighbors(w)]
        j = max([height[y]] + [height[u] for u in early])
        if j + 1 > max_depth:
            raise DepthError(f"lift needs level {j + 1}, beyond the bound {max_depth}")
        level = evolution_level(j, variant, max_depth).graph
        py = level.index(placed[y])
        around = {placed[u] for u in early}
        ordered = sorted(level.neighbors(py))
        if not around <= {level.labels[u] for u in level.closed_neighbors(py)}:
            raise LiftError(f"step adding {x!r} is not a one-point retraction")
        bits = ("1" if placed[y] in around else "0") + "".join(
            "1" if level.labels[u] in around else "0" for u in ordered)
        if "1" not in bits and variant != HAT:
            raise LiftError(f"{x!r} would be an isolated duplicate")
        placed[x] = child_label(str(placed[y]), bits)
        height[x] = j + 1

    top = max(height.values())
    G = evolution_level(top, variant, max_depth).graph
    keep = {G.index(lab) for lab in placed.values()}
    img = list(G.vertices())
    removals: list[tuple[str, str]] = []
    for j in range(top, k, -1):
        lower = len(evolution_level(j - 1, variant, max_depth).graph)
        bond = evolution_level(j, variant, max_depth).bond
        for z in range(lower, len(evolution_level(j, variant, max_depth).graph)):
            if z in keep:
                continue
            removals.append((G.labels[z], G.labels[bond.images[z]]))
            img[z] = bond.images[z]
    # resolve each vertex to its final survivor
    for v in G.vertices():
        while img[img[v]] != img[v]:
            img[v] = img[img[v]]
    back = {lab: h for h, lab in placed.items()}
    images = [H.index(back[G.labels[img[v]]]) for v in G.vertices()]
    return EvolutionLift(k, top, placed, tuple(removals), Morphism(G, H, images), variant)


__all__ = [
    "CONNECTED", "DepthError", "EvolutionLevel", "EvolutionLift", "HAT", "LiftError",
    "ProjectiveLevel", "ProjectiveLift", "child_label", "choice_strings",
    "embed_one_point_extension", "evolution_level", "evolution_lift", "evolution_truncation",
    "grow_level", "lift_depth", "parent_label", "projective_adjacent", "projective_bond",
    "projective_code", "projective_label", "projective_level", "projective_lift",
    "projective_partners", "projective_section", "projective_truncation", "shallow_chain",
]
