"""Finite reflexive graphs.

Every vertex carries an implicit loop: loops are never stored, and
``adjacent(v, v)`` is always true.  Vertices are addressed by index
(declaration order); labels are opaque hashables kept for I/O and for
tracking vertices across induced subgraphs.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


class Graph:
    """Immutable finite reflexive graph.

    ``parent`` is set on induced subgraphs and maps each vertex index back to
    the index it had in the graph it was cut from.
    """

    def __init__(self, labels: Sequence[Hashable], neighbors: Sequence[Iterable[int]],
                 parent: Sequence[int] | None = None):
        self.labels = tuple(labels)
        n = len(self.labels)
        if len(neighbors) != n:
            raise GraphError("one neighbor set per vertex required")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise GraphError("duplicate label")
        self._nbrs = tuple(frozenset(ns) for ns in neighbors)
        for v, ns in enumerate(self._nbrs):
            if v in ns:
                raise GraphError(f"stored loop at vertex {self.labels[v]!r}")
            for u in ns:
                if not 0 <= u < n:
                    raise GraphError(f"vertex index {u} out of range")
                if v not in self._nbrs[u]:
                    raise GraphError("adjacency is not symmetric")
        self.parent = tuple(parent) if parent is not None else None

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return len(self.labels)

    @property
    def order(self) -> int:
        return len(self.labels)

    def vertices(self) -> range:
        return range(len(self.labels))

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def has_label(self, label: Hashable) -> bool:
        return label in self._index

    def adjacent(self, u: int, v: int) -> bool:
        return u == v or v in self._nbrs[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """Neighbor bitsets, one Python int per vertex (no loop bit)."""
        out = []
        for ns in self._nbrs:
            row = 0
            for u in ns:
                row |= 1 << u
            out.append(row)
        return tuple(out)

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((u, v) for u in self.vertices() for v in self._nbrs[u] if u < v))

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.edge_list

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    def labeled_edges(self) -> list[tuple[Hashable, Hashable]]:
        return [(self.labels[u], self.labels[v]) for u, v in self.edge_list]

    # -- comparison ----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        if set(self.labels) != set(other.labels):
            return False
        mine = {frozenset(e) for e in self.labeled_edges()}
        theirs = {frozenset(e) for e in other.labeled_edges()}
        return mine == theirs

    def __hash__(self) -> int:
        return hash((frozenset(self.labels), frozenset(frozenset(e) for e in self.labeled_edges())))

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, edges={self.labeled_edges()!r})"

    def relabel(self, labels: Sequence[Hashable]) -> Graph:
        return Graph(labels, self._nbrs)


# -- constructors ---------------------------------------------------------

def make_graph(n: int, edges: Iterable[tuple[int, int]] = (),
               labels: Sequence[Hashable] | None = None) -> Graph:
    if labels is None:
        labels = list(range(n))
    if len(labels) != n:
        raise GraphError("label count differs from vertex count")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
        if u == v:
            raise GraphError(f"loop ({u}, {v}) given explicitly")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(labels, nbrs)


def from_labeled_edges(labels: Sequence[Hashable],
                       edges: Iterable[tuple[Hashable, Hashable]]) -> Graph:
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise GraphError("duplicate label")
    try:
        pairs = [(index[a], index[b]) for a, b in edges]
    except KeyError as exc:
        raise GraphError(f"edge mentions unknown vertex {exc.args[0]!r}") from None
    return make_graph(len(labels), pairs, labels)


def origin() -> Graph:
    return make_graph(1)


def complete(n: int) -> Graph:
    return make_graph(n, itertools.combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return make_graph(n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves}; vertex 0 is the center."""
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# -- derived graphs -------------------------------------------------------

def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    keep = sorted(set(S))
    if not keep:
        raise GraphError("induced subgraph of an empty vertex set")
    pos = {v: i for i, v in enumerate(keep)}
    nbrs = [[pos[u] for u in G.neighbors(v) if u in pos] for v in keep]
    return Graph([G.labels[v] for v in keep], nbrs, parent=keep)


def complement(G: Graph) -> Graph:
    n = len(G)
    return Graph(G.labels, [[u for u in range(n) if u != v and u not in G.neighbors(v)]
                            for v in range(n)])


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """Labels become ``(0, label)`` and ``(1, label)``."""
    n = len(G)
    labels = [(0, lab) for lab in G.labels] + [(1, lab) for lab in H.labels]
    nbrs = [list(G.neighbors(v)) for v in G.vertices()]
    nbrs += [[u + n for u in H.neighbors(v)] for v in H.vertices()]
    return Graph(labels, nbrs)


def neighborhood(G: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < len(G):
        raise GraphError(f"unknown vertex {v}")
    return G.neighbors(v)


def distances_from(G: Graph, source: int) -> list[float]:
    dist: list[float] = [math.inf] * len(G)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in G.neighbors(v):
            if dist[u] == math.inf:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def diameter(G: Graph) -> float:
    best = 0.0
    for v in G.vertices():
        best = max(best, max(distances_from(G, v)))
        if best == math.inf:
            break
    return int(best) if best != math.inf else math.inf


def is_connected(G: Graph) -> bool:
    return len(G) > 0 and math.inf not in distances_from(G, 0)


def components(G: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for v in G.vertices():
        if v in seen:
            continue
        comp = [u for u, d in enumerate(distances_from(G, v)) if d != math.inf]
        seen.update(comp)
        out.append(comp)
    return out


def find_clique(G: Graph, size: int, within: Iterable[int] | None = None) -> list[int] | None:
    """Some ``size``-clique inside ``within`` (default: all vertices), or None."""
    pool = sorted(set(within)) if within is not None else list(G.vertices())
    if size <= 0:
        return []

    def extend(clique: list[int], candidates: list[int]) -> list[int] | None:
        if len(clique) == size:
            return clique
        for i, v in enumerate(candidates):
            if len(clique) + len(candidates) - i < size:
                return None
            found = extend(clique + [v], [u for u in candidates[i + 1:] if u in G.neighbors(v)])
            if found is not None:
                return found
        return None

    return extend([], pool)


def is_clique_free(G: Graph, n: int, within: Iterable[int] | None = None) -> bool:
    """True iff no K_n sits inside ``within`` (default: the whole graph)."""
    return find_clique(G, n, within) is None


# -- isomorphism ----------------------------------------------------------

def _search_order(G: Graph) -> list[int]:
    # BFS from high-degree vertices so each new vertex has mapped neighbors early
    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(G.vertices(), key=lambda v: (-G.degree(v), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in sorted(G.neighbors(v), key=lambda u: (-G.degree(u), u)):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


def _embeddings(pattern: Graph, host: Graph, induced: bool, same_size: bool) -> Iterator[tuple[int, ...]]:
    order = _search_order(pattern)
    image: dict[int, int] = {}
    used: set[int] = set()

    def ok(v: int, w: int) -> bool:
        if same_size and pattern.degree(v) != host.degree(w):
            return False
        if pattern.degree(v) > host.degree(w):
            return False
        for u, x in image.items():
            a = pattern.adjacent(u, v)
            b = host.adjacent(x, w)
            if a and not b:
                return False
            if induced and b and not a:
                return False
        return True

    def backtrack(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(image[v] for v in pattern.vertices())
            return
        v = order[i]
        for w in host.vertices():
            if w in used or not ok(v, w):
                continue
            image[v] = w
            used.add(w)
            yield from backtrack(i + 1)
            del image[v]
            used.discard(w)

    yield from backtrack(0)


def find_isomorphism(G: Graph, H: Graph) -> tuple[int, ...] | None:
    """A bijection G -> H (as an index tuple) preserving edges and non-edges."""
    if len(G) != len(H) or G.edge_count != H.edge_count:
        return None
    if sorted(map(G.degree, G.vertices())) != sorted(map(H.degree, H.vertices())):
        return None
    return next(_embeddings(G, H, induced=True, same_size=True), None)


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return find_isomorphism(G, H) is not None


def find_induced_copy(pattern: Graph, host: Graph) -> tuple[int, ...] | None:
    """An embedding of ``pattern`` onto an induced subgraph of ``host``."""
    if len(pattern) > len(host):
        return None
    return next(_embeddings(pattern, host, induced=True, same_size=False), None)


# -- small-graph enumeration ---------------------------------------------

def canonical_code(G: Graph) -> tuple[int, ...]:
    """Lexicographically least adjacency code over degree-respecting orderings.

    Exhaustive within degree classes; meant for graphs of at most ~8 vertices.
    """
    n = len(G)
    classes: dict[int, list[int]] = {}
    for v in G.vertices():
        classes.setdefault(G.degree(v), []).append(v)
    degs = sorted(classes)
    best: tuple[int, ...] | None = None
    for parts in itertools.product(*(itertools.permutations(classes[d]) for d in degs)):
        perm = [v for part in parts for v in part]
        code = tuple(1 if G.adjacent(perm[i], perm[j]) else 0
                     for i in range(n) for j in range(i + 1, n))
        if best is None or code < best:
            best = code
    return (n, *degs, *(len(classes[d]) for d in degs), *(best or ()))


def iter_graphs(n: int, connected: bool = False) -> Iterator[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, by one-vertex augmentation."""
    if n < 1:
        return
    level = [origin()]
    for size in range(2, n + 1):
        seen: dict[tuple[int, ...], Graph] = {}
        for G in level:
            base = G.edge_list
            for mask in range(1 << (size - 1)):
                extra = [(i, size - 1) for i in range(size - 1) if mask >> i & 1]
                H = make_graph(size, list(base) + extra)
                seen.setdefault(canonical_code(H), H)
        level = list(seen.values())
    for G in level:
        if not connected or is_connected(G):
            yield G
