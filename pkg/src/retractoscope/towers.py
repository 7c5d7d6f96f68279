"""Finite towers of graphs with bonding maps.

Limits are never built; every statement about a limit is reduced to a
level-indexed check on the materialized levels.  Cylinders are fibers of the
composed bonds, viewed at the top level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable

from .evolutions import Evolution, EvolutionError
from .fraisse import (CONNECTED, child_label, evolution_level, projective_adjacent,
                      projective_bond, projective_level)
from .graph import Graph
from .morphisms import Morphism

QUOTIENT = "quotient-tower"
RETRACTION = "retraction-tower"


class TowerError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InverseSystem:
    levels: tuple[Graph, ...]
    bonds: tuple[Morphism, ...]
    kind: str = QUOTIENT
    family: str | None = None  # "projective", "evolution" or None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "bonds", tuple(self.bonds))
        if self.kind not in (QUOTIENT, RETRACTION):
            raise TowerError(f"unknown tower kind {self.kind!r}")
        if len(self.bonds) != len(self.levels) - 1:
            raise TowerError("a tower needs exactly one bond between consecutive levels")

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> Graph:
        return self.levels[-1]

    @cached_property
    def _projections(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.levels]
        out[-1] = list(self.top.vertices())
        for n in range(self.height - 1, -1, -1):
            bond = self.bonds[n]
            out[n] = [bond.images[w] for w in out[n + 1]]
        return out

    def projection_to(self, n: int) -> list[int]:
        """Index at level n of the image of each top vertex."""
        return self._projections[n]

    def fiber(self, n: int, label: Hashable) -> frozenset[int]:
        x = self.levels[n].index(label)
        return frozenset(v for v, w in enumerate(self.projection_to(n)) if w == x)

    def truncate(self, height: int) -> InverseSystem:
        return InverseSystem(self.levels[:height + 1], self.bonds[:height], self.kind, self.family)


@dataclass(frozen=True)
class SystemReport:
    valid: bool
    problems: tuple[str, ...] = ()

    @property
    def first_problem(self) -> str | None:
        return self.problems[0] if self.problems else None


def _min_law_problem(s: InverseSystem) -> str | None:
    top = s.top
    selfmaps = []
    for n in range(len(s.levels)):
        proj = s.projection_to(n)
        level = s.levels[n]
        selfmaps.append([top.index(level.labels[w]) for w in proj])
    for n, rn in enumerate(selfmaps):
        for m, rm in enumerate(selfmaps):
            rmin = selfmaps[min(n, m)]
            if any(rn[rm[v]] != rmin[v] for v in top.vertices()):
                return f"composition law fails for the pair ({n}, {m})"
    return None


def validate_system(s: InverseSystem) -> SystemReport:
    problems = []
    for i, bond in enumerate(s.bonds):
        upper, lower = s.levels[i + 1], s.levels[i]
        if bond.dom.labels != upper.labels or bond.cod.labels != lower.labels:
            problems.append(f"bond {i + 1}->{i} has the wrong endpoints")
            continue
        c = bond.classification
        if not c.homomorphism:
            problems.append(f"bond {i + 1}->{i} is not a homomorphism")
        elif not c.strict:
            problems.append(f"bond {i + 1}->{i} is not strict")
        elif not c.surjective:
            problems.append(f"bond {i + 1}->{i} is not surjective")
        if s.kind == RETRACTION:
            if any(not upper.has_label(lab) for lab in lower.labels):
                problems.append(f"level {i} is not a subset of level {i + 1}")
                continue
            for lab in lower.labels:
                if bond.cod.labels[bond.images[upper.index(lab)]] != lab:
                    problems.append(f"bond {i + 1}->{i} moves {lab!r}")
                    break
            for a in lower.vertices():
                for b in lower.neighbors(a):
                    if not upper.adjacent(upper.index(lower.labels[a]), upper.index(lower.labels[b])):
                        problems.append(f"level {i} is not induced in level {i + 1}")
                        break
    if not problems and s.kind == RETRACTION:
        problem = _min_law_problem(s)
        if problem:
            problems.append(problem)
    return SystemReport(not problems, tuple(problems))


# -- standard towers ------------------------------------------------------------

def projective_tower(depth: int) -> InverseSystem:
    levels = [projective_level(k).graph for k in range(depth + 1)]
    bonds = [projective_bond(k) for k in range(depth)]
    return InverseSystem(levels, bonds, QUOTIENT, "projective")


def evolution_tower(depth: int, variant: str = CONNECTED) -> InverseSystem:
    levels = [evolution_level(k, variant).graph for k in range(depth + 1)]
    bonds = [evolution_level(k, variant).bond for k in range(1, depth + 1)]
    return InverseSystem(levels, bonds, RETRACTION, "evolution")


def envelope_from_evolution(e: Evolution) -> InverseSystem:
    if not e.is_valid():
        raise EvolutionError("the evolution has an invalid transition")
    return InverseSystem(e.graphs, [t.project for t in e.steps], RETRACTION, None)


# -- threads -------------------------------------------------------------------

@dataclass(frozen=True)
class Thread:
    entries: tuple[Hashable, ...]
    anchor: int = 0

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def depth(self) -> int:
        return len(self.entries) - 1


def thread_problem(s: InverseSystem, t: Thread) -> str | None:
    if t.depth > s.height:
        return "thread is deeper than the tower"
    for i in range(t.depth):
        upper, lower = s.levels[i + 1], s.levels[i]
        if not upper.has_label(t.entries[i + 1]):
            return f"entry {i + 1} is not a vertex of its level"
        bond = s.bonds[i]
        if lower.labels[bond.images[upper.index(t.entries[i + 1])]] != t.entries[i]:
            return f"entries {i} and {i + 1} are not bond-compatible"
    return None


def thread_through(s: InverseSystem, n: int, label: Hashable) -> Thread:
    """Entries below level n forced by the bonds, ending at ``label``."""
    entries = [label]
    idx = s.levels[n].index(label)
    for i in range(n - 1, -1, -1):
        idx = s.bonds[i].images[idx]
        entries.append(s.levels[i].labels[idx])
    return Thread(tuple(reversed(entries)))


@dataclass(frozen=True)
class AdjacencyReport:
    adjacent: bool
    separated_at: int | None = None


def limit_adjacency(s: InverseSystem, t1: Thread, t2: Thread) -> AdjacencyReport:
    if t1.depth != t2.depth:
        raise TowerError("threads of different depth")
    for t in (t1, t2):
        problem = thread_problem(s, t)
        if problem:
            raise TowerError(problem)
    for n, (a, b) in enumerate(zip(t1.entries, t2.entries)):
        G = s.levels[n]
        if not G.adjacent(G.index(a), G.index(b)):
            return AdjacencyReport(False, n)
    return AdjacencyReport(True)


def projective_limit_adjacency(x: str, y: str) -> AdjacencyReport:
    """Compare two projective threads given by their deepest labels, prefix by prefix."""
    if len(x) != len(y):
        raise TowerError("threads of different depth")
    for n in range(1, len(x) + 1):
        if not projective_adjacent(x[:n], y[:n]):
            return AdjacencyReport(False, n)
    return AdjacencyReport(True)


def path2_certificate(s: InverseSystem, depth: int) -> bool:
    if depth > s.height:
        raise TowerError("depth beyond the tower")
    return all(G.degree(v) == 1 for G in s.levels[1:depth + 1] for v in G.vertices())


def edge_classes(G: Graph) -> list[tuple[Hashable, ...]]:
    """Components of a graph of maximum degree one: pairs and singletons."""
    if any(G.degree(v) > 1 for v in G.vertices()):
        raise TowerError("some vertex has more than one neighbor")
    out = []
    for v in G.vertices():
        nb = [u for u in G.neighbors(v)]
        if not nb:
            out.append((G.labels[v],))
        elif v < nb[0]:
            out.append((G.labels[v], G.labels[nb[0]]))
    return out


# -- isolated vertices ---------------------------------------------------------

@dataclass(frozen=True)
class CertificateEntry:
    level: int
    fiber_size: int
    crossing: tuple[Hashable, Hashable] | None = None


@dataclass(frozen=True)
class IsolationCertificate:
    holds: bool
    entries: tuple[CertificateEntry, ...] = field(default_factory=tuple)
    reason: str = ""

    def as_dict(self) -> dict:
        return {"holds": self.holds, "reason": self.reason,
                "levels": [{"level": e.level, "fiber_size": e.fiber_size,
                            "crossing": list(map(str, e.crossing)) if e.crossing else None}
                           for e in self.entries]}


def isolated_vertex_certificate(s: InverseSystem, t: Thread) -> IsolationCertificate:
    """For each n from the anchor to depth-2, the top-level fiber over
    entries[n+1] has no edge leaving the fiber over entries[n]."""
    if t.depth < 2:
        return IsolationCertificate(False, reason="thread depth below 2")
    problem = thread_problem(s, t)
    if problem:
        return IsolationCertificate(False, reason=problem)
    top = s.top
    out = []
    for n in range(t.anchor, t.depth - 1):
        inner = s.fiber(n + 1, t.entries[n + 1])
        outer = s.fiber(n, t.entries[n])
        for v in sorted(inner):
            bad = next((u for u in sorted(top.neighbors(v)) if u not in outer), None)
            if bad is not None:
                out.append(CertificateEntry(n, len(inner), (top.labels[v], top.labels[bad])))
                return IsolationCertificate(False, tuple(out), f"edge leaves the cylinder at level {n}")
        out.append(CertificateEntry(n, len(inner)))
    return IsolationCertificate(True, tuple(out))


def append_pendant(s: InverseSystem, target: Hashable) -> tuple[InverseSystem, Hashable]:
    """New top level: the old top plus one vertex adjacent only to ``target``."""
    top = s.top
    v = top.index(target)
    label = child_label(str(target), "1" + "0" * top.degree(v))
    nbrs = [set(top.neighbors(u)) for u in top.vertices()]
    nbrs[v].add(len(top))
    nbrs.append({v})
    G = Graph(list(top.labels) + [label], nbrs)
    bond = Morphism(G, top, list(top.vertices()) + [v])
    return InverseSystem(s.levels + (G,), s.bonds + (bond,), s.kind, s.family), label


def _pendant_child(s: InverseSystem, n: int, label: Hashable) -> Hashable | None:
    """A level n+1 vertex mapping to ``label`` whose only neighbor is ``label``."""
    upper, bond = s.levels[n + 1], s.bonds[n]
    x = s.levels[n].index(label)
    for w in upper.vertices():
        if bond.images[w] == x and upper.neighbors(w) == {upper.index(label)} \
                and upper.labels[w] != label:
            return upper.labels[w]
    return None


def isolated_density_step(s: InverseSystem, n: int, label: Hashable) -> tuple[InverseSystem, Thread]:
    """Thread through a pendant vertex inside the cylinder of ``label`` at level n.

    The tower is extended when fewer than two levels sit above n.
    """
    if s.family == "projective":
        need = max(s.height, n + 2)
        ext = projective_tower(need)
        entries = list(thread_through(ext, n, label).entries)
        while len(entries) <= need:
            entries.append(entries[-1] + "2")
        return ext, Thread(tuple(entries), anchor=n)
    if s.family != "evolution":
        raise TowerError("this tower does not support extension")
    entries = list(thread_through(s, n, label).entries)
    level = n
    while level < s.height:
        nxt = _pendant_child(s, level, entries[-1])
        if nxt is None:
            raise TowerError(f"no pendant vertex above {entries[-1]!r} at level {level + 1}")
        entries.append(nxt)
        level += 1
    while level < n + 2:
        s, nxt = append_pendant(s, entries[-1])
        entries.append(nxt)
        level += 1
    return s, Thread(tuple(entries), anchor=n)


__all__ = [
    "AdjacencyReport", "CertificateEntry", "InverseSystem", "IsolationCertificate", "QUOTIENT",
    "RETRACTION", "SystemReport", "Thread", "TowerError", "append_pendant", "edge_classes",
    "envelope_from_evolution", "evolution_tower", "isolated_density_step",
    "isolated_vertex_certificate", "limit_adjacency", "path2_certificate",
    "projective_limit_adjacency", "projective_tower", "thread_problem", "thread_through",
    "validate_system",
]
