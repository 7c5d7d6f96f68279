"""Rado graph in the BIT model and accessible-set machinery for Henson graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .evolutions import SentinelChain
from .graph import Graph, GraphError, find_clique, induced_subgraph, is_clique_free
from .morphisms import Morphism
from .towers import RETRACTION, InverseSystem

RADO_BITS = 256
ENVELOPE_MAX_STEPS = 5


class UniversalError(ValueError):
    pass


# -- Rado -----------------------------------------------------------------------

def rado_adjacent(x: int, y: int) -> bool:
    if x == y:
        raise UniversalError("loops are implicit; compare distinct vertices")
    if x > y:
        x, y = y, x
    return bool((y >> x) & 1)


def rado_graph(vertices: Iterable[int]) -> Graph:
    vs = sorted(set(vertices))
    nbrs = [[j for j, w in enumerate(vs) if w != v and rado_adjacent(v, w)] for v in vs]
    return Graph(vs, nbrs)


def rado_sentinel_chain(vs: Sequence[int], bits: int = RADO_BITS) -> SentinelChain:
    """Chain G_0 = {vs[0]} and G_n = G_{n-1} + {vs[n], w}.

    A single sentinel w = sum of 2^v over vs is adjacent to every element of
    vs, so it serves all stages at once.
    """
    vs = list(vs)
    if not vs:
        raise UniversalError("empty vertex list")
    if len(set(vs)) != len(vs) or any(v < 0 for v in vs):
        raise UniversalError("vertices must be distinct naturals")
    w = sum(1 << v for v in vs)
    if len(vs) > 1 and w.bit_length() > bits:
        raise UniversalError(f"sentinel needs {w.bit_length()} bits, above the {bits}-bit guard")
    members = vs + ([w] if len(vs) > 1 else [])
    host = rado_graph(members)
    levels = [frozenset({host.index(vs[0])})]
    sentinels = [host.index(vs[0])]
    for n in range(1, len(vs)):
        levels.append(levels[-1] | {host.index(vs[n]), host.index(w)})
        sentinels.append(host.index(w))
    return SentinelChain(host, levels, sentinels)


def property_r_witness(A: Iterable[int], B: Iterable[int], exponent: int | None = None) -> int:
    """A vertex adjacent to all of A and none of B, for disjoint finite A, B.

    The marker bit 2^exponent keeps the witness above A and B; it defaults
    to one past their maximum.
    """
    A, B = set(A), set(B)
    if A & B:
        raise UniversalError("A and B must be disjoint")
    top = max(A | B, default=-1) + 1
    if exponent is None:
        exponent = top
    elif exponent < top:
        raise UniversalError("exponent must exceed every element of A and B")
    return sum(1 << a for a in A) + (1 << exponent)


def rado_envelope_levels(k: int, max_steps: int = ENVELOPE_MAX_STEPS) -> InverseSystem:
    """Retraction tower whose x-vertices span a copy of the Rado graph.

    Level i+1 is level i, a fresh copy X of level i with no cross edges, the
    next Rado point x_{i+1} and a sentinel v adjacent to all of them.  The
    bond is the identity on level i, the copy isomorphism on X, and sends
    x_{i+1} and v to the sentinel of level i.
    """
    if k < 0 or k > max_steps:
        raise UniversalError(f"envelope steps must lie in 0..{max_steps}")
    G = Graph(["x0"], [()])
    sentinel = 0
    levels, bonds = [G], []
    for i in range(k):
        n = len(G)
        labels = list(G.labels) + [f"c{i + 1}[{lab}]" for lab in G.labels]
        labels += [f"x{i + 1}", f"v{i + 1}"]
        x, v = 2 * n, 2 * n + 1
        nbrs = [set(G.neighbors(u)) for u in G.vertices()]
        nbrs += [{w + n for w in G.neighbors(u)} for u in G.vertices()]
        nbrs += [set(), set()]
        for j in range(i + 1):
            if rado_adjacent(j, i + 1):
                xj = G.index(f"x{j}")
                nbrs[x].add(xj)
                nbrs[xj].add(x)
        for u in range(2 * n + 1):
            nbrs[u].add(v)
            nbrs[v].add(u)
        upper = Graph(labels, nbrs)
        images = list(range(n)) + list(range(n)) + [sentinel, sentinel]
        bonds.append(Morphism(upper, G, images))
        levels.append(upper)
        G, sentinel = upper, v
    return InverseSystem(levels, bonds, RETRACTION, "rado-envelope")


def fibers_double(s: InverseSystem) -> bool:
    """Every vertex has at least two preimages under the next bond."""
    for bond in s.bonds:
        counts = [0] * len(bond.cod)
        for w in bond.images:
            counts[w] += 1
        if min(counts) < 2:
            return False
    return True


# -- Henson -----------------------------------------------------------------------

def _members(host: Graph, A: Iterable[Hashable]) -> list[int]:
    try:
        return sorted(host.index(a) for a in A)
    except GraphError as exc:
        raise UniversalError(f"A is not inside the host: {exc}") from None


def is_accessible(host: Graph, A: Iterable[Hashable], ell: int) -> bool:
    """A is K_{ell-1}-free and no vertex of the host (members included) is adjacent to all of A."""
    if ell <= 2:
        raise UniversalError("clique bound must exceed 2")
    idx = _members(host, A)
    if not is_clique_free(host, ell - 1, within=idx):
        return False
    mask = sum(1 << a for a in idx)
    return not any(host.rows[v] & mask == mask for v in host.vertices())


def is_maximal_accessible(host: Graph, A: Iterable[Hashable], ell: int) -> bool:
    """Accessible, with no accessible proper superset inside the host."""
    idx = set(_members(host, A))
    if not is_accessible(host, [host.labels[a] for a in idx], ell):
        return False
    rest = [y for y in host.vertices() if y not in idx]
    undecided = []
    for y in rest:
        if find_clique(host, ell - 1, within=sorted(idx | {y})) is None:
            undecided.append(y)
    # a superset avoiding every blocked vertex must be drawn from the undecided ones
    for r in range(1, len(undecided) + 1):
        for extra in combinations(undecided, r):
            if is_accessible(host, [host.labels[a] for a in idx | set(extra)], ell):
                return False
    return True


@dataclass(frozen=True)
class HensonContext:
    ell: int
    host: Graph
    G: frozenset[Hashable]
    A: frozenset[Hashable]
    B: frozenset[Hashable]
    step: int = 0
    history: tuple[tuple[Hashable, Hashable], ...] = field(default_factory=tuple)

    def subgraph(self) -> Graph:
        return induced_subgraph(self.host, [self.host.index(g) for g in sorted(self.G, key=str)])

    def as_dict(self) -> dict:
        return {"ell": self.ell, "step": self.step, "G": sorted(map(str, self.G)),
                "A": sorted(map(str, self.A)), "B": sorted(map(str, self.B)),
                "history": [[str(p), str(q)] for p, q in self.history]}


@dataclass(frozen=True)
class FailureCertificate:
    ell: int
    step: int
    missing: str
    target: frozenset[Hashable]
    reason: str

    def as_dict(self) -> dict:
        return {"ell": self.ell, "step": self.step, "missing": self.missing,
                "target": sorted(map(str, self.target)), "reason": self.reason}


def context_problem(ctx: HensonContext) -> str | None:
    ell, host = ctx.ell, ctx.host
    if not is_clique_free(host, ell):
        return f"host contains K_{ell}"
    if not (ctx.A <= ctx.G and ctx.B <= ctx.G):
        return "accessible sets leave G_n"
    if ctx.A == ctx.B:
        return "A_n equals B_n"
    sub = ctx.subgraph()
    for name, S in (("A", ctx.A), ("B", ctx.B)):
        if not is_maximal_accessible(sub, S, ell):
            return f"{name}_n is not maximal accessible in G_n"
        if ell > 3 and find_clique(sub, ell - 2, within=[sub.index(a) for a in S]) is None:
            return f"{name}_n has no K_{ell - 2}"
    if ell > 3:
        common = [sub.index(a) for a in ctx.A & ctx.B]
        if not is_clique_free(sub, ell - 2, within=common):
            return "A_n and B_n share a K_{ell-2}, which blocks the next step"
    return None


def henson_seed(ell: int) -> HensonContext:
    """ell = 3: two disjoint edges a-c, b-d.  ell > 3: K_{ell-1} on k1.. plus an isolated w.

    For ell > 3 the accessible sets are (K - {c}) + {w} and (K - {d}) + {w},
    with c, d the first two clique vertices.
    """
    if ell < 3:
        raise UniversalError("clique bound must be at least 3")
    if ell == 3:
        host = Graph(["a", "b", "c", "d"], [(2,), (3,), (0,), (1,)])
        return HensonContext(3, host, frozenset("abcd"), frozenset("ab"), frozenset("cd"))
    clique = [f"k{i}" for i in range(1, ell)]
    labels = clique + ["w"]
    n = len(clique)
    host = Graph(labels, [[j for j in range(n) if j != i] for i in range(n)] + [[]])
    c, d = clique[0], clique[1]
    A = frozenset(set(labels) - {c})
    B = frozenset(set(labels) - {d})
    return HensonContext(ell, host, frozenset(labels), A, B)


def _trace_witnesses(ctx: HensonContext, target: frozenset[Hashable]) -> list[int]:
    host = ctx.host
    inside = {host.index(g) for g in ctx.G}
    want = {host.index(t) for t in target}
    return [v for v in host.vertices() if v not in inside and host.neighbors(v) & inside == want]


def henson_growth_step(ctx: HensonContext) -> HensonContext | FailureCertificate:
    problem = context_problem(ctx)
    if problem:
        raise UniversalError(f"invalid context: {problem}")
    ps = _trace_witnesses(ctx, ctx.A)
    if not ps:
        return FailureCertificate(ctx.ell, ctx.step, "p", ctx.A,
                                  "no host vertex outside G_n sees exactly A_n")
    qs = _trace_witnesses(ctx, ctx.B)
    host = ctx.host
    pair = next(((p, q) for p in ps for q in qs if p != q and not host.adjacent(p, q)), None)
    if pair is None:
        return FailureCertificate(ctx.ell, ctx.step, "q", ctx.B,
                                  "no host vertex outside G_n sees exactly B_n apart from p")
    p, q = pair
    if p == q:
        raise UniversalError("p and q coincide")
    pl, ql = host.labels[p], host.labels[q]
    nxt = HensonContext(ctx.ell, host, ctx.G | {pl, ql}, ctx.A | {ql}, ctx.B | {pl},
                        ctx.step + 1, ctx.history + ((pl, ql),))
    problem = context_problem(nxt)
    if problem:
        raise UniversalError(f"growth step broke an invariant: {problem}")
    return nxt


def henson_host_extend(ctx: HensonContext, budget: int) -> Graph:
    """Host with exactly the witnesses the next ``budget`` steps ask for."""
    if budget < 1:
        raise UniversalError("budget must be at least 1")
    labels = list(ctx.host.labels)
    nbrs = [set(ctx.host.neighbors(v)) for v in ctx.host.vertices()]
    index = {lab: i for i, lab in enumerate(labels)}
    A, B = set(ctx.A), set(ctx.B)
    for n in range(ctx.step, ctx.step + budget):
        pl, ql = f"p{n}", f"q{n}"
        for lab, target in ((pl, A), (ql, B)):
            i = len(labels)
            labels.append(lab)
            index[lab] = i
            nbrs.append({index[t] for t in target})
            for t in target:
                nbrs[index[t]].add(i)
        A, B = A | {ql}, B | {pl}
    return Graph(labels, nbrs)


def henson_run(ell: int, budget: int) -> list[HensonContext | FailureCertificate]:
    seed = henson_seed(ell)
    ctx = HensonContext(ell, henson_host_extend(seed, budget), seed.G, seed.A, seed.B)
    out: list[HensonContext | FailureCertificate] = [ctx]
    for _ in range(budget):
        nxt = henson_growth_step(ctx)
        out.append(nxt)
        if isinstance(nxt, FailureCertificate):
            break
        ctx = nxt
    return out


__all__ = [
    "ENVELOPE_MAX_STEPS", "FailureCertificate", "HensonContext", "RADO_BITS", "UniversalError",
    "context_problem", "fibers_double", "henson_growth_step", "henson_host_extend",
    "henson_run", "henson_seed", "is_accessible", "is_maximal_accessible",
    "property_r_witness", "rado_adjacent", "rado_envelope_levels", "rado_graph",
    "rado_sentinel_chain",
]
