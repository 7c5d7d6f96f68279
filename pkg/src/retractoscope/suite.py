"""The acceptance battery: one function per criterion, each returning a CriterionResult."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .evolutions import (decompose_retraction, evolution_from_removals, is_ppr, is_ppr_oracle,
                         is_sociable, is_sociable_oracle, ppr_witness, sentinel_chain_witness)
from .fixtures import G6_ALTERNATE, G6_FORWARD, G6_INDUCED_C5, example_g6
from .fraisse import (evolution_level, evolution_lift, projective_bond, projective_level,
                      projective_lift, projective_section)
from .graph import (Graph, cycle, diameter, find_induced_copy, from_labeled_edges,
                    induced_subgraph, is_clique_free, iter_graphs, make_graph)
from .morphisms import (Morphism, compose, find_right_inverse, identity, is_retraction_onto,
                        iter_retractions)
from .towers import (evolution_tower, isolated_density_step, isolated_vertex_certificate,
                     path2_certificate, projective_tower, validate_system)
from .universal import (FailureCertificate, HensonContext, context_problem, fibers_double,
                        henson_growth_step, henson_run, henson_seed, property_r_witness,
                        rado_adjacent, rado_envelope_levels, rado_sentinel_chain)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2} {self.name}: {self.detail}"


# -- random instances -------------------------------------------------------------

def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return make_graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def random_evolution_graph(rng: random.Random, n: int, sociable: bool) -> Graph:
    """Grow a graph one vertex at a time, each new vertex inside a closed neighborhood."""
    nbrs: list[set[int]] = [set()]
    for w in range(1, n):
        y = rng.randrange(w)
        pool = sorted(nbrs[y]) + [y]
        chosen = {u for u in pool if rng.random() < 0.5}
        if sociable:
            chosen.add(y)
        nbrs.append(set(chosen))
        for u in chosen:
            nbrs[u].add(w)
    perm = list(range(n))
    rng.shuffle(perm)
    return make_graph(n, [(perm[a], perm[b]) for a in range(n) for b in nbrs[a] if a < b])


def random_retraction_pair(rng: random.Random, max_n: int = 7) -> tuple[Graph, tuple[int, ...]]:
    """A graph on at most ``max_n`` vertices with a retraction onto a proper subset."""
    while True:
        n = rng.randint(2, max_n)
        kind = rng.randrange(3)
        if kind == 0:
            G = random_graph(rng, n, rng.uniform(0.2, 0.8))
        else:
            G = random_evolution_graph(rng, n, sociable=kind == 2)
        for _ in range(8):
            size = rng.randint(1, n - 1)
            S = rng.sample(range(n), size)
            found = list(iter_retractions(G, S))
            if found:
                return G, rng.choice(found)


def random_quotient(rng: random.Random, k: int, n: int) -> tuple[Graph, Morphism]:
    """A random graph on n vertices with a quotient map onto projective level k."""
    G = projective_level(k).graph
    if n < len(G):
        raise ValueError("H must have at least as many vertices as the level")
    assign = list(range(len(G))) + [rng.randrange(len(G)) for _ in range(n - len(G))]
    rng.shuffle(assign)
    density = rng.uniform(0.1, 0.6)
    edges = {(a, b) for a in range(n) for b in range(a + 1, n)
             if G.adjacent(assign[a], assign[b]) and rng.random() < density}
    for u, v in G.edge_list:
        if not any({assign[a], assign[b]} == {u, v} for a, b in edges):
            a = rng.choice([i for i in range(n) if assign[i] == u])
            b = rng.choice([i for i in range(n) if assign[i] == v])
            edges.add((min(a, b), max(a, b)))
    H = make_graph(n, edges)
    return H, Morphism(H, G, assign)


# -- criteria --------------------------------------------------------------------

def criterion_cycles() -> CriterionResult:
    rows = [(k, is_ppr(cycle(k)), is_sociable(cycle(k))) for k in range(3, 10)]
    bad = [k for k, ppr, soc in rows if ppr != (k < 5) or soc != (k == 3)]
    return CriterionResult(1, "cycle table", not bad,
                           "k=3..9 as expected" if not bad else f"mismatch at k={bad}")


def criterion_greedy_oracle() -> CriterionResult:
    total, bad = 0, []
    for n in range(1, 7):
        for G in iter_graphs(n, connected=True):
            total += 1
            if is_ppr(G) != is_ppr_oracle(G) or is_sociable(G) != is_sociable_oracle(G):
                bad.append(G)
    return CriterionResult(2, "greedy equals oracle", not bad and total == 143,
                           f"{total} connected graphs on <=6 vertices, {len(bad)} disagreements")


def criterion_retract_closure(seed: int = 0, pairs: int = 1000) -> CriterionResult:
    rng = random.Random(seed)
    bad = 0
    ppr_hits = soc_hits = 0
    for _ in range(pairs):
        G, r = random_retraction_pair(rng)
        S = sorted(set(r))
        if not is_retraction_onto(G, S, Morphism(G, G, r)):
            bad += 1
            continue
        image = induced_subgraph(G, S)
        if is_ppr(G):
            ppr_hits += 1
            bad += not is_ppr(image)
        if is_sociable(G):
            soc_hits += 1
            bad += not is_sociable(image)
    return CriterionResult(3, "retract closure", bad == 0,
                           f"{pairs} pairs ({ppr_hits} PPR, {soc_hits} sociable), {bad} counterexamples")


def criterion_projective_model(depth: int = 6) -> CriterionResult:
    problems = []
    for k in range(1, depth + 1):
        G = projective_level(k).graph
        if len(G) != 4 ** k or G.edge_count != 2 * 4 ** (k - 1):
            problems.append(f"size at k={k}")
        if any(G.degree(v) != 1 for v in G.vertices()):
            problems.append(f"degree at k={k}")
    for k in range(0, depth):
        p = projective_bond(k)
        s = projective_section(k)
        if not p.classification.quotient:
            problems.append(f"bond {k + 1}->{k} not a quotient")
        if not s.classification.homomorphism or compose(p, s) != identity(p.cod):
            problems.append(f"section at k={k}")
        if find_right_inverse(p) != s:
            problems.append(f"first right inverse at k={k} is not x->x0")
    if not path2_certificate(projective_tower(depth), depth):
        problems.append("path2 certificate")
    return CriterionResult(4, "projective model", not problems,
                           f"k<={depth} checked" if not problems else "; ".join(problems))


def criterion_projective_lift(seed: int = 0, count: int = 200, extra_depth2: int = 40) -> CriterionResult:
    rng = random.Random(seed)
    bad, depths = 0, []
    for _ in range(count):
        H, p = random_quotient(rng, 1, rng.randint(4, 12))
        lift = projective_lift(H, p)
        v = lift.verify()
        depths.append(lift.m)
        bad += not (v["quotient"] and v["commutes"])
    # level 2 has 16 vertices, so its instances need |H| >= 16
    for _ in range(extra_depth2):
        H, p = random_quotient(rng, 2, rng.randint(16, 20))
        lift = projective_lift(H, p)
        v = lift.verify()
        bad += not (v["quotient"] and v["commutes"])
    return CriterionResult(5, "projective lift", bad == 0,
                           f"{count} instances at k=1 with |H|<=12 and {extra_depth2} at k=2 "
                           f"with 16<=|H|<=20, m in {min(depths)}..{max(depths)}, {bad} failures")


def criterion_evolution_levels() -> CriterionResult:
    problems = []
    sizes = [len(evolution_level(k).graph) for k in (1, 2, 3)]
    diams = [diameter(evolution_level(k).graph) for k in (1, 2, 3)]
    if sizes != [2, 8, 160]:
        problems.append(f"sizes {sizes}")
    if diams != [1, 3, 5]:
        problems.append(f"diameters {diams}")
    for k in (1, 2, 3):
        lvl = evolution_level(k)
        lower = evolution_level(k - 1).graph
        bond = lvl.bond
        as_self = Morphism(lvl.graph, lvl.graph, [lvl.graph.index(lower.labels[w]) for w in bond.images])
        kept = [lvl.graph.index(lab) for lab in lower.labels]
        if not bond.classification.quotient or not is_retraction_onto(lvl.graph, kept, as_self):
            problems.append(f"bond {k}->{k - 1}")
        try:
            decompose_retraction(lvl.graph, lower, bond)
        except ValueError as exc:
            problems.append(f"decomposition at {k}: {exc}")
    return CriterionResult(6, "evolution levels", not problems,
                           f"sizes {sizes}, diameters {diams}" if not problems else "; ".join(problems))


def p3_fixture() -> tuple[Graph, object]:
    P3 = from_labeled_edges(["0", "1", "2"], [("0", "1"), ("1", "2")])
    return P3, evolution_from_removals(P3, [(2, 1)])


def g6_lift_fixture() -> tuple[Graph, object, dict]:
    G6 = example_g6()
    # the forward evolution after its first step, re-based at the edge a-b
    removals = [(G6.index(x), G6.index(y)) for x, y in reversed(G6_FORWARD[1:])]
    return G6, evolution_from_removals(G6, removals), {"a": "0", "b": "1"}


def criterion_evolution_lift() -> CriterionResult:
    details, ok = [], True
    P3, chain = p3_fixture()
    lift = evolution_lift(P3, chain, 1)
    good = lift.verify(chain) and lift.chain().is_valid()
    ok &= good and len(lift.removals) == 5 and lift.level == 2
    details.append(f"P3: level {lift.level}, {len(lift.removals)} removals")
    G6, chain, base = g6_lift_fixture()
    lift = evolution_lift(G6, chain, 1, base=base)
    good = lift.verify(chain, base) and lift.chain().is_valid()
    ok &= good and lift.level <= 3
    details.append(f"G6: level {lift.level}, {len(lift.removals)} removals")
    return CriterionResult(7, "evolution lift", ok, "; ".join(details))


def criterion_g6() -> CriterionResult:
    G6 = example_g6()
    problems = []
    w = ppr_witness(G6)
    if w is None or not w.is_valid() or w.final != G6 or len(w.graphs) != 6 or not w.starts_at_origin():
        problems.append("greedy witness")
    forward = evolution_from_removals(G6, [(G6.index(x), G6.index(y)) for x, y in reversed(G6_FORWARD)])
    if not forward.is_valid() or len(forward.graphs) != 6:
        problems.append("forward evolution")
    c5 = find_induced_copy(cycle(5), G6)
    ring_idx = [G6.index(x) for x in G6_INDUCED_C5]
    ring = all(G6.adjacent(ring_idx[i], ring_idx[(i + 1) % 5]) for i in range(5)) \
        and induced_subgraph(G6, ring_idx).edge_count == 5
    if c5 is None or not ring:
        problems.append("induced C5")
    alt = evolution_from_removals(G6, [(G6.index(x), G6.index(y)) for x, y in G6_ALTERNATE])
    if not alt.is_valid() or alt.final != G6 or not alt.starts_at_origin():
        problems.append("alternate decomposition")
    return CriterionResult(8, "example G6", not problems,
                           "witness with 6 levels, induced C5, alternate decomposition valid"
                           if not problems else "; ".join(problems))


def criterion_rado() -> CriterionResult:
    problems = []
    for n in range(1, 17):
        e = sentinel_chain_witness(rado_sentinel_chain(list(range(n))))
        if not (e.is_valid() and e.is_sociable() and e.starts_at_origin()):
            problems.append(f"chain n={n}")
    checked = 0
    for colors in product(range(3), repeat=6):
        A = {i for i, c in enumerate(colors) if c == 1}
        B = {i for i, c in enumerate(colors) if c == 2}
        w = property_r_witness(A, B, exponent=6)
        checked += 1
        if w < 64 or w >= 128 or not all(rado_adjacent(a, w) for a in A) \
                or any(rado_adjacent(b, w) for b in B):
            problems.append(f"property R at {sorted(A)}, {sorted(B)}")
    s = rado_envelope_levels(3)
    if not validate_system(s).valid or not fibers_double(s):
        problems.append("envelope")
    return CriterionResult(9, "Rado", not problems,
                           f"chains n<=16 sociable, {checked} disjoint pairs witnessed, envelope sizes "
                           f"{[len(G) for G in s.levels]}" if not problems else "; ".join(problems[:5]))


def criterion_henson(budget: int = 5) -> CriterionResult:
    details, literal, structural = [], True, True
    for ell in (3, 4, 5):
        seed = henson_seed(ell)
        structural &= context_problem(seed) is None
        run = henson_run(ell, budget)
        ctxs = [c for c in run if isinstance(c, HensonContext)]
        structural &= len(ctxs) == budget + 1
        structural &= all(is_clique_free(c.host, ell) and context_problem(c) is None for c in ctxs)
        sizes = [len(c.G) for c in ctxs]
        structural &= sizes == [len(seed.G) + 2 * n for n in range(len(sizes))]
        literal &= sizes == [4 + 2 * n for n in range(len(sizes))]
        structural &= isinstance(henson_growth_step(seed), FailureCertificate)
        details.append(f"l={ell}: sizes {sizes}")
    note = "" if literal else " (|G_0|=4 is impossible at l=5; sizes follow |G_0|+2n)"
    return CriterionResult(10, "Henson", literal and structural, "; ".join(details) + note)


def criterion_isolated() -> CriterionResult:
    s = evolution_tower(3)
    checked, bad = 0, []
    for k in range(3):
        for lab in s.levels[k].labels:
            ext, thread = isolated_density_step(s, k, lab)
            cert = isolated_vertex_certificate(ext, thread)
            checked += 1
            if not cert.holds or not cert.entries:
                bad.append(lab)
    return CriterionResult(11, "isolated-vertex certificates", not bad,
                           f"{checked} cylinders at levels 0..2, {len(bad)} failures")


CRITERIA: list[Callable[[], CriterionResult]] = [
    criterion_cycles, criterion_greedy_oracle, criterion_retract_closure,
    criterion_projective_model, criterion_projective_lift, criterion_evolution_levels,
    criterion_evolution_lift, criterion_g6, criterion_rado, criterion_henson, criterion_isolated,
]


def run_suite(seed: int = 0) -> list[CriterionResult]:
    out = []
    for fn in CRITERIA:
        if fn in (criterion_retract_closure, criterion_projective_lift):
            out.append(fn(seed=seed))
        else:
            out.append(fn())
    return out
