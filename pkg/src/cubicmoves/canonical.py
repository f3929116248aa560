"""Canonical forms, isomorphisms and automorphisms of cubic multigraphs.

Canonical labelling is individualisation-refinement: colour vertices by
(loop count, incident multiplicities), refine to an equitable colouring,
then branch over the first non-singleton cell.  Every leaf of the search
tree is a labelling; the canonical code is the smallest relabelled edge
list.  Because no automorphism pruning is done, the leaves attaining the
best code are in bijection with the (vertex) automorphism group, which
gives exact group orders.  This is meant for the small graphs that occur
in Gamma_n at desk scale, not for large symmetric inputs.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from . import cmg
from .graph import CubicMultigraph, GraphSizeError
from .moves import WhiteheadMove, apply_move, move_partition, star

__all__ = [
    "AutGroup",
    "CanonicalResult",
    "all_isomorphisms",
    "are_isomorphic",
    "automorphisms",
    "brute_force_automorphism_count",
    "brute_force_isomorphic",
    "canonical_form",
    "canonical_graph",
    "canonical_labeling",
    "edge_orbits",
    "half_edge_automorphism_order",
    "half_edge_generators",
    "lift_automorphism",
    "verify_symmetry_props",
]

BRUTE_FORCE_LIMIT = 8


def _neighbour_table(g: CubicMultigraph):
    loops = [0] * g.num_vertices
    nbrs: list[Counter] = [Counter() for _ in range(g.num_vertices)]
    for u, v in g.vertex_pairs:
        if u == v:
            loops[u] += 1
        else:
            nbrs[u][v] += 1
            nbrs[v][u] += 1
    return loops, [tuple(c.items()) for c in nbrs]


def _rank(signatures):
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[s] for s in signatures]


def _refine(colors, nbrs):
    while True:
        sigs = [(colors[v], tuple(sorted((colors[w], m) for w, m in nbrs[v])))
                for v in range(len(colors))]
        new = _rank(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


@dataclass(frozen=True)
class CanonicalResult:
    code: tuple[tuple[int, int], ...]
    # each labelling maps vertex -> canonical position; all attain ``code``
    labelings: tuple[tuple[int, ...], ...]


def canonical_labeling(g: CubicMultigraph) -> CanonicalResult:
    return _canonical_cached(g.num_vertices, g.edge_multiset_key())


@lru_cache(maxsize=200_000)
def _canonical_cached(num_vertices, edge_key) -> CanonicalResult:
    g = CubicMultigraph.from_edges(num_vertices, edge_key)
    loops, nbrs = _neighbour_table(g)
    init = _rank([(loops[v], tuple(sorted(m for _, m in nbrs[v])))
                  for v in range(num_vertices)])
    pairs = g.vertex_pairs
    best_code = None
    best_leaves: list[tuple[int, ...]] = []

    def search(colors):
        nonlocal best_code, best_leaves
        colors = _refine(colors, nbrs)
        counts = Counter(colors)
        if len(counts) == num_vertices:
            code = tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v]))
                                for u, v in pairs))
            if best_code is None or code < best_code:
                best_code, best_leaves = code, [tuple(colors)]
            elif code == best_code:
                best_leaves.append(tuple(colors))
            return
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(num_vertices):
            if colors[v] == target:
                branch = [2 * c for c in colors]
                branch[v] += 1
                search(branch)

    search(init)
    return CanonicalResult(best_code, tuple(best_leaves))


def canonical_graph(g: CubicMultigraph) -> CubicMultigraph:
    return CubicMultigraph.from_edges(g.num_vertices, canonical_labeling(g).code)


def canonical_form(g: CubicMultigraph) -> str:
    """Canonical code: CMG text of the canonical representative."""
    return cmg.dumps(canonical_graph(g))


def _invert(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def are_isomorphic(g1: CubicMultigraph, g2: CubicMultigraph) -> Optional[list[int]]:
    """A vertex bijection ``phi`` with ``phi(g1) == g2``, or ``None``."""
    if g1.num_vertices != g2.num_vertices:
        return None
    c1, c2 = canonical_labeling(g1), canonical_labeling(g2)
    if c1.code != c2.code:
        return None
    inv2 = _invert(c2.labelings[0])
    return [inv2[c1.labelings[0][v]] for v in range(g1.num_vertices)]


def all_isomorphisms(g1: CubicMultigraph, g2: CubicMultigraph, limit: int | None = None):
    """Yield every vertex isomorphism ``g1 -> g2`` (up to ``limit``)."""
    if g1.num_vertices != g2.num_vertices:
        return
    c1, c2 = canonical_labeling(g1), canonical_labeling(g2)
    if c1.code != c2.code:
        return
    inv2 = _invert(c2.labelings[0])
    for i, lab in enumerate(c1.labelings):
        if limit is not None and i >= limit:
            return
        yield [inv2[lab[v]] for v in range(g1.num_vertices)]


def brute_force_isomorphic(g1: CubicMultigraph, g2: CubicMultigraph) -> bool:
    """Try every vertex bijection (test oracle, at most 8 vertices)."""
    if max(g1.num_vertices, g2.num_vertices) > BRUTE_FORCE_LIMIT:
        raise GraphSizeError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices")
    if g1.num_vertices != g2.num_vertices:
        return False
    target = g2.multiplicity
    for perm in itertools.permutations(range(g1.num_vertices)):
        image = Counter(tuple(sorted((perm[u], perm[v]))) for u, v in g1.vertex_pairs)
        if image == target:
            return True
    return False


def brute_force_automorphism_count(g: CubicMultigraph) -> int:
    if g.num_vertices > BRUTE_FORCE_LIMIT:
        raise GraphSizeError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices")
    target = g.multiplicity
    return sum(
        1 for perm in itertools.permutations(range(g.num_vertices))
        if Counter(tuple(sorted((perm[u], perm[v]))) for u, v in g.vertex_pairs) == target)


# -- automorphism groups ----------------------------------------------------

def _compose(p, q):
    """``p after q``."""
    return tuple(p[i] for i in q)


def _closure(gens, degree):
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _compose(s, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class AutGroup:
    """Vertex automorphisms: permutations preserving the edge multiset."""

    generators: tuple[tuple[int, ...], ...]
    order: int
    elements: tuple[tuple[int, ...], ...] = field(repr=False)


def automorphisms(g: CubicMultigraph) -> AutGroup:
    res = canonical_labeling(g)
    base_inv = _invert(res.labelings[0])
    elements = sorted(tuple(base_inv[lab[v]] for v in range(g.num_vertices))
                      for lab in res.labelings)
    gens: list[tuple[int, ...]] = []
    generated = {tuple(range(g.num_vertices))}
    for el in elements:
        if el not in generated:
            gens.append(el)
            generated = _closure(gens, g.num_vertices)
    assert len(generated) == len(elements)
    return AutGroup(tuple(gens), len(elements), tuple(elements))


def lift_automorphism(g: CubicMultigraph, alpha: Sequence[int]) -> tuple[int, ...]:
    """Extend a vertex automorphism to a slot permutation preserving the pairing.

    Parallel edges are matched in edge-id order; loops keep their slot order.
    """
    by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e, (u, v) in enumerate(g.vertex_pairs):
        by_pair[tuple(sorted((u, v)))].append(e)
    beta = [0] * (3 * g.num_vertices)
    for pair, edges in by_pair.items():
        image = by_pair[tuple(sorted((alpha[pair[0]], alpha[pair[1]])))]
        if len(image) != len(edges):
            raise ValueError("alpha is not an automorphism")
        for e, f in zip(edges, image):
            s, t = g.edges[e]
            s2, t2 = g.edges[f]
            if s2 // 3 == alpha[s // 3]:
                beta[s], beta[t] = s2, t2
            else:
                beta[s], beta[t] = t2, s2
    return tuple(beta)


def half_edge_generators(g: CubicMultigraph) -> list[tuple[int, ...]]:
    """Generators of the slot-level symmetry group of ``g``.

    Lifts of vertex automorphism generators, transpositions of parallel
    strands and flips of loops.
    """
    size = 3 * g.num_vertices
    gens = [lift_automorphism(g, a) for a in automorphisms(g).generators]
    by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e, (u, v) in enumerate(g.vertex_pairs):
        by_pair[tuple(sorted((u, v)))].append(e)
    for (u, v), edges in by_pair.items():
        if u == v:
            for e in edges:
                s, t = g.edges[e]
                p = list(range(size))
                p[s], p[t] = t, s
                gens.append(tuple(p))
            continue
        for e, f in zip(edges, edges[1:]):
            (s, t), (s2, t2) = g.edges[e], g.edges[f]
            if s // 3 != s2 // 3:
                s2, t2 = t2, s2
            p = list(range(size))
            p[s], p[s2] = s2, s
            p[t], p[t2] = t2, t
            gens.append(tuple(p))
    return gens


def half_edge_automorphism_order(g: CubicMultigraph) -> int:
    """Order of the slot-level symmetry group of ``g``."""
    order = automorphisms(g).order
    for (u, v), mult in g.multiplicity.items():
        order *= (2 ** mult) * math.factorial(mult) if u == v else math.factorial(mult)
    return order


def _image_move(g: CubicMultigraph, beta, m: WhiteheadMove) -> WhiteheadMove:
    s, t = g.edges[m.edge]
    f = g.slot_edge[beta[s]]
    if g.is_loop(m.edge):
        return WhiteheadMove(f, m.move_type)
    part = frozenset(frozenset(beta[x] for x in block) for block in move_partition(g, m))
    for k in (1, 2):
        if move_partition(g, WhiteheadMove(f, k)) == part:
            return WhiteheadMove(f, k)
    raise AssertionError("image of a move partition is not a move partition")


def edge_orbits(g: CubicMultigraph) -> list[list[WhiteheadMove]]:
    """Orbits of ``(edge, type)`` pairs under the slot-level symmetry group.

    Moves in one orbit produce isomorphic graphs.  Both types on a loop sit
    in one orbit since both are the identity.  Orbits are sorted.
    """
    parent: dict[WhiteheadMove, WhiteheadMove] = {}
    moves = [WhiteheadMove(e, t) for e in range(g.num_edges) for t in (1, 2)]
    for m in moves:
        parent[m] = m

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for e in g.loops:
        union(WhiteheadMove(e, 1), WhiteheadMove(e, 2))
    for beta in half_edge_generators(g):
        for m in moves:
            union(m, _image_move(g, beta, m))
    groups: dict[WhiteheadMove, list[WhiteheadMove]] = defaultdict(list)
    for m in moves:
        groups[find(m)].append(m)
    return sorted(sorted(orb) for orb in groups.values())


def edge_orbit_partition(g: CubicMultigraph) -> list[list[int]]:
    """Orbits of edge ids (type forgotten)."""
    parent = list(range(g.num_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for orbit in edge_orbits(g):
        for m in orbit[1:]:
            a, b = find(orbit[0].edge), find(m.edge)
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = defaultdict(list)
    for e in range(g.num_edges):
        groups[find(e)].append(e)
    return sorted(groups.values())


# -- automorphisms versus moves ----------------------------------------------

@dataclass
class PropReport:
    passed: bool = True
    checked: dict = field(default_factory=lambda: Counter())
    degenerate: dict = field(default_factory=lambda: Counter())
    failures: list = field(default_factory=list)

    def fail(self, kind, detail):
        self.passed = False
        self.failures.append((kind, detail))


def _labelled_star(g: CubicMultigraph, edge: int):
    """``{endpoint: sorted outer neighbours}`` for a non-loop edge."""
    u, v, hu, hv = star(g, edge)
    return {u: tuple(sorted(g.pairing[s] // 3 for s in hu)),
            v: tuple(sorted(g.pairing[s] // 3 for s in hv))}


def _nondegenerate(g: CubicMultigraph, edge: int) -> bool:
    u, v, hu, hv = star(g, edge)
    verts = [u, v] + [g.pairing[s] // 3 for s in hu + hv]
    return len(set(verts)) == 6


def _maps_star(psi, star_e, star_f) -> bool:
    mapped = {psi[x]: tuple(sorted(psi[y] for y in ys)) for x, ys in star_e.items()}
    return mapped == star_f


def _vertex_move_type(g, edge, alpha, m_type, f):
    """Type on ``f`` whose vertex grouping is the alpha-image of ``m_type`` on ``edge``."""
    def grouping(edge_id, t):
        u, v, hu, hv = star(g, edge_id)
        blocks = move_partition(g, WhiteheadMove(edge_id, t))
        return frozenset(tuple(sorted(g.pairing[s] // 3 for s in b)) for b in blocks)

    image = frozenset(tuple(sorted(alpha[x] for x in b)) for b in grouping(edge, m_type))
    hits = [k for k in (1, 2) if grouping(f, k) == image]
    return hits[0] if len(hits) == 1 else None


def verify_symmetry_props(g: CubicMultigraph, iso_budget: int = 64,
                          seed: int = 0) -> PropReport:
    """Check how automorphisms interact with Whitehead moves on ``g``.

    forward: an automorphism carrying ``e`` to ``f`` carries each move on
    ``e`` to a move on ``f`` with isomorphic result.  converse: an
    isomorphism between move results that maps the labelled star of ``e``
    onto that of ``f`` is an automorphism of ``g`` taking ``e`` to ``f``.
    transfer: same as converse against a random relabelling of ``g``.
    Only stars with six distinct vertices are judged; the others are
    counted in ``degenerate``, with failures listed but not fatal.
    """
    if g.num_vertices > BRUTE_FORCE_LIMIT:
        raise GraphSizeError(f"verification limited to {BRUTE_FORCE_LIMIT} vertices")
    report = PropReport()
    group = automorphisms(g)
    nonloop = [e for e in range(g.num_edges) if not g.is_loop(e)]
    canon_cache: dict = {}

    def canon(h):
        key = h.edge_multiset_key()
        if key not in canon_cache:
            canon_cache[key] = canonical_labeling(h).code
        return canon_cache[key]

    def note(kind, ok, nondeg, detail):
        bucket = report.checked if nondeg else report.degenerate
        bucket[kind] += 1
        if not ok:
            if nondeg:
                report.fail(kind, detail)
            else:
                report.failures.append((kind + " (degenerate, not judged)", detail))

    # forward
    for alpha in group.elements:
        beta = lift_automorphism(g, alpha)
        for e in nonloop:
            nondeg = _nondegenerate(g, e)
            for k in (1, 2):
                m = WhiteheadMove(e, k)
                if nondeg:
                    f = g.slot_edge[beta[g.edges[e][0]]]
                    k2 = _vertex_move_type(g, e, alpha, k, f)
                    image = WhiteheadMove(f, k2) if k2 else None
                else:
                    image = _image_move(g, beta, m)
                ok = image is not None and canon(apply_move(g, m)) == canon(apply_move(g, image))
                note("forward", ok, nondeg, (g, alpha, m, image))

    # converse
    stars = {e: _labelled_star(g, e) for e in nonloop}
    for e in nonloop:
        for f in nonloop:
            for k in (1, 2):
                x1 = apply_move(g, WhiteheadMove(e, k))
                x2 = apply_move(g, WhiteheadMove(f, k))
                nondeg = _nondegenerate(g, e) and _nondegenerate(g, f)
                for psi in all_isomorphisms(x1, x2, limit=iso_budget):
                    if sorted(psi[x] for x in g.endpoints(e)) != sorted(g.endpoints(f)):
                        continue
                    if not _maps_star(psi, stars[e], stars[f]):
                        continue
                    image = Counter(tuple(sorted((psi[a], psi[b]))) for a, b in g.vertex_pairs)
                    ok = image == g.multiplicity
                    note("converse", ok, nondeg, (g, e, f, k, psi))

    # transfer: h1 = g, h2 = sigma(g)
    rng = random.Random(seed)
    sigma = list(range(g.num_vertices))
    rng.shuffle(sigma)
    h2 = g.relabel(sigma)
    for e in nonloop:
        for f in nonloop:
            k = 1
            g1 = apply_move(g, WhiteheadMove(e, k))
            g2 = apply_move(h2, WhiteheadMove(f, k))
            star_f = _labelled_star(h2, f)
            nondeg = _nondegenerate(g, e) and _nondegenerate(h2, f)
            for phi in all_isomorphisms(g1, g2, limit=iso_budget):
                if sorted(phi[x] for x in g.endpoints(e)) != sorted(h2.endpoints(f)):
                    continue
                if not _maps_star(phi, stars[e], star_f):
                    continue
                image = Counter(tuple(sorted((phi[a], phi[b]))) for a, b in g.vertex_pairs)
                ok = image == h2.multiplicity
                note("transfer", ok, nondeg, (g, e, f, phi))
    return report
