"""Independent reference implementations used by the tests.

Nothing here calls the library's canonizer, bridge finder, move code or
conductance search; graphs are plain vertex-pair lists turned into
networkx multigraphs.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx

from cubicmoves.graph import CubicMultigraph

THETA = CubicMultigraph.from_edges(2, [(0, 1), (0, 1), (0, 1)])
DUMBBELL = CubicMultigraph.from_edges(2, [(0, 0), (0, 1), (1, 1)])
K4 = CubicMultigraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
STAR = CubicMultigraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)])
DOMINO = CubicMultigraph.from_edges(4, [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)])
PRISM = CubicMultigraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                                       (0, 3), (1, 4), (2, 5)])
K33 = CubicMultigraph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
PETERSEN = CubicMultigraph.from_edges(
    10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])
# two internal vertices, each carrying two looped leaves
TREE6 = CubicMultigraph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5),
                                       (2, 2), (3, 3), (4, 4), (5, 5)])


def to_nx(num_vertices: int, pairs) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(range(num_vertices))
    G.add_edges_from(pairs)
    return G


def nx_of(g: CubicMultigraph) -> nx.MultiGraph:
    return to_nx(g.num_vertices, g.vertex_pairs)


def nx_isomorphic(p1, p2) -> bool:
    """Isomorphism of multigraphs given as (num_vertices, vertex pairs)."""
    return nx.is_isomorphic(to_nx(*p1), to_nx(*p2))


def connected(num_vertices: int, pairs) -> bool:
    return nx.is_connected(to_nx(num_vertices, pairs))


def bridge_indices(num_vertices: int, pairs) -> set[int]:
    """Edges whose deletion disconnects the graph, by deletion and re-check."""
    out = set()
    for i in range(len(pairs)):
        rest = pairs[:i] + pairs[i + 1:]
        if not connected(num_vertices, rest):
            out.add(i)
    return out


def hamiltonian(num_vertices: int, pairs) -> bool:
    """Brute force over vertex orders starting at 0."""
    adj = {(min(a, b), max(a, b)) for a, b in pairs if a != b}
    if num_vertices == 1:
        return False
    if num_vertices == 2:
        return sum(1 for a, b in pairs if a != b) >= 2
    for rest in itertools.permutations(range(1, num_vertices)):
        order = (0,) + rest
        if all((min(order[i], order[(i + 1) % num_vertices]),
                max(order[i], order[(i + 1) % num_vertices])) in adj
               for i in range(num_vertices)):
            return True
    return False


def ends_at(pairs, v):
    """Edge-ends at ``v`` as (edge index, end index 0/1); a loop gives two."""
    return [(i, j) for i, p in enumerate(pairs) for j in (0, 1) if p[j] == v]


def vertex_move(pairs, edge: int, variant: int):
    """Whitehead move written on edge-ends.

    With ``x1, x2`` the other ends at ``u`` and ``y1, y2`` those at ``v``,
    variant 0 reattaches ``{x1, y1}`` to ``u`` and variant 1 reattaches
    ``{x1, y2}`` to ``u``; the rest go to ``v``.
    """
    u, v = pairs[edge]
    if u == v:
        return list(pairs)
    xs = [x for x in ends_at(pairs, u) if x[0] != edge]
    ys = [y for y in ends_at(pairs, v) if y[0] != edge]
    at_u = [xs[0], ys[variant]]
    at_v = [xs[1], ys[1 - variant]]
    new = [list(p) for p in pairs]
    for i, j in at_u:
        new[i][j] = u
    for i, j in at_v:
        new[i][j] = v
    return [tuple(p) for p in new]


def gamma_matrix(reps) -> list[list[int]]:
    """Gamma_n from class representatives, classifying move results with networkx."""
    k = len(reps)
    nv = reps[0].num_vertices
    M = [[0] * k for _ in range(k)]
    rep_nx = [nx_of(r) for r in reps]
    for i, g in enumerate(reps):
        pairs = list(g.vertex_pairs)
        for e in range(len(pairs)):
            for variant in (0, 1):
                h = to_nx(nv, vertex_move(pairs, e, variant))
                hits = [j for j in range(k) if nx.is_isomorphic(h, rep_nx[j])]
                assert len(hits) == 1, "move result outside the catalog"
                M[i][hits[0]] += 1
    return M


def phi_out_bruteforce(M) -> tuple[Fraction, tuple[int, ...]]:
    """Minimum outer conductance over all proper subsets via itertools."""
    k = len(M)
    total = sum(map(sum, M))
    best = None
    for size in range(1, k):
        for S in itertools.combinations(range(k), size):
            inside = set(S)
            boundary = sum(M[i][j] for i in S for j in range(k) if j not in inside)
            vol = sum(sum(M[i]) for i in S)
            phi = Fraction(boundary, min(vol, total - vol))
            if best is None or phi < best[0]:
                best = (phi, S)
    return best


def random_connected_pairs(rng, num_vertices: int):
    """Uniform random pairing of ``3 * num_vertices`` slots, retried until connected."""
    while True:
        slots = list(range(3 * num_vertices))
        rng.shuffle(slots)
        pairs = [(slots[i] // 3, slots[i + 1] // 3) for i in range(0, len(slots), 2)]
        if connected(num_vertices, pairs):
            return pairs


def labelled_multigraph_count(num_vertices: int, pairs) -> int:
    """Number of distinct vertex-labelled copies: (2n)! / |Aut| via distinct relabellings."""
    seen = set()
    for perm in itertools.permutations(range(num_vertices)):
        seen.add(tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in pairs)))
    return len(seen)
