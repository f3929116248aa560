"""Whitehead moves on cubic multigraphs.

A move on a non-loop edge ``e = (u, v)`` takes the two other half-edges at
``u`` (``h1 < h2``, ordered by ``(edge id, slot)``) and at ``v`` (``h3 < h4``)
and regroups their strands across ``e``:

* type 1: ``u`` ends up with the strands of ``h1, h3``, ``v`` with ``h2, h4``;
* type 2: ``u`` ends up with ``h1, h4``, ``v`` with ``h2, h3``.

Either way the move is one slot transposition, so vertex ids and edge ids
are preserved.  Moves on loops are the identity.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable

from .graph import CubicMultigraph, bridges, two_edge_classes

__all__ = [
    "BridgeCase",
    "IncidentMovesError",
    "WhiteheadMove",
    "apply_move",
    "apply_moves",
    "brute_force_matching_size",
    "classify_bridge_case",
    "enumerate_moves",
    "inverse_move",
    "max_matching_size",
    "move_partition",
    "simultaneous_move",
    "star",
]


@dataclass(frozen=True, order=True)
class WhiteheadMove:
    edge: int
    move_type: int

    def __post_init__(self):
        if self.move_type not in (1, 2):
            raise ValueError(f"move type must be 1 or 2, got {self.move_type}")


class IncidentMovesError(ValueError):
    """Simultaneous moves were requested on edges that share a vertex."""


def star(g: CubicMultigraph, edge: int):
    """Return ``(u, v, (h1, h2), (h3, h4))`` for a non-loop edge.

    ``h1, h2`` are the other slots at ``u`` and ``h3, h4`` those at ``v``,
    each pair sorted by ``(edge id, slot)``.
    """
    if not 0 <= edge < g.num_edges:
        raise KeyError(f"unknown edge id {edge}")
    su, sv = g.edges[edge]
    u, v = su // 3, sv // 3
    if u == v:
        raise ValueError(f"edge {edge} is a loop")
    key = lambda s: (g.slot_edge[s], s)
    hu = tuple(sorted((s for s in range(3 * u, 3 * u + 3) if s != su), key=key))
    hv = tuple(sorted((s for s in range(3 * v, 3 * v + 3) if s != sv), key=key))
    return u, v, hu, hv


def _transposition(g: CubicMultigraph, m: WhiteheadMove) -> tuple[int, int] | None:
    if not 0 <= m.edge < g.num_edges:
        raise KeyError(f"unknown edge id {m.edge}")
    if g.is_loop(m.edge):
        return None
    _, _, (h1, h2), (h3, h4) = star(g, m.edge)
    return (h2, h3) if m.move_type == 1 else (h2, h4)


def _permute_slots(g: CubicMultigraph, swaps: Iterable[tuple[int, int]]) -> CubicMultigraph:
    sigma = {}
    for a, b in swaps:
        sigma[a], sigma[b] = b, a
    if not sigma:
        return g
    edges = tuple((sigma.get(s, s), sigma.get(t, t)) for s, t in g.edges)
    return CubicMultigraph(g.num_vertices, edges)


def move_partition(g: CubicMultigraph, m: WhiteheadMove) -> frozenset[frozenset[int]]:
    """The two-block grouping of the four outer slots that the move produces."""
    _, _, (h1, h2), (h3, h4) = star(g, m.edge)
    if m.move_type == 1:
        return frozenset({frozenset({h1, h3}), frozenset({h2, h4})})
    return frozenset({frozenset({h1, h4}), frozenset({h2, h3})})


def apply_move(g: CubicMultigraph, m: WhiteheadMove) -> CubicMultigraph:
    swap = _transposition(g, m)
    return g if swap is None else _permute_slots(g, [swap])


def apply_moves(g: CubicMultigraph, moves: Iterable[WhiteheadMove]) -> CubicMultigraph:
    for m in moves:
        g = apply_move(g, m)
    return g


def enumerate_moves(g: CubicMultigraph) -> list[tuple[WhiteheadMove, CubicMultigraph]]:
    """All ``6n`` moves in ``(edge, type)`` order with their results."""
    return [(m, apply_move(g, m))
            for m in (WhiteheadMove(e, t) for e in range(g.num_edges) for t in (1, 2))]


def simultaneous_move(g: CubicMultigraph, moves: Iterable[WhiteheadMove]) -> CubicMultigraph:
    """Apply moves on pairwise non-incident edges at once."""
    moves = list(moves)
    seen: set[int] = set()
    for m in moves:
        if not 0 <= m.edge < g.num_edges:
            raise KeyError(f"unknown edge id {m.edge}")
        ends = set(g.endpoints(m.edge))
        if ends & seen:
            raise IncidentMovesError(f"edge {m.edge} shares a vertex with another chosen edge")
        seen |= ends
    swaps = [s for s in (_transposition(g, m) for m in moves) if s is not None]
    return _permute_slots(g, swaps)


def inverse_move(g: CubicMultigraph, m: WhiteheadMove) -> WhiteheadMove:
    """A move on the same edge that takes ``apply_move(g, m)`` back to ``g``.

    The returned move restores ``g`` exactly at vertex level, or up to
    swapping the two endpoints of the edge.
    """
    if g.is_loop(m.edge):
        return m
    h = apply_move(g, m)
    u, v = g.endpoints(m.edge)
    swapped = [u if x == v else v if x == u else x for x in range(g.num_vertices)]
    g_swapped = g.relabel(swapped)
    for t in (1, 2):
        back = apply_move(h, WhiteheadMove(m.edge, t))
        if back.same_multigraph(g):
            return WhiteheadMove(m.edge, t)
    for t in (1, 2):
        back = apply_move(h, WhiteheadMove(m.edge, t))
        if back.same_multigraph(g_swapped):
            return WhiteheadMove(m.edge, t)
    raise AssertionError("no inverse move found; move semantics are broken")


# -- matchings --------------------------------------------------------------

def max_matching_size(g: CubicMultigraph) -> int:
    """Size of a maximum matching on the non-loop edges."""
    import networkx as nx

    simple = nx.Graph()
    simple.add_nodes_from(range(g.num_vertices))
    simple.add_edges_from((u, v) for u, v in g.vertex_pairs if u != v)
    return len(nx.max_weight_matching(simple, maxcardinality=True))


def brute_force_matching_size(g: CubicMultigraph) -> int:
    if g.num_vertices > 8:
        raise ValueError("brute-force matching limited to 8 vertices")
    pairs = sorted({tuple(sorted(p)) for p in g.vertex_pairs if p[0] != p[1]})
    for k in range(g.num_vertices // 2, 0, -1):
        for combo in itertools.combinations(pairs, k):
            ends = [x for p in combo for x in p]
            if len(set(ends)) == len(ends):
                return k
    return 0


# -- bridge cases -----------------------------------------------------------

class BridgeCase(enum.Enum):
    """Equality pattern of the 2-edge-connected classes of the four neighbours.

    ``a, b`` hang off ``u`` and ``c, d`` off ``v``.  CASE1/CASE2 are the
    non-bridge patterns (all four classes equal / not all equal), CASE3 is
    ``[a]=[b] != [c]=[d]``, CASE4 has exactly one side collapsed to one
    class, CASE5 has all four classes distinct.
    """

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5


def classify_bridge_case(g: CubicMultigraph, edge: int) -> BridgeCase:
    if not 0 <= edge < g.num_edges:
        raise KeyError(f"unknown edge id {edge}")
    if g.is_loop(edge):
        raise ValueError(f"edge {edge} is a loop")
    u, v, hu, hv = star(g, edge)
    cls = two_edge_classes(g)
    a, b = (g.pairing[s] // 3 for s in hu)
    c, d = (g.pairing[s] // 3 for s in hv)
    if edge in bridges(g):
        same_u = cls[a] == cls[b]
        same_v = cls[c] == cls[d]
        if same_u and same_v:
            return BridgeCase.CASE3
        if same_u or same_v:
            return BridgeCase.CASE4
        return BridgeCase.CASE5
    if len({cls[a], cls[b], cls[c], cls[d]}) == 1:
        return BridgeCase.CASE1
    return BridgeCase.CASE2
