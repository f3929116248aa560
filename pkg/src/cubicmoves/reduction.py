"""Constructive connectivity: reduce any cubic multigraph to one canonical cubic tree.

Phase one collapses a shortest cycle of length ``k >= 2`` to a loop with
``k - 1`` moves, and repeats until only loops are left as cycles (a cubic
tree with ``n + 1`` loops).  Phase two roots the tree at a loop and
rotates it into a comb, where every internal node of the rooted binary
tree has a leaf child.  Every rotation is one Whitehead move on an
internal tree edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .canonical import canonical_form
from .graph import CubicMultigraph, bridges, shortest_cycle
from .moves import WhiteheadMove, apply_move, star

__all__ = [
    "ReductionCertificate",
    "canonical_cubic_tree",
    "is_cubic_tree",
    "moves_to_bridged",
    "reduce_cycles",
    "reduce_to_canonical",
    "rooted_tree",
    "rotate",
]


@dataclass
class ReductionCertificate:
    start: CubicMultigraph
    moves: list[WhiteheadMove]
    end: CubicMultigraph
    # (phase label, index of first move in that phase)
    phases: list[tuple[str, int]] = field(default_factory=list)

    def replay(self) -> CubicMultigraph:
        g = self.start
        for m in self.moves:
            g = apply_move(g, m)
        return g


def is_cubic_tree(g: CubicMultigraph) -> bool:
    """Non-loop edges form a spanning tree and loops sit exactly on its leaves."""
    if g.num_loops != g.n + 1:
        return False
    if shortest_cycle(g, 2) is not None:
        return False
    for v in range(g.num_vertices):
        loops = sum(1 for _, w in g.incidence[v] if w == v) // 2
        tree_deg = sum(1 for _, w in g.incidence[v] if w != v)
        if (loops, tree_deg) not in ((1, 1), (0, 3)):
            return False
    return True


def _move_joining(g: CubicMultigraph, edge: int, together: tuple[int, int]) -> WhiteheadMove:
    """The move on ``edge`` after which edges ``together`` share an endpoint of ``edge``.

    Type 1 wins ties.
    """
    u, v = g.endpoints(edge)
    for t in (1, 2):
        m = WhiteheadMove(edge, t)
        h = apply_move(g, m)
        a, b = together
        ends_a = set(h.endpoints(a)) & {u, v}
        ends_b = set(h.endpoints(b)) & {u, v}
        if ends_a & ends_b:
            return m
    raise AssertionError(f"no move on edge {edge} joins edges {together}")


def _collapse_cycle(g: CubicMultigraph, cycle_edges: list[int], stop=None):
    """Shorten the cycle one edge at a time down to a loop.

    Each move is on the first remaining cycle edge and joins its two cycle
    neighbours at one endpoint.  ``stop(g)`` may end the process early.
    """
    moves = []
    edges = list(cycle_edges)
    while len(edges) >= 2:
        if stop is not None and stop(g):
            break
        e = edges[0]
        if len(edges) == 2:
            # join both ends of the parallel partner: it becomes a loop
            partner = edges[1]
            m = _move_joining_loop(g, e, partner)
        else:
            m = _move_joining(g, e, (edges[-1], edges[1]))
        g = apply_move(g, m)
        moves.append(m)
        edges = edges[1:]
    return g, moves


def _move_joining_loop(g: CubicMultigraph, edge: int, partner: int) -> WhiteheadMove:
    for t in (1, 2):
        m = WhiteheadMove(edge, t)
        if apply_move(g, m).is_loop(partner):
            return m
    raise AssertionError(f"no move on edge {edge} turns edge {partner} into a loop")


def reduce_cycles(g: CubicMultigraph):
    """Collapse shortest cycles until ``g`` is a cubic tree.

    Returns ``(moves, tree, rounds)`` where ``rounds`` lists the loop count
    after each collapsed cycle.
    """
    moves: list[WhiteheadMove] = []
    rounds = []
    while True:
        cycle = shortest_cycle(g, 2)
        if cycle is None:
            break
        before = g.num_loops
        g, ms = _collapse_cycle(g, list(cycle.edges))
        if g.num_loops <= before:
            raise AssertionError("cycle collapse did not add a loop")
        moves.extend(ms)
        rounds.append(g.num_loops)
    return moves, g, rounds


# -- trees and rotations ------------------------------------------------------

def canonical_cubic_tree(n: int) -> CubicMultigraph:
    """The caterpillar cubic tree: internal vertices ``0..n-2`` on a path.

    Its rooted binary tree (rooted at an end loop) is the comb.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return CubicMultigraph.from_edges(2, [(0, 0), (0, 1), (1, 1)])
    internal = n - 1
    pairs = [(i, i + 1) for i in range(internal - 1)]
    leaf = internal
    for i in range(internal):
        need = 3 - sum(1 for p in pairs for x in p if x == i)
        for _ in range(need):
            pairs.append((i, leaf))
            leaf += 1
    pairs.extend((v, v) for v in range(internal, 2 * n))
    return CubicMultigraph.from_edges(2 * n, pairs)


@dataclass
class _Node:
    vertex: int
    parent_edge: int
    children: list  # of (edge id, _Node)

    @property
    def is_leaf(self):
        return not self.children


def rooted_tree(t: CubicMultigraph, root_loop: int | None = None):
    """Root a cubic tree at a loop; returns the binary root node.

    The default root is the loop at the smallest vertex.  The root loop's
    vertex and its pendant edge are dropped, so the returned node is the
    top of a rooted binary tree whose leaves are the other looped vertices.
    """
    if root_loop is None:
        root_loop = min(t.loops, key=lambda e: t.endpoints(e)[0])
    r = t.endpoints(root_loop)[0]
    (pendant, top), = [(e, w) for e, w in t.incidence[r] if w != r]

    def grow(v, via):
        kids = [(e, w) for e, w in t.incidence[v] if w != v and e != via]
        kids.sort()
        return _Node(v, via, [(e, grow(w, e)) for e, w in kids])

    return grow(top, pendant)


def _leaf_count(node: _Node) -> int:
    return 1 if node.is_leaf else sum(_leaf_count(c) for _, c in node.children)


def rotate(t: CubicMultigraph, edge: int, direction: str, root_loop: int | None = None):
    """Rotate the rooted binary tree at an internal edge with one move.

    With ``P`` the endpoint nearer the root and ``Q`` the other, ``Q``'s
    children are ordered by edge id.  ``"right"`` lifts Q's first child to
    ``P``, ``"left"`` lifts the second; P's other child moves down to ``Q``.
    Returns ``(move, rotated tree)``.
    """
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    if t.is_loop(edge):
        raise ValueError(f"edge {edge} is a loop")
    root = rooted_tree(t, root_loop)
    found = _find_edge(root, edge)
    if found is None:
        raise ValueError(f"edge {edge} is the root pendant edge")
    parent, child = found
    if child.is_leaf:
        raise ValueError(f"edge {edge} is a leaf-pendant edge")
    lifted = child.children[0 if direction == "right" else 1][0]
    m = _move_joining(t, edge, (parent.parent_edge, lifted))
    return m, apply_move(t, m)


def _find_edge(node: _Node, edge: int):
    for e, c in node.children:
        if e == edge:
            return node, c
        hit = _find_edge(c, edge)
        if hit is not None:
            return hit
    return None


def _comb_moves(t: CubicMultigraph):
    """Rotations turning the rooted tree into a comb; returns ``(moves, tree)``."""
    moves = []
    while True:
        root = rooted_tree(t)
        x = root
        target = None
        while not x.is_leaf:
            kids = [c for _, c in x.children]
            if any(k.is_leaf for k in kids):
                x = next((k for k in kids if not k.is_leaf), None)
                if x is None:
                    break
                continue
            target = x
            break
        if target is None:
            return moves, t
        # both children internal: lift the smaller grandchild of the smaller child
        edge_y, y = min(target.children, key=lambda ec: (_leaf_count(ec[1]), ec[1].vertex))
        edge_y1, _ = min(y.children, key=lambda ec: (_leaf_count(ec[1]), ec[1].vertex))
        m = _move_joining(t, edge_y, (target.parent_edge, edge_y1))
        t = apply_move(t, m)
        moves.append(m)


def reduce_to_canonical(g: CubicMultigraph) -> ReductionCertificate:
    cycle_moves, tree, _ = reduce_cycles(g)
    rotation_moves, end = _comb_moves(tree)
    cert = ReductionCertificate(g, cycle_moves + rotation_moves, end,
                                [("cycle-reduction", 0), ("rotation", len(cycle_moves))])
    return cert


def moves_to_bridged(g: CubicMultigraph) -> list[WhiteheadMove]:
    """Moves along a shortest cycle until a bridge appears (empty if one exists)."""
    if bridges(g):
        return []
    cycle = shortest_cycle(g, 1)
    if cycle.length == 1:
        # a loop without a bridge only happens on two vertices (the dumbbell has a bridge)
        raise AssertionError("bridgeless graph with a loop")
    _, moves = _collapse_cycle(g, list(cycle.edges), stop=lambda h: bool(bridges(h)))
    return moves
