"""Cubic multigraphs stored as pairings of half-edge slots.

Vertex ``v`` owns the three slots ``3v, 3v+1, 3v+2``.  An edge is an
unordered pair of slots; a loop is a pair of slots on the same vertex.
Edge ids are positions in :attr:`CubicMultigraph.edges` and survive
Whitehead moves, which only permute slots between the two endpoints of
the moved edge.
"""
from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "CubicMultigraph",
    "Cycle",
    "GraphSizeError",
    "InvalidGraphError",
    "ValidationReport",
    "betti",
    "bridges",
    "brute_force_bridges",
    "girth_cycle",
    "is_connected",
    "is_hamiltonian",
    "shortest_cycle",
    "two_edge_classes",
    "validate",
]

HAMILTONIAN_LIMIT = 24


class InvalidGraphError(ValueError):
    """Raised when input does not describe a cubic multigraph."""


class GraphSizeError(ValueError):
    """Raised when an exhaustive routine is asked for too large an input."""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "valid" if self.valid else "; ".join(self.violations)


@dataclass(frozen=True)
class CubicMultigraph:
    """A 3-regular multigraph with loops and parallel edges.

    ``edges[i] = (s, t)`` is the slot pair of edge ``i``.  The first slot
    belongs to the endpoint written first in CMG text, so edge lists
    round-trip exactly.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        problems = _structural_violations(self.num_vertices, self.edges)
        if problems:
            raise InvalidGraphError("; ".join(problems))

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, num_vertices: int, vertex_pairs: Iterable[Sequence[int]]) -> "CubicMultigraph":
        """Build from ``(u, v)`` vertex pairs; slots are handed out in order."""
        pairs = [tuple(p) for p in vertex_pairs]
        report = validate_edge_list(num_vertices, pairs)
        structural = [v for v in report.violations if v != "graph is disconnected"]
        if structural:
            raise InvalidGraphError("; ".join(structural))
        next_slot = [3 * v for v in range(num_vertices)]
        slot_pairs = []
        for u, v in pairs:
            su = next_slot[u]
            next_slot[u] += 1
            sv = next_slot[v]
            next_slot[v] += 1
            slot_pairs.append((su, sv))
        return cls(num_vertices, tuple(slot_pairs))

    @classmethod
    def from_pairing(cls, pairing: Sequence[int]) -> "CubicMultigraph":
        """Build from an involution on slots; edge ids follow the smaller slot."""
        if len(pairing) % 6:
            raise InvalidGraphError("slot count must be a multiple of 6")
        slot_pairs = [(s, t) for s, t in enumerate(pairing) if s < t]
        if len(slot_pairs) * 2 != len(pairing):
            raise InvalidGraphError("pairing is not a fixed-point-free involution")
        return cls(len(pairing) // 3, tuple(slot_pairs))

    # -- derived views ------------------------------------------------

    @property
    def n(self) -> int:
        return self.num_vertices // 2

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def pairing(self) -> tuple[int, ...]:
        out = [0] * (3 * self.num_vertices)
        for s, t in self.edges:
            out[s] = t
            out[t] = s
        return tuple(out)

    @cached_property
    def slot_edge(self) -> tuple[int, ...]:
        """EdgeId owning each slot."""
        out = [0] * (3 * self.num_vertices)
        for i, (s, t) in enumerate(self.edges):
            out[s] = i
            out[t] = i
        return tuple(out)

    @cached_property
    def vertex_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((s // 3, t // 3) for s, t in self.edges)

    def endpoints(self, edge: int) -> tuple[int, int]:
        return self.vertex_pairs[edge]

    def is_loop(self, edge: int) -> bool:
        u, v = self.vertex_pairs[edge]
        return u == v

    @cached_property
    def loops(self) -> tuple[int, ...]:
        return tuple(i for i, (u, v) in enumerate(self.vertex_pairs) if u == v)

    @property
    def num_loops(self) -> int:
        return len(self.loops)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(edge, other endpoint)`` pair for each of its slots."""
        out = []
        for v in range(self.num_vertices):
            row = []
            for s in range(3 * v, 3 * v + 3):
                row.append((self.slot_edge[s], self.pairing[s] // 3))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def multiplicity(self) -> Counter:
        """Counter over sorted vertex pairs (loops included as ``(v, v)``)."""
        return Counter(tuple(sorted(p)) for p in self.vertex_pairs)

    def edge_multiset_key(self) -> tuple[tuple[int, int], ...]:
        """Vertex-level identity, blind to slot order and edge ids."""
        return tuple(sorted(tuple(sorted(p)) for p in self.vertex_pairs))

    def same_multigraph(self, other: "CubicMultigraph") -> bool:
        return (self.num_vertices == other.num_vertices
                and self.edge_multiset_key() == other.edge_multiset_key())

    def relabel(self, perm: Sequence[int]) -> "CubicMultigraph":
        """Rename vertex ``v`` to ``perm[v]``; edge ids are kept."""
        if sorted(perm) != list(range(self.num_vertices)):
            raise ValueError("perm must be a permutation of the vertices")
        return CubicMultigraph.from_edges(
            self.num_vertices, [(perm[u], perm[v]) for u, v in self.vertex_pairs])

    def __repr__(self) -> str:
        return f"CubicMultigraph({self.num_vertices}, {list(self.vertex_pairs)})"


def _structural_violations(num_vertices: int, slot_pairs) -> list[str]:
    problems = []
    if num_vertices <= 0 or num_vertices % 2:
        problems.append("vertex count must be a positive even integer")
        return problems
    slots = [s for pair in slot_pairs for s in pair]
    if len(slot_pairs) != 3 * num_vertices // 2:
        problems.append(f"edge count {len(slot_pairs)} != 3n = {3 * num_vertices // 2}")
    if any(not 0 <= s < 3 * num_vertices for s in slots):
        problems.append("slot index out of range")
    elif len(set(slots)) != len(slots) or len(slots) != 3 * num_vertices:
        problems.append("pairing is not a fixed-point-free involution")
    if any(s == t for s, t in slot_pairs):
        problems.append("pairing has a fixed point")
    return problems


def validate_edge_list(num_vertices: int, vertex_pairs) -> ValidationReport:
    problems = []
    if num_vertices <= 0 or num_vertices % 2:
        return ValidationReport(("vertex count must be a positive even integer",))
    degree = [0] * num_vertices
    for pair in vertex_pairs:
        if len(pair) != 2 or any(not 0 <= x < num_vertices for x in pair):
            return ValidationReport((f"bad edge {pair!r}",))
        u, v = pair
        degree[u] += 1
        degree[v] += 1
    bad = [v for v, d in enumerate(degree) if d != 3]
    if bad:
        problems.append(f"vertex degree != 3 at {bad}")
    if len(vertex_pairs) != 3 * num_vertices // 2:
        problems.append(f"edge count {len(vertex_pairs)} != 3n = {3 * num_vertices // 2}")
    if not problems and not _pairs_connected(num_vertices, vertex_pairs):
        problems.append("graph is disconnected")
    return ValidationReport(tuple(problems))


def validate(g) -> ValidationReport:
    """Report every invariant violation of ``g``.

    Accepts a :class:`CubicMultigraph` or a ``(num_vertices, vertex_pairs)``
    tuple, so malformed input can be checked before construction.
    """
    if isinstance(g, CubicMultigraph):
        problems = _structural_violations(g.num_vertices, g.edges)
        if not problems and not is_connected(g):
            problems.append("graph is disconnected")
        return ValidationReport(tuple(problems))
    num_vertices, pairs = g
    return validate_edge_list(num_vertices, [tuple(p) for p in pairs])


def _pairs_connected(num_vertices, vertex_pairs) -> bool:
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in vertex_pairs:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(num_vertices)}) == 1


def is_connected(g: CubicMultigraph) -> bool:
    return _pairs_connected(g.num_vertices, g.vertex_pairs)


def _require_connected(g: CubicMultigraph):
    if not is_connected(g):
        raise InvalidGraphError("graph is disconnected")


def betti(g: CubicMultigraph) -> int:
    """First Betti number ``|E| - |V| + 1`` of a connected graph."""
    _require_connected(g)
    return g.num_edges - g.num_vertices + 1


# -- bridges --------------------------------------------------------------

def bridges(g: CubicMultigraph) -> frozenset[int]:
    """Edge ids whose removal disconnects ``g`` (one low-link DFS pass)."""
    _require_connected(g)
    nv = g.num_vertices
    order = [-1] * nv
    low = [0] * nv
    found = set()
    inc = g.incidence
    counter = 0
    # iterative DFS; stack items are (vertex, edge used to enter, next slot index)
    order[0] = low[0] = counter
    counter += 1
    stack = [(0, -1, 0)]
    while stack:
        v, via, i = stack.pop()
        if i < 3:
            stack.append((v, via, i + 1))
            e, w = inc[v][i]
            if e == via or w == v:
                continue
            if order[w] == -1:
                order[w] = low[w] = counter
                counter += 1
                stack.append((w, e, 0))
            else:
                low[v] = min(low[v], order[w])
        elif via != -1:
            u = g.vertex_pairs[via][0] if g.vertex_pairs[via][1] == v else g.vertex_pairs[via][1]
            low[u] = min(low[u], low[v])
            if low[v] > order[u]:
                found.add(via)
    return frozenset(found)


def brute_force_bridges(g: CubicMultigraph) -> frozenset[int]:
    """Test oracle: remove each edge and check connectivity."""
    _require_connected(g)
    pairs = g.vertex_pairs
    return frozenset(
        i for i in range(g.num_edges)
        if not _pairs_connected(g.num_vertices, pairs[:i] + pairs[i + 1:]))


def two_edge_classes(g: CubicMultigraph) -> tuple[int, ...]:
    """Class id per vertex: vertices joined by two edge-disjoint paths share a class.

    Class ids are numbered by first appearance in vertex order.
    """
    cut = bridges(g)
    parent = list(range(g.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, v) in enumerate(g.vertex_pairs):
        if i not in cut:
            parent[find(u)] = find(v)
    ids: dict[int, int] = {}
    return tuple(ids.setdefault(find(v), len(ids)) for v in range(g.num_vertices))


# -- cycles ---------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    """Closed walk ``v0 -e0- v1 -e1- ... -e_{k-1}- v0`` given as ``(v_i, e_i)`` steps."""

    steps: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.steps)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.steps)


def _shortest_paths_avoiding(g: CubicMultigraph, src: int, dst: int, banned: int):
    """All shortest src->dst walks avoiding edge ``banned``, as edge-id lists."""
    dist = {src: 0}
    preds: dict[int, list[tuple[int, int]]] = {src: []}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for e, w in g.incidence[v]:
            if e == banned or w == v:
                continue
            if w not in dist:
                dist[w] = dist[v] + 1
                preds[w] = [(v, e)]
                queue.append(w)
            elif dist[w] == dist[v] + 1 and (v, e) not in preds[w]:
                preds[w].append((v, e))
    if dst not in dist:
        return None, []

    paths = []

    def walk(v, tail):
        if v == src:
            paths.append(list(reversed(tail)))
            return
        for p, e in preds[v]:
            walk(p, tail + [(p, e)])

    walk(dst, [])
    return dist[dst], paths


def shortest_cycle(g: CubicMultigraph, min_length: int = 1) -> Cycle | None:
    """Shortest cycle of length >= ``min_length``.

    Ties go to the lexicographically smallest sorted edge-id list.  Returns
    ``None`` when no such cycle exists (e.g. ``min_length=2`` on a cubic tree).
    """
    if min_length <= 1 and g.loops:
        e = g.loops[0]
        return Cycle(((g.vertex_pairs[e][0], e),))
    best_key = None
    best = None
    for e, (u, v) in enumerate(g.vertex_pairs):
        if u == v:
            continue
        d, paths = _shortest_paths_avoiding(g, v, u, e)
        if d is None:
            continue
        length = d + 1
        if length < min_length:
            continue
        for path in paths:
            edge_ids = [e] + [pe for _, pe in path]
            if len(set(edge_ids)) != len(edge_ids):
                continue
            key = (length, tuple(sorted(edge_ids)))
            if best_key is None or key < best_key:
                best_key = key
                best = Cycle(((u, e),) + tuple(path))
    return best


def girth_cycle(g: CubicMultigraph) -> Cycle:
    """A shortest cycle, loops counting as length 1."""
    c = shortest_cycle(g, 1)
    assert c is not None, "a cubic multigraph always has a cycle"
    return c


# -- Hamiltonicity --------------------------------------------------------

def is_hamiltonian(g: CubicMultigraph) -> bool:
    """Whether ``g`` has a closed walk visiting every vertex exactly once.

    On two vertices this needs two parallel edges.  Backtracking with a
    degree-feasibility prune; limited to 24 vertices.
    """
    nv = g.num_vertices
    if nv > HAMILTONIAN_LIMIT:
        raise GraphSizeError(f"Hamiltonicity check limited to {HAMILTONIAN_LIMIT} vertices")
    if not is_connected(g):
        return False
    if nv == 2:
        return g.multiplicity[(0, 1)] >= 2
    if g.loops or bridges(g):
        return False
    nbrs = [sorted({w for _, w in g.incidence[v] if w != v}) for v in range(nv)]
    visited = [False] * nv
    visited[0] = True

    def feasible(end):
        # every unvisited vertex still needs two usable neighbours
        for v in range(nv):
            if visited[v]:
                continue
            usable = sum(1 for w in nbrs[v] if not visited[w] or w == end or w == 0)
            if usable < 2:
                return False
        return True

    def extend(v, depth):
        if depth == nv:
            return 0 in nbrs[v]
        for w in nbrs[v]:
            if visited[w]:
                continue
            visited[w] = True
            if feasible(w) and extend(w, depth + 1):
                return True
            visited[w] = False
        return False

    return extend(0, 1)
