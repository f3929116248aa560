"""The directed graph of graphs: classes as vertices, Whitehead moves as arcs."""
from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import cmg
from .canonical import canonical_form, edge_orbits
from .enumeration import ClassCatalog, enumerate_classes
from .graph import CubicMultigraph, bridges
from .moves import WhiteheadMove, apply_move

__all__ = [
    "GraphOfGraphs",
    "VertexSubset",
    "build",
    "bfs_distances",
    "bridged_subset",
    "export",
    "from_json",
    "strongly_connected",
]


@dataclass(frozen=True)
class GraphOfGraphs:
    n: int
    catalog: ClassCatalog
    matrix: tuple[tuple[int, ...], ...]
    loop_moves: bool = True

    @property
    def size(self) -> int:
        return len(self.matrix)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.size, self.size)

    @cached_property
    def graphs(self) -> list[CubicMultigraph]:
        return self.catalog.graphs()

    def out_degree(self, i: int) -> int:
        return sum(self.matrix[i])


@dataclass(frozen=True)
class VertexSubset:
    members: frozenset[int]
    size: int
    volume: int
    boundary: int


def _row(args):
    code, mode, loop_moves, index = args
    g = cmg.loads(code)
    row = [0] * len(index)
    if mode == "bruteforce":
        weighted = [(WhiteheadMove(e, t), 1) for e in range(g.num_edges) for t in (1, 2)]
    else:
        weighted = [(orb[0], len(orb)) for orb in edge_orbits(g)]
    for m, weight in weighted:
        if g.is_loop(m.edge) and not loop_moves:
            continue
        row[index[canonical_form(apply_move(g, m))]] += weight
    return row


def build(n: int, mode: str = "orbit", catalog: ClassCatalog | None = None,
          loop_moves: bool = True, workers: int = 1) -> GraphOfGraphs:
    """Build Gamma_n.

    ``bruteforce`` applies all ``6n`` moves per class; ``orbit`` applies one
    move per ``(edge, type)`` orbit and weights it by the orbit size.
    ``loop_moves=False`` drops the identity moves on loops (non-default).
    """
    if mode not in ("bruteforce", "orbit"):
        raise ValueError(f"unknown mode {mode!r}")
    if catalog is None:
        catalog = enumerate_classes(n)
    jobs = [(code, mode, loop_moves, catalog.index) for code in catalog.codes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(j) for j in jobs]
    return GraphOfGraphs(n, catalog, tuple(tuple(r) for r in rows), loop_moves)


def _reach(adj, start):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def strongly_connected(G: GraphOfGraphs) -> bool:
    """Forward and backward reachability from vertex 0 both cover everything."""
    k = G.size
    if k <= 1:
        return True
    fwd = [[j for j in range(k) if G.matrix[i][j]] for i in range(k)]
    bwd = [[j for j in range(k) if G.matrix[j][i]] for i in range(k)]
    return len(_reach(fwd, 0)) == k and len(_reach(bwd, 0)) == k


def bfs_distances(G: GraphOfGraphs, source: int) -> list[int]:
    """Directed hop distances from ``source`` (-1 when unreachable)."""
    dist = [-1] * G.size
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in range(G.size):
            if G.matrix[v][w] and dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def subset(G: GraphOfGraphs, members) -> VertexSubset:
    members = frozenset(members)
    boundary = sum(G.matrix[i][j] for i in members for j in range(G.size) if j not in members)
    volume = sum(G.out_degree(i) for i in members)
    return VertexSubset(members, len(members), volume, boundary)


def bridged_subset(G: GraphOfGraphs) -> VertexSubset:
    """Classes whose representative has at least one bridge."""
    return subset(G, (i for i, g in enumerate(G.graphs) if bridges(g)))


# -- export -------------------------------------------------------------------

def to_dict(G: GraphOfGraphs) -> dict:
    return {"n": G.n, "classes": list(G.catalog.codes),
            "matrix": [list(r) for r in G.matrix], "loop_moves": G.loop_moves}


def from_json(text: str) -> GraphOfGraphs:
    data = json.loads(text)
    catalog = ClassCatalog(data["n"], list(data["classes"]))
    return GraphOfGraphs(data["n"], catalog, tuple(tuple(r) for r in data["matrix"]),
                         data.get("loop_moves", True))


def export(G: GraphOfGraphs, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_dict(G), sort_keys=True) + "\n"
    if fmt == "dot":
        lines = [f"digraph gamma_{G.n} {{"]
        for i, code in enumerate(G.catalog.codes):
            label = code.strip().replace("\n", "\\n")
            lines.append(f'  {i} [label="{label}"];')
        for i, row in enumerate(G.matrix):
            for j, mult in enumerate(row):
                if mult:
                    lines.append(f'  {i} -> {j} [label="{mult}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def subset_json(members) -> str:
    return json.dumps(sorted(members))
