"""Outer-conductance of vertex subsets of a directed multigraph, in exact rationals."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gamma import GraphOfGraphs, bridged_subset
from .graph import GraphSizeError

__all__ = [
    "BoundaryArc",
    "BridgedBound",
    "boundary_arcs",
    "ConductanceResult",
    "EXACT_LIMIT",
    "phi_out_bridged_bound",
    "phi_out_exact",
    "phi_out_heuristic",
    "phi_out_subset",
    "phi_out_subset_from_rows",
]

EXACT_LIMIT = 22


@dataclass(frozen=True)
class ConductanceResult:
    subset: tuple[int, ...]
    boundary: int
    volume: int
    complement_volume: int
    phi: Fraction
    exact: bool = True


def _check_subset(G: GraphOfGraphs, S) -> tuple[int, ...]:
    members = tuple(sorted(set(S)))
    if not members or len(members) >= G.size:
        raise ValueError("subset must be proper and nonempty")
    if members[0] < 0 or members[-1] >= G.size:
        raise ValueError("subset has out-of-range vertices")
    return members


def phi_out_subset(G: GraphOfGraphs, S) -> ConductanceResult:
    """Boundary arcs leaving ``S`` over the smaller out-degree volume."""
    members = _check_subset(G, S)
    inside = set(members)
    boundary = sum(G.matrix[i][j] for i in members for j in range(G.size) if j not in inside)
    vol = sum(sum(G.matrix[i]) for i in members)
    vol_c = sum(sum(G.matrix[i]) for i in range(G.size) if i not in inside)
    return ConductanceResult(members, boundary, vol, vol_c, Fraction(boundary, min(vol, vol_c)))


def phi_out_subset_from_rows(G: GraphOfGraphs, S) -> Fraction:
    """Same value via row sums: boundary = volume of S minus arcs staying in S."""
    members = _check_subset(G, S)
    A = G.array
    idx = np.array(members)
    vol = int(A[idx].sum())
    internal = int(A[np.ix_(idx, idx)].sum())
    vol_c = int(A.sum()) - vol
    return Fraction(vol - internal, min(vol, vol_c))


def phi_out_exact(G: GraphOfGraphs) -> ConductanceResult:
    """Minimise over every proper nonempty subset.

    Ties go to the smallest ``|S|``, then the lexicographically smallest
    sorted member tuple.
    """
    k = G.size
    if k > EXACT_LIMIT:
        raise GraphSizeError(f"exact minimisation limited to {EXACT_LIMIT} vertices")
    if k < 2:
        raise ValueError("need at least two vertices")
    A = G.array
    outdeg = A.sum(axis=1)
    total = int(outdeg.sum())
    best = None  # (phi, size, members)
    chunk = 1 << 16
    bits = np.arange(k, dtype=np.int64)
    for start in range(1, (1 << k) - 1, chunk):
        masks = np.arange(start, min(start + chunk, (1 << k) - 1), dtype=np.int64)
        X = ((masks[:, None] >> bits) & 1).astype(np.int64)
        vol = X @ outdeg
        boundary = ((X @ A) * (1 - X)).sum(axis=1)
        denom = np.minimum(vol, total - vol)
        sizes = X.sum(axis=1)
        # float prefilter, then exact comparison of the near-minimal candidates
        ratio = boundary / denom
        lo = ratio.min()
        cand = np.nonzero(ratio <= lo * (1 + 1e-9) + 1e-15)[0]
        for c in cand:
            phi = Fraction(int(boundary[c]), int(denom[c]))
            members = tuple(int(b) for b in np.nonzero(X[c])[0])
            key = (phi, int(sizes[c]), members)
            if best is None or key < best:
                best = key
    return phi_out_subset(G, best[2])


def phi_out_heuristic(G: GraphOfGraphs, seed: int = 0, rounds: int = 200) -> ConductanceResult:
    """Best of bridged set, singletons, complements and seeded local search."""
    k = G.size
    candidates = []
    B = bridged_subset(G).members
    if 0 < len(B) < k:
        candidates.append(set(B))
    candidates.extend({i} for i in range(k))
    candidates.extend(set(range(k)) - c for c in list(candidates))

    def score(S):
        return phi_out_subset(G, S).phi

    rng = random.Random(seed)
    best = min(candidates, key=lambda S: (score(S), len(S), tuple(sorted(S))))
    current = set(best)
    for _ in range(rounds):
        v = rng.randrange(k)
        trial = current ^ {v}
        if 0 < len(trial) < k and score(trial) <= score(current):
            current = trial
            if score(current) < score(best):
                best = set(current)
    res = phi_out_subset(G, best)
    return ConductanceResult(res.subset, res.boundary, res.volume, res.complement_volume,
                             res.phi, exact=False)


@dataclass(frozen=True)
class BridgedBound:
    result: ConductanceResult
    bridged_count: int
    bound_holds: bool  # |boundary(B_n)| <= 2 |B_n|
    volume_bound: Fraction  # 2|B_n| / (6n |V \ B_n|)
    below_volume_bound: bool
    comparator: float  # (e - 1) / (3n)


def phi_out_bridged_bound(G: GraphOfGraphs) -> BridgedBound:
    B = bridged_subset(G).members
    if not B or len(B) == G.size:
        raise ValueError("bridged set is empty or everything; conductance undefined")
    res = phi_out_subset(G, B)
    bound = Fraction(2 * len(B), 6 * G.n * (G.size - len(B)))
    return BridgedBound(res, len(B), res.boundary <= 2 * len(B), bound, res.phi <= bound,
                        (math.e - 1) / (3 * G.n))


@dataclass(frozen=True)
class BoundaryArc:
    source: int
    target: int
    move: tuple[int, int]  # (edge, type) in the source representative
    source_bridges: int
    on_bridge: bool

    @property
    def localized(self) -> bool:
        return self.source_bridges == 1 and self.on_bridge


def boundary_arcs(G: GraphOfGraphs) -> list[BoundaryArc]:
    """Every move leaving the bridged set, found by applying all ``6n`` moves."""
    from .canonical import canonical_form
    from .graph import bridges
    from .moves import WhiteheadMove, apply_move

    B = bridged_subset(G).members
    arcs = []
    for i in sorted(B):
        g = G.graphs[i]
        br = set(bridges(g))
        for e in range(g.num_edges):
            for t in (1, 2):
                j = G.catalog.index[canonical_form(apply_move(g, WhiteheadMove(e, t)))]
                if j not in B:
                    arcs.append(BoundaryArc(i, j, (e, t), len(br), e in br))
    return arcs
