"""Period, primitivity, Perron root and walk counts of a nonnegative integer matrix."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .gamma import GraphOfGraphs

__all__ = [
    "ConvergenceError",
    "SpectrumReport",
    "count_paths",
    "is_primitive",
    "period",
    "positive_power",
    "spectral_radius",
    "verify_small_cycles",
]

DENSE_LIMIT = 200


class ConvergenceError(RuntimeError):
    pass


def _matrix(G) -> list[list[int]]:
    if isinstance(G, GraphOfGraphs):
        return [list(r) for r in G.matrix]
    return [list(map(int, r)) for r in G]


def _strongly_connected(M) -> bool:
    k = len(M)

    def reach(forward):
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in range(k):
                arc = M[v][w] if forward else M[w][v]
                if arc and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == k

    return k <= 1 or (reach(True) and reach(False))


def period(G) -> int:
    """gcd of closed-walk lengths, from BFS levels: gcd of ``level[u] + 1 - level[v]`` over arcs."""
    M = _matrix(G)
    if not _strongly_connected(M):
        raise ValueError("period needs a strongly connected graph")
    k = len(M)
    level = [-1] * k
    level[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in range(k):
            if M[v][w] and level[w] < 0:
                level[w] = level[v] + 1
                queue.append(w)
    p = 0
    for u in range(k):
        for v in range(k):
            if M[u][v]:
                p = math.gcd(p, abs(level[u] + 1 - level[v]))
    return p


def positive_power(G, max_power: int | None = None) -> int | None:
    """Smallest ``k <= max_power`` with ``M^k`` entrywise positive, else ``None``.

    Default ``max_power`` is ``|V|^2``, above Wielandt's bound.
    """
    M = _matrix(G)
    k = len(M)
    if max_power is None:
        max_power = k * k
    B = np.array(M, dtype=bool)
    P = B.copy()
    for power in range(1, max_power + 1):
        if P.all():
            return power
        P = (P.astype(np.int64) @ B.astype(np.int64)) > 0
    return None


def is_primitive(G) -> bool:
    M = _matrix(G)
    return _strongly_connected(M) and period(M) == 1


@dataclass
class SpectrumReport:
    spectral_radius: float
    tolerance: float
    period: int
    primitive: bool
    perron_vector: list[float]
    simple: bool
    max_other_modulus: float
    eigenvalues: list[complex] = field(default_factory=list, repr=False)
    row_sum: int | None = None

    @property
    def gap(self) -> float:
        return self.spectral_radius - self.max_other_modulus

    def to_dict(self) -> dict:
        return {
            "spectral_radius": self.spectral_radius,
            "tolerance": self.tolerance,
            "period": self.period,
            "primitive": self.primitive,
            "perron_vector": self.perron_vector,
            "simple": self.simple,
            "max_other_modulus": self.max_other_modulus,
            "row_sum": self.row_sum,
        }


def _power_iteration(A: np.ndarray, tol: float, max_iter: int):
    # a non-uniform start, so a constant row sum is not baked in
    x = np.arange(1.0, A.shape[0] + 1.0)
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = A @ x
        norm = np.linalg.norm(y)
        if norm == 0:
            return 0.0, x
        lam_new = float(x @ y)
        x_new = y / norm
        if abs(lam_new - lam) < tol * max(1.0, abs(lam_new)) and np.linalg.norm(A @ x_new - lam_new * x_new) < tol * max(1.0, lam_new):
            return lam_new, x_new
        x, lam = x_new, lam_new
    raise ConvergenceError("power iteration did not converge")


def _deflated_modulus(A: np.ndarray, rho: float, steps: int = 400, seed: int = 0) -> float:
    """Growth rate of ``A^k x`` with the Perron direction projected out."""
    k = A.shape[0]
    # left Perron vector: stationary distribution of the row-normalised matrix
    pi = np.ones(k) / k
    P = A / A.sum(axis=1, keepdims=True)
    for _ in range(5000):
        nxt = pi @ P
        if np.abs(nxt - pi).sum() < 1e-14:
            break
        pi = nxt
    rng = np.random.default_rng(seed)
    x = rng.normal(size=k)
    x -= (pi @ x) * np.ones(k)
    x /= np.linalg.norm(x)
    log_growth = 0.0
    for _ in range(steps):
        y = A @ x
        y -= (pi @ y) * np.ones(k)
        norm = np.linalg.norm(y)
        if norm == 0:
            return 0.0
        log_growth += math.log(norm)
        x = y / norm
    return math.exp(log_growth / steps)


def spectral_radius(G, tol: float = 1e-9, max_iter: int = 100_000) -> SpectrumReport:
    """Perron root by power iteration, confirmed by a dense eigensolve when small."""
    M = _matrix(G)
    A = np.array(M, dtype=float)
    rho, vec = _power_iteration(A, tol * 1e-3, max_iter)
    vec = vec / vec.sum()
    sums = {sum(r) for r in M}
    row_sum = sums.pop() if len(sums) == 1 else None
    if row_sum is not None and abs(rho - row_sum) >= tol:
        raise ConvergenceError(f"power iteration gave {rho}, expected the row sum {row_sum}")
    p = period(M) if _strongly_connected(M) else 0
    primitive = _strongly_connected(M) and p == 1
    if len(M) <= DENSE_LIMIT:
        eig = np.linalg.eigvals(A)
        order = np.argsort(-np.abs(eig))
        eig = eig[order]
        near = np.abs(eig - rho) < math.sqrt(tol)
        simple = int(near.sum()) == 1
        others = np.abs(eig[~near]) if near.any() else np.abs(eig[1:])
        max_other = float(others.max()) if others.size else 0.0
        eigenvalues = [complex(z) for z in eig]
    else:
        max_other = _deflated_modulus(A, rho)
        simple = max_other < rho - tol
        eigenvalues = []
    return SpectrumReport(float(rho), tol, p, primitive, [float(x) for x in vec], simple,
                          max_other, eigenvalues, row_sum)


def count_paths(G, length: int) -> int:
    """Number of directed walks with ``length`` arcs, i.e. ``1^T M^length 1``, exactly."""
    if length < 0:
        raise ValueError("length must be >= 0")
    M = _matrix(G)
    v = [1] * len(M)
    for _ in range(length):
        v = [sum(r[j] * v[j] for j in range(len(M)) if r[j]) for r in M]
    return sum(v)


def verify_small_cycles(G) -> dict:
    """Directed 2- and 3-cycles through distinct vertices (self-loops unused)."""
    M = _matrix(G)
    k = len(M)
    two = next(((i, j) for i in range(k) for j in range(i + 1, k) if M[i][j] and M[j][i]), None)
    three = None
    for i in range(k):
        for j in range(k):
            if j == i or not M[i][j]:
                continue
            for l in range(k):
                if l in (i, j):
                    continue
                if M[j][l] and M[l][i]:
                    three = (i, j, l)
                    break
            if three:
                break
        if three:
            break
    return {"two_cycle": two, "three_cycle": three}
