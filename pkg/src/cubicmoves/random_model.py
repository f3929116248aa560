"""Configuration-model sampling and Monte Carlo event estimates.

Trial ``i`` under seed ``s`` draws from ``numpy.random.default_rng([s, i])``,
so estimates do not depend on trial order or worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .graph import (HAMILTONIAN_LIMIT, CubicMultigraph, GraphSizeError, bridges,
                    is_connected, is_hamiltonian)

__all__ = [
    "EVENTS",
    "EstimateWithCI",
    "SandwichReport",
    "estimate",
    "exact_estimate",
    "exact_probability",
    "sample_pairing",
    "sandwich_check",
    "trial_rng",
    "wilson_interval",
]

EVENTS = ("has_loop", "has_bridge", "loopless_and_nonhamiltonian")
EXACT_LIMIT = 4


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def sample_pairing(num_vertices: int, rng: np.random.Generator) -> CubicMultigraph:
    """Uniform fixed-point-free involution on ``3 * num_vertices`` slots."""
    if num_vertices < 2 or num_vertices % 2:
        raise ValueError("vertex count must be a positive even integer")
    perm = rng.permutation(3 * num_vertices)
    pairs = perm.reshape(-1, 2)
    return CubicMultigraph(num_vertices, tuple((int(a), int(b)) for a, b in pairs))


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


@dataclass(frozen=True)
class EstimateWithCI:
    event: str
    num_vertices: int
    trials: int
    p_hat: float
    ci_low: float
    ci_high: float
    seed: int
    # fraction of draws kept after conditioning on connectivity
    conditioning_rate: float
    successes: int
    counted: int

    def to_dict(self) -> dict:
        return asdict(self)


def _has_loop(g: CubicMultigraph) -> bool:
    return any(s // 3 == t // 3 for s, t in g.edges)


def _evaluate(event: str, g: CubicMultigraph):
    """``(counted, hit)`` for one sample; ``counted`` is False when conditioned out."""
    if event == "has_loop":
        return True, _has_loop(g)
    if not is_connected(g):
        return False, False
    if event == "has_bridge":
        return True, bool(bridges(g))
    if event == "loopless_and_nonhamiltonian":
        return True, (not _has_loop(g)) and not is_hamiltonian(g)
    raise ValueError(f"unknown event {event!r}")


def _check_event(event: str, num_vertices: int):
    if event not in EVENTS:
        raise ValueError(f"unknown event {event!r}; choose from {EVENTS}")
    if event == "loopless_and_nonhamiltonian" and num_vertices > HAMILTONIAN_LIMIT:
        raise GraphSizeError(f"Hamiltonicity check limited to {HAMILTONIAN_LIMIT} vertices")


def _run_block(args):
    event, num_vertices, seed, start, stop = args
    counted = hits = 0
    for i in range(start, stop):
        kept, hit = _evaluate(event, sample_pairing(num_vertices, trial_rng(seed, i)))
        counted += kept
        hits += hit
    return counted, hits


def estimate(event: str, num_vertices: int, trials: int, seed: int = 0,
             workers: int = 1) -> EstimateWithCI:
    """Monte Carlo estimate with a 95% Wilson interval.

    Loops are counted on every draw; bridge and Hamiltonicity events are
    conditioned on connectivity and the kept fraction is reported.
    """
    _check_event(event, num_vertices)
    if trials <= 0:
        raise ValueError("trial budget must be positive")
    blocks = max(1, workers)
    bounds = [trials * b // blocks for b in range(blocks + 1)]
    jobs = [(event, num_vertices, seed, bounds[b], bounds[b + 1]) for b in range(blocks)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_block, jobs))
    else:
        parts = [_run_block(j) for j in jobs]
    counted = sum(c for c, _ in parts)
    hits = sum(h for _, h in parts)
    if counted == 0:
        raise ValueError("no draws survived conditioning")
    lo, hi = wilson_interval(hits, counted)
    return EstimateWithCI(event, num_vertices, trials, hits / counted, lo, hi, seed,
                          counted / trials, hits, counted)


def _exact_counts(event: str, num_vertices: int):
    from .enumeration import enumerate_pairings

    _check_event(event, num_vertices)
    if num_vertices > EXACT_LIMIT or num_vertices % 2:
        raise GraphSizeError(f"exact enumeration limited to {EXACT_LIMIT} vertices")
    total = counted = hits = 0
    for g in enumerate_pairings(num_vertices // 2):
        kept, hit = _evaluate(event, g)
        total += 1
        counted += kept
        hits += hit
    return hits, counted, total


def exact_probability(event: str, num_vertices: int) -> Fraction:
    """Exact event probability by enumerating every pairing (at most 4 vertices)."""
    hits, counted, _ = _exact_counts(event, num_vertices)
    return Fraction(hits, counted)


def exact_estimate(event: str, num_vertices: int) -> EstimateWithCI:
    """``exact_probability`` as a degenerate estimate over all pairings (seed unused)."""
    hits, counted, total = _exact_counts(event, num_vertices)
    p = hits / counted
    return EstimateWithCI(event, num_vertices, total, p, p, p, 0, counted / total, hits, counted)


@dataclass
class SandwichReport:
    num_vertices: int
    trials: int
    seed: int
    connected: int
    looped: int
    bridged: int
    loopless_nonhamiltonian: int
    loop_not_bridged: int  # violations of loop => bridge
    bridged_hamiltonian: int  # violations of bridge => non-Hamiltonian

    @property
    def violations(self) -> int:
        return self.loop_not_bridged + self.bridged_hamiltonian

    @property
    def passed(self) -> bool:
        if self.violations:
            return False
        if self.connected == 0:
            return True
        return self.looped <= self.bridged <= self.looped + self.loopless_nonhamiltonian


def sandwich_check(num_vertices: int, trials: int, seed: int = 0) -> SandwichReport:
    """Per-sample loop => bridge => non-Hamiltonian on one shared set of connected draws.

    Loop => bridge is only asserted above two vertices (the theta graph on
    two vertices is loopless and bridgeless, the dumbbell looped and bridged).
    """
    if num_vertices > HAMILTONIAN_LIMIT:
        raise GraphSizeError(f"Hamiltonicity check limited to {HAMILTONIAN_LIMIT} vertices")
    rep = SandwichReport(num_vertices, trials, seed, 0, 0, 0, 0, 0, 0)
    for i in range(trials):
        g = sample_pairing(num_vertices, trial_rng(seed, i))
        if not is_connected(g):
            continue
        rep.connected += 1
        looped = _has_loop(g)
        bridged = bool(bridges(g))
        ham = is_hamiltonian(g)
        rep.looped += looped
        rep.bridged += bridged
        rep.loopless_nonhamiltonian += (not looped) and not ham
        if looped and not bridged and num_vertices > 2:
            rep.loop_not_bridged += 1
        if bridged and ham:
            rep.bridged_hamiltonian += 1
    return rep
