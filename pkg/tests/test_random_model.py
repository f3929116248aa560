import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from cubicmoves.graph import GraphSizeError
from cubicmoves.random_model import (estimate, exact_estimate, exact_probability, sample_pairing,
                                     sandwich_check, trial_rng, wilson_interval)


def test_sample_is_a_pairing():
    g = sample_pairing(20, np.random.default_rng(1))
    slots = sorted(s for e in g.edges for s in e)
    assert slots == list(range(60))
    with pytest.raises(ValueError):
        sample_pairing(3, np.random.default_rng(0))


@pytest.mark.parametrize("nv,bins", [(2, 15), (4, 10395)])
def test_uniform_over_pairings(nv, bins):
    draws = 100_000 if nv == 2 else 300_000
    rng = np.random.default_rng(7)
    counts = Counter(sample_pairing(nv, rng).pairing for _ in range(draws))
    observed = list(counts.values()) + [0] * (bins - len(counts))
    assert len(counts) <= bins
    _, p = stats.chisquare(observed)
    assert p > 1e-3


def test_determinism():
    a = [sample_pairing(12, trial_rng(5, i)) for i in range(20)]
    b = [sample_pairing(12, trial_rng(5, i)) for i in range(20)]
    assert a == b
    assert estimate("has_loop", 20, 500, seed=3) == estimate("has_loop", 20, 500, seed=3)


def test_workers_do_not_change_estimate():
    assert estimate("has_bridge", 16, 400, seed=2, workers=2) == estimate("has_bridge", 16, 400, seed=2)


def test_exact_small_cases():
    assert exact_probability("has_loop", 2) == Fraction(9, 15)
    assert exact_probability("has_bridge", 2) == Fraction(3, 5)
    assert exact_probability("loopless_and_nonhamiltonian", 2) == 0
    e = exact_estimate("has_loop", 2)
    assert e.p_hat == 0.6 and e.trials == 15 and e.ci_low == e.ci_high == 0.6
    with pytest.raises(GraphSizeError):
        exact_probability("has_loop", 6)


def test_exact_loop_probability_n2_matches_formula():
    # P(no loop) at 4 vertices: count loopless pairings directly
    p = exact_probability("has_loop", 4)
    loopless = 0
    from cubicmoves.enumeration import enumerate_pairings
    for g in enumerate_pairings(2):
        loopless += not any(a // 3 == b // 3 for a, b in g.edges)
    assert p == 1 - Fraction(loopless, 10395)


def test_wilson_interval():
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi and abs((hi - lo) / 2 - 0.0962) < 0.01
    assert wilson_interval(0, 10)[0] == 0.0
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_estimate_errors():
    with pytest.raises(ValueError):
        estimate("has_loop", 10, 0)
    with pytest.raises(ValueError):
        estimate("has_cycle", 10, 10)
    with pytest.raises(GraphSizeError):
        estimate("loopless_and_nonhamiltonian", 26, 10)


def test_loop_estimate_large():
    e = estimate("has_loop", 200, 10_000, seed=0)
    assert abs(e.p_hat - (1 - math.exp(-1))) <= 0.02
    assert e.ci_high - e.ci_low < 0.02
    assert e.conditioning_rate == 1.0


def test_nonhamiltonian_is_small_and_decreasing():
    small = estimate("loopless_and_nonhamiltonian", 8, 2000, seed=0)
    large = estimate("loopless_and_nonhamiltonian", 20, 1000, seed=0)
    assert large.p_hat < 0.05
    assert large.p_hat < small.p_hat


def test_sandwich():
    rep = sandwich_check(8, 2000, seed=0)
    assert rep.violations == 0 and rep.passed
    assert sandwich_check(8, 0).passed
    assert sandwich_check(2, 200).passed
