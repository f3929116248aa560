from fractions import Fraction

import pytest

from cubicmoves.conductance import (boundary_arcs, phi_out_bridged_bound, phi_out_exact,
                                    phi_out_heuristic, phi_out_subset, phi_out_subset_from_rows)
from cubicmoves.enumeration import ClassCatalog
from cubicmoves.gamma import GraphOfGraphs

from conftest import gamma
from oracles import phi_out_bruteforce


def toy(matrix):
    k = len(matrix)
    return GraphOfGraphs(0, ClassCatalog(0, [f"c{i}" for i in range(k)]),
                         tuple(tuple(r) for r in matrix))


def test_gamma1_subsets():
    r = phi_out_subset(gamma(1), {1})
    assert (r.boundary, r.volume, r.phi) == (2, 6, Fraction(1, 3))
    r = phi_out_subset(gamma(1), {0})
    assert (r.boundary, r.phi) == (3, Fraction(1, 2))


def test_closed_subset_has_zero_conductance():
    G = toy([[2, 1, 0], [1, 2, 0], [1, 0, 2]])
    assert phi_out_subset(G, {0, 1}).phi == 0


def test_subset_validation():
    with pytest.raises(ValueError):
        phi_out_subset(gamma(1), set())
    with pytest.raises(ValueError):
        phi_out_subset(gamma(1), {0, 1})
    with pytest.raises(ValueError):
        phi_out_subset(gamma(1), {5})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_two_formulas_agree(n):
    G = gamma(n)
    for S in ({0}, set(range(G.size // 2)), {G.size - 1, 0}):
        if len(S) == G.size:
            continue
        assert phi_out_subset(G, S).phi == phi_out_subset_from_rows(G, S)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exact_matches_itertools_oracle(n):
    G = gamma(n)
    best = phi_out_exact(G)
    phi, _ = phi_out_bruteforce([list(r) for r in G.matrix])
    assert best.phi == phi
    assert phi_out_subset(G, best.subset).phi == phi


def test_exact_values():
    r = phi_out_exact(gamma(1))
    assert r.phi == Fraction(1, 3) and r.subset == (1,)
    r = phi_out_exact(gamma(2))
    assert r.phi == Fraction(1, 12) and r.subset == (0, 1, 2)
    assert r.phi <= phi_out_subset(gamma(2), {2, 3, 4}).phi
    assert phi_out_exact(gamma(3)).phi == Fraction(1, 21)


def test_complete_uniform_digraph():
    k = 5
    G = toy([[1] * k for _ in range(k)])
    r = phi_out_exact(G)
    # boundary |S|(k-|S|) over min volume k*min(|S|, k-|S|): smallest at |S| = 2
    assert r.phi == Fraction(3, 5) and len(r.subset) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_heuristic_is_an_upper_bound(n):
    G = gamma(n)
    h = phi_out_heuristic(G, seed=0)
    assert not h.exact
    assert h.phi >= phi_out_exact(G).phi
    assert phi_out_heuristic(G, seed=0) == h


def test_bridged_bound_values():
    b1 = phi_out_bridged_bound(gamma(1))
    assert b1.result.phi == Fraction(1, 3) and b1.volume_bound == Fraction(1, 3)
    assert b1.bound_holds and b1.below_volume_bound
    b2 = phi_out_bridged_bound(gamma(2))
    assert b2.result.boundary == 2 and b2.bridged_count == 3
    assert b2.result.phi == Fraction(1, 12)
    b3 = phi_out_bridged_bound(gamma(3))
    assert (b3.result.boundary, b3.bridged_count) == (8, 12)
    assert b3.result.phi == Fraction(4, 45)
    assert b3.bound_holds


@pytest.mark.parametrize("n", [1, 2, 3])
def test_boundary_arcs_are_localized(n):
    arcs = boundary_arcs(gamma(n))
    assert len(arcs) == phi_out_bridged_bound(gamma(n)).result.boundary
    assert all(a.localized for a in arcs)
