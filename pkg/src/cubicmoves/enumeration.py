"""Exhaustive enumeration of connected cubic multigraph classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import cmg
from .canonical import canonical_form
from .graph import CubicMultigraph, GraphSizeError, is_connected

__all__ = [
    "ClassCatalog",
    "EXHAUSTIVE_LIMIT",
    "enumerate_classes",
    "enumerate_labelled_multigraphs",
    "enumerate_pairings",
    "load_catalog",
    "double_factorial",
]

EXHAUSTIVE_LIMIT = 3


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def _check_n(n: int):
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > EXHAUSTIVE_LIMIT:
        raise GraphSizeError(f"exhaustive enumeration limited to n <= {EXHAUSTIVE_LIMIT}")


def _pairings(free: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not free:
        yield []
        return
    first = free[0]
    for i in range(1, len(free)):
        rest = free[1:i] + free[i + 1:]
        for tail in _pairings(rest):
            yield [(first, free[i])] + tail


def enumerate_pairings(n: int, partner_of_zero: int | None = None) -> Iterator[CubicMultigraph]:
    """Stream all ``(6n-1)!!`` pairings on ``6n`` slots.

    ``partner_of_zero`` restricts to the block where slot 0 is matched to
    that slot, so the stream can be split across workers.
    """
    _check_n(n)
    slots = list(range(6 * n))
    partners = range(1, 6 * n) if partner_of_zero is None else [partner_of_zero]
    for p in partners:
        rest = [s for s in slots[1:] if s != p]
        for tail in _pairings(rest):
            yield CubicMultigraph(2 * n, tuple([(0, p)] + tail))


def enumerate_labelled_multigraphs(n: int, connected_only: bool = True) -> Iterator[CubicMultigraph]:
    """Every vertex-labelled cubic multigraph on ``2n`` vertices, once each.

    Fills the symmetric multiplicity matrix row by row: loops at ``v``,
    then multiplicities to larger vertices, subject to degree 3.
    """
    _check_n(n)
    nv = 2 * n
    residual = [3] * nv
    pairs: list[tuple[int, int]] = []

    def fill_row(v):
        if v == nv:
            g = CubicMultigraph.from_edges(nv, pairs)
            if not connected_only or is_connected(g):
                yield g
            return
        for loops in range(residual[v] // 2, -1, -1):
            residual[v] -= 2 * loops
            pairs.extend([(v, v)] * loops)
            yield from fill_cols(v, v + 1)
            del pairs[len(pairs) - loops:]
            residual[v] += 2 * loops

    def fill_cols(v, w):
        if residual[v] == 0:
            yield from fill_row(v + 1)
            return
        if w == nv:
            return
        for mult in range(min(residual[v], residual[w]), -1, -1):
            residual[v] -= mult
            residual[w] -= mult
            pairs.extend([(v, w)] * mult)
            yield from fill_cols(v, w + 1)
            del pairs[len(pairs) - mult:]
            residual[v] += mult
            residual[w] += mult

    yield from fill_row(0)


def class_sort_key(code: str):
    """Order classes by loop count, then code text."""
    g = cmg.loads(code)
    return (g.num_loops, code)


@dataclass
class ClassCatalog:
    n: int
    codes: list[str]
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {c: i for i, c in enumerate(self.codes)}
        if len(self.index) != len(self.codes):
            raise ValueError("catalog codes must be distinct")

    def __len__(self):
        return len(self.codes)

    def graphs(self) -> list[CubicMultigraph]:
        return [cmg.loads(c) for c in self.codes]

    def class_of(self, g: CubicMultigraph) -> int:
        return self.index[canonical_form(g)]

    def dumps(self) -> str:
        return "\n".join(self.codes)


def load_catalog(n: int, text: str) -> ClassCatalog:
    codes = [cmg.dumps(g) for g in cmg.loads_many(text)]
    return ClassCatalog(n, codes)


def enumerate_classes(n: int, method: str = "auto") -> ClassCatalog:
    """Catalog of classes of connected cubic multigraphs on ``2n`` vertices.

    ``method="pairings"`` canonises every pairing; ``"multigraphs"``
    canonises every labelled multigraph (each labelled multigraph is the
    image of one or more pairings, so both give the same classes).
    ``"auto"`` uses pairings for ``n <= 2`` and multigraphs for ``n = 3``.
    """
    _check_n(n)
    if method == "auto":
        method = "pairings" if n <= 2 else "multigraphs"
    if method == "pairings":
        source = (g for g in enumerate_pairings(n) if is_connected(g))
    elif method == "multigraphs":
        source = enumerate_labelled_multigraphs(n)
    else:
        raise ValueError(f"unknown method {method!r}")
    codes = {canonical_form(g) for g in source}
    return ClassCatalog(n, sorted(codes, key=class_sort_key))
