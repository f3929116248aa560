"""CMG text format and move-list files.

A CMG block is ``cmg <2n>`` followed by ``3n`` lines ``u v``; ``#`` starts
a comment.  Edge ids are line order.
"""
from __future__ import annotations

from .graph import CubicMultigraph, InvalidGraphError


class FormatError(ValueError):
    pass


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def dumps(g: CubicMultigraph) -> str:
    lines = [f"cmg {g.num_vertices}"]
    lines.extend(f"{u} {v}" for u, v in g.vertex_pairs)
    return "\n".join(lines) + "\n"


def loads(text: str) -> CubicMultigraph:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty CMG input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "cmg" or not head[1].isdigit():
        raise FormatError(f"bad CMG header {lines[0]!r}")
    nv = int(head[1])
    pairs = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError(f"bad edge line {line!r}") from exc
    try:
        return CubicMultigraph.from_edges(nv, pairs)
    except InvalidGraphError as exc:
        raise FormatError(str(exc)) from exc


def loads_many(text: str) -> list[CubicMultigraph]:
    """Parse blank-line separated CMG blocks."""
    blocks, current = [], []
    for raw in text.splitlines():
        if raw.strip() == "":
            if current:
                blocks.append("\n".join(current))
                current = []
        else:
            current.append(raw)
    if current:
        blocks.append("\n".join(current))
    return [loads(b) for b in blocks if any(True for _ in _content_lines(b))]


def dumps_moves(moves) -> str:
    return "".join(f"{m.edge} {m.move_type}\n" for m in moves)


def loads_moves(text: str):
    from .moves import WhiteheadMove

    moves = []
    for line in _content_lines(text):
        parts = line.split()
        if len(parts) < 2:
            raise FormatError(f"bad move line {line!r}")
        moves.append(WhiteheadMove(int(parts[0]), int(parts[1])))
    return moves
