"""Text formats: point sets, phi tables and adjacency lists.

Point set::

    q d
    x_1 ... x_d          (one point per line, duplicates rejected)

Phi table (a total function on F_q^d x F_q^d)::

    q d
    x_1 ... x_d y_1 ... y_d value     (one line per ordered pair)

Blank lines and lines starting with ``#`` are ignored in both.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import FileFormat
from .field import FieldCtx, PointSet, make_context
from .graphs import Graph, PhiTable


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _ints(no: int, line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FileFormat(f"line {no}: expected integers, got {line!r}") from None


def _header(lines) -> FieldCtx:
    try:
        no, line = next(lines)
    except StopIteration:
        raise FileFormat("empty file: expected a 'q d' header") from None
    vals = _ints(no, line)
    if len(vals) != 2:
        raise FileFormat(f"line {no}: header must be 'q d'")
    return make_context(*vals)


def parse_point_set(text: str) -> PointSet:
    lines = _lines(text)
    ctx = _header(lines)
    seen, pts = set(), []
    for no, line in lines:
        vals = _ints(no, line)
        if len(vals) != ctx.d:
            raise FileFormat(f"line {no}: expected {ctx.d} coordinates")
        if any(not 0 <= v < ctx.q for v in vals):
            raise FileFormat(f"line {no}: coordinates must lie in [0, {ctx.q})")
        key = tuple(vals)
        if key in seen:
            raise FileFormat(f"line {no}: duplicate point {key}")
        seen.add(key)
        pts.append(key)
    return PointSet.from_points(ctx, pts)


def read_point_set(path) -> PointSet:
    return parse_point_set(Path(path).read_text())


def format_point_set(E: PointSet) -> str:
    rows = [f"{E.ctx.q} {E.ctx.d}"]
    rows += [" ".join(str(c) for c in p) for p in E]
    return "\n".join(rows) + "\n"


def write_point_set(E: PointSet, path) -> None:
    Path(path).write_text(format_point_set(E))


def parse_phi_table(text: str) -> tuple[FieldCtx, PhiTable]:
    lines = _lines(text)
    ctx = _header(lines)
    N = ctx.size
    table = np.full((N, N), -1, dtype=np.int64)
    for no, line in lines:
        vals = _ints(no, line)
        if len(vals) != 2 * ctx.d + 1:
            raise FileFormat(f"line {no}: expected {2 * ctx.d + 1} integers")
        i, j = ctx.index(ctx.reduce(vals[:ctx.d])), ctx.index(ctx.reduce(vals[ctx.d:-1]))
        if table[i, j] >= 0:
            raise FileFormat(f"line {no}: pair given twice")
        table[i, j] = vals[-1] % ctx.q
    if (table < 0).any():
        raise FileFormat(f"phi table incomplete: {int((table < 0).sum())} pairs missing")
    return ctx, PhiTable(ctx, table)


def read_phi_table(path) -> tuple[FieldCtx, PhiTable]:
    return parse_phi_table(Path(path).read_text())


def write_adjacency(G: Graph, path) -> None:
    Path(path).write_text(G.adjacency_list())
