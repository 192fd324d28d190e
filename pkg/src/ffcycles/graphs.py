"""Relation graphs on point sets: distance, dot-product and custom phi.

A :class:`GraphSpec` says which relation joins two points; :func:`build_graph`
materialises the exact 0/1 adjacency matrix on a :class:`PointSet`.  Edge
counts are always ordered pairs, so an undirected edge contributes 2 and a
dot-product self-loop contributes 1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import AsymmetricRelation, TooLarge, ZeroParameter
from .field import FieldCtx, PointSet
from .reports import BoundReport

MAX_VERTICES = 20_000
_CHUNK_CELLS = 1 << 22


class Relation(str, Enum):
    DIST = "dist"
    PROD = "prod"
    CUSTOM = "custom"


# A phi takes two broadcastable integer arrays of shape (..., d) and returns
# the residues phi(x, y) with shape (...).
Phi = Callable[[np.ndarray, np.ndarray], np.ndarray]


def phi_dist(x, y):
    diff = x - y
    return (diff * diff).sum(axis=-1)


def phi_prod(x, y):
    return (x * y).sum(axis=-1)


def phi_zero(x, y):
    return np.zeros(np.broadcast_shapes(x.shape, y.shape)[:-1], dtype=np.int64)


def phi_sum(x, y):
    return (x + y).sum(axis=-1)


BUILTIN_PHI: dict[str, Phi] = {
    "dist": phi_dist,
    "prod": phi_prod,
    "zero": phi_zero,
    "sum": phi_sum,
}


def pointwise(func: Callable[[tuple, tuple], int]) -> Phi:
    """Wrap a scalar ``func(x, y)`` on coordinate tuples as an array phi."""

    def phi(x, y):
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        out = np.empty(x.shape[:-1], dtype=np.int64)
        for idx in np.ndindex(out.shape):
            out[idx] = func(tuple(int(c) for c in x[idx]), tuple(int(c) for c in y[idx]))
        return out

    phi.__name__ = getattr(func, "__name__", "pointwise")
    return phi


class PhiTable:
    """A phi given by an explicit table over F_q^d x F_q^d."""

    def __init__(self, ctx: FieldCtx, table: np.ndarray):
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (ctx.size, ctx.size):
            raise ValueError(f"table must be {ctx.size}x{ctx.size}")
        self.ctx = ctx
        self.table = table % ctx.q

    def _rank(self, x):
        q = self.ctx.q
        r = np.zeros(x.shape[:-1], dtype=np.int64)
        for j in range(x.shape[-1]):
            r = r * q + (x[..., j] % q)
        return r

    def __call__(self, x, y):
        return self.table[self._rank(np.asarray(x)), self._rank(np.asarray(y))]


@dataclass(frozen=True)
class GraphSpec:
    """Which pairs (x, y) are joined: ``phi(x, y) == t``.

    ``loops=False`` zeroes the diagonal (the dot-product self-loops are kept
    by default).  ``symmetric=True`` makes :func:`build_graph` refuse a custom
    phi whose relation is not symmetric on the vertex set.
    """

    relation: Relation
    t: int
    phi: Phi | None = None
    symmetric: bool = True
    loops: bool = True

    def __post_init__(self):
        object.__setattr__(self, "relation", Relation(self.relation))
        if self.relation is Relation.CUSTOM and self.phi is None:
            raise ValueError("custom relation requires phi")

    @classmethod
    def dist(cls, t: int, **kw) -> "GraphSpec":
        return cls(Relation.DIST, t, **kw)

    @classmethod
    def prod(cls, t: int, **kw) -> "GraphSpec":
        return cls(Relation.PROD, t, **kw)

    @classmethod
    def custom(cls, phi: Phi | str, t: int, **kw) -> "GraphSpec":
        if isinstance(phi, str):
            phi = BUILTIN_PHI[phi]
        return cls(Relation.CUSTOM, t, phi=phi, **kw)

    @property
    def name(self) -> str:
        if self.relation is Relation.CUSTOM:
            return f"custom:{getattr(self.phi, '__name__', 'phi')}"
        return self.relation.value

    def phi_values(self, ctx: FieldCtx, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.relation is Relation.DIST:
            v = phi_dist(x, y)
        elif self.relation is Relation.PROD:
            v = phi_prod(x, y)
        else:
            v = np.asarray(self.phi(x, y))
        return np.mod(v, ctx.q)

    def related(self, ctx: FieldCtx, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.phi_values(ctx, x, y) == (self.t % ctx.q)

    def relates(self, ctx: FieldCtx, x, y) -> bool:
        """Single-pair test, honouring ``loops``."""
        x = np.asarray(ctx.reduce(x), dtype=np.int64)
        y = np.asarray(ctx.reduce(y), dtype=np.int64)
        if not self.loops and np.array_equal(x, y):
            return False
        return bool(self.related(ctx, x, y))


def relation_matrix(spec: GraphSpec, ctx: FieldCtx, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """0/1 matrix ``[phi(rows[i], cols[j]) == t]`` computed in row chunks."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, ctx.d)
    cols = np.asarray(cols, dtype=np.int64).reshape(-1, ctx.d)
    out = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    step = max(1, _CHUNK_CELLS // max(1, len(cols) * ctx.d))
    for i in range(0, len(rows), step):
        block = spec.related(ctx, rows[i:i + step, None, :], cols[None, :, :])
        out[i:i + step] = block
    return out


@dataclass(frozen=True, eq=False)
class Graph:
    vertices: PointSet
    spec: GraphSpec
    adjacency: np.ndarray = field(repr=False)
    symmetric: bool = True
    warnings: tuple[str, ...] = ()

    @property
    def ctx(self) -> FieldCtx:
        return self.vertices.ctx

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    @cached_property
    def bits(self) -> list[int]:
        """Row ``i`` as a Python-int bitset (bit ``j`` set iff A[i, j])."""
        m = len(self)
        if m == 0:
            return []
        packed = np.packbits(self.adjacency.astype(bool), axis=1, bitorder="little")
        return [int.from_bytes(row.tobytes(), "little") for row in packed]

    @property
    def ordered_edges(self) -> int:
        return int(self.adjacency.sum(dtype=np.int64))

    @property
    def undirected_edges(self) -> Fraction:
        """Ordered count / 2, the human-facing "number of edges"."""
        return Fraction(self.ordered_edges, 2)

    def require_symmetric(self) -> None:
        if not self.symmetric:
            raise AsymmetricRelation("operation assumes a symmetric relation")

    def induced(self, mask) -> "Graph":
        mask = np.asarray(mask, dtype=bool)
        sub = self.adjacency[np.ix_(mask, mask)]
        sub.setflags(write=False)
        return Graph(self.vertices.subset(mask), self.spec, sub, self.symmetric, self.warnings)

    def adjacency_list(self) -> str:
        lines = []
        for i in range(len(self)):
            nbrs = np.nonzero(self.adjacency[i])[0]
            lines.append(" ".join(str(v) for v in [i, *nbrs.tolist()]))
        return "\n".join(lines) + ("\n" if lines else "")


def build_graph(E: PointSet, spec: GraphSpec) -> Graph:
    ctx = E.ctx
    if len(E) > MAX_VERTICES:
        raise TooLarge(f"|E|={len(E)} exceeds the {MAX_VERTICES} vertex cap")
    notes = []
    if spec.t % ctx.q == 0 and spec.relation is not Relation.CUSTOM:
        notes.append("t = 0: outside the range covered by the theorems")
        warnings.warn("building a graph with t = 0", stacklevel=2)
    A = relation_matrix(spec, ctx, E.coords, E.coords)
    if not spec.loops:
        np.fill_diagonal(A, 0)
    symmetric = True
    if spec.relation is Relation.CUSTOM:
        symmetric = bool(np.array_equal(A, A.T))
        if not symmetric and spec.symmetric:
            raise AsymmetricRelation("custom phi is not symmetric on this vertex set")
        if symmetric and spec.symmetric:
            _audit_phi_symmetry(ctx, spec)
    A.setflags(write=False)
    return Graph(E, spec, A, symmetric, tuple(notes))


def _audit_phi_symmetry(ctx: FieldCtx, spec: GraphSpec, samples: int = 1000) -> None:
    """Spot-check phi(x, y) == phi(y, x) on random pairs of F_q^d."""
    from .rng import Rng

    rng = Rng(0x5EED)
    x = np.array([[rng.below(ctx.q) for _ in range(ctx.d)] for _ in range(samples)], dtype=np.int64)
    y = np.array([[rng.below(ctx.q) for _ in range(ctx.d)] for _ in range(samples)], dtype=np.int64)
    a = spec.related(ctx, x, y)
    b = spec.related(ctx, y, x)
    if not np.array_equal(a, b):
        raise AsymmetricRelation("custom phi failed the random symmetry audit")


def _require_nonzero(spec: GraphSpec, ctx: FieldCtx) -> None:
    if spec.t % ctx.q == 0:
        raise ZeroParameter("t must be nonzero")


def edge_report(G: Graph) -> BoundReport:
    """Ordered edge count against ``|E|**2 / q``.

    The remainder bound is ``2 q^((d-1)/2) |E|`` for distances and
    ``q^((d-1)/2) |E|`` for dot products; the check is done on squared
    integers so it is exact.
    """
    ctx = G.ctx
    _require_nonzero(G.spec, ctx)
    if G.spec.relation is Relation.CUSTOM:
        raise ZeroParameter("edge identities are stated for dist and prod only")
    q, d, m = ctx.q, ctx.d, len(G)
    K = 2 if G.spec.relation is Relation.DIST else 1
    N = G.ordered_edges
    residual = Fraction(N) - Fraction(m * m, q)
    scaled = q * N - m * m
    holds = scaled * scaled <= K * K * q ** (d + 1) * m * m
    rhs = K * q ** ((d - 1) / 2) * m
    return BoundReport(
        theorem="EDGES_" + G.spec.relation.value.upper(),
        hypothesis_satisfied=True,
        lhs=abs(residual),
        rhs=rhs,
        holds=holds,
        hypothesis_terms={"t": G.spec.t},
        extra={"N": N, "residual": residual, "undirected_edges": G.undirected_edges,
               "K": K, "size": m},
    )


@dataclass(frozen=True)
class TruncationResult:
    kept: PointSet
    mask: np.ndarray
    removed_count: int
    lam: float | Fraction
    degree_cap: float
    degrees: np.ndarray


def truncate(E: PointSet, spec: GraphSpec, lam, reference: PointSet | None = None) -> TruncationResult:
    """Keep the points of ``E`` whose degree is at most ``lam |ref| / q``.

    Degrees are counted against ``reference`` (default: ``E`` itself), so
    re-truncating the kept set with ``reference=E`` reproduces it.
    """
    ctx = E.ctx
    _require_nonzero(spec, ctx)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    ref = E if reference is None else reference
    A = relation_matrix(spec, ctx, E.coords, ref.coords)
    if not spec.loops and len(E):
        same = (E.coords[:, None, :] == ref.coords[None, :, :]).all(axis=-1)
        A[same] = 0
    deg = A.sum(axis=1, dtype=np.int64)
    m = len(ref)
    if isinstance(lam, (int, Fraction)):
        mask = np.array([ctx.q * int(v) <= lam * m for v in deg], dtype=bool)
    else:
        mask = ctx.q * deg.astype(np.float64) <= float(lam) * m
    kept = E.subset(mask)
    return TruncationResult(kept, mask, len(E) - len(kept), lam, float(lam) * m / ctx.q, deg)
