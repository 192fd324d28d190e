"""Prime-field arithmetic on F_q^d: contexts, points, point sets, the
quadratic form, the dot product and additive characters.

Points are plain tuples of residues.  A :class:`PointSet` keeps its points
deduplicated and in lexicographic order, stored as an ``(m, d)`` int64
array, so two sets are equal exactly when their arrays are equal.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BadDimension, LengthMismatch, NotPrime, TooLarge

MAX_MODULUS = 1 << 20

Point = tuple  # tuple[int, ...] of length d


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for n <= 2**20."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, math.isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    q: int
    d: int

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or self.q < 3 or not is_prime(int(self.q)):
            raise NotPrime(f"q={self.q} is not an odd prime")
        if self.q > MAX_MODULUS:
            raise TooLarge(f"q={self.q} exceeds the 2**20 cap")
        if not isinstance(self.d, (int, np.integer)) or self.d < 2:
            raise BadDimension(f"d={self.d}; dimension must be at least 2")

    @property
    def size(self) -> int:
        """Number of points of F_q^d."""
        return self.q ** self.d

    def reduce(self, x: Iterable[int]) -> Point:
        x = tuple(int(c) % self.q for c in x)
        if len(x) != self.d:
            raise LengthMismatch(f"expected {self.d} coordinates, got {len(x)}")
        return x

    def index(self, x: Sequence[int]) -> int:
        """Lexicographic rank of ``x`` among all q**d points."""
        i = 0
        for c in x:
            i = i * self.q + int(c)
        return i

    def point(self, index: int) -> Point:
        out = []
        for _ in range(self.d):
            index, c = divmod(index, self.q)
            out.append(c)
        return tuple(reversed(out))

    def all_points(self) -> np.ndarray:
        """Every point of F_q^d as a ``(q**d, d)`` array, lexicographic order."""
        grids = np.indices((self.q,) * self.d).reshape(self.d, -1)
        return grids.T.astype(np.int64)


def make_context(q: int, d: int) -> FieldCtx:
    return FieldCtx(q, d)


def _check(ctx: FieldCtx, *vecs) -> None:
    for v in vecs:
        if len(v) != ctx.d:
            raise LengthMismatch(f"expected {ctx.d} coordinates, got {len(v)}")


def norm(ctx: FieldCtx, x: Sequence[int]) -> int:
    """The quadratic form ``x_1**2 + ... + x_d**2 mod q``."""
    _check(ctx, x)
    return sum(int(c) * int(c) for c in x) % ctx.q


def dot(ctx: FieldCtx, x: Sequence[int], y: Sequence[int]) -> int:
    _check(ctx, x, y)
    return sum(int(a) * int(b) for a, b in zip(x, y)) % ctx.q


def sub(ctx: FieldCtx, x: Sequence[int], y: Sequence[int]) -> Point:
    _check(ctx, x, y)
    return tuple((int(a) - int(b)) % ctx.q for a, b in zip(x, y))


def character(ctx: FieldCtx, a: int) -> complex:
    """chi(a) = exp(2 pi i a / q)."""
    return cmath.exp(2j * math.pi * (int(a) % ctx.q) / ctx.q)


@dataclass(frozen=True, eq=False)
class PointSet:
    """A subset E of F_q^d.

    ``coords`` is an ``(m, d)`` int64 array of distinct points in
    lexicographic order.  Use :meth:`from_points` to build one from arbitrary
    input; the constructor trusts its argument.
    """

    ctx: FieldCtx
    coords: np.ndarray = field(repr=False)

    @classmethod
    def from_points(cls, ctx: FieldCtx, points: Iterable[Sequence[int]]) -> "PointSet":
        arr = np.array([tuple(p) for p in points], dtype=np.int64)
        if arr.size == 0:
            return cls(ctx, np.zeros((0, ctx.d), dtype=np.int64))
        if arr.ndim != 2 or arr.shape[1] != ctx.d:
            raise LengthMismatch(f"points must have {ctx.d} coordinates")
        return cls.from_array(ctx, arr)

    @classmethod
    def from_array(cls, ctx: FieldCtx, arr: np.ndarray) -> "PointSet":
        arr = np.asarray(arr, dtype=np.int64).reshape(-1, ctx.d) % ctx.q
        if len(arr):
            arr = np.unique(arr, axis=0)
        arr.setflags(write=False)
        return cls(ctx, arr)

    @classmethod
    def from_indices(cls, ctx: FieldCtx, indices: Iterable[int]) -> "PointSet":
        idx = np.unique(np.fromiter((int(i) for i in indices), dtype=np.int64))
        if len(idx) and (idx[0] < 0 or idx[-1] >= ctx.size):
            raise ValueError("point index out of range")
        arr = np.stack(np.unravel_index(idx, (ctx.q,) * ctx.d), axis=1) if len(idx) else np.zeros((0, ctx.d))
        return cls.from_array(ctx, arr)

    @classmethod
    def full(cls, ctx: FieldCtx) -> "PointSet":
        return cls.from_array(ctx, ctx.all_points())

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return (tuple(int(c) for c in row) for row in self.coords)

    def __contains__(self, x) -> bool:
        return self.position(x) is not None

    def __eq__(self, other) -> bool:
        return (isinstance(other, PointSet) and self.ctx == other.ctx
                and np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash((self.ctx, self.coords.tobytes()))

    @property
    def points(self) -> list[Point]:
        return list(self)

    def indices(self) -> np.ndarray:
        """Lexicographic ranks of the members inside F_q^d (sorted)."""
        q = self.ctx.q
        out = np.zeros(len(self), dtype=np.int64)
        for j in range(self.ctx.d):
            out = out * q + self.coords[:, j]
        return out

    def position(self, x) -> int | None:
        idx = self.ctx.index(self.ctx.reduce(x))
        ranks = self.indices()
        pos = int(np.searchsorted(ranks, idx))
        if pos < len(ranks) and ranks[pos] == idx:
            return pos
        return None

    def subset(self, mask: np.ndarray) -> "PointSet":
        arr = self.coords[np.asarray(mask, dtype=bool)]
        arr.setflags(write=False)
        return PointSet(self.ctx, arr)

    def translate(self, v: Sequence[int]) -> "PointSet":
        return PointSet.from_array(self.ctx, self.coords + np.asarray(self.ctx.reduce(v)))
