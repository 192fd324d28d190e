"""Spheres, the Fourier transform on F_q^d, and spectral estimates.

The transform is normalised as

    fhat(m) = q^-d * sum_x chi(-x.m) f(x),     chi(a) = exp(2 pi i a / q),

with inverse ``f(x) = sum_m chi(x.m) fhat(m)``.  It is computed as d
successive length-q transforms, one per axis of the ``(q,)*d`` grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .errors import TooLarge, ZeroParameter
from .field import FieldCtx, PointSet
from .graphs import GraphSpec, Relation
from .reports import le_outward
from .rng import Rng

SMOOTHING_CAP = 10_000


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A function on F_q^d stored as a flat array in lexicographic order.

    Integer dtypes are exact; complex/float dtypes are floating point.
    """

    ctx: FieldCtx
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values).ravel()
        if len(v) != self.ctx.size:
            raise ValueError(f"expected {self.ctx.size} values, got {len(v)}")
        object.__setattr__(self, "values", v)

    @property
    def exact(self) -> bool:
        return self.values.dtype.kind in "biuO"

    @property
    def grid(self) -> np.ndarray:
        return self.values.reshape((self.ctx.q,) * self.ctx.d)

    @classmethod
    def indicator(cls, E: PointSet) -> "GridFunction":
        v = np.zeros(E.ctx.size, dtype=np.int64)
        v[E.indices()] = 1
        return cls(E.ctx, v)

    def __call__(self, x) -> complex | int:
        return self.values[self.ctx.index(self.ctx.reduce(x))]

    def l1(self):
        return np.abs(self.values).sum()

    def l2sq(self):
        if self.exact:
            return sum(int(v) * int(v) for v in self.values)
        return float((np.abs(self.values) ** 2).sum())


def sphere(ctx: FieldCtx, t: int) -> PointSet:
    """All x with ||x|| = t."""
    pts = ctx.all_points()
    mask = (pts * pts).sum(axis=1) % ctx.q == t % ctx.q
    return PointSet.from_array(ctx, pts[mask])


def fourier(f: GridFunction) -> GridFunction:
    q, d = f.ctx.q, f.ctx.d
    vals = f.grid.astype(np.complex128)
    for axis in range(d):
        vals = np.fft.fft(vals, axis=axis)
    return GridFunction(f.ctx, vals.ravel() / q ** d)


def inverse_fourier(fhat: GridFunction) -> GridFunction:
    q, d = fhat.ctx.q, fhat.ctx.d
    vals = fhat.grid.astype(np.complex128)
    for axis in range(d):
        vals = np.fft.ifft(vals, axis=axis) * q
    return GridFunction(fhat.ctx, vals.ravel())


def sphere_coefficients(ctx: FieldCtx, t: int) -> np.ndarray:
    """Fourier coefficients of the indicator of S_t (real: S_t = -S_t)."""
    return fourier(GridFunction.indicator(sphere(ctx, t))).values


@dataclass(frozen=True)
class SpectralReport:
    q: int
    d: int
    t: int
    sphere_size: int
    size_deviation: int
    size_bound: float
    max_nonzero_coeff: float
    coeff_bound: float
    passes_size: bool
    passes_d2: bool | None
    passes_coeff: bool
    passes_upper: bool

    @property
    def passes(self) -> bool:
        return self.passes_size and self.passes_d2 is not False and self.passes_coeff and self.passes_upper

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["passes"] = self.passes
        return out


def spectral_report(ctx: FieldCtx, t: int) -> SpectralReport:
    """Sphere size and Fourier-coefficient checks for S_t, t != 0."""
    q, d = ctx.q, ctx.d
    if t % q == 0:
        raise ZeroParameter("spectral bounds need t != 0")
    S = sphere(ctx, t)
    size = len(S)
    dev = size - q ** (d - 1)
    coeffs = fourier(GridFunction.indicator(S)).values
    max_coeff = float(np.abs(coeffs[1:]).max())
    bound = 2 * q ** (-(d + 1) / 2)
    return SpectralReport(
        q=q, d=d, t=t % q,
        sphere_size=size,
        size_deviation=dev,
        size_bound=q ** (d / 2),
        max_nonzero_coeff=max_coeff,
        coeff_bound=bound,
        passes_size=dev * dev <= q ** d,
        passes_d2=(size in (q - 1, q + 1)) if d == 2 else None,
        passes_coeff=le_outward(max_coeff, bound),
        passes_upper=size <= 2 * q ** (d - 1),
    )


@dataclass(frozen=True)
class SmoothingReport:
    q: int
    d: int
    relation: str
    t: int
    sigma_max: float
    alpha_estimate: float
    c_constant: float
    passes_c2: bool
    size_condition_min: int
    size_condition_max: int
    degenerate_points: tuple = ()
    iterations: int = 0

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["degenerate_points"] = [list(p) for p in self.degenerate_points]
        return out


def full_relation(ctx: FieldCtx, spec: GraphSpec) -> sparse.csr_matrix:
    """Sparse 0/1 matrix of the relation on all of F_q^d."""
    from .graphs import relation_matrix

    pts = ctx.all_points()
    rows, cols = [], []
    step = max(1, (1 << 22) // (ctx.size * ctx.d))
    for i in range(0, ctx.size, step):
        block = relation_matrix(spec, ctx, pts[i:i + step], pts)
        if not spec.loops:
            for k in range(block.shape[0]):
                block[k, i + k] = 0
        r, c = np.nonzero(block)
        rows.append(r + i)
        cols.append(c)
    r = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    c = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    data = np.ones(len(r), dtype=np.float64)
    return sparse.csr_matrix((data, (r, c)), shape=(ctx.size, ctx.size))


def top_singular_value(M: sparse.spmatrix, tol: float = 1e-9, max_iter: int = 10_000,
                       seed: int = 0) -> tuple[float, int]:
    """Largest singular value of ``(I - J/N) M`` by power iteration on M0^T M0.

    Returns ``(sigma, iterations)``.  The start vector comes from a fixed seed.
    """
    N = M.shape[0]
    Mt = M.T.tocsr()

    def apply(v):
        u = M @ v
        u = u - u.mean()
        return Mt @ (u - u.mean())

    rng = Rng(seed)
    v = np.array([rng.random() - 0.5 for _ in range(N)])
    v /= np.linalg.norm(v)
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = apply(v)
        lam = float(v @ w)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0, it
        resid = np.linalg.norm(w - lam * v)
        v = w / nw
        if resid <= tol * max(lam, 1e-300):
            break
    return math.sqrt(max(lam, 0.0)), it


def smoothing_order(ctx: FieldCtx, spec: GraphSpec) -> SmoothingReport:
    """Estimate the smoothing order of the mean-stripped averaging operator.

    ``alpha_estimate = (d - 1) - log_q(sigma_max)``; ``c_constant`` is
    ``sigma_max / q^((d-1)/2)``, checked against 2.
    """
    q, d = ctx.q, ctx.d
    if ctx.size > SMOOTHING_CAP:
        raise TooLarge(f"q^d = {ctx.size} exceeds {SMOOTHING_CAP}")
    M = full_relation(ctx, spec)
    sigma, iters = top_singular_value(M)
    rows = np.asarray(M.sum(axis=1)).ravel().astype(np.int64)
    cols = np.asarray(M.sum(axis=0)).ravel().astype(np.int64)
    keep = np.ones(ctx.size, dtype=bool)
    degenerate = ()
    if spec.relation is Relation.PROD and spec.t % q:
        keep[0] = False
        degenerate = ((0,) * d,)
    sums = np.concatenate([rows[keep], cols[keep]])
    alpha = (d - 1) - math.log(sigma, q) if sigma > 0 else math.inf
    c = sigma / q ** ((d - 1) / 2)
    return SmoothingReport(
        q=q, d=d, relation=spec.name, t=spec.t % q,
        sigma_max=sigma, alpha_estimate=alpha, c_constant=c,
        passes_c2=le_outward(c, 2.0),
        size_condition_min=int(sums.min()), size_condition_max=int(sums.max()),
        degenerate_points=degenerate, iterations=iters,
    )
