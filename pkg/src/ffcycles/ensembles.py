"""Deterministic generators for point sets.

Recipes have a short text form used by the CLI and configs::

    full
    rand:p=0.5:seed=3          each point kept with probability p
    randn:m=50:seed=7          m distinct points
    sphere:t=1                 the sphere ||x|| = t
    prod:A=0,1,2               the product set A^d
    affine:basis=1,0;0,1:shift=2,2
    spheres:t=1:at=0,0;1,1     union of translated spheres
    file:PATH

Random recipes are pure functions of (q, d, recipe, seed).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadRecipe
from .field import FieldCtx, PointSet
from .rng import Rng
from .spectra import sphere

KINDS = ("full", "rand", "randn", "sphere", "prod", "affine", "spheres", "file")


@dataclass(frozen=True)
class SetRecipe:
    kind: str
    params: tuple = ()
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadRecipe(f"unknown recipe kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(sorted(dict(self.params).items())))

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    def with_seed(self, seed: int) -> "SetRecipe":
        return SetRecipe(self.kind, self.params, seed)

    def __str__(self) -> str:
        if self.kind == "file":
            return f"file:{self.get('path')}"
        parts = [self.kind]
        for k, v in self.params:
            parts.append(f"{k}={_fmt(v)}")
        if self.kind in ("rand", "randn"):
            parts.append(f"seed={self.seed}")
        return ":".join(parts)


def _fmt(v) -> str:
    if isinstance(v, tuple) and v and isinstance(v[0], tuple):
        return ";".join(",".join(str(c) for c in row) for row in v)
    if isinstance(v, tuple):
        return ",".join(str(c) for c in v)
    return str(v)


def _vec(text: str) -> tuple:
    return tuple(int(c) for c in text.split(","))


def _vecs(text: str) -> tuple:
    return tuple(_vec(part) for part in text.split(";") if part)


def full() -> SetRecipe:
    return SetRecipe("full")


def random_density(p: float, seed: int = 0) -> SetRecipe:
    return SetRecipe("rand", {"p": float(p)}, seed)


def random_size(m: int, seed: int = 0) -> SetRecipe:
    return SetRecipe("randn", {"m": int(m)}, seed)


def sphere_recipe(t: int) -> SetRecipe:
    return SetRecipe("sphere", {"t": int(t)})


def product(A) -> SetRecipe:
    return SetRecipe("prod", {"A": tuple(int(a) for a in A)})


def affine_subspace(basis, shift) -> SetRecipe:
    return SetRecipe("affine", {"basis": tuple(tuple(int(c) for c in b) for b in basis),
                                "shift": tuple(int(c) for c in shift)})


def sphere_union(t: int, translates) -> SetRecipe:
    return SetRecipe("spheres", {"t": int(t), "at": tuple(tuple(int(c) for c in v) for v in translates)})


def from_file(path) -> SetRecipe:
    return SetRecipe("file", {"path": str(path)})


def parse_recipe(text: str, seed: int | None = None) -> SetRecipe:
    """Parse the recipe mini-language; an explicit ``seed`` overrides ``:seed=``."""
    text = text.strip()
    if text.startswith("file:"):
        return from_file(text[5:])
    kind, *rest = text.split(":")
    opts = {}
    for item in rest:
        if "=" not in item:
            raise BadRecipe(f"malformed recipe option {item!r}")
        k, v = item.split("=", 1)
        opts[k.strip()] = v.strip()
    s = int(opts.pop("seed", 0)) if seed is None else int(seed)
    opts.pop("seed", None)
    try:
        if kind == "full":
            r = full()
        elif kind == "rand":
            r = random_density(float(opts.pop("p")), s)
        elif kind == "randn":
            r = random_size(int(opts.pop("m")), s)
        elif kind == "sphere":
            r = sphere_recipe(int(opts.pop("t")))
        elif kind == "prod":
            r = product(_vec(opts.pop("A")))
        elif kind == "affine":
            r = affine_subspace(_vecs(opts.pop("basis")), _vec(opts.pop("shift", "0")))
        elif kind == "spheres":
            r = sphere_union(int(opts.pop("t")), _vecs(opts.pop("at")))
        else:
            raise BadRecipe(f"unknown recipe kind {kind!r}")
    except KeyError as exc:
        raise BadRecipe(f"recipe {kind!r} is missing option {exc.args[0]!r}") from None
    except ValueError as exc:
        if isinstance(exc, BadRecipe):
            raise
        raise BadRecipe(f"bad value in recipe {text!r}: {exc}") from None
    if opts:
        raise BadRecipe(f"unknown options for {kind!r}: {sorted(opts)}")
    return r


def _rank_mod_p(rows: list[tuple], q: int) -> int:
    M = [list(r) for r in rows]
    rank, cols = 0, len(M[0]) if M else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(M)) if M[i][c] % q), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = pow(M[rank][c], q - 2, q)
        M[rank] = [v * inv % q for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c] % q:
                f = M[i][c]
                M[i] = [(a - f * b) % q for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def generate_set(ctx: FieldCtx, recipe: SetRecipe | str) -> PointSet:
    if isinstance(recipe, str):
        recipe = parse_recipe(recipe)
    q, d, N = ctx.q, ctx.d, ctx.size
    kind = recipe.kind
    if kind == "full":
        return PointSet.full(ctx)
    if kind == "rand":
        p = recipe.get("p")
        if not 0.0 <= p <= 1.0:
            raise BadRecipe("density must lie in [0, 1]")
        rng = Rng(recipe.seed, stream=1)
        keep = [i for i in range(N) if rng.random() < p]
        sd = math.sqrt(N * p * (1 - p))
        if abs(len(keep) - N * p) > 5 * sd + 1e-12:
            raise BadRecipe(f"random_density drew {len(keep)} points, more than 5 sd from {N * p}")
        return PointSet.from_indices(ctx, keep)
    if kind == "randn":
        m = recipe.get("m")
        if not 0 <= m <= N:
            raise BadRecipe(f"cannot draw {m} points from {N}")
        return PointSet.from_indices(ctx, Rng(recipe.seed, stream=2).sample(N, m))
    if kind == "sphere":
        return sphere(ctx, recipe.get("t"))
    if kind == "prod":
        A = sorted({a % q for a in recipe.get("A")})
        if not A:
            raise BadRecipe("product set needs a nonempty A")
        grid = np.array(np.meshgrid(*([A] * d), indexing="ij")).reshape(d, -1).T
        return PointSet.from_array(ctx, grid)
    if kind == "affine":
        basis, shift = recipe.get("basis"), recipe.get("shift")
        if any(len(b) != d for b in basis) or len(shift) not in (1, d):
            raise BadRecipe("basis vectors and shift must have d coordinates")
        if shift == (0,):
            shift = (0,) * d
        if basis and _rank_mod_p(list(basis), q) != len(basis):
            raise BadRecipe("affine basis is not linearly independent")
        coeffs = np.indices((q,) * len(basis)).reshape(len(basis), -1).T if basis else np.zeros((1, 0), int)
        B = np.array(basis, dtype=np.int64).reshape(len(basis), d)
        pts = coeffs @ B + np.array(shift, dtype=np.int64)
        return PointSet.from_array(ctx, pts)
    if kind == "spheres":
        S = sphere(ctx, recipe.get("t")).coords
        parts = []
        for v in recipe.get("at"):
            if len(v) != d:
                raise BadRecipe("translates must have d coordinates")
            parts.append(S + np.array(v, dtype=np.int64))
        return PointSet.from_array(ctx, np.concatenate(parts) if parts else np.zeros((0, d)))
    if kind == "file":
        from .formats import read_point_set

        E = read_point_set(recipe.get("path"))
        if E.ctx != ctx:
            raise BadRecipe(f"file is over F_{E.ctx.q}^{E.ctx.d}, expected F_{q}^{d}")
        return E
    raise BadRecipe(f"unknown recipe kind {kind!r}")
