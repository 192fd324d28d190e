import cmath
import itertools

import numpy as np
import pytest

from ffcycles import GraphSpec, PointSet, make_context
from ffcycles.errors import TooLarge, ZeroParameter
from ffcycles.spectra import (GridFunction, fourier, inverse_fourier, smoothing_order,
                              spectral_report, sphere, sphere_coefficients)


def brute_sphere(q, d, t):
    return sorted(p for p in itertools.product(range(q), repeat=d) if sum(c * c for c in p) % q == t % q)


def direct_fourier(ctx, values):
    """Character-sum definition, one coefficient at a time."""
    pts = [tuple(p) for p in ctx.all_points()]
    out = []
    for m in pts:
        s = 0
        for x, v in zip(pts, values):
            s += cmath.exp(-2j * cmath.pi * (sum(a * b for a, b in zip(x, m)) % ctx.q) / ctx.q) * v
        out.append(s / ctx.q ** ctx.d)
    return np.array(out)


def test_sphere_examples():
    ctx = make_context(5, 2)
    assert sphere(ctx, 1).points == [(0, 1), (0, 4), (1, 0), (4, 0)]
    assert len(sphere(ctx, 0)) == 9


@pytest.mark.parametrize("q,d", [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)])
def test_sphere_matches_enumeration(q, d):
    ctx = make_context(q, d)
    for t in range(q):
        assert sphere(ctx, t).points == brute_sphere(q, d, t)


@pytest.mark.parametrize("q,d", [(3, 2), (5, 2), (3, 3)])
def test_fft_matches_character_sum(q, d):
    ctx = make_context(q, d)
    rng = np.random.default_rng(1)
    vals = rng.integers(0, 5, ctx.size)
    fast = fourier(GridFunction(ctx, vals)).values
    assert np.allclose(fast, direct_fourier(ctx, vals), atol=1e-12)


def test_fourier_of_delta_and_constant():
    ctx = make_context(5, 2)
    delta = np.zeros(25, dtype=np.int64)
    delta[0] = 1
    assert np.allclose(fourier(GridFunction(ctx, delta)).values, 1 / 25)
    const = fourier(GridFunction(ctx, np.ones(25, dtype=np.int64))).values
    assert const[0] == pytest.approx(1) and np.allclose(const[1:], 0)


def test_inverse_and_plancherel():
    ctx = make_context(7, 2)
    vals = np.random.default_rng(3).normal(size=49) + 1j * np.random.default_rng(4).normal(size=49)
    f = GridFunction(ctx, vals)
    fh = fourier(f)
    assert np.allclose(inverse_fourier(fh).values, vals)
    lhs = float((np.abs(fh.values) ** 2).sum())
    rhs = float((np.abs(vals) ** 2).sum()) / 49
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_sphere_coefficients_are_real():
    ctx = make_context(5, 3)
    c = sphere_coefficients(ctx, 2)
    assert np.allclose(c.imag, 0, atol=1e-12)
    assert c[0].real == pytest.approx(len(sphere(ctx, 2)) / 125)


@pytest.mark.parametrize("q,d", [(3, 2), (5, 2), (7, 2), (5, 3)])
def test_spectral_report_passes(q, d):
    ctx = make_context(q, d)
    for t in range(1, q):
        rep = spectral_report(ctx, t)
        assert rep.passes
        if d == 2:
            assert rep.sphere_size in (q - 1, q + 1)


def test_spectral_report_rejects_zero():
    with pytest.raises(ZeroParameter):
        spectral_report(make_context(5, 2), 0)


def test_smoothing_distance_matches_dense_svd():
    ctx = make_context(5, 2)
    rep = smoothing_order(ctx, GraphSpec.dist(1))
    pts = ctx.all_points()
    diff = (pts[:, None, :] - pts[None, :, :]) % 5
    M = (((diff ** 2).sum(-1) % 5) == 1).astype(float)
    M0 = M - M.mean(axis=0, keepdims=True)
    assert rep.sigma_max == pytest.approx(np.linalg.svd(M0, compute_uv=False)[0], rel=1e-6)
    assert rep.passes_c2
    assert rep.size_condition_min == rep.size_condition_max == 4


def test_smoothing_prod_reports_origin():
    ctx = make_context(5, 2)
    rep = smoothing_order(ctx, GraphSpec.prod(1))
    assert rep.degenerate_points == ((0, 0),)
    assert rep.size_condition_min == rep.size_condition_max == 5
    assert rep.passes_c2


def test_smoothing_cap():
    with pytest.raises(TooLarge):
        smoothing_order(make_context(23, 3), GraphSpec.dist(1))


def test_indicator_norms():
    ctx = make_context(5, 2)
    f = GridFunction.indicator(PointSet.from_points(ctx, [(0, 0), (1, 2)]))
    assert f.l1() == 2 and f.l2sq() == 2
    assert f((1, 2)) == 1 and f((2, 1)) == 0
