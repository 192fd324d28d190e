"""
Spheres in F_q^d and their Fourier coefficients
===============================================

A sphere S_t = {x : x_1^2 + ... + x_d^2 = t} over a prime field has about
q^(d-1) points, and for t != 0 its nonzero Fourier coefficients are tiny:
q^d |S_t^(m)| never exceeds 2 q^((d-1)/2).  That decay is what makes
distance graphs behave like random graphs.  This script tabulates both
facts and then estimates how strongly the averaging operator smooths.

Run with ``python demos/spheres_and_fourier.py``.
"""
import numpy as np

from ffcycles import GraphSpec, make_context, smoothing_order, sphere
from ffcycles.spectra import sphere_coefficients

# %%
# Sphere sizes.  In the plane the count is exactly q - 1 or q + 1, decided
# by whether -1 is a square mod q.
print(" q  d   t  |S_t|  q^(d-1)")
for q in (5, 7, 11, 13):
    for d in (2, 3):
        ctx = make_context(q, d)
        sizes = {len(sphere(ctx, t)) for t in range(1, q)}
        print(f"{q:2d}  {d}  1..{q - 1:<2d} {sorted(sizes)}  {q ** (d - 1)}")

# %%
# Largest nonzero coefficient, scaled by q^d, against the bound
# 2 q^((d-1)/2).  The ratio column stays below 1.
print("\n q  d  max q^d|S^(m)|  bound   ratio")
for q in (5, 7, 11, 13):
    for d in (2, 3):
        ctx = make_context(q, d)
        worst = max(np.abs(sphere_coefficients(ctx, t)[1:]).max() for t in range(1, q)) * q ** d
        bound = 2 * q ** ((d - 1) / 2)
        print(f"{q:2d}  {d}  {worst:14.4f}  {bound:6.3f}  {worst / bound:.3f}")

# %%
# Smoothing order.  Strip the mean from the averaging operator and measure
# its top singular value sigma; the order is alpha = (d - 1) - log_q sigma.
# Distance and dot-product operators both land near (d - 1)/2.
print("\nrelation  q  d  sigma    alpha   sigma/q^((d-1)/2)")
for rel, spec in (("dist", GraphSpec.dist(1)), ("prod", GraphSpec.prod(1))):
    for q, d in ((5, 2), (7, 2), (11, 2), (5, 3)):
        rep = smoothing_order(make_context(q, d), spec)
        print(f"{rel:8s} {q:2d}  {d}  {rep.sigma_max:7.3f}  {rep.alpha_estimate:.3f}   {rep.c_constant:.3f}")
