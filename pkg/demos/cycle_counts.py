"""
Counting cycles against the random-graph prediction
===================================================

Pick E inside F_q^d and join two points when their "distance" is t.  A
random pair is joined with probability about 1/q, so one expects roughly
|E|^n / q^n closed walks of length n.  Here we count them exactly, watch
the relative error fall as E gets denser, and separate out the
non-degenerate cycles (all vertices distinct).

Run with ``python demos/cycle_counts.py``.
"""
import statistics

from ffcycles import GraphSpec, build_graph, cycle_count, make_context, nondegenerate_count
from ffcycles.ensembles import generate_set, random_density

q, d = 11, 2
ctx = make_context(q, d)
spec = GraphSpec.dist(1)

# %%
# Relative error |C_n q^n / |E|^n - 1| for n = 4 and 6, averaged over a few
# seeds at each density.  The error shrinks as E fills up.  It stays of
# order one at q = 11 even for E = F_q^2, because a short walk can step
# back and forth along one edge and those walks are not rare when q is small.
print("density  |E|   err(C_4)  err(C_6)")
for p in (0.2, 0.4, 0.6, 0.8, 1.0):
    errs4, errs6, sizes = [], [], []
    for seed in range(5):
        G = build_graph(generate_set(ctx, random_density(p, seed)), spec)
        m = len(G)
        sizes.append(m)
        errs4.append(abs(cycle_count(G, 4).total * q ** 4 / m ** 4 - 1))
        errs6.append(abs(cycle_count(G, 6).total * q ** 6 / m ** 6 - 1))
    print(f"  {p:.1f}   {statistics.mean(sizes):5.1f}  {statistics.mean(errs4):.4f}    {statistics.mean(errs6):.4f}")

# %%
# How many closed walks are genuine cycles?  Short walks that backtrack
# dominate in sparse graphs; the share of distinct-vertex cycles grows
# with the length and with the density.
E = generate_set(ctx, random_density(0.5, 1))
G = build_graph(E, spec)
print(f"\n|E| = {len(G)}")
print(" n   C_n            N_n            N_n / C_n")
for n in range(3, 8):
    C = cycle_count(G, n).total
    N = nondegenerate_count(G, n)
    print(f"{n:2d}   {C:<13d}  {N:<13d}  {N / C:.3f}")

# %%
# Counts are exact Python integers, so nothing overflows even when the
# totals leave the 64-bit range.
big = cycle_count(build_graph(generate_set(ctx, random_density(1.0, 0)), spec), 30).total
print(f"\nC_30 on all of F_11^2 has {len(str(big))} digits: {str(big)[:20]}...")
