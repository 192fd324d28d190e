"""
Trees, truncation and degenerate cycles
=======================================

A closed walk that repeats a vertex traces out a connected graph on fewer
than n vertices, and every such graph has a spanning tree.  So degenerate
walks are bounded by a weighted sum of tree-map counts n_T.  This script
lists the tree classes, checks that bound, and shows the degree
truncation used before counting tree maps.

Run with ``python demos/trees_and_degenerate_cycles.py``.
"""
from ffcycles import (GraphSpec, build_graph, cycle_count, degenerate_bound, make_context,
                      nondegenerate_count, tree_embeddings, truncate, verify)
from ffcycles.ensembles import generate_set, random_size
from ffcycles.trees import tree_classes

ctx = make_context(7, 2)
E = generate_set(ctx, random_size(30, seed=4))
G = build_graph(E, GraphSpec.prod(2))

# %%
# Isomorphism classes of trees on up to 6 vertices.  Each class stands for
# v!/|Aut| labelled trees and they add up to Cayley's v^(v-2).
for v in range(2, 7):
    classes = tree_classes(v)
    print(f"v={v}: {len(classes)} classes, {sum(m for _, m in classes)} labelled trees (v^(v-2) = {v ** (v - 2)})")
    for T, mult in classes:
        print(f"    pruefer {T.canonical_pruefer()!s:18s} x{mult:<5d} n_T = {tree_embeddings(G, T)}")

# %%
# Degenerate walks C_n - N_n against the tree-sum bound.
print("\n n   C_n - N_n     tree bound")
for n in (4, 5, 6):
    degenerate = cycle_count(G, n).total - nondegenerate_count(G, n)
    print(f"{n:2d}   {degenerate:<12d}  {degenerate_bound(G, n)}")

# %%
# Truncation drops points whose degree exceeds lambda |E| / q.  For
# lambda = q^(2 eps/(r+1)) the tree check compares tree maps in what is
# left with |E|^(r+1) / q^r.
eps = 0.2
for T, _ in tree_classes(4):
    lam = 7 ** (2 * eps / (T.r + 1))
    res = truncate(E, G.spec, lam)
    rep = verify("TREE", G, tree=T, epsilon=eps)
    print(f"tree {T.canonical_pruefer()}: lambda={lam:.3f} removed {res.removed_count} of {len(E)}, "
          f"|n_T* - main| = {float(rep.lhs):.1f} <= {rep.rhs:.1f}: {rep.status}")
