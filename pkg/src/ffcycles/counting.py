"""Exact counts of walks, closed walks, non-degenerate cycles and tree maps.

Every count is an arbitrary-precision integer.  The fast routines use exact
matrix products (:mod:`ffcycles.exact`); :func:`oracle_count` is an
independent brute-force search that evaluates the relation point by point
and never touches the adjacency matrix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import exact
from .errors import NegativeInput, TooLarge, TooLong, WrongRelation, ZeroParameter
from .field import FieldCtx, dot, norm, sub
from .graphs import Graph, Relation
from .spectra import sphere_coefficients
from .trees import TreeShape, tree_classes

MAX_LENGTH = 64
MAX_DFS_LENGTH = 12
MAX_DFS_VERTICES = 5_000
MAX_TREE_VERTICES = 16
MAX_BILINEAR_VERTICES = 300
ORACLE_BUDGET = 10 ** 8


@dataclass
class PathProfile:
    k: int
    total: int
    per_vertex: np.ndarray
    pair_matrix: np.ndarray | None = None


@dataclass
class CycleProfile:
    n: int
    total: int
    nondegenerate: int | None = None
    degenerate_bound: int | None = None


def _check_length(n: int, lo: int, hi: int = MAX_LENGTH) -> None:
    if n < lo:
        raise ValueError(f"length must be at least {lo}")
    if n > hi:
        raise TooLong(f"length {n} exceeds cap {hi}")


def walk_vector(G: Graph, k: int) -> np.ndarray:
    """``A^k 1``: entry x counts walks of length k starting at x."""
    v = np.ones(len(G), dtype=np.int64)
    A = G.adjacency
    for _ in range(k):
        v = exact.matmul(A, v)
    return v


def total_paths(G: Graph, k: int, want_pairs: bool = False) -> PathProfile:
    """Walks of length k (ordered (k+1)-tuples, consecutive pairs related)."""
    G.require_symmetric()
    _check_length(k, 1)
    per_vertex = walk_vector(G, k)
    pairs = exact.matpow(G.adjacency, k) if want_pairs else None
    return PathProfile(k, exact.total(per_vertex), per_vertex, pairs)


def path_counts(G: Graph, kmax: int) -> list[int]:
    """``[P_0, P_1, ..., P_kmax]`` with ``P_0 = |E|``."""
    _check_length(kmax, 0)
    out, v = [len(G)], np.ones(len(G), dtype=np.int64)
    for _ in range(kmax):
        v = exact.matmul(G.adjacency, v)
        out.append(exact.total(v))
    return out


def closed_walks(G: Graph, n: int) -> int:
    """``tr(A^n)`` computed as the Frobenius product of A^a and A^b, a+b=n."""
    a = n // 2
    left = exact.matpow(G.adjacency, a)
    right = left if n - a == a else exact.matmul(left, G.adjacency)
    return int(exact.frobenius(left, right))


def cycle_count(G: Graph, n: int) -> CycleProfile:
    G.require_symmetric()
    _check_length(n, 2)
    return CycleProfile(n, closed_walks(G, n))


def nondegenerate_count(G: Graph, n: int) -> int:
    """Ordered n-tuples of distinct vertices forming a closed cycle.

    Depth-first search from the smallest vertex of each cycle, pruned by the
    set of vertices that can still return to the start in the remaining
    number of steps; the result is multiplied by n for the rotations.
    """
    G.require_symmetric()
    _check_length(n, 2, MAX_DFS_LENGTH)
    m = len(G)
    if m > MAX_DFS_VERTICES:
        raise TooLarge(f"|E|={m} exceeds the {MAX_DFS_VERTICES} vertex cap")
    if n > m:
        return 0
    rows = G.bits
    total = 0
    for s in range(m):
        allowed = ~((1 << (s + 1)) - 1)  # vertices > s
        # back[j]: vertices > s with a walk of length j to s inside that range
        back = [0] * (n + 1)
        back[1] = rows[s] & allowed
        for j in range(2, n):
            reach = 0
            for w in _iter_bits(back[j - 1]):
                reach |= rows[w]
            back[j] = reach & allowed
        total += _dfs(rows, s, s, 1 << s, n - 1, back)
    return total * n


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _dfs(rows, start: int, cur: int, used: int, remaining: int, back) -> int:
    # place the next vertex; afterwards ``remaining - 1`` more remain, then close
    if remaining == 0:
        return 1 if rows[cur] >> start & 1 else 0
    cand = rows[cur] & ~used & back[remaining]
    if remaining == 1:
        return bin(cand).count("1")
    count = 0
    for v in _iter_bits(cand):
        count += _dfs(rows, start, v, used | (1 << v), remaining - 1, back)
    return count


def tree_embeddings(G: Graph, T: TreeShape) -> int:
    """Number of edge-preserving maps V(T) -> E (homomorphisms, repeats allowed)."""
    G.require_symmetric()
    if T.vertex_count > MAX_TREE_VERTICES:
        raise TooLarge(f"trees limited to {MAX_TREE_VERTICES} vertices")
    if len(G) == 0:
        return 0
    # root at vertex 0 whatever orientation the edge list carries
    adj = T.neighbours()
    children: dict[int, list[int]] = {i: [] for i in range(T.vertex_count)}
    order, stack, seen = [], [0], {0}
    while stack:
        u = stack.pop()
        order.append(u)
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                children[u].append(w)
                stack.append(w)
    messages: dict[int, np.ndarray] = {}
    A = G.adjacency
    for u in reversed(order):
        msg = np.ones(len(G), dtype=np.int64)
        for c in children[u]:
            incoming = exact.matmul(A, messages.pop(c))
            msg = exact.hadamard(msg, incoming)
        messages[u] = msg
    return exact.total(messages[0])


def degenerate_bound(G: Graph, n: int) -> int:
    """``sum over trees T on 2..n-1 vertices of n_T * 2^(C(r+1,2) - r)``.

    The sum runs over all labeled trees; isomorphic trees have equal n_T so
    each isomorphism class is evaluated once and weighted by its size.
    """
    G.require_symmetric()
    if n < 3:
        raise ValueError("n must be at least 3")
    if n > 9:
        raise TooLarge("degenerate bound limited to n <= 9")
    total = 0
    for r in range(1, n - 1):
        g_t = 2 ** (comb(r + 1, 2) - r)
        for tree, mult in tree_classes(r + 1):
            total += mult * tree_embeddings(G, tree) * g_t
    return total


def _as_pair_matrix(f, m: int, name: str) -> np.ndarray:
    f = np.asarray(f)
    if f.shape != (m, m):
        raise ValueError(f"{name} must be an {m}x{m} matrix")
    if f.dtype == object:
        if any(v < 0 for v in f.flat):
            raise NegativeInput(f"{name} has negative entries")
        return f
    if f.dtype.kind not in "biu":
        raise TypeError(f"{name} must be integer valued")
    if (f < 0).any():
        raise NegativeInput(f"{name} has negative entries")
    return exact.as_exact(f)


def bilinear_form(G: Graph, f, g) -> int | Fraction:
    """``sum f(x,y) A(x,z) A(y,w) g(z,w)`` over E^4, as ``<A^T f A, g>``."""
    G.require_symmetric()
    m = len(G)
    if m > MAX_BILINEAR_VERTICES:
        raise TooLarge(f"|E|={m} exceeds {MAX_BILINEAR_VERTICES}")
    f = _as_pair_matrix(f, m, "f")
    g = _as_pair_matrix(g, m, "g")
    if m == 0:
        return 0
    A = G.adjacency
    sandwich = exact.matmul(exact.matmul(A.T, f), A)
    return exact.frobenius(sandwich, g)


# --- brute-force oracle -------------------------------------------------

def _pointwise_relation(G: Graph) -> list[list[bool]]:
    """Relation table evaluated one pair at a time from the definitions."""
    ctx, spec = G.ctx, G.spec
    pts = list(G.vertices)
    t = spec.t % ctx.q
    table = []
    for x in pts:
        row = []
        for y in pts:
            if x == y and not spec.loops:
                row.append(False)
            elif spec.relation is Relation.DIST:
                row.append(norm(ctx, sub(ctx, x, y)) == t)
            elif spec.relation is Relation.PROD:
                row.append(dot(ctx, x, y) == t)
            else:
                row.append(int(np.asarray(spec.phi(np.array(x), np.array(y)))) % ctx.q == t)
        table.append(row)
    return table


def _count_maps(rel, m: int, v: int, edges, injective: bool) -> int:
    """Maps range(v) -> range(m) sending every pattern edge to a related pair.

    Pattern vertices are assigned in order 0..v-1 and a partial assignment is
    abandoned as soon as an edge between assigned vertices fails.
    """
    checks = [[] for _ in range(v)]
    for a, b in edges:
        checks[max(a, b)].append((a, b))
    assign = [0] * v

    def rec(i: int) -> int:
        if i == v:
            return 1
        count = 0
        for x in range(m):
            if injective and x in assign[:i]:
                continue
            assign[i] = x
            if all(rel[assign[a]][assign[b]] for a, b in checks[i]):
                count += rec(i + 1)
        return count

    return rec(0)


def oracle_count(G: Graph, kind: str, n: int | None = None, tree: TreeShape | None = None) -> int:
    """Brute-force count for cross-checking: ``cycles``, ``nondegenerate`` or ``tree``."""
    m = len(G)
    if kind in ("cycles", "nondegenerate"):
        if n is None or n < 2:
            raise ValueError("cycle oracle needs n >= 2")
        if m ** n > ORACLE_BUDGET:
            raise TooLarge("oracle search space exceeds 1e8")
        rel = _pointwise_relation(G)
        edges = [(i, (i + 1) % n) for i in range(n)]
        return _count_maps(rel, m, n, edges, injective=kind == "nondegenerate")
    if kind == "tree":
        if tree is None:
            raise ValueError("tree oracle needs a tree")
        if m ** tree.vertex_count > ORACLE_BUDGET:
            raise TooLarge("oracle search space exceeds 1e8")
        rel = _pointwise_relation(G)
        return _count_maps(rel, m, tree.vertex_count, list(tree.edges), injective=False)
    raise ValueError(f"unknown oracle kind {kind!r}")


def full_space_spectral_cycles(ctx: FieldCtx, t: int, n: int) -> int:
    """Closed walks of length n in the distance graph on all of F_q^d.

    The convolution by S_t has eigenvalues ``q^d * Shat_t(m)``, so the count
    is ``sum_m (q^d Shat_t(m))^n`` evaluated in floating point and rounded.
    """
    if t % ctx.q == 0:
        raise ZeroParameter("t must be nonzero")
    if ctx.size > 10 ** 6:
        raise TooLarge("q^d exceeds 1e6")
    _check_length(n, 1)
    eig = (sphere_coefficients(ctx, t) * ctx.size).real
    return int(round(float(np.sum(eig ** n))))


def spectral_cycles_for(G: Graph, n: int) -> int:
    if G.spec.relation is not Relation.DIST:
        raise WrongRelation("spectral cycle count needs a translation-invariant relation")
    return full_space_spectral_cycles(G.ctx, G.spec.t, n)


def split_identity(G: Graph, n: int, k: int) -> tuple[int, int]:
    """Both sides of ``tr(A^n) = sum_{x,y} (A^k)_{xy} (A^{n-k})_{xy}``."""
    A = G.adjacency
    left = exact.trace(exact.matpow(A, n))
    right = int(exact.frobenius(exact.matpow(A, k), exact.matpow(A, n - k)))
    return left, right
