"""Labeled trees: Pruefer codes, enumeration and canonical forms."""
from __future__ import annotations

import heapq
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import TooLarge

MAX_ENUM_VERTICES = 8


def pruefer_decode(seq, v: int) -> list[tuple[int, int]]:
    """Edge list of the labeled tree on ``range(v)`` with Pruefer code ``seq``."""
    seq = list(seq)
    if v < 2 or len(seq) != v - 2:
        raise ValueError("Pruefer code must have length v - 2")
    degree = [1] * v
    for s in seq:
        degree[s] += 1
    leaves = [i for i in range(v) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((a, b))
    return edges


def pruefer_encode(edges, v: int) -> tuple[int, ...]:
    adj = {i: set() for i in range(v)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    leaves = [i for i in range(v) if len(adj[i]) == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(v - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        seq.append(nb)
        adj[nb].discard(leaf)
        adj[leaf].clear()
        if len(adj[nb]) == 1:
            heapq.heappush(leaves, nb)
    return tuple(seq)


def _is_tree(v: int, edges) -> bool:
    if len(edges) != v - 1:
        return False
    parent = list(range(v))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


@dataclass(frozen=True)
class TreeShape:
    """A labeled tree on vertices ``0 .. vertex_count-1``.

    ``edges`` holds (parent, child) pairs oriented away from vertex 0.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a tree needs at least one vertex")
        if not _is_tree(self.vertex_count, self.edges):
            raise ValueError("edges do not form a spanning tree")

    @classmethod
    def from_edges(cls, v: int, edges, root: int = 0) -> "TreeShape":
        edges = [tuple(e) for e in edges]
        if not _is_tree(v, edges):
            raise ValueError("edges do not form a spanning tree")
        adj = {i: [] for i in range(v)}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        oriented, seen, stack = [], {root}, [root]
        while stack:
            u = stack.pop()
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    oriented.append((u, w))
                    stack.append(w)
        return cls(v, tuple(sorted(oriented)))

    @classmethod
    def from_pruefer(cls, seq, v: int | None = None) -> "TreeShape":
        seq = tuple(seq)
        v = len(seq) + 2 if v is None else v
        return cls.from_edges(v, pruefer_decode(seq, v))

    @classmethod
    def path(cls, v: int) -> "TreeShape":
        return cls.from_edges(v, [(i, i + 1) for i in range(v - 1)])

    @classmethod
    def star(cls, v: int) -> "TreeShape":
        return cls.from_edges(v, [(0, i) for i in range(1, v)])

    @property
    def r(self) -> int:
        """Number of edges."""
        return self.vertex_count - 1

    @cached_property
    def pruefer(self) -> tuple[int, ...]:
        if self.vertex_count < 2:
            return ()
        return pruefer_encode(self.edges, self.vertex_count)

    def neighbours(self) -> dict[int, list[int]]:
        adj = {i: [] for i in range(self.vertex_count)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def rooted(self, root: int) -> "TreeShape":
        return TreeShape.from_edges(self.vertex_count, self.edges, root)

    def relabel(self, perm) -> "TreeShape":
        return TreeShape.from_edges(self.vertex_count, [(perm[a], perm[b]) for a, b in self.edges])

    @cached_property
    def signature(self) -> str:
        """Isomorphism invariant: AHU string rooted at the centre(s)."""
        return _unrooted_signature(self.vertex_count, self.neighbours())

    def canonical_pruefer(self) -> tuple[int, ...]:
        """Lexicographically least Pruefer code over all relabelings.

        Brute force over vertex permutations; intended for reporting on small
        trees only.
        """
        if self.vertex_count > MAX_ENUM_VERTICES:
            raise TooLarge("canonical form limited to 8 vertices")
        v = self.vertex_count
        if v < 3:
            return ()
        return min(pruefer_encode([(p[a], p[b]) for a, b in self.edges], v)
                   for p in itertools.permutations(range(v)))


def _centres(v: int, adj) -> list[int]:
    deg = {i: len(adj[i]) for i in range(v)}
    layer = [i for i in range(v) if deg[i] <= 1]
    remaining = v
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for w in adj[leaf]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
            deg[leaf] = 0
        layer = nxt
    return sorted(layer)


def _rooted_signature(adj, root, parent=-1) -> str:
    kids = sorted(_rooted_signature(adj, w, root) for w in adj[root] if w != parent)
    return "(" + "".join(kids) + ")"


def _unrooted_signature(v: int, adj) -> str:
    if v == 1:
        return "()"
    return min(_rooted_signature(adj, c) for c in _centres(v, adj))


def enumerate_trees(v: int) -> list[TreeShape]:
    """All ``v**(v-2)`` labeled trees on v vertices, in Pruefer-code order."""
    if v < 2:
        raise ValueError("need at least 2 vertices")
    if v > MAX_ENUM_VERTICES:
        raise TooLarge(f"enumeration limited to {MAX_ENUM_VERTICES} vertices")
    if v == 2:
        return [TreeShape(2, ((0, 1),))]
    return [TreeShape.from_pruefer(seq, v) for seq in itertools.product(range(v), repeat=v - 2)]


def _aut_rooted(adj, root, parent=-1) -> tuple[str, int]:
    kids = [_aut_rooted(adj, w, root) for w in adj[root] if w != parent]
    size = 1
    for _, a in kids:
        size *= a
    for mult in Counter(sig for sig, _ in kids).values():
        size *= math.factorial(mult)
    return "(" + "".join(sorted(sig for sig, _ in kids)) + ")", size


def automorphism_count(tree: TreeShape) -> int:
    """Order of the automorphism group of an (unlabeled) tree."""
    v, adj = tree.vertex_count, tree.neighbours()
    if v == 1:
        return 1
    centres = _centres(v, adj)
    if len(centres) == 1:
        return _aut_rooted(adj, centres[0])[1]
    a, b = centres
    sa, na = _aut_rooted(adj, a, b)
    sb, nb = _aut_rooted(adj, b, a)
    return na * nb * (2 if sa == sb else 1)


@lru_cache(maxsize=None)
def tree_classes(v: int) -> tuple[tuple[TreeShape, int], ...]:
    """Isomorphism classes of trees on v vertices with labeled multiplicities.

    Classes are grown leaf by leaf from the classes on v - 1 vertices; the
    multiplicity of a class is ``v! / |Aut(T)|`` and the multiplicities sum
    to ``v**(v-2)``.
    """
    if v < 2:
        raise ValueError("need at least 2 vertices")
    if v > MAX_ENUM_VERTICES:
        raise TooLarge(f"enumeration limited to {MAX_ENUM_VERTICES} vertices")
    if v == 2:
        shapes = [TreeShape(2, ((0, 1),))]
    else:
        found: dict[str, TreeShape] = {}
        for base, _ in tree_classes(v - 1):
            for u in range(v - 1):
                t = TreeShape.from_edges(v, list(base.edges) + [(u, v - 1)])
                found.setdefault(t.signature, t)
        shapes = [found[s] for s in sorted(found)]
    fact = math.factorial(v)
    return tuple((t, fact // automorphism_count(t)) for t in shapes)
