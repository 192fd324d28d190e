import itertools
import math
from collections import Counter

import pytest

from ffcycles.errors import TooLarge
from ffcycles.trees import (TreeShape, automorphism_count, enumerate_trees, pruefer_decode,
                            pruefer_encode, tree_classes)

# unlabelled trees on v vertices, v = 2..8
UNLABELLED = {2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23}


@pytest.mark.parametrize("v", range(2, 8))
def test_cayley_count(v):
    trees = enumerate_trees(v)
    assert len(trees) == v ** (v - 2)
    assert len({frozenset(frozenset(e) for e in T.edges) for T in trees}) == len(trees)


def test_small_counts():
    assert [len(enumerate_trees(v)) for v in (2, 3, 4)] == [1, 3, 16]


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        enumerate_trees(9)


@pytest.mark.parametrize("v", range(3, 8))
def test_pruefer_roundtrip(v):
    for seq in itertools.islice(itertools.product(range(v), repeat=v - 2), 300):
        assert pruefer_encode(pruefer_decode(seq, v), v) == seq


@pytest.mark.parametrize("v", range(2, 9))
def test_classes_and_multiplicities(v):
    classes = tree_classes(v)
    assert len(classes) == UNLABELLED[v]
    assert sum(mult for _, mult in classes) == v ** (v - 2)


@pytest.mark.parametrize("v", range(3, 8))
def test_classes_agree_with_brute_force_grouping(v):
    by_sig = Counter(T.signature for T in enumerate_trees(v))
    assert by_sig == Counter({T.signature: mult for T, mult in tree_classes(v)})


def test_automorphisms():
    assert automorphism_count(TreeShape.star(5)) == math.factorial(4)
    assert automorphism_count(TreeShape.path(5)) == 2
    assert automorphism_count(TreeShape.path(2)) == 2


def test_canonical_pruefer_is_relabel_invariant():
    T = TreeShape.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
    for perm in [(5, 4, 3, 2, 1, 0), (2, 0, 1, 5, 3, 4)]:
        assert T.relabel(perm).canonical_pruefer() == T.canonical_pruefer()
        assert T.relabel(perm).signature == T.signature


def test_rejects_non_trees():
    with pytest.raises(ValueError):
        TreeShape.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        TreeShape.from_edges(4, [(0, 1), (2, 3), (0, 2), (1, 3)])


def test_rooted_edges_point_away_from_root():
    T = TreeShape.path(4).rooted(2)
    children = [b for _, b in T.edges]
    assert 2 not in children
    assert sorted(children) == [0, 1, 3]
    assert TreeShape.path(3).r == 2
