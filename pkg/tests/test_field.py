import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffcycles import PointSet, dot, make_context, norm
from ffcycles.errors import BadDimension, LengthMismatch, NotPrime, TooLarge
from ffcycles.field import character, is_prime, sub


def test_prime_check_against_trial_division():
    naive = [n for n in range(2, 500) if all(n % k for k in range(2, n))]
    assert [n for n in range(500) if is_prime(n)] == naive


@pytest.mark.parametrize("q", [4, 9, 15, 2, 1, 0, -7])
def test_rejects_bad_modulus(q):
    with pytest.raises(NotPrime):
        make_context(q, 2)


def test_rejects_dimension_one():
    with pytest.raises(BadDimension):
        make_context(5, 1)


def test_modulus_cap():
    make_context(1048573, 2)  # largest prime below 2**20
    with pytest.raises(TooLarge):
        make_context(1048583, 2)


def test_norm_and_dot_examples():
    ctx = make_context(5, 2)
    assert norm(ctx, (1, 2)) == 0
    assert norm(ctx, (1, 1)) == 2
    assert dot(ctx, (1, 2), (3, 4)) == 1
    assert sub(ctx, (0, 1), (1, 0)) == (4, 1)


def test_length_mismatch():
    ctx = make_context(5, 2)
    with pytest.raises(LengthMismatch):
        norm(ctx, (1, 2, 3))
    with pytest.raises(LengthMismatch):
        dot(ctx, (1, 2), (1,))


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([3, 5, 7, 11]), data=st.data())
def test_norm_identities(q, data):
    ctx = make_context(q, 3)
    vec = st.tuples(*[st.integers(0, q - 1)] * 3)
    x, y = data.draw(vec), data.draw(vec)
    assert norm(ctx, x) == dot(ctx, x, x)
    assert norm(ctx, sub(ctx, x, y)) == norm(ctx, sub(ctx, y, x))
    assert dot(ctx, x, y) == dot(ctx, y, x)


def test_character_is_additive():
    ctx = make_context(7, 2)
    for a, b in itertools.product(range(7), repeat=2):
        assert abs(character(ctx, a) * character(ctx, b) - character(ctx, a + b)) < 1e-12
    assert sum(character(ctx, a) for a in range(7)) == pytest.approx(0, abs=1e-12)


def test_index_roundtrip_and_lexicographic_order():
    ctx = make_context(3, 3)
    pts = ctx.all_points()
    assert pts.shape == (27, 3)
    assert [tuple(p) for p in pts] == sorted(itertools.product(range(3), repeat=3))
    for i in range(27):
        assert ctx.index(ctx.point(i)) == i


def test_pointset_dedup_and_order():
    ctx = make_context(5, 2)
    E = PointSet.from_points(ctx, [(1, 1), (0, 3), (6, 1), (1, 1)])
    assert E.points == [(0, 3), (1, 1)]
    assert E == PointSet.from_points(ctx, [(1, 1), (0, 3)])
    assert hash(E) == hash(PointSet.from_points(ctx, [(0, 3), (1, 1)]))
    assert (1, 1) in E and (2, 2) not in E
    assert E.position((1, 1)) == 1
    assert list(E.indices()) == [3, 6]


def test_pointset_is_read_only():
    ctx = make_context(5, 2)
    E = PointSet.full(ctx)
    assert len(E) == 25
    with pytest.raises(ValueError):
        E.coords[0, 0] = 3


def test_translate_and_subset():
    ctx = make_context(5, 2)
    E = PointSet.from_points(ctx, [(0, 0), (4, 4)])
    assert E.translate((1, 1)).points == [(0, 0), (1, 1)]
    assert E.subset(np.array([False, True])).points == [(4, 4)]
