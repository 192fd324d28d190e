import math

import pytest

from ffcycles import make_context
from ffcycles.ensembles import (SetRecipe, affine_subspace, full, generate_set, parse_recipe, product,
                                random_density, random_size, sphere_union)
from ffcycles.errors import BadRecipe, FileFormat
from ffcycles.formats import (format_point_set, parse_phi_table, parse_point_set, read_point_set,
                              write_point_set)
from ffcycles.spectra import sphere


def test_full_and_sphere():
    ctx = make_context(5, 2)
    assert len(generate_set(ctx, full())) == 25
    assert generate_set(ctx, "sphere:t=2") == sphere(ctx, 2)


def test_random_size_is_deterministic():
    ctx = make_context(7, 3)
    a = generate_set(ctx, random_size(50, seed=7))
    b = generate_set(ctx, random_size(50, seed=7))
    assert a == b and len(a) == 50
    assert generate_set(ctx, random_size(50, seed=8)) != a


def test_random_density_within_five_sd():
    ctx = make_context(11, 2)
    for seed in range(20):
        E = generate_set(ctx, random_density(0.3, seed))
        assert abs(len(E) - 0.3 * 121) <= 5 * math.sqrt(121 * 0.3 * 0.7)


def test_product_and_affine():
    ctx = make_context(5, 2)
    assert len(generate_set(ctx, product([0, 1, 2]))) == 9
    line = generate_set(ctx, affine_subspace([(1, 2)], (0, 1)))
    assert line.points == sorted(((k) % 5, (2 * k + 1) % 5) for k in range(5))
    with pytest.raises(BadRecipe, match="independent"):
        generate_set(ctx, affine_subspace([(1, 2), (2, 4)], (0, 0)))


def test_sphere_union():
    ctx = make_context(5, 2)
    E = generate_set(ctx, sphere_union(1, [(0, 0), (2, 2)]))
    assert len(E) == 8


@pytest.mark.parametrize("text", ["full", "rand:p=0.5:seed=3", "randn:m=5:seed=1", "sphere:t=1",
                                  "prod:A=0,1,2", "affine:basis=1,0:shift=0,3", "spheres:t=1:at=0,0;1,1"])
def test_recipe_roundtrip(text):
    r = parse_recipe(text)
    assert parse_recipe(str(r)) == r


def test_seed_override():
    assert parse_recipe("randn:m=5:seed=1", seed=9).seed == 9


@pytest.mark.parametrize("text", ["bogus", "randn", "randn:m=x", "rand:p=0.5:colour=red", "sphere:t"])
def test_bad_recipes(text):
    with pytest.raises(BadRecipe):
        parse_recipe(text)


def test_cannot_draw_too_many():
    with pytest.raises(BadRecipe):
        generate_set(make_context(3, 2), random_size(10))


def test_point_set_file_roundtrip(tmp_path):
    ctx = make_context(7, 2)
    E = generate_set(ctx, random_size(12, seed=3))
    path = tmp_path / "e.txt"
    write_point_set(E, path)
    assert read_point_set(path) == E
    assert generate_set(ctx, f"file:{path}") == E
    with pytest.raises(BadRecipe):
        generate_set(make_context(5, 2), f"file:{path}")


@pytest.mark.parametrize("text", ["", "5\n", "5 2\n1 1\n1 1\n", "5 2\n1 2 3\n", "5 2\n1 9\n", "4 2\n"])
def test_point_set_format_errors(text):
    with pytest.raises((FileFormat, ValueError)):
        parse_point_set(text)


def test_point_set_comments():
    E = parse_point_set("# header\n5 2\n\n0 1\n# c\n4 0\n")
    assert E.points == [(0, 1), (4, 0)]
    assert format_point_set(E).splitlines()[0] == "5 2"


def test_phi_table():
    lines = ["3 2"]
    ctx = make_context(3, 2)
    pts = [tuple(p) for p in ctx.all_points()]
    for x in pts:
        for y in pts:
            lines.append(" ".join(map(str, (*x, *y, (sum(x) + sum(y)) % 3))))
    tctx, table = parse_phi_table("\n".join(lines))
    assert tctx == ctx
    from ffcycles import GraphSpec, build_graph
    from ffcycles.field import PointSet

    E = PointSet.full(ctx)
    a = build_graph(E, GraphSpec.custom(table, 1)).adjacency
    b = build_graph(E, GraphSpec.custom("sum", 1)).adjacency
    assert (a == b).all()
    with pytest.raises(FileFormat, match="incomplete"):
        parse_phi_table("\n".join(lines[:-1]))
