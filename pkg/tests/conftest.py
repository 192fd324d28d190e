import pytest

from ffcycles import GraphSpec, PointSet, build_graph, generate_set, make_context


@pytest.fixture
def path_graph():
    """b - a - c at q=5, distance 1: a=(0,0), b=(1,0), c=(0,1)."""
    ctx = make_context(5, 2)
    E = PointSet.from_points(ctx, [(0, 0), (1, 0), (0, 1)])
    return build_graph(E, GraphSpec.dist(1))


@pytest.fixture
def triangle():
    ctx = make_context(3, 2)
    E = PointSet.from_points(ctx, [(0, 0), (1, 1), (2, 2)])
    return build_graph(E, GraphSpec.dist(2))


@pytest.fixture
def empty_graph():
    ctx = make_context(5, 2)
    return build_graph(PointSet.from_points(ctx, []), GraphSpec.dist(1))


def random_graph(q, d, relation, t, recipe, seed=0):
    from ffcycles.ensembles import parse_recipe

    ctx = make_context(q, d)
    E = generate_set(ctx, parse_recipe(recipe, seed=seed))
    spec = GraphSpec.dist(t) if relation == "dist" else GraphSpec.prod(t)
    return build_graph(E, spec)


# Acceptance verdicts, echoed at the end of the run so they are visible even
# when pytest captures stdout.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
