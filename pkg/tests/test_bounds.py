import json
import math
from fractions import Fraction

import numpy as np
import pytest

from ffcycles import GraphSpec, PointSet, build_graph, constants, make_context, verify, verify_sweep
from ffcycles.bounds import K, SweepConfig, c, gamma, size_exponent
from ffcycles.counting import cycle_count, path_counts
from ffcycles.errors import MissingInput, OutOfRange, UnsupportedTheorem, WrongRelation
from ffcycles.trees import TreeShape

from conftest import random_graph


def test_named_constants():
    assert constants(d=2).gamma == -1
    assert constants(d=5).gamma == -1.5
    k4 = constants(n=4)
    assert k4.K_n == 48 and k4.c_n == 12
    assert constants(k=2).A_k == 10
    assert constants(n=6).K_n == 552
    assert K(5) == 36 + 80 + 24
    assert c(5) == 4 ** 2 * 2 ** (6 - 5 + 3)


def test_constant_ranges():
    with pytest.raises(OutOfRange, match="delta"):
        constants(n=5, delta=0.2)  # needs delta < 1/8
    with pytest.raises(OutOfRange):
        constants(n=4, delta=0)
    with pytest.raises(OutOfRange, match="alpha"):
        constants(k=3, alpha=0.2)
    assert constants(k=3, alpha=0.75).psi == pytest.approx(2 * 0.75 - 1)


def test_thresholds():
    tc = constants(n=4, d=2, delta=0.2, q=5, k=2, size=20)
    assert tc.thresholds["size_exponent"] == pytest.approx(0.5 * (4 - 0 + 0.2))
    assert tc.thresholds["chains"] == pytest.approx(2 / math.log(2) * 5 ** 1.5)
    assert tc.X == pytest.approx((20 + 5 ** 1.5) / 5)
    assert tc.epsilon == pytest.approx(1.2)
    assert size_exponent(5, 2, 0.1) == pytest.approx(0.5 * (4 - 1 / 3 + 0.1))


def test_main_vacuous_at_desk_scale():
    rep = verify("MAIN", random_graph(5, 3, "dist", 1, "full"), n=4)
    assert rep.vacuous and rep.status == "vacuous"
    assert rep.hypothesis_terms["hyp_size_term_q^(d+2)"] == pytest.approx(8 * 5 ** 5 / 125 ** 2)
    assert rep.lhs == abs(Fraction(cycle_count(random_graph(5, 3, "dist", 1, "full"), 4).total) - Fraction(125 ** 4, 5 ** 4))


def test_chains_example():
    G = random_graph(5, 3, "prod", 1, "randn:m=110", 1)
    rep = verify("CHAINS", G, k=2)
    assert rep.hypothesis_terms["size_threshold"] == pytest.approx(72.13, abs=0.01)
    assert rep.hypothesis_satisfied and rep.status == "pass"
    P2 = path_counts(G, 2)[2]
    assert rep.lhs == abs(Fraction(P2) - Fraction(110 ** 3, 25))


def test_chikr_exact_form():
    ctx = make_context(5, 2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        f, g = rng.integers(0, 6, 25), rng.integers(0, 6, 25)
        rep = verify("CHIKR", ctx=ctx, t=1, f=f, g=g)
        pts = ctx.all_points()
        S = sum(int(f[i]) * int(g[j]) for i in range(25) for j in range(25) if int(pts[i] @ pts[j]) % 5 == 1)
        assert rep.extra["sum"] == S
        assert rep.status == "pass"


def test_recursion_and_upper_hold():
    for seed in range(5):
        for rel in ("dist", "prod"):
            G = random_graph(7, 2, rel, 1, "rand:p=0.5", seed)
            for k in range(2, 9):
                assert verify("RECURSION", G, k=k).status == "pass"
                assert verify("UPPER", G, k=k).status == "pass"


def test_functional_theorems_and_concise_form():
    rng = np.random.default_rng(5)
    for rel, tid in (("dist", "T_DIST"), ("prod", "T_PROD")):
        G = random_graph(5, 2, rel, 1, "randn:m=15", 3)
        f, g = rng.integers(0, 4, (15, 15)), rng.integers(0, 4, (15, 15))
        rep = verify(tid, G, f=f, g=g)
        assert rep.status == "pass" and rep.extra["concise_holds"]
    with pytest.raises(WrongRelation):
        verify("T_PROD", random_graph(5, 2, "dist", 1, "randn:m=4"), f=np.ones((4, 4), int), g=np.ones((4, 4), int))


def test_tree_report_flags_unscaled_form():
    G = random_graph(5, 2, "dist", 1, "randn:m=20", 2)
    rep = verify("TREE", G, tree=TreeShape.path(3), epsilon=0.2)
    assert rep.hypothesis_satisfied
    assert rep.status == "pass"
    assert "without it" in rep.notes[0]
    assert rep.extra["unscaled_rhs"] * float(rep.extra["main_term"]) == pytest.approx(rep.rhs)
    assert rep.extra["removed"] <= rep.extra["removed_bound"]
    assert rep.extra["lambda"] == pytest.approx(5 ** (0.4 / 3))


def test_conditional_theorems_never_hard_fail():
    G = random_graph(5, 2, "dist", 1, "rand:p=0.95", 4)
    for tid, kw in (("MAIN2", dict(n=5, delta=0.1)), ("MAINCOR", dict(n=4, delta=0.2)),
                    ("NONDEG", dict(n=4, delta=0.2)), ("TRUNC", dict(lam=5.0))):
        rep = verify(tid, G, **kw)
        assert rep.conditional
        assert rep.status in ("pass", "vacuous", "conditional")


def test_missing_and_unknown():
    G = random_graph(5, 2, "dist", 1, "randn:m=5")
    with pytest.raises(MissingInput):
        verify("MAIN", G)
    with pytest.raises(MissingInput):
        verify("CHIKR", ctx=make_context(5, 2), t=1)
    with pytest.raises(UnsupportedTheorem):
        verify("FERMAT", G)


def test_report_json_is_exact():
    G = random_graph(5, 2, "dist", 1, "randn:m=12", 3)
    d = verify("MAIN", G, n=6).to_dict()
    json.dumps(d)
    assert isinstance(d["lhs"], str)
    assert Fraction(d["lhs"]) == verify("MAIN", G, n=6).lhs
    assert set(d["hypothesis_terms"]) >= {"gamma_term", "hyp_size_term_q^(d+2)", "linear_term"}


def test_sweep_examples():
    empty = verify_sweep(SweepConfig(5, 2, "prod", 1, "randn:m=10", theorems=[], repetitions=5))
    assert len(empty) == 0
    cfg = dict(q=5, d=2, relation="prod", t=1, recipe="rand:p=0.5", theorems=["CHIKR"], repetitions=100, seed=9)
    res = verify_sweep(cfg)
    assert len(res) == 100 and res.tallies == {"CHIKR": {"pass": 100}}
    again = verify_sweep(cfg)
    assert json.dumps(res.to_dict(), sort_keys=True) == json.dumps(again.to_dict(), sort_keys=True)


def test_sweep_tags_failing_instance():
    cfg = dict(q=5, d=2, relation="dist", t=1, recipe="randn:m=10", theorems=[{"id": "MAIN"}], repetitions=2)
    with pytest.raises(MissingInput, match="instance 0"):
        verify_sweep(cfg)


def test_truncation_bound_can_fail_on_tiny_sets():
    # Two points with lambda*|E|/q < 1: any edge removes both, beating 2|E|/lambda.
    # The size bound is only claimed for large q, so this is "conditional", not "fail".
    G = random_graph(7, 2, "prod", 1, "randn:m=2", 1)
    rep = verify("TRUNC", G, lam=2.5)
    assert rep.lhs == 2 and rep.rhs == pytest.approx(1.6)
    assert rep.status == "conditional" and not rep.violation
