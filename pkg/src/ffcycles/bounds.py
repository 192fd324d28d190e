"""Theorem constants and the checks that compare them with exact counts.

Every check returns a :class:`~ffcycles.reports.BoundReport`.  Left-hand
sides are exact (ints or Fractions).  Right-hand sides involving half-integer
powers of q are floats compared with a small outward tolerance, except where
the whole inequality can be squared into integers, in which case the verdict
is exact.

Theorem ids:

========== ==========================================================
EDGES      ordered edge count vs |E|^2/q
CHAINS     walks of length k, under the size hypothesis
UPPER      P_k <= |E| X^k (no hypothesis)
RECURSION  the even/odd path recursion residuals (no hypothesis)
CHIKR      sum_{x.y=t} f(x)g(y) vs ||f||_1 ||g||_1 / q
T_DIST     pair-function bilinear form, distance graph
T_PROD     pair-function bilinear form, dot-product graph
MAIN       C_n for n >= 4 under the explicit size condition
MAIN2      C_n for n >= 5 with the delta-dependent size condition
MAINCOR    C_n for n >= 4 with the constant K_n
NONDEG     non-degenerate cycles N_n
TREE       tree maps into the truncated graph
TRUNC      size of the truncated set
DEGEN      C_n - N_n against the tree-sum bound
========== ==========================================================

MAIN2, MAINCOR, NONDEG and TRUNC are only claimed for q large enough, so a
failed inequality there is reported with status ``conditional``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import counting, exact
from .errors import (FFCyclesError, MissingInput, OutOfRange, UnsupportedTheorem,
                     WrongRelation, ZeroParameter)
from .field import FieldCtx
from .graphs import Graph, GraphSpec, Relation, build_graph, edge_report, relation_matrix, truncate
from .reports import BoundReport, le_outward, le_strict
from .trees import TreeShape

LOG2 = math.log(2.0)

THEOREMS = ("EDGES", "CHAINS", "UPPER", "RECURSION", "CHIKR", "T_DIST", "T_PROD",
            "MAIN", "MAIN2", "MAINCOR", "NONDEG", "TREE", "TRUNC", "DEGEN")

# Statements proved only "for q sufficiently large".
CONDITIONAL = frozenset({"MAIN2", "MAINCOR", "NONDEG", "TRUNC"})

# Failures on these would contradict a theorem outright.
HARD = frozenset({"MAIN", "CHAINS", "UPPER", "TREE", "CHIKR", "T_DIST", "T_PROD",
                  "EDGES", "RECURSION", "DEGEN"})


@dataclass(frozen=True)
class TheoremConstants:
    gamma: float | None = None
    K_n: int | None = None
    A_k: int | None = None
    c_n: int | None = None
    psi: float | None = None
    X: float | None = None
    epsilon: float | None = None
    delta: float | None = None
    alpha: float | None = None
    thresholds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def gamma(d: int) -> float:
    return -1.0 if d == 2 else -(d - 2) / 2


def K(n: int) -> int:
    if n < 4:
        raise OutOfRange("K_n is defined for n >= 4")
    if n == 4:
        return 48
    h = n // 2
    return 36 + 80 * 6 ** (h - 2) + 12 * h


def A(k: int) -> int:
    if k < 2:
        raise OutOfRange("A_k is defined for k >= 2")
    return 10 * 6 ** (k - 2)


def c(n: int) -> int:
    if n < 3:
        raise OutOfRange("c_n is defined for n >= 3")
    return (n - 1) ** (n - 3) * 2 ** (comb(n - 1, 2) - n + 3)


def size_exponent_gap(n: int) -> float:
    """``(k-2)/(k-1)`` for n = 2k and ``(2k-3)/(2k-1)`` for n = 2k+1."""
    k = n // 2
    if n % 2 == 0:
        return (k - 2) / (k - 1)
    return (2 * k - 3) / (2 * k - 1)


def size_exponent(n: int, d: int, delta: float) -> float:
    """Exponent e in the size condition |E| >= q^e (n >= 4)."""
    return 0.5 * (d + 2 - size_exponent_gap(n) + delta)


def nondeg_epsilon(n: int, delta: float) -> float:
    return 1 - size_exponent_gap(n) + delta


def delta_upper(n: int) -> float:
    return 1 / (2 * (n // 2) ** 2)


def check_delta(n: int, delta: float, strict_upper: bool) -> None:
    if not delta > 0:
        raise OutOfRange(f"need delta > 0, got {delta}")
    if strict_upper and not delta < delta_upper(n):
        raise OutOfRange(f"need 0 < delta < 1/(2*floor(n/2)^2) = {delta_upper(n):.6g}, got {delta}")


def constants(n: int | None = None, k: int | None = None, d: int | None = None,
              alpha: float | None = None, delta: float | None = None,
              q: int | None = None, size: int | None = None) -> TheoremConstants:
    """Evaluate every constant that the given parameters determine."""
    if d is not None and d < 2:
        raise OutOfRange("d must be at least 2")
    out: dict = {"alpha": alpha, "delta": delta, "thresholds": {}}
    th = out["thresholds"]
    if d is not None:
        out["gamma"] = gamma(d)
    if n is not None:
        if n < 3:
            raise OutOfRange("cycle length must be at least 3")
        out["c_n"] = c(n)
        if n >= 4:
            out["K_n"] = K(n)
    if k is not None:
        out["A_k"] = A(k)
        if alpha is not None:
            lo = (k - 2) / (k - 1)
            if not lo <= alpha < 1:
                raise OutOfRange(f"need (k-2)/(k-1) <= alpha < 1, i.e. {lo:.6g} <= alpha < 1")
            out["psi"] = (k - 1) * alpha - k + 2
    if n is not None and n >= 4 and delta is not None:
        check_delta(n, delta, strict_upper=n >= 5)
        out["epsilon"] = nondeg_epsilon(n, delta)
        if d is not None:
            e = size_exponent(n, d, delta)
            th["size_exponent"] = e
            if q is not None:
                th["size"] = q ** e
    if q is not None and d is not None:
        if size is not None:
            out["X"] = (size + q ** ((d + 1) / 2)) / q
        if k is not None:
            th["chains"] = k / LOG2 * q ** ((d + 1) / 2)
    return TheoremConstants(**out)


# --- helpers --------------------------------------------------------------

def _need(name: str, value):
    if value is None:
        raise MissingInput(f"missing input {name!r}")
    return value


def _builtin(G: Graph) -> Relation:
    rel = G.spec.relation
    if rel is Relation.CUSTOM:
        raise WrongRelation("this check is stated for distance and dot-product graphs")
    if G.spec.t % G.ctx.q == 0:
        raise ZeroParameter("t must be nonzero")
    return rel


def _report(theorem, hyp, lhs, rhs, holds, terms, extra=None, notes=None):
    return BoundReport(theorem=theorem, hypothesis_satisfied=bool(hyp), lhs=lhs, rhs=float(rhs),
                       holds=bool(holds), hypothesis_terms=terms,
                       conditional=theorem in CONDITIONAL,
                       extra=extra or {}, notes=notes or [])


def _size_condition(G: Graph, n: int, delta: float) -> tuple[bool, dict]:
    q, d, m = G.ctx.q, G.ctx.d, len(G)
    e = size_exponent(n, d, delta)
    ok = m > 0 and le_strict(e * math.log(q), math.log(m))
    return ok, {"size": m, "size_exponent": e, "size_threshold": q ** e}


# --- individual checks ----------------------------------------------------

def _chains(G: Graph, k: int) -> BoundReport:
    _builtin(G)
    q, d, m = G.ctx.q, G.ctx.d, len(G)
    P = counting.total_paths(G, k).total
    thr = k / LOG2 * q ** ((d + 1) / 2)
    lhs = abs(Fraction(P) - Fraction(m ** (k + 1), q ** k))
    rhs = thr * m ** k / q ** k
    return _report("CHAINS", m > thr and le_strict(thr, m), lhs, rhs, le_outward(lhs, rhs),
                   {"size": m, "size_threshold": thr, "k": k}, {"P_k": P})


def _upper(G: Graph, k: int) -> BoundReport:
    _builtin(G)
    q, d, m = G.ctx.q, G.ctx.d, len(G)
    P = counting.total_paths(G, k).total
    X = (m + q ** ((d + 1) / 2)) / q
    rhs = m * X ** k
    return _report("UPPER", True, P, rhs, le_outward(P, rhs), {"k": k}, {"X": X})


def _recursion(G: Graph, j: int) -> BoundReport:
    """Path recursion residual for P_j, j >= 2, checked on squared integers."""
    _builtin(G)
    if j < 2:
        raise OutOfRange("the recursion is checked for path length >= 2")
    q, d = G.ctx.q, G.ctx.d
    P = counting.path_counts(G, j)
    k = j // 2
    if j % 2:
        scaled = q * P[j] - P[k] ** 2
        holds = scaled * scaled <= q ** (d + 1) * P[2 * k] ** 2
        rhs = q ** ((d - 1) / 2) * P[2 * k]
        residual = Fraction(P[j]) - Fraction(P[k] ** 2, q)
    else:
        scaled = q * P[j] - P[k] * P[k - 1]
        holds = scaled * scaled <= q ** (d + 1) * P[j] * P[j - 2]
        rhs = q ** ((d - 1) / 2) * math.sqrt(P[j] * P[j - 2])
        residual = Fraction(P[j]) - Fraction(P[k] * P[k - 1], q)
    return _report("RECURSION", True, abs(residual), rhs, holds, {"length": j, "parity": "odd" if j % 2 else "even"},
                   {"paths": P, "residual": residual})


def _grid_values(f, ctx: FieldCtx, name: str) -> np.ndarray:
    vals = np.asarray(getattr(f, "values", f)).ravel()
    if len(vals) != ctx.size:
        raise MissingInput(f"{name} must have q^d = {ctx.size} values")
    if vals.dtype.kind not in "biuO":
        raise TypeError(f"{name} must be integer valued")
    if any(int(v) < 0 for v in vals):
        from .errors import NegativeInput
        raise NegativeInput(f"{name} has negative values")
    return exact.as_exact(vals)


def chikr_sum(ctx: FieldCtx, t: int, f, g) -> int:
    """``sum over x.y = t of f(x) g(y)`` on all of F_q^d, exactly."""
    pts = ctx.all_points()
    total = 0
    step = max(1, 4_000_000 // max(ctx.size, 1))
    spec = GraphSpec.prod(t)
    for lo in range(0, ctx.size, step):
        M = relation_matrix(spec, ctx, pts[lo:lo + step], pts).astype(np.int64)
        total += int(exact.frobenius(f[lo:lo + step], exact.matmul(M, g)))
    return total


def _chikr(ctx: FieldCtx, t: int, f, g) -> BoundReport:
    if t % ctx.q == 0:
        raise ZeroParameter("t must be nonzero")
    q, d = ctx.q, ctx.d
    f, g = _grid_values(f, ctx, "f"), _grid_values(g, ctx, "g")
    S = chikr_sum(ctx, t, f, g)
    f1, g1 = exact.total(f), exact.total(g)
    f2, g2 = int(exact.frobenius(f, f)), int(exact.frobenius(g, g))
    scaled = q * S - f1 * g1
    holds = scaled * scaled <= q ** (d + 1) * f2 * g2
    lhs = abs(Fraction(S) - Fraction(f1 * g1, q))
    rhs = q ** ((d - 1) / 2) * math.sqrt(f2 * g2)
    return _report("CHIKR", True, lhs, rhs, holds, {"t": t},
                   {"sum": S, "f_l1": f1, "g_l1": g1, "f_l2sq": f2, "g_l2sq": g2})


def _pair_norms(f) -> dict:
    f = exact.as_exact(np.asarray(f))
    rows = exact.as_exact(f.sum(axis=1) if f.dtype != object else np.array([sum(r, 0) for r in f], dtype=object))
    cols = exact.as_exact(f.sum(axis=0) if f.dtype != object else np.array([sum(c, 0) for c in f.T], dtype=object))
    return {
        "l1": exact.total(f),
        "l2": math.sqrt(exact.frobenius(f, f)),
        "row": math.sqrt(exact.frobenius(rows, rows)),
        "col": math.sqrt(exact.frobenius(cols, cols)),
    }


def _functional(G: Graph, f, g, theorem: str) -> BoundReport:
    rel = _builtin(G)
    want = Relation.DIST if theorem == "T_DIST" else Relation.PROD
    if rel is not want:
        raise WrongRelation(f"{theorem} needs a {want.value} graph")
    q, d = G.ctx.q, G.ctx.d
    T = counting.bilinear_form(G, f, g)
    nf, ng = _pair_norms(f), _pair_norms(g)
    l1 = nf["l1"] * ng["l1"]
    lhs = abs(Fraction(T) - Fraction(l1, q * q))
    marg = nf["row"] * ng["row"] + nf["col"] * ng["col"]
    first = 3 * q ** -3.0 if d == 2 else 3 * q ** (-(d + 2) / 2)
    concise = first * l1 + 4 * q ** (d - 1) * nf["l2"] * ng["l2"] + 4 * q ** ((d - 3) / 2) * marg
    if theorem == "T_DIST":
        rhs = concise
    else:
        rhs = 2 * q ** (d - 1) * nf["l2"] * ng["l2"] + q ** ((d - 3) / 2) * marg
    extra = {"T": T, "f_l1": nf["l1"], "g_l1": ng["l1"], "f_l2": nf["l2"], "g_l2": ng["l2"],
             "F_l2": nf["row"], "G_l2": ng["row"], "F'_l2": nf["col"], "G'_l2": ng["col"],
             "concise_rhs": concise, "concise_holds": le_outward(lhs, concise)}
    return _report(theorem, True, lhs, rhs, le_outward(lhs, rhs), {"t": G.spec.t}, extra)


def _main_term(m: int, q: int, n: int) -> Fraction:
    return Fraction(m ** n, q ** n)


def _main(G: Graph, n: int) -> BoundReport:
    _builtin(G)
    if n < 4:
        raise OutOfRange("MAIN covers n >= 4")
    q, d, m = G.ctx.q, G.ctx.d, len(G)
    C = counting.cycle_count(G, n).total
    main = _main_term(m, q, n)
    lhs = abs(Fraction(C) - main)
    g = gamma(d)
    lin_coef = 24 + 12 * (n // 2)
    if m == 0:
        terms = {"gamma_term": 12 * q ** g, "hyp_size_term_q^(d+2)": math.inf, "linear_term": math.inf}
        return _report("MAIN", False, lhs, 0.0, lhs == 0, terms, {"C_n": C})
    hyp_sq = 8 * q ** (d + 2) / m ** 2
    lin = lin_coef * q ** ((d + 1) / 2) / m
    hyp_total = 12 * q ** g + hyp_sq + lin
    if n == 4:
        sq, lin_c = 8 * q ** (d + 2) / m ** 2, 28
    elif n == 5:
        sq, lin_c = 8 * q ** ((2 * d + 3) / 2) / m ** 2, 32
    else:
        sq, lin_c = 8 * q ** (d + 1) / m ** 2, lin_coef
    factor = 12 * q ** g + sq + lin_c * q ** ((d + 1) / 2) / m
    rhs = float(main) * factor
    terms = {"gamma": g, "gamma_term": 12 * q ** g, "hyp_size_term_q^(d+2)": hyp_sq,
             "linear_term": lin, "total": hyp_total}
    extra = {"C_n": C, "main_term": main, "conclusion_size_term": sq,
             "conclusion_linear_coefficient": lin_c, "relative_error": float(lhs / main) if main else None}
    notes = []
    if n >= 6:
        notes.append("the hypothesis term uses q^(d+2)/|E|^2 and the conclusion uses q^(d+1)/|E|^2; both are kept as stated")
    return _report("MAIN", le_strict(hyp_total, 1.0), lhs, rhs, le_outward(lhs, rhs), terms, extra, notes)


def _main2(G: Graph, n: int, delta: float) -> BoundReport:
    _builtin(G)
    if n < 5:
        raise OutOfRange("MAIN2 covers n >= 5")
    check_delta(n, delta, strict_upper=True)
    q, m = G.ctx.q, len(G)
    C = counting.cycle_count(G, n).total
    main = _main_term(m, q, n)
    lhs = abs(Fraction(C) - main)
    h = n // 2
    const = 36 + 80 * 6 ** (h - 2) + 12 * h
    rhs = const * float(main) * q ** (-(n / 2 - 1) * delta)
    ok, terms = _size_condition(G, n, delta)
    terms["delta"] = delta
    return _report("MAIN2", ok, lhs, rhs, le_outward(lhs, rhs), terms,
                   {"C_n": C, "main_term": main, "constant": const})


def _maincor(G: Graph, n: int, delta: float) -> BoundReport:
    _builtin(G)
    if n < 4:
        raise OutOfRange("MAINCOR covers n >= 4")
    check_delta(n, delta, strict_upper=n >= 5)
    q, m = G.ctx.q, len(G)
    C = counting.cycle_count(G, n).total
    main = _main_term(m, q, n)
    lhs = abs(Fraction(C) - main)
    rhs = K(n) * float(main) * q ** (-(n / 2 - 1) * delta)
    ok, terms = _size_condition(G, n, delta)
    terms["delta"] = delta
    return _report("MAINCOR", ok, lhs, rhs, le_outward(lhs, rhs), terms,
                   {"C_n": C, "main_term": main, "K_n": K(n)})


def _nondeg(G: Graph, n: int, delta: float) -> BoundReport:
    _builtin(G)
    if n < 4:
        raise OutOfRange("NONDEG covers n >= 4")
    check_delta(n, delta, strict_upper=n >= 5)
    q, d, m = G.ctx.q, G.ctx.d, len(G)
    N = counting.nondegenerate_count(G, n)
    main = _main_term(m, q, n)
    lhs = abs(Fraction(N) - main)
    eps = nondeg_epsilon(n, delta)
    factor = (K(n) * q ** (-(n / 2 - 1) * delta) + 2 * n * q ** (-2 / (n - 1))
              + c(n) * q ** (-(d - 3) / 2 - eps))
    rhs = float(main) * factor
    ok, terms = _size_condition(G, n, delta)
    terms.update(delta=delta, epsilon=eps)
    return _report("NONDEG", ok, lhs, rhs, le_outward(lhs, rhs), terms,
                   {"N_n": N, "main_term": main, "K_n": K(n), "c_n": c(n)})


def _truncated(G: Graph, lam: float):
    """Truncate E at degree lam|E|/q using the graph's own degrees."""
    q, m = G.ctx.q, len(G)
    deg = G.degrees
    mask = q * deg.astype(np.float64) <= lam * m
    return mask, G.induced(mask)


def _tree(G: Graph, tree: TreeShape, epsilon: float) -> BoundReport:
    _builtin(G)
    if not epsilon > 0:
        raise OutOfRange("need epsilon > 0")
    q, d, m = G.ctx.q, G.ctx.d, len(G)
    r = tree.r
    if r < 1:
        raise OutOfRange("tree needs at least one edge")
    lam = q ** (2 * epsilon / (r + 1))
    mask, Gs = _truncated(G, lam)
    n_star = counting.tree_embeddings(Gs, tree)
    main = _main_term(m, q, r) * m  # |E|^(r+1) / q^r
    lhs = abs(Fraction(n_star) - main)
    half = q ** ((d + 1) / 2)
    if m == 0:
        rhs = 0.0
    else:
        rhs = 4 * r * float(main) * (1 / lam + lam ** ((r - 1) / 2) * half / m)
    thr = q ** ((d + 1) / 2 + epsilon)
    removed = int((~mask).sum())
    extra = {
        "n_T_star": n_star, "main_term": main, "lambda": lam, "kept": int(mask.sum()),
        "removed": removed, "removed_bound": 2 * m / lam,
        "short_form_rhs": 8 * float(main) / lam,
        "unscaled_rhs": 4 * r * (1 / lam + (lam ** ((r - 1) / 2) * half / m if m else 0.0)),
        "tree_pruefer": list(tree.pruefer),
    }
    notes = ["right-hand side carries the factor |E|^(r+1)/q^r; unscaled_rhs is the same bound without it"]
    hyp = m > 0 and le_strict(math.log(thr), math.log(m))
    return _report("TREE", hyp, lhs, rhs, le_outward(lhs, rhs),
                   {"size": m, "size_threshold": thr, "epsilon": epsilon, "r": r}, extra, notes)


def _trunc(G: Graph, lam: float) -> BoundReport:
    _builtin(G)
    if not lam > 0:
        raise OutOfRange("lambda must be positive")
    m = len(G)
    res = truncate(G.vertices, G.spec, lam)
    rhs = 2 * m / lam
    return _report("TRUNC", True, res.removed_count, rhs, le_outward(res.removed_count, rhs),
                   {"lambda": lam}, {"kept": len(res.kept), "degree_cap": res.degree_cap})


def _degen(G: Graph, n: int) -> BoundReport:
    G.require_symmetric()
    C = counting.cycle_count(G, n).total
    N = counting.nondegenerate_count(G, n)
    B = counting.degenerate_bound(G, n)
    return _report("DEGEN", True, C - N, B, C - N <= B, {"n": n},
                   {"C_n": C, "N_n": N, "bound": B})


def verify(theorem: str, graph: Graph | None = None, *, n: int | None = None, k: int | None = None,
           f=None, g=None, tree: TreeShape | None = None, delta: float | None = None,
           epsilon: float | None = None, lam: float | None = None,
           ctx: FieldCtx | None = None, t: int | None = None) -> BoundReport:
    """Check one theorem on one instance.

    ``graph`` is required for everything except CHIKR, which works on
    functions over the whole space and takes ``ctx``, ``t``, ``f`` and ``g``
    (``ctx``/``t`` may also come from ``graph``).
    """
    tid = theorem.upper()
    if tid not in THEOREMS:
        raise UnsupportedTheorem(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}")
    if tid == "CHIKR":
        if graph is not None:
            ctx = ctx or graph.ctx
            t = graph.spec.t if t is None else t
        return _chikr(_need("ctx", ctx), _need("t", t), _need("f", f), _need("g", g))
    G = _need("graph", graph)
    if tid == "EDGES":
        return edge_report(G)
    if tid == "CHAINS":
        return _chains(G, _need("k", k))
    if tid == "UPPER":
        return _upper(G, _need("k", k))
    if tid == "RECURSION":
        return _recursion(G, _need("k", k))
    if tid in ("T_DIST", "T_PROD"):
        return _functional(G, _need("f", f), _need("g", g), tid)
    if tid == "MAIN":
        return _main(G, _need("n", n))
    if tid == "MAIN2":
        return _main2(G, _need("n", n), _need("delta", delta))
    if tid == "MAINCOR":
        return _maincor(G, _need("n", n), _need("delta", delta))
    if tid == "NONDEG":
        return _nondeg(G, _need("n", n), _need("delta", delta))
    if tid == "TREE":
        return _tree(G, _need("tree", tree), _need("epsilon", epsilon))
    if tid == "TRUNC":
        return _trunc(G, _need("lam", lam))
    return _degen(G, _need("n", n))


# --- sweeps ----------------------------------------------------------------

@dataclass
class SweepConfig:
    """One sweep: ``repetitions`` random instances, each checked for every theorem.

    ``theorems`` entries are ids or dicts such as ``{"id": "MAIN", "n": 4}``.
    Instance i uses seed ``seed + i`` for its point set and its test
    functions, so any single instance can be replayed on its own.
    """

    q: int
    d: int
    relation: str
    t: int
    recipe: str
    theorems: list
    repetitions: int = 1
    seed: int = 0
    loops: bool = True
    fmax: int = 5

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        return cls(**data)


@dataclass
class SweepResult:
    reports: list
    tallies: dict
    worst_slack: dict

    def __len__(self) -> int:
        return len(self.reports)

    def __iter__(self):
        return iter(self.reports)

    @property
    def violations(self) -> list:
        return [r for r in self.reports if r.violation]

    def to_dict(self) -> dict:
        return {"tallies": self.tallies, "worst_slack": self.worst_slack,
                "reports": [r.to_dict() for r in self.reports]}


def _spec_for(relation: str, t: int, loops: bool) -> GraphSpec:
    if relation == "dist":
        return GraphSpec.dist(t, loops=loops)
    if relation == "prod":
        return GraphSpec.prod(t, loops=loops)
    raise WrongRelation(f"sweeps support dist and prod, not {relation!r}")


def _random_function(rng, size: int, fmax: int) -> np.ndarray:
    return np.array([rng.below(fmax + 1) for _ in range(size)], dtype=np.int64)


def instance_reports(G: Graph, theorems, rng, fmax: int = 5) -> list[BoundReport]:
    """Run a theorem list on one graph; ``rng`` supplies test functions."""
    out = []
    for entry in theorems:
        params = {"id": entry} if isinstance(entry, str) else dict(entry)
        tid = params.pop("id").upper()
        if "tree" in params and not isinstance(params["tree"], TreeShape):
            params["tree"] = TreeShape.from_pruefer(params["tree"]) if len(params["tree"]) else TreeShape.path(2)
        if "tree_vertices" in params:
            params["tree"] = TreeShape.path(params.pop("tree_vertices"))
        if tid == "CHIKR" and "f" not in params:
            params["f"] = _random_function(rng, G.ctx.size, fmax)
            params["g"] = _random_function(rng, G.ctx.size, fmax)
        if tid in ("T_DIST", "T_PROD") and "f" not in params:
            m = len(G)
            params["f"] = _random_function(rng, m * m, fmax).reshape(m, m)
            params["g"] = _random_function(rng, m * m, fmax).reshape(m, m)
        out.append(verify(tid, G, **params))
    return out


def verify_sweep(config: SweepConfig | dict) -> SweepResult:
    from .ensembles import generate_set, parse_recipe
    from .field import make_context
    from .rng import Rng

    cfg = SweepConfig.from_dict(config) if isinstance(config, dict) else config
    ctx = make_context(cfg.q, cfg.d)
    spec = _spec_for(cfg.relation, cfg.t, cfg.loops)
    reports: list[BoundReport] = []
    if cfg.theorems:
        for i in range(cfg.repetitions):
            seed = cfg.seed + i
            try:
                E = generate_set(ctx, parse_recipe(cfg.recipe, seed=seed))
                G = build_graph(E, spec)
                batch = instance_reports(G, cfg.theorems, Rng(seed, stream=7), cfg.fmax)
            except FFCyclesError as exc:
                raise type(exc)(f"instance {i} (seed {seed}): {exc}") from exc
            for r in batch:
                r.extra["instance"] = i
                r.extra["seed"] = seed
            reports.extend(batch)
    return SweepResult(reports, *summarise(reports))


def summarise(reports) -> tuple[dict, dict]:
    """Status tallies and the smallest non-vacuous slack, per theorem."""
    tallies: dict = {}
    worst: dict = {}
    for r in reports:
        tallies.setdefault(r.theorem, Counter())[r.status] += 1
        if not r.vacuous:
            s = r.slack
            if r.theorem not in worst or s < worst[r.theorem]:
                worst[r.theorem] = s
    return {k: dict(sorted(v.items())) for k, v in tallies.items()}, worst
