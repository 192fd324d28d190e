"""``ffcycles`` command line.

Exit codes: 0 ok, 1 usage or input error, 2 theorem violation (or oracle
mismatch), 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import counting
from .bounds import THEOREMS, SweepConfig, verify, verify_sweep
from .ensembles import generate_set, parse_recipe
from .errors import FFCyclesError, ResourceCap
from .field import make_context
from .formats import read_phi_table, read_point_set, write_adjacency
from .graphs import BUILTIN_PHI, GraphSpec, build_graph
from .harness import ExperimentConfig, bundled_config, exit_code, run, to_csv, to_json, to_tsv
from .reports import _jsonable
from .spectra import smoothing_order, spectral_report
from .trees import TreeShape, enumerate_trees, tree_classes

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, graph: bool = True) -> None:
    g = p.add_argument_group("instance")
    g.add_argument("--q", type=int, help="prime modulus")
    g.add_argument("--d", type=int, help="dimension")
    g.add_argument("--t", type=int, default=1, help="relation parameter (default 1)")
    g.add_argument("--relation", choices=["dist", "prod", "custom"], default="dist")
    g.add_argument("--phi", help=f"builtin phi for custom relations: {', '.join(sorted(BUILTIN_PHI))}")
    g.add_argument("--phi-file", help="phi table file for custom relations")
    g.add_argument("--no-loops", action="store_true", help="drop self-loops")
    if graph:
        src = g.add_mutually_exclusive_group()
        src.add_argument("--set", dest="set_file", help="point-set file")
        src.add_argument("--gen", help="set recipe, e.g. randn:m=50 or rand:p=0.5")
    g.add_argument("--seed", type=int, help="seed for random recipes")
    o = p.add_argument_group("output")
    o.add_argument("--json", help="write JSON here instead of stdout")
    o.add_argument("--csv", help="write a CSV summary here")
    o.add_argument("--tsv", help="write gnuplot-ready TSV here")
    o.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ffcycles", description="Exact cycle counts and bound checks over F_q^d.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="count walks, cycles and tree maps")
    _common(c)
    c.add_argument("--n", type=int, action="append", default=[], help="cycle length (repeatable)")
    c.add_argument("--paths", type=int, help="path counts P_0..P_K")
    c.add_argument("--nondegenerate", action="store_true", help="also count distinct-vertex cycles")
    c.add_argument("--tree-bound", action="store_true", help="also report the degenerate-cycle tree bound")
    c.add_argument("--oracle", action="store_true", help="recount by brute force and insist on equality")
    c.add_argument("--export-adjacency", help="write the adjacency list to this file")

    v = sub.add_parser("verify", help="check theorems on one instance")
    _common(v)
    v.add_argument("--theorem", action="append", required=True, type=str.upper,
                   help=f"theorem id (repeatable): {', '.join(THEOREMS)}")
    v.add_argument("--n", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--delta", type=float)
    v.add_argument("--epsilon", type=float)
    v.add_argument("--lam", type=float)
    v.add_argument("--tree-vertices", type=int, help="use the path tree on this many vertices")
    v.add_argument("--tree", help="tree as a comma-separated Pruefer code")
    v.add_argument("--fmax", type=int, default=5, help="max value of random test functions")

    s = sub.add_parser("sweep", help="run a config file, or a seeded sweep of one recipe")
    _common(s, graph=False)
    s.add_argument("--config", help="experiment config (JSON)")
    s.add_argument("--gen", help="set recipe for an inline sweep")
    s.add_argument("--theorem", action="append", default=[], type=str.upper)
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--delta", type=float)
    s.add_argument("--epsilon", type=float)
    s.add_argument("--reps", type=int, default=10)
    s.add_argument("--timing", action="store_true", help="include wall-clock times in JSON")

    sp = sub.add_parser("spectra", help="sphere sizes, Fourier bounds and smoothing order")
    _common(sp, graph=False)

    t = sub.add_parser("trees", help="labelled trees on v vertices")
    _common(t)
    t.add_argument("--v", type=int, required=True, help="number of vertices (2..8)")
    t.add_argument("--list", action="store_true", help="list every labelled tree")

    st = sub.add_parser("selftest", help="run the bundled self-test config")
    st.add_argument("--json", help="write JSON here instead of stdout")
    st.add_argument("--threads", type=int, default=1)
    return p


# --- helpers ---------------------------------------------------------------

def _ctx(args):
    if args.q is None or args.d is None:
        raise UsageError("--q and --d are required")
    return make_context(args.q, args.d)


def _spec(args, ctx):
    loops = not args.no_loops
    if args.relation == "dist":
        return GraphSpec.dist(args.t, loops=loops)
    if args.relation == "prod":
        return GraphSpec.prod(args.t, loops=loops)
    if args.phi_file:
        tctx, table = read_phi_table(args.phi_file)
        if tctx != ctx:
            raise UsageError("phi table is for a different (q, d)")
        return GraphSpec.custom(table, args.t, loops=loops)
    if not args.phi:
        raise UsageError("custom relation needs --phi or --phi-file")
    return GraphSpec.custom(args.phi, args.t, loops=loops)


def _graph(args):
    if getattr(args, "set_file", None):
        E = read_point_set(args.set_file)
        if args.q is None and args.d is None:
            args.q, args.d = E.ctx.q, E.ctx.d
        ctx = _ctx(args)
        if E.ctx != ctx:
            raise UsageError("point-set file header disagrees with --q/--d")
    else:
        ctx = _ctx(args)
        if not args.gen:
            raise UsageError("give --set FILE or --gen RECIPE")
        E = generate_set(ctx, parse_recipe(args.gen, seed=args.seed))
    return build_graph(E, _spec(args, ctx))


def _emit(payload, path) -> None:
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _tree_arg(args):
    if args.tree:
        return TreeShape.from_pruefer([int(x) for x in args.tree.split(",") if x != ""])
    if args.tree_vertices:
        return TreeShape.path(args.tree_vertices)
    return None


# --- subcommands -------------------------------------------------------------

def cmd_count(args) -> int:
    G = _graph(args)
    m = len(G)
    out = {"q": G.ctx.q, "d": G.ctx.d, "t": G.spec.t, "relation": G.spec.name, "size": m,
           "ordered_edges": G.ordered_edges, "cycles": {}, "warnings": list(G.warnings)}
    mismatches = []
    if args.paths is not None:
        out["paths"] = counting.path_counts(G, args.paths)
    for n in args.n:
        prof = counting.cycle_count(G, n)
        entry = {"total": prof.total}
        if args.nondegenerate:
            entry["nondegenerate"] = counting.nondegenerate_count(G, n)
        if args.tree_bound and n >= 3:
            entry["degenerate_bound"] = counting.degenerate_bound(G, n)
        if args.oracle:
            o = counting.oracle_count(G, "cycles", n)
            entry["oracle"] = o
            if o != prof.total:
                mismatches.append(f"C_{n}")
            if args.nondegenerate:
                on = counting.oracle_count(G, "nondegenerate", n)
                entry["oracle_nondegenerate"] = on
                if on != entry["nondegenerate"]:
                    mismatches.append(f"N_{n}")
        out["cycles"][str(n)] = entry
    if args.export_adjacency:
        write_adjacency(G, args.export_adjacency)
    if args.oracle:
        out["oracle_match"] = not mismatches
    _emit(out, args.json)
    if mismatches:
        print(f"oracle mismatch: {', '.join(mismatches)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify(args) -> int:
    G = _graph(args)
    from .bounds import instance_reports
    from .rng import Rng

    entries = []
    tree = _tree_arg(args)
    for tid in args.theorem:
        if tid not in THEOREMS:
            raise UsageError(f"unknown theorem {tid!r}; choose from {', '.join(THEOREMS)}")
        params = {"id": tid}
        for key in ("n", "k", "delta", "epsilon", "lam"):
            if getattr(args, key) is not None:
                params[key] = getattr(args, key)
        if tree is not None:
            params["tree"] = tree
        entries.append(params)
    reports = instance_reports(G, entries, Rng(args.seed or 0, stream=7), args.fmax)
    _emit({"size": len(G), "reports": [r.to_dict() for r in reports]}, args.json)
    for r in reports:
        print(f"{r.theorem}: {r.status}", file=sys.stderr)
    return EXIT_VIOLATION if any(r.violation for r in reports) else EXIT_OK


def cmd_sweep(args) -> int:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
        records = run(cfg, threads=args.threads)
        out = dict(cfg.output)
        for key in ("json", "csv", "tsv"):
            if getattr(args, key):
                out[key] = getattr(args, key)
        text = to_json(records, args.timing)
        if out.get("json"):
            Path(out["json"]).write_text(text)
        else:
            sys.stdout.write(text)
        if out.get("csv"):
            Path(out["csv"]).write_text(to_csv(records))
        if out.get("tsv"):
            Path(out["tsv"]).write_text(to_tsv(records))
        for rec in records:
            if rec.error:
                print(f"{rec.job_id}: {rec.error_type}: {rec.error}", file=sys.stderr)
        return exit_code(records)
    if not args.gen or not args.theorem:
        raise UsageError("sweep needs --config, or --gen with at least one --theorem")
    _ctx(args)
    theorems = []
    for tid in args.theorem:
        entry = {"id": tid}
        for key in ("n", "k", "delta", "epsilon"):
            if getattr(args, key) is not None:
                entry[key] = getattr(args, key)
        theorems.append(entry)
    cfg = SweepConfig(q=args.q, d=args.d, relation=args.relation, t=args.t, recipe=args.gen,
                      theorems=theorems, repetitions=args.reps, seed=args.seed or 0,
                      loops=not args.no_loops)
    res = verify_sweep(cfg)
    _emit(res.to_dict(), args.json)
    if args.csv or args.tsv:
        from .harness import ResultRecord

        recs = [ResultRecord(i, f"rep{i}", {"size": ""}, reports=[r]) for i, r in enumerate(res.reports)]
        if args.csv:
            Path(args.csv).write_text(to_csv(recs))
        if args.tsv:
            Path(args.tsv).write_text(to_tsv(recs))
    return EXIT_VIOLATION if res.violations else EXIT_OK


def cmd_spectra(args) -> int:
    ctx = _ctx(args)
    spec = _spec(args, ctx)
    out = {"q": ctx.q, "d": ctx.d, "t": args.t, "relation": spec.name}
    if args.relation == "dist":
        out["sphere"] = spectral_report(ctx, args.t).to_dict()
    out["smoothing"] = smoothing_order(ctx, spec).to_dict()
    _emit(out, args.json)
    return EXIT_OK


def cmd_trees(args) -> int:
    v = args.v
    classes = tree_classes(v)
    out = {"v": v, "labelled_trees": sum(mult for _, mult in classes), "cayley": v ** (v - 2),
           "classes": []}
    G = _graph(args) if (args.gen or args.set_file) else None
    for T, mult in classes:
        entry = {"canonical_pruefer": list(T.canonical_pruefer()), "edges": [list(e) for e in T.edges],
                 "labelled_copies": mult}
        if G is not None:
            entry["n_T"] = counting.tree_embeddings(G, T)
        out["classes"].append(entry)
    if args.list:
        out["trees"] = [list(T.pruefer) for T in enumerate_trees(v)]
    _emit(out, args.json)
    return EXIT_OK


def cmd_selftest(args) -> int:
    records = run(bundled_config("selftest"), threads=args.threads)
    text = to_json(records)
    if args.json:
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)
    bad = [r.job_id for r in records if r.failed or r.error]
    if bad:
        print(f"selftest problems in: {', '.join(bad)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


COMMANDS = {"count": cmd_count, "verify": cmd_verify, "sweep": cmd_sweep,
            "spectra": cmd_spectra, "trees": cmd_trees, "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ResourceCap as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, FFCyclesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
