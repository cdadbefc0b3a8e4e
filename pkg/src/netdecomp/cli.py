"""Command line front end: ``netdecomp {gen,run,validate,bench}``.

Generator specs look like ``gnp:n=1000,p=0.01``, ``grid:32x32``,
``grid:rows=20,cols=25``, ``cycle:n=5`` or ``hypercube:dim=6``; a ``seed=``
entry overrides ``--seed`` for the generator only.

``run`` writes the decomposition JSON (see :mod:`netdecomp.io`) to ``--out``
and the run statistics to ``--stats-out``.  ``validate`` exits 1 iff an exact
structural check fails.  ``bench`` writes a JSON object with ``runs`` (one
summary row per trial, trial ``i`` seeded ``seed + i``) and ``claims``.
"""
from __future__ import annotations

import argparse
import hashlib
import math
import sys
from dataclasses import replace
from pathlib import Path

from . import io as nio
from .decomposition import AlgoParams, block_bound, build_schedule, decompose, diameter_bound
from .engine import WORDS_PER_TOKEN
from .graph import Graph, generate, strong_diameter
from .verification import (
    MonteCarloResult,
    oracle_equivalence,
    run_failed,
    survival_from_stats,
    validate,
)


class CLIError(Exception):
    pass


def parse_gen_spec(spec: str) -> tuple[str, int, dict, int | None]:
    """Split a generator spec into ``(kind, n, params, seed_override)``."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip()
    params: dict = {}
    n = 0
    seed = None
    if "x" in rest and "=" not in rest:
        try:
            rows, cols = (int(x) for x in rest.split("x"))
        except ValueError:
            raise CLIError(f"bad grid dimensions in {spec!r}") from None
        return kind, rows * cols, {"rows": rows, "cols": cols}, None
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            try:
                n = int(key)
                continue
            except ValueError:
                raise CLIError(f"bad generator option {item!r} in {spec!r}") from None
        try:
            if key == "n":
                n = int(val)
            elif key == "seed":
                seed = int(val)
            elif key == "p":
                params["p"] = float(val)
            elif key in ("rows", "cols", "dim"):
                params[key] = int(val)
            else:
                raise CLIError(f"unknown generator option {key!r}")
        except ValueError:
            raise CLIError(f"bad value for {key!r} in {spec!r}") from None
    return kind, n, params, seed


def graph_from_spec(spec: str, seed: int) -> Graph:
    kind, n, params, override = parse_gen_spec(spec)
    try:
        return generate(kind, n, params, override if override is not None else seed)
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def _load_graph(args) -> tuple[Graph, str]:
    if (args.graph is None) == (args.gen is None):
        raise CLIError("give exactly one of --graph or --gen")
    if args.gen is not None:
        return graph_from_spec(args.gen, args.seed), f"gen:{args.gen}"
    try:
        text = Path(args.graph).read_text()
        g = nio.parse_edge_list(text)[0]
    except OSError as exc:
        raise CLIError(f"cannot read {args.graph}: {exc.strerror}") from None
    except nio.FormatError as exc:
        raise CLIError(f"{args.graph}: {exc}") from None
    return g, "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def _params(args, n: int) -> AlgoParams:
    p = AlgoParams(args.variant, args.k, args.lam, args.c, args.seed)
    try:
        return p.resolved(n)
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc.strerror}") from None


def run_summary(g: Graph, params: AlgoParams, d, stats) -> dict:
    diam = max((strong_diameter(g, cl.members) for cl in d.clusters), default=0)
    return {
        "n": g.n,
        "variant": params.variant,
        "k": params.k,
        "lambda": params.lam,
        "c": params.c,
        "seed": params.seed,
        "blocks_used": stats.blocks_used,
        "max_cluster_diameter": diam,
        "total_rounds": stats.total_rounds,
        "max_words_per_edge_round": stats.max_words_per_edge,
        "ev_count": stats.ev_count,
        "success": stats.success,
    }


def _summary_line(s: dict) -> str:
    radius = f"k={s['k']}" if s["variant"] != "inverse" else f"lambda={s['lambda']}"
    return (
        f"n={s['n']} variant={s['variant']} {radius} c={s['c']:g} seed={s['seed']} "
        f"blocks_used={s['blocks_used']} max_diameter={s['max_cluster_diameter']} "
        f"rounds={s['total_rounds']} max_words_per_edge={s['max_words_per_edge_round']} "
        f"ev_count={s['ev_count']} success={str(s['success']).lower()}"
    )


def cmd_gen(args) -> int:
    if args.gen is None:
        raise CLIError("gen needs --gen SPEC")
    g = graph_from_spec(args.gen, args.seed)
    text = nio.format_edge_list(g)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_run(args) -> int:
    g, source = _load_graph(args)
    params = _params(args, g.n)
    d, stats = decompose(g, params)
    summary = run_summary(g, params, d, stats)
    summary["graph"] = source
    if args.out:
        _write(args.out, nio.dumps(nio.decomposition_to_dict(d, params, stats)))
    if args.stats_out:
        _write(args.stats_out, nio.dumps({"summary": summary, "stats": stats.to_dict()}))
    print(_summary_line(summary))
    return 0


def cmd_validate(args) -> int:
    if args.decomposition is None:
        raise CLIError("validate needs --decomposition PATH")
    g, _ = _load_graph(args)
    try:
        d, saved, stats = nio.load_decomposition(args.decomposition)
    except OSError as exc:
        raise CLIError(f"cannot read {args.decomposition}: {exc.strerror}") from None
    except nio.FormatError as exc:
        raise CLIError(f"{args.decomposition}: {exc}") from None
    params = saved
    overrides = {k: v for k, v in (("variant", args.variant_given), ("k", args.k), ("lam", args.lam), ("c", args.c_given)) if v is not None}
    if overrides:
        params = replace(params, **overrides)
    try:
        params = params.resolved(g.n)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    report = validate(g, d, params, stats)
    if args.out:
        _write(args.out, nio.dumps(report.to_dict()))
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f" value={c.value} bound={c.bound}" if c.bound is not None else ""
        wit = f" witness={c.witness}" if c.witness else ""
        note = f" ({c.note})" if c.note else ""
        print(f"{status} {c.name}{extra}{wit}{note}")
    return 0 if report.exact_ok else 1


def bench(g: Graph, params: AlgoParams, trials: int, equivalence_trials: int | None = None) -> dict:
    """Run ``trials`` seeded decompositions and tabulate every guarantee."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    params = params.resolved(g.n)
    schedule = build_schedule(params, g.n)
    runs, summaries = [], []
    for i in range(trials):
        p = replace(params, seed=params.seed + i)
        d, stats = decompose(g, p)
        runs.append((d, stats))
        summaries.append(run_summary(g, p, d, stats))
    c = params.c
    claims = []

    def add(name, empirical, bound, passed, **extra):
        claims.append({"claim": name, "empirical": empirical, "bound": bound, "passed": bool(passed), **extra})

    fail_factor = 5 if params.variant == "staged" else 3
    fail = MonteCarloResult.one_sided(sum(run_failed(g, params, s) for _, s in runs), trials, fail_factor / c)
    add("failure-rate", fail.frequency, fail.bound, fail.passed, stderr=fail.stderr)
    ev_factor = 4 if params.variant == "staged" else 2
    ev = MonteCarloResult.one_sided(sum(s.ev_count > 0 for _, s in runs), trials, ev_factor / c)
    add("radius-overflow-rate", ev.frequency, ev.bound, ev.passed, stderr=ev.stderr)
    bb = block_bound(params, g.n)
    worst_blocks = max((s.blocks_used for _, s in runs if s.success), default=0)
    add("blocks-used", worst_blocks, bb, worst_blocks <= bb)
    db = diameter_bound(params, g.n)
    clean = [row["max_cluster_diameter"] for row, (_, s) in zip(summaries, runs) if s.ev_count == 0]
    worst_diam = max(clean, default=0)
    add("strong-diameter", worst_diam, db, worst_diam <= db, runs_counted=len(clean))
    words = max(s.max_words_per_edge for _, s in runs)
    add("words-per-edge-round", words, 2 * WORDS_PER_TOKEN, words <= 2 * WORDS_PER_TOKEN)
    if params.variant == "basic":
        curve = survival_from_stats(g.n, params, [s for _, s in runs])
        worst = max(curve.points, key=lambda pt: pt.empirical - pt.bound)
        add("survival", worst.empirical, worst.bound, curve.passed, phase=worst.phase)
    eq_trials = trials if equivalence_trials is None else equivalence_trials
    if eq_trials > 0:
        eq = oracle_equivalence(g, schedule.phases[0].beta, eq_trials, params.seed)
        add("oracle-equivalence", len(eq.mismatches), 0, eq.passed)
    return {
        "graph_n": g.n,
        "params": params.to_dict(),
        "trials": trials,
        "runs": summaries,
        "claims": claims,
    }


def cmd_bench(args) -> int:
    g, source = _load_graph(args)
    params = _params(args, g.n)
    try:
        result = bench(g, params, args.trials)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    result["graph"] = source
    if args.out:
        _write(args.out, nio.dumps(result))
    print(f"{'claim':<22} {'empirical':>12} {'bound':>12}  result")
    for row in result["claims"]:
        emp, bnd = row["empirical"], row["bound"]
        fmt = lambda x: f"{x:.4g}" if isinstance(x, float) and not math.isinf(x) else str(x)
        print(f"{row['claim']:<22} {fmt(emp):>12} {fmt(bnd):>12}  {'PASS' if row['passed'] else 'FAIL'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netdecomp", description="Strong-diameter network decomposition")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algo=True):
        p.add_argument("--graph", help="edge-list file")
        p.add_argument("--gen", help="generator spec, e.g. gnp:n=1000,p=0.01")
        p.add_argument("--seed", type=int, default=0, help="64-bit master seed (default 0)")
        p.add_argument("--out", help="output path")
        if algo:
            p.add_argument("--variant", choices=["basic", "staged", "inverse"], default="basic")
            p.add_argument("--k", type=int, default=None, help="radius parameter (default ceil(ln(cn)))")
            p.add_argument("--lambda", dest="lam", type=int, default=None, help="block budget (inverse)")
            p.add_argument("--c", type=float, default=10.0, help="failure constant (default 10)")

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    common(p, algo=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="decompose one graph")
    common(p)
    p.add_argument("--stats-out", help="run statistics JSON path")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate", help="check a saved decomposition")
    p.add_argument("--graph", help="edge-list file")
    p.add_argument("--gen", help="generator spec")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--decomposition", help="decomposition JSON written by 'run'")
    p.add_argument("--out", help="report JSON path")
    p.add_argument("--variant", dest="variant_given", choices=["basic", "staged", "inverse"], default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=int, default=None)
    p.add_argument("--c", dest="c_given", type=float, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="seeded multi-trial statistics")
    common(p)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"netdecomp {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
