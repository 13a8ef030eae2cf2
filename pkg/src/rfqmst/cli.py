"""Command-line entry point: ``rfqmst <command> ...``.

Exit codes: 0 on success, 1 on a configuration error, 2 when a tree is
infeasible or the enumeration guard refuses an instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import (
    EvalContext,
    InfeasibleTreeError,
    bits_to_str,
    evaluate,
    evaluate_many,
    parse_bits,
    tree_violation,
)
from .exact import DEFAULT_MAX_TREES, EnumerationBudgetError, ExactSolver, InfeasibleEpsilonError
from .instance import (
    Instance,
    InstanceFormatError,
    InvalidInstanceError,
    generate_random,
    paper_instance,
    parse_generator_spec,
    read_instance,
    serialize_instance,
)
from .metrics import INDICATORS, Front, build_reference_front, indicator_values, summarize_runs
from .moea import MOCHC, NSGA2
from .uncertainty import ConfidenceLevels

ALGORITHMS = ("nsga2", "mochc")
DEFAULT_BETAS = (0.1, 0.3, 0.5, 0.7, 0.9)
DEFAULT_ALPHAS = (0.2, 0.4, 0.6, 0.8)
DEFAULT_EXPERIMENT = ("QMST_10_30:1", "QMST_20_70:1", "QMST_30_120:1", "QMST_40_170:1",
                      "QMST_50_220:1")
DEFAULT_LEVELS = ((0.9, 0.4), (0.9, 0.8))

# the two compromise points reported for the built-in instance
PAPER_EXPECTED = ((0.9, 0.4, 128.56, 11.94), (0.9, 0.8, 129.576, 16.44))


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def f6(x: float) -> str:
    return f"{x:.6f}"


# ---------------------------------------------------------------- config helpers


def load_instance(ref: str) -> Instance:
    if ref == "paper":
        return paper_instance()
    if ref.upper().startswith("QMST_"):
        return parse_generator_spec(ref)
    return read_instance(ref)


def instance_name(ref: str) -> str:
    if ref == "paper" or ref.upper().startswith("QMST_"):
        return ref
    return Path(ref).stem


def levels_from(args, alpha=None, beta=None) -> ConfidenceLevels:
    a = alpha if alpha is not None else (args.alpha if args.alpha is not None else 0.9)
    b = beta if beta is not None else (args.beta if args.beta is not None else 0.4)
    return ConfidenceLevels(
        args.alpha1 if args.alpha1 is not None else a,
        args.alpha2 if args.alpha2 is not None else a,
        args.beta1 if args.beta1 is not None else b,
        args.beta2 if args.beta2 is not None else b,
    )


def float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def level_list(text: str) -> list[tuple[float, float]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"levels are alpha:beta pairs, got {item!r}")
        out.append((float(a), float(b)))
    return out


def make_estimator(name: str, args, seed: int):
    common = dict(population=args.pop, max_evaluations=args.evals, random_state=seed)
    if name == "nsga2":
        return NSGA2(crossover_prob=args.crossover_prob if args.crossover_prob is not None else 0.9,
                     mutation_prob_per_bit=args.mutation_prob, **common)
    if name == "mochc":
        return MOCHC(crossover_prob=args.crossover_prob if args.crossover_prob is not None else 0.9,
                     incest_threshold_fraction=args.incest_fraction,
                     preserved_fraction=args.preserved_fraction,
                     cataclysm_prob=args.cataclysm_prob, **common)
    raise ConfigError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")


# ---------------------------------------------------------------- output helpers


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def front_rows(front: Front):
    genos = front.genotypes if front.genotypes is not None else [None] * len(front)
    for (a, b), g in zip(front.points, genos):
        yield f6(a), f6(b), "" if g is None else bits_to_str(g)


def front_csv(front: Front) -> str:
    return csv_text(("f1", "f2", "genotype_bits"), front_rows(front))


def front_json(front: Front, **meta) -> str:
    pts = [{"f1": float(a), "f2": float(b), "genotype_bits": g}
           for (a, b), (_, _, g) in zip(front.points, front_rows(front))]
    return json_text({**meta, "points": pts})


def read_front_csv(path) -> Front:
    """Load a front written by this tool."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    pts = [(float(r["f1"]), float(r["f2"])) for r in rows]
    if rows and all(r["genotype_bits"] for r in rows):
        return Front(pts, [parse_bits(r["genotype_bits"]) for r in rows])
    return Front(pts)


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def emit(args, text: str, default_name: str) -> None:
    """Write to ``--out`` (a file, or a directory if it has no suffix) or stdout."""
    if args.out is None:
        sys.stdout.write(text)
        return
    out = Path(args.out)
    write(out / default_name if not out.suffix else out, text)


def front_files(out: Path, stem: str, front: Front, fmt: str, **meta) -> None:
    if fmt == "json":
        write(out / f"{stem}.json", front_json(front, **meta))
    else:
        write(out / f"{stem}.csv", front_csv(front))


def levels_meta(levels: ConfidenceLevels) -> dict:
    return {"alpha1": levels.alpha1, "alpha2": levels.alpha2,
            "beta1": levels.beta1, "beta2": levels.beta2}


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    inst = generate_random(args.n, args.m, args.seed)
    emit(args, serialize_instance(inst), f"QMST_{args.n}_{args.m}.qmst")
    return 0


def cmd_eval(args) -> int:
    inst = load_instance(args.instance)
    if (args.tree is None) == (args.edges is None):
        raise ConfigError("give exactly one of --tree or --edges")
    if args.tree is not None:
        bits = parse_bits(args.tree, inst.edge_count)
    else:
        bits = np.zeros(inst.edge_count, dtype=bool)
        for label in args.edges.split(","):
            bits[inst.edge_index(label.strip())] = True
    problem = tree_violation(inst, bits)
    if problem is not None:
        raise InfeasibleTreeError(f"not a spanning tree: {problem}")
    ctx = EvalContext(inst, levels_from(args))
    f1, f2 = evaluate(ctx, bits)
    if args.format == "json":
        text = json_text({"f1": f1, "f2": f2, "feasible": True, "genotype_bits": bits_to_str(bits),
                          **levels_meta(ctx.levels)})
    else:
        text = csv_text(("f1", "f2", "feasible", "genotype_bits"),
                        [(f6(f1), f6(f2), "true", bits_to_str(bits))])
    emit(args, text, "eval." + args.format)
    return 0


def cmd_exact(args) -> int:
    inst = load_instance(args.instance)
    ctx = EvalContext(inst, levels_from(args))
    solver = ExactSolver(max_trees=args.max_trees).fit(ctx)
    front = solver.front_
    meta = dict(instance=instance_name(args.instance), trees=solver.n_trees_, **levels_meta(ctx.levels))
    if args.out is None:
        sys.stdout.write(front_json(front, **meta) if args.format == "json" else front_csv(front))
    else:
        out = Path(args.out)
        write(out / "front.csv", front_csv(front))
        write(out / "front.json", front_json(front, **meta))
    if args.sweep:
        rows = [(f6(eps), f6(o.f1), f6(o.f2), bits_to_str(t))
                for eps, t, o in solver.epsilon_sweep(args.primary)]
        text = csv_text(("epsilon", "f1", "f2", "genotype_bits"), rows)
        if args.out is None:
            sys.stdout.write(text)
        else:
            write(Path(args.out) / "sweep.csv", text)
    return 0


def _run_many(ctx, algorithm, args, seeds):
    return [make_estimator(algorithm, args, s).fit(ctx).front_ for s in seeds]


def _indicator_rows(fronts, reference, seeds):
    rows = []
    for k, (front, seed) in enumerate(zip(fronts, seeds), start=1):
        vals = indicator_values(front, reference)
        rows.append((k, seed, vals))
    return rows


def _stats_rows(name, algorithm, per_run):
    for ind in INDICATORS:
        st = summarize_runs([v[ind] for _, _, v in per_run])
        yield name, algorithm, ind, f6(st.mean), f6(st.sd), f6(st.median), f6(st.iqr)


STATS_HEADER = ("instance", "algorithm", "indicator", "mean", "sd", "median", "iqr")


def cmd_solve(args) -> int:
    if args.runs < 1:
        raise ConfigError("--runs must be at least 1")
    inst = load_instance(args.instance)
    ctx = EvalContext(inst, levels_from(args))
    make_estimator(args.algorithm, args, args.seed)._params()  # validate before running
    seeds = [args.seed + i for i in range(args.runs)]
    fronts = _run_many(ctx, args.algorithm, args, seeds)
    if args.reference == "exact":
        reference = ExactSolver(max_trees=args.max_trees).fit(ctx).front_
    else:
        reference = build_reference_front(fronts)
    per_run = _indicator_rows(fronts, reference, seeds)
    name = instance_name(args.instance)
    stats = csv_text(STATS_HEADER, _stats_rows(name, args.algorithm, per_run))
    if args.out is None:
        sys.stdout.write(stats)
        return 0
    out = Path(args.out)
    meta = levels_meta(ctx.levels)
    for (k, seed, _), front in zip(per_run, fronts):
        front_files(out / "fronts", f"run_{k:03d}_seed_{seed}", front, args.format,
                    algorithm=args.algorithm, seed=seed, **meta)
    front_files(out, "reference", reference, args.format, **meta)
    write(out / "indicators.csv", csv_text(
        ("run", "seed", *INDICATORS),
        [(k, s, *(f6(v[i]) for i in INDICATORS)) for k, s, v in per_run]))
    write(out / "stats.csv", stats)
    return 0


def _load_expected(ref: str | None) -> dict:
    if ref is None:
        return {}
    if ref == "paper":
        return {(a, b): (f1, f2) for a, b, f1, f2 in PAPER_EXPECTED}
    with open(ref, newline="") as fh:
        return {(float(r["alpha"]), float(r["beta"])): (float(r["f1"]), float(r["f2"]))
                for r in csv.DictReader(fh)}


def knee_index(points: np.ndarray) -> int:
    """Front point closest (L2) to the ideal point after min-max normalisation."""
    lo, hi = points.min(axis=0), points.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    d = np.linalg.norm((points - lo) / span, axis=1)
    return int(np.argmin(d))


SENSITIVITY_HEADER = (
    "beta", "alpha", "front_size",
    "min_f1_f1", "min_f1_f2", "min_f2_f1", "min_f2_f2",
    "knee_f1", "knee_f2", "knee_genotype_bits",
    "expected_f1", "expected_f2", "achievable", "front_dominates",
)


def cmd_sensitivity(args) -> int:
    inst = load_instance(args.instance)
    expected = _load_expected(args.expected)
    base = ExactSolver(max_trees=args.max_trees).fit(EvalContext.from_levels(inst, 0.5, 0.5))
    trees = base.trees_
    rows, cells = [], []
    for beta in args.betas:
        for alpha in args.alphas:
            ctx = EvalContext(inst, ConfidenceLevels.uniform(alpha, beta))
            obj = evaluate_many(ctx, trees)
            front = Front(obj, trees)
            pts = front.points
            k = knee_index(pts)
            row = [f6(beta), f6(alpha), len(front), f6(pts[0, 0]), f6(pts[0, 1]),
                   f6(pts[-1, 0]), f6(pts[-1, 1]), f6(pts[k, 0]), f6(pts[k, 1]),
                   bits_to_str(front.genotypes[k])]
            cell = {"beta": beta, "alpha": alpha, "front_size": len(front),
                    "min_f1": pts[0].tolist(), "min_f2": pts[-1].tolist(), "knee": pts[k].tolist(),
                    "knee_genotype_bits": bits_to_str(front.genotypes[k])}
            hit = next((v for key, v in expected.items()
                        if abs(key[0] - alpha) < 1e-9 and abs(key[1] - beta) < 1e-9), None)
            if hit is None:
                row += ["", "", "", ""]
            else:
                e = np.asarray(hit)
                achievable = bool((np.abs(obj - e) <= args.tol).all(axis=1).any())
                dominated = bool((pts <= e + args.tol).all(axis=1).any())
                row += [f6(e[0]), f6(e[1]), str(achievable).lower(), str(dominated).lower()]
                cell.update(expected=e.tolist(), achievable=achievable, front_dominates=dominated)
            rows.append(row)
            cells.append(cell)
    if args.format == "json":
        text = json_text({"instance": instance_name(args.instance), "tolerance": args.tol,
                          "cells": cells})
    else:
        text = csv_text(SENSITIVITY_HEADER, rows)
    emit(args, text, "sensitivity." + args.format)
    return 0


def _wide_rows(stats, algorithms, names, a: str, b: str):
    for alg in algorithms:
        for name in names:
            cells = []
            for ind in INDICATORS:
                st = stats[(name, alg, ind)]
                cells += [f6(getattr(st, a)), f6(getattr(st, b))]
            yield (alg, name, *cells)


def cmd_experiment(args) -> int:
    if args.runs < 1:
        raise ConfigError("--runs must be at least 1")
    for alg in args.algorithms:
        if alg not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {alg!r}; choose from {', '.join(ALGORITHMS)}")
        make_estimator(alg, args, args.seed)._params()
    if args.alpha is not None or args.beta is not None:
        level_pairs = [(args.alpha if args.alpha is not None else 0.9,
                        args.beta if args.beta is not None else 0.4)]
    else:
        level_pairs = args.levels
    refs = args.instances
    instances = {ref: load_instance(ref) for ref in refs}
    names = [instance_name(r) for r in refs]
    seeds = [args.seed + i for i in range(args.runs)]
    stdout = []
    for alpha, beta in level_pairs:
        tag = f"a{alpha:g}_b{beta:g}"
        long_rows, run_rows, stats = [], [], {}
        for ref, name in zip(refs, names):
            ctx = EvalContext(instances[ref], levels_from(args, alpha, beta))
            fronts = {alg: _run_many(ctx, alg, args, seeds) for alg in args.algorithms}
            reference = build_reference_front([f for fs in fronts.values() for f in fs])
            for alg in args.algorithms:
                per_run = _indicator_rows(fronts[alg], reference, seeds)
                run_rows += [(name, alg, k, s, *(f6(v[i]) for i in INDICATORS))
                             for k, s, v in per_run]
                for ind in INDICATORS:
                    stats[(name, alg, ind)] = summarize_runs([v[ind] for _, _, v in per_run])
                long_rows += list(_stats_rows(name, alg, per_run))
        long_text = csv_text(STATS_HEADER, long_rows)
        if args.out is None:
            stdout.append(f"# alpha={alpha:g} beta={beta:g}\n" + long_text)
            continue
        out = Path(args.out)
        write(out / f"stats_{tag}.csv", long_text)
        wide_header = ["algorithm", "instance"]
        write(out / f"runs_{tag}.csv", csv_text(
            ("instance", "algorithm", "run", "seed", *INDICATORS), run_rows))
        for a, b in (("mean", "sd"), ("median", "iqr")):
            header = wide_header + [f"{ind}_{s}" for ind in INDICATORS for s in (a, b)]
            write(out / f"table_{a}_{b}_{tag}.csv",
                  csv_text(header, _wide_rows(stats, args.algorithms, names, a, b)))
    if stdout:
        sys.stdout.write("".join(stdout))
    return 0


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser, solver: bool = False) -> None:
    p.add_argument("--instance", default="paper",
                   help="instance file, QMST_n_m[:seed] generator spec, or 'paper' (default)")
    for name in ("alpha", "alpha1", "alpha2", "beta", "beta1", "beta2"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--out", default=None, help="output file or directory (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--max-trees", type=int, default=DEFAULT_MAX_TREES)
    if solver:
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--runs", type=int, default=1)
        p.add_argument("--evals", type=int, default=50_000)
        p.add_argument("--pop", type=int, default=100)
        p.add_argument("--crossover-prob", type=float, default=None)
        p.add_argument("--mutation-prob", type=float, default=0.03)
        p.add_argument("--incest-fraction", type=float, default=0.25)
        p.add_argument("--preserved-fraction", type=float, default=0.05)
        p.add_argument("--cataclysm-prob", type=float, default=0.35)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rfqmst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a random QMST_n_m instance")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="evaluate one spanning tree")
    _add_common(p)
    p.add_argument("--tree", help="genotype bits, e.g. 100011010010001101")
    p.add_argument("--edges", help="comma-separated edge labels, e.g. e12,e17,...")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("exact", help="exact Pareto front by enumeration")
    _add_common(p)
    p.add_argument("--sweep", action="store_true", help="also emit the epsilon-constraint sweep")
    p.add_argument("--primary", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("solve", help="repeated NSGA-II or MOCHC runs")
    p.add_argument("algorithm", choices=ALGORITHMS)
    _add_common(p, solver=True)
    p.add_argument("--reference", choices=("merged", "exact"), default="merged",
                   help="indicator reference: union of all runs (default) or the exact front")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sensitivity", help="exact fronts over a grid of confidence levels")
    _add_common(p)
    p.add_argument("--betas", type=float_list, default=list(DEFAULT_BETAS))
    p.add_argument("--alphas", type=float_list, default=list(DEFAULT_ALPHAS))
    p.add_argument("--expected", default=None,
                   help="CSV with alpha,beta,f1,f2 columns, or 'paper' for the built-in points")
    p.add_argument("--tol", type=float, default=1e-2)
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("experiment", help="multi-instance, multi-run indicator statistics")
    _add_common(p, solver=True)
    p.set_defaults(runs=100)
    p.add_argument("--instances", type=lambda s: [t for t in s.split(",") if t],
                   default=list(DEFAULT_EXPERIMENT))
    p.add_argument("--algorithms", type=lambda s: [t for t in s.split(",") if t],
                   default=list(ALGORITHMS))
    p.add_argument("--levels", type=level_list, default=list(DEFAULT_LEVELS),
                   help="alpha:beta pairs (default 0.9:0.4,0.9:0.8)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (InfeasibleTreeError, EnumerationBudgetError, InfeasibleEpsilonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, InstanceFormatError, InvalidInstanceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
