"""Command-line harness: ``hcrev gen | run | verify | bench``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import verify
from .algos import ALGORITHMS, AlgorithmConfig, average_linkage, bisect_then_random, random_tree
from .errors import CapExceeded, ParseError
from .hctree import revenue
from .instance import format_weight, gen_matching, gen_random, pad_to_even, parse_graph, serialize_graph
from .mub import EXACT_CAP, mub_exact
from .oracle import BRUTEFORCE_CAP, opt_tree, trial_seeds

RUN_HEADER = ["instance", "n", "algo", "solver", "seed", "revenue", "opt", "ratio", "ms"]
BENCH_HEADER = ["section", "algo", "solver", "n", "instances", "mean_ratio", "min_ratio", "source"]


class UsageError(Exception):
    pass


def _num(x) -> str:
    x = Fraction(x)
    try:
        return format_weight(x)
    except ValueError:
        return f"{float(x):.12g}"


def _ratio(rev, opt) -> str:
    if opt is None:
        return ""
    return f"{float(rev / opt) if opt else 1.0:.6f}"


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_gen(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    if args.type == "matching":
        try:
            g = gen_matching(args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        g = gen_random(args.n, args.density, args.max_weight, args.seed)
    text = serialize_graph(g)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        summary_stream = sys.stderr
    else:
        Path(args.out).write_text(text)
        summary_stream = sys.stdout
    total = sum((w for _, _, w in g.edges), Fraction(0))
    print(f"{args.type}: n={g.n} m={g.m} total_weight={_num(total)} -> {args.out or 'stdout'}", file=summary_stream)
    return 0


def _load(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_graph(text)


def cmd_run(args) -> int:
    g = _load(args.instance)
    instance_id = "stdin" if args.instance == "-" else Path(args.instance).stem
    if args.pad_odd:
        g = pad_to_even(g)
    if args.algo == "bisect-random" and g.n % 2:
        raise UsageError(f"bisect-random needs an even n (got {g.n}); pass --pad-odd to add an isolated point")
    if (args.oracle or args.algo == "opt") and g.n > BRUTEFORCE_CAP:
        raise UsageError(f"oracle is capped at n={BRUTEFORCE_CAP}, instance has n={g.n}")
    if args.algo == "bisect-random" and args.solver == "exact" and g.n > EXACT_CAP:
        raise UsageError(f"exact MUB is capped at n={EXACT_CAP}, instance has n={g.n}")
    cfg = AlgorithmConfig(args.algo, args.solver if args.algo == "bisect-random" else None,
                          args.seed, args.trials)

    opt = opt_tree(g).optimum if args.oracle else None
    cached = {}
    if cfg.name == "bisect-random" and cfg.solver == "exact":
        cached["bisection"] = mub_exact(g)

    rows, revs, best_tree, best_rev = [], [], None, None
    seeds = trial_seeds(cfg.seed, cfg.trials)
    for k in range(cfg.trials):
        start = time.perf_counter()
        if cfg.name == "rand":
            t = random_tree(g.n, seeds[k])
        elif cfg.name == "avglink":
            t = cached.get("tree") or average_linkage(g)
        elif cfg.name == "opt":
            t = cached.get("tree") or opt_tree(g).witness
        else:
            t = bisect_then_random(g, cfg.solver, seeds[k], bisection=cached.get("bisection"))
        if cfg.name in ("avglink", "opt"):
            cached["tree"] = t
        rev = revenue(g, t)
        revs.append(rev)
        ms = (time.perf_counter() - start) * 1000
        seed = seeds[k] if cfg.name in ("rand", "bisect-random") else cfg.seed
        rows.append([instance_id, g.n, cfg.name, cfg.solver or "", seed, _num(rev),
                     "" if opt is None else _num(opt), _ratio(rev, opt), f"{ms:.3f}"])
        if best_rev is None or rev > best_rev:
            best_tree, best_rev = t, rev

    out, close = _open_out(args.out)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RUN_HEADER)
    writer.writerows(rows)
    if close:
        out.close()
    if args.out_tree:
        Path(args.out_tree).write_text(best_tree.newick() + "\n")

    mean_rev = sum(revs, Fraction(0)) / len(revs)
    summary = f"{cfg.name}: trials={cfg.trials} mean_revenue={float(mean_rev):.6g}"
    if opt is not None:
        summary += f" opt={_num(opt)} mean_ratio={_ratio(mean_rev, opt)}"
    if cfg.p is not None:
        summary += f" p={cfg.p}"
    print(summary, file=sys.stderr)
    return 0


def _even_range(lo, hi):
    return tuple(n for n in range(lo, hi + 1) if n % 2 == 0)


def cmd_verify(args) -> int:
    name = args.suite
    seed = args.seed
    inst = args.instances
    n_max = args.n_max
    if name == "lemma-y-expectation":
        rep = verify.lemma_y_expectation(_even_range(4, n_max or 8), inst or 50, seed)
    elif name == "cut-probability":
        rep = verify.cut_probability(inst or 100, _even_range(6, n_max or 12), seed)
    elif name == "half-bisection":
        if (n_max or 8) > BRUTEFORCE_CAP:
            raise UsageError(f"half-bisection uses the brute-force oracle, capped at n={BRUTEFORCE_CAP}")
        rep = verify.half_bisection(inst or 200, _even_range(4, n_max or 8), seed)
    elif name == "extraction":
        rep = verify.extraction(inst or 100, 20, _even_range(6, n_max or 10), seed)
    elif name == "complementarity":
        rep = verify.complementarity(inst or 100, 10, n_max or 16, seed)
    elif name == "tightness":
        rep = verify.tightness(tuple(n for n in range(8, (n_max or 20) + 1, 4)))
    elif name == "alg-ratio":
        n = n_max or 10
        if n % 2 or n > 14:
            raise UsageError("alg-ratio needs an even --n-max of at most 14")
        rep = verify.alg_ratio(inst or 30, n, args.trials or 2000, seed)
    else:
        raise UsageError(f"unknown suite {name!r}")
    for line in rep.lines():
        print(line)
    return 0 if rep.ok else 1


def cmd_bench(args) -> int:
    algos = [args.algo] if args.algo else ["rand", "avglink", "bisect-random"]
    if args.n_max > BRUTEFORCE_CAP:
        raise UsageError(f"bench corpus uses the oracle, capped at n={BRUTEFORCE_CAP}")
    matching_n = [int(x) for x in args.matching_n.split(",") if x.strip()] if args.matching_n else []
    if any(n % 2 or n < 4 for n in matching_n):
        raise UsageError("--matching-n values must be even and at least 4")

    corpus = verify.random_corpus(args.instances, _even_range(4, args.n_max), args.seed) if args.instances else []
    opts = [opt_tree(g).optimum for g in corpus]
    bisections = [mub_exact(g) for g in corpus] if "bisect-random" in algos and args.solver == "exact" else None

    rows = []
    for algo in algos:
        per_n = {}
        for idx, g in enumerate(corpus):
            seeds = trial_seeds(args.seed + 7919 * (idx + 1), args.trials)
            if algo == "avglink":
                revs = [revenue(g, average_linkage(g))]
            elif algo == "rand":
                revs = [revenue(g, random_tree(g.n, s)) for s in seeds]
            else:
                b = bisections[idx] if bisections else None
                revs = [revenue(g, bisect_then_random(g, args.solver, s, bisection=b)) for s in seeds]
            ratio = sum(revs, Fraction(0)) / len(revs) / opts[idx] if opts[idx] else Fraction(1)
            per_n.setdefault(g.n, []).append(ratio)
        for n in sorted(per_n):
            vals = per_n[n]
            rows.append(["corpus", algo, args.solver if algo == "bisect-random" else "", n, len(vals),
                         f"{float(sum(vals) / len(vals)):.6f}", f"{float(min(vals)):.6f}", "oracle"])

    for n in matching_n:
        g = gen_matching(n)
        u = mub_exact(g).uncut_weight(g) if n <= EXACT_CAP else Fraction(verify.matching_best_uncut(n))
        if n <= BRUTEFORCE_CAP:
            opt, source = opt_tree(g).optimum, "oracle"
        else:
            opt, source = Fraction(n // 2 * (n - 2)), "analytic"
        ratio = Fraction(n, 2) * u / opt
        rows.append(["tightness", "bisection", "exact", n, 1, f"{float(ratio):.6f}", f"{float(ratio):.6f}", source])

    out, close = _open_out(args.out)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    writer.writerows(rows)
    if close:
        out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcrev", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a revenue instance as an edge list")
    p.add_argument("--type", choices=["matching", "gnp"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="build trees on an instance and report revenue as CSV")
    p.add_argument("instance", help="edge-list file, or - for stdin")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--solver", choices=["exact", "local", "random"], default="exact")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="attach the exact optimum and ratio")
    p.add_argument("--out-tree", help="write the best trial's tree as Newick")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--pad-odd", action="store_true", help="add an isolated point when n is odd")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run a property suite on a seeded corpus")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--n-max", type=int)
    p.add_argument("--instances", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="ratio table against the oracle")
    p.add_argument("--algo", choices=["rand", "avglink", "bisect-random"])
    p.add_argument("--solver", choices=["exact", "local", "random"], default="exact")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--matching-n", default="8,12,16", help="comma list of matching sizes for the tightness rows")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", None) is not None and args.trials < 1:
        parser.error("--trials must be at least 1")
    try:
        return args.func(args)
    except (UsageError, ParseError, CapExceeded, ValueError) as exc:
        print(f"hcrev {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hcrev {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
