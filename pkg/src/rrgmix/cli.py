"""Command-line entry point: ``rrgmix <command> [options]``.

Every command echoes its resolved configuration as ``#`` lines, either at the
top of the file it writes or on standard output.  Nothing depends on the
clock or on ambient entropy, so outputs are reproducible byte for byte.

Exit codes: 0 success, 1 invalid input (bad flags, values or files, a refused
budget, failed hard checks), 2 runtime error.
"""

import argparse
import sys
from pathlib import Path

from . import mixing, montecarlo, theory, verify
from .config_model import sample_simple_regular
from .errors import BudgetExceeded, NotReached, RRGError
from .graph import (complete_bipartite, complete_graph, load_graph, petersen_graph,
                    save_graph, validate)
from .walks import WALK_KINDS, Kernel


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _positive(kind):
    def conv(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v
    return conv


def _unit(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return v


def build_parser():
    p = _Parser(prog="rrgmix", description="Random regular graphs and random-walk cutoff.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="sample a simple d-regular graph")
    g.add_argument("-n", "--n", type=_positive(int), required=True)
    g.add_argument("-d", "--d", type=_positive(int), required=True)
    g.add_argument("--seed", type=_nonneg_int, required=True)
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--approximate", action="store_true",
                   help="repair one pairing by edge switchings (not exactly uniform)")
    g.add_argument("--max-attempts", type=_positive(int), default=10_000)

    def walk_args(q):
        q.add_argument("-g", "--graph", required=True)
        q.add_argument("-w", "--walk", choices=WALK_KINDS, default="srw")
        q.add_argument("--starts", default="all", help="all | sample:M | single:S")
        q.add_argument("-t", "--tmax", type=_nonneg_int, required=True)
        q.add_argument("--seed", type=_nonneg_int, default=None)
        q.add_argument("--budget", type=_positive(float), default=float(mixing.DEFAULT_BUDGET))
        q.add_argument("--threads", type=_positive(int), default=1)

    pr = sub.add_parser("profile", help="worst-case TV profile to CSV")
    walk_args(pr)
    pr.add_argument("-o", "--output", required=True)
    pr.add_argument("--project", action="store_true",
                    help="NBRW only: also write the head-vertex profile")

    tm = sub.add_parser("tmix", help="mixing times at given levels")
    walk_args(tm)
    tm.add_argument("--eps", type=_unit, nargs="+", default=[0.25])

    pd = sub.add_parser("predict", help="closed-form predictions")
    which = pd.add_mutually_exclusive_group(required=True)
    which.add_argument("--srw", action="store_true")
    which.add_argument("--nbrw", action="store_true")
    which.add_argument("--large-d", action="store_true")
    pd.add_argument("-n", "--n", type=_positive(int), required=True)
    pd.add_argument("-d", "--d", type=_positive(int), required=True)
    pd.add_argument("--eps", type=_unit, default=0.25)
    pd.add_argument("-s", "--s", type=_unit, default=0.25)

    vf = sub.add_parser("verify", help="run the lemma and identity checks")
    vf.add_argument("-g", "--graph", nargs="*", default=[],
                    help="graph files; the K4, Petersen and K33 fixtures when omitted")
    vf.add_argument("--seed", type=_nonneg_int, required=True)
    vf.add_argument("--no-statistical", action="store_true")
    vf.add_argument("--path-counts", action="store_true",
                    help="also count simple paths on a sampled G(1000, 3)")

    bd = sub.add_parser("bd-speed", help="distance of the walk from its start, to CSV")
    bd.add_argument("-g", "--graph", required=True)
    bd.add_argument("-u", "--start", type=_nonneg_int, default=0)
    bd.add_argument("-c", "--c", type=_positive(float), nargs="+", default=[1.5, 3.0, 9.0])
    bd.add_argument("--trials", type=_positive(int), default=2000)
    bd.add_argument("--seed", type=_nonneg_int, required=True)
    bd.add_argument("-w", "--walk", choices=("srw", "lazy"), default="srw")
    bd.add_argument("-o", "--output", required=True)
    return p


def _echo(args, skip=("threads", "output")):
    out = []
    for k, v in vars(args).items():
        if k in skip:
            continue
        if isinstance(v, list):
            v = " ".join(str(x) for x in v)
        out.append(f"{k}: {v}")
    return out


def _policy(args):
    policy = mixing.StartPolicy.parse(args.starts, seed=args.seed or 0)
    if policy.kind == "sample" and args.seed is None:
        raise UsageError("sampled starts need an explicit --seed")
    return policy


def _profile(args):
    g = load_graph(args.graph)
    kernel = Kernel(args.walk, g)
    return mixing.worst_case_profile(kernel, _policy(args), args.tmax, budget=args.budget,
                                     threads=args.threads,
                                     project=getattr(args, "project", False))


def cmd_gen(args, out):
    res = sample_simple_regular(args.n, args.d, args.seed, args.max_attempts, args.approximate)
    notes = _echo(args) + [f"attempts: {res.attempts}",
                           f"uniform: {'exact' if res.exact else 'approximate'}"]
    save_graph(res.graph, args.output, notes)
    out.write(f"wrote {args.output}: n={args.n} d={args.d} attempts={res.attempts} "
              f"{'exact' if res.exact else 'approximate'}\n")
    return 0


def cmd_profile(args, out):
    prof = _profile(args)
    extra = {"config": "; ".join(_echo(args))}
    mixing.write_profile_csv(prof, args.output, extra)
    if prof.projected is not None:
        proj = mixing.MixingProfile(prof.walk, prof.policy, prof.projected, prof.exact,
                                    prof.n, prof.d, meta={"projection": "head vertex"})
        path = Path(args.output)
        mixing.write_profile_csv(proj, path.with_name(path.stem + "_vertices" + path.suffix),
                                 extra)
    out.write(f"wrote {args.output}: {len(prof.values)} rows\n")
    return 0


def _table(rows):
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
                     for r in rows) + "\n"


def cmd_tmix(args, out):
    prof = _profile(args)
    rows = [("eps", "t_mix", "exactness")]
    for eps in args.eps:
        try:
            t = str(mixing.mixing_time(prof, eps))
        except NotReached:
            t = f">{args.tmax}"
        rows.append((f"{eps:g}", t, "exact" if prof.exact else "lower-bound"))
    out.write("".join(f"# {line}\n" for line in _echo(args)))
    out.write(_table(rows))
    return 0


def cmd_predict(args, out):
    out.write("".join(f"# {line}\n" for line in _echo(args)))
    if args.nbrw:
        b = theory.nbrw_bounds(args.n, args.d, args.eps)
        out.write(f"lower {b.lower} upper {b.upper}\n")
    elif args.srw:
        p = theory.srw_prediction(args.n, args.d, args.s)
        out.write(_table([("cutoff", "tmix", "window_scale", "lambda"),
                          (f"{p.cutoff_point:.6g}", f"{p.tmix_estimate:.6g}",
                           f"{p.window_scale:.6g}", f"{p.window_constant:.6g}")]))
    else:
        p = theory.large_d_predictions(args.n, args.d)
        out.write(_table([("tmix_set", "srw_window", "coincide_ratio", "coincide"),
                          (" ".join(map(str, p.tmix_set)), f"{p.srw_window:.6g}",
                           f"{p.coincide_ratio:.6g}", str(p.coincide).lower())]))
    return 0


FIXTURES = (("K4", complete_graph, 4), ("Petersen", petersen_graph, None),
            ("K33", complete_bipartite, 3))


def cmd_verify(args, out):
    if args.graph:
        graphs = [(path, load_graph(path)) for path in args.graph]
    else:
        graphs = [(name, f(a) if a else f()) for name, f, a in FIXTURES]
    results = verify.run_suite(graphs, args.seed, not args.no_statistical, args.path_counts)
    counts = verify.summarize(results)
    out.write("".join(f"# {line}\n" for line in _echo(args)))
    out.write(verify.format_report(results) + "\n")
    out.write(" ".join(f"{k} {v}" for k, v in counts.items()) + "\n")
    return 1 if counts["fail"] else 0


def cmd_bd_speed(args, out):
    g = load_graph(args.graph)
    if not validate(g).is_connected:
        raise UsageError("graph is not connected")
    if args.start >= g.n:
        raise UsageError(f"start {args.start} outside 0..{g.n - 1}")
    prof = montecarlo.distance_speed_profile(g, args.start, tuple(args.c), args.trials,
                                             args.seed, kind=args.walk)
    lines = [f"# {line}" for line in _echo(args)]
    lines.append("c,t,mean,stderr,predicted")
    for row in zip(prof.c_values, prof.times, prof.means.tolist(), prof.stderrs.tolist(),
                   prof.predicted.tolist()):
        lines.append("{:g},{},{:.17g},{:.17g},{:.17g}".format(*row))
    Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    out.write(f"wrote {args.output}\n")
    return 0


COMMANDS = {"gen": cmd_gen, "profile": cmd_profile, "tmix": cmd_tmix, "predict": cmd_predict,
            "verify": cmd_verify, "bd-speed": cmd_bd_speed}


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        err.write(f"{e}\n")
        return 1
    except SystemExit as e:  # --help
        return 0 if not e.code else 1
    except (BudgetExceeded, ValueError, FileNotFoundError) as e:
        err.write(f"error: {e}\n")
        return 1
    except (RRGError, OSError, RuntimeError) as e:
        err.write(f"runtime error: {e}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
