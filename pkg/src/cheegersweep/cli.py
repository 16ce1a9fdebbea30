"""Command-line front end.

Single-graph commands print JSON; ``bench`` writes CSV. A graph argument is an
edge-list path or a generator spec such as ``gen:petersen`` or
``gen:gnp n=20 p=0.3 seed=7``.

Exit codes: 0 success, 1 usage or input error, 2 some corpus graphs failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bench
from .cheeger import EXACT_LIMIT, SizeLimitError, bounds_report, exact_cheeger
from .graph import GraphError
from .spectral import ConvergenceError, spectrum
from .sweep import (
    ArbitraryVectorSpec,
    NoValidCutError,
    SpecError,
    arbitrary_vector_sweep,
    classical_sweep,
    random_sweep,
    theorem_delta,
)

EXIT_OK, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2
_MODE_ALIASES = {"n-1": "n_minus_1", "n2": "n_squared", "n_minus_1": "n_minus_1", "n_squared": "n_squared"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj):
    def default(x):
        if isinstance(x, float) and not math.isfinite(x):
            return str(x)
        raise TypeError(type(x).__name__)

    print(json.dumps(obj, indent=2, default=default))


def _graph(args):
    return bench.resolve_source(args.graph, name=args.graph, master_seed=args.seed)


def _delta(text, n):
    if text == "theorem":
        return theorem_delta(n)
    return float(text)


def _trials(text, n):
    if text in _MODE_ALIASES:
        return bench.trials_for(n, _MODE_ALIASES[text])
    k = int(text)
    if k < 1:
        raise UsageError("--trials must be positive")
    return k


def cmd_spectrum(args):
    sd = spectrum(_graph(args))
    out = sd.to_dict()
    if args.vectors:
        out["harmonic"] = sd.harmonic.T.tolist()
    _dump(out)


def cmd_cheeger(args):
    g = _graph(args)
    if args.exact:
        h, cut = exact_cheeger(g, limit=args.limit)
        _dump({"h": h, "provenance": "exact", "cut": cut.to_dict()})
    else:
        rep = bounds_report(g, seed=args.seed, exact_limit=0)
        _dump({"h": rep.h_value, "provenance": rep.h_provenance, "cut": rep.h_cut.to_dict()})


def cmd_sweep(args):
    g = _graph(args)
    sd = spectrum(g)
    if args.method == "classical":
        res = classical_sweep(g, sd.fiedler)
    else:
        trials = _trials(args.trials, g.n)
        delta = _delta(args.delta, g.n)
        if args.method == "random":
            res = random_sweep(g, sd.fiedler, trials, delta, args.seed)
        else:
            if not args.alpha:
                raise UsageError("--method arbitrary needs --alpha")
            alpha = [float(a) for a in args.alpha.split(",")]
            vec = ArbitraryVectorSpec.from_coefficients(sd, alpha)
            res = arbitrary_vector_sweep(g, vec, trials, delta, args.seed)
    out = res.to_dict()
    out["lambda1"] = sd.lambda1
    _dump(out)


def cmd_bounds(args):
    _dump(bounds_report(_graph(args), seed=args.seed, exact_limit=args.limit).to_dict())


def cmd_bench(args):
    if args.corpus:
        spec = bench.read_corpus(args.corpus, seed=args.seed, n_min=args.n_min, n_max=args.n_max)
    else:
        spec = bench.default_corpus(args.seed)
        spec.n_min = args.n_min if args.n_min is not None else spec.n_min
        spec.n_max = args.n_max if args.n_max is not None else spec.n_max
    if spec.n_min is None:
        spec.n_min = 0
    modes = bench.MODES if args.mode == "both" else (_MODE_ALIASES[args.mode],)
    records = []
    for mode in modes:
        records += bench.run_corpus(spec, mode, float(args.delta), args.workers, args.exact_limit)
    text = bench.format_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [r for r in records if not r.ok]
    for r in failed:
        print(f"{r.name} ({r.mode}): {r.error}", file=sys.stderr)
    if any(r.ok for r in records):
        summary = {m: bench.summarize([r for r in records if r.mode == m]) for m in modes
                   if any(r.ok and r.mode == m for r in records)}
        if args.summary:
            with open(args.summary, "w", encoding="utf-8") as fh:
                json.dump(summary, fh, indent=2)
        else:
            for m, s in summary.items():
                o = s["overall"]
                print(f"{m}: {o['count']} graphs, tied-or-better {o['tied_or_better']:.3f}, "
                      f"strictly better {o['strictly_better']:.3f}", file=sys.stderr)
    return EXIT_PARTIAL if failed else EXIT_OK


def build_parser():
    p = _Parser(prog="cheegersweep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="edge-list path or gen:KIND key=value ...")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = graph_cmd("spectrum", "normalized Laplacian spectrum as JSON")
    sp.add_argument("--vectors", action="store_true", help="include harmonic eigenvectors")
    sp.set_defaults(func=cmd_spectrum)

    sp = graph_cmd("cheeger", "Cheeger constant as JSON")
    sp.add_argument("--exact", action="store_true", help="exhaustive enumeration")
    sp.add_argument("--limit", type=int, default=EXACT_LIMIT)
    sp.set_defaults(func=cmd_cheeger)

    sp = graph_cmd("sweep", "run one sweep method")
    sp.add_argument("--method", choices=("classical", "random", "arbitrary"), default="classical")
    sp.add_argument("--trials", default="n-1", help="n-1, n2 or a positive integer")
    sp.add_argument("--delta", default="0", help="a number in [0, 1/2) or 'theorem' for n^(-1/3)")
    sp.add_argument("--alpha", help="comma-separated coefficients over v_1..v_k (arbitrary method)")
    sp.set_defaults(func=cmd_sweep)

    sp = graph_cmd("bounds", "classical and linear bounds report as JSON")
    sp.add_argument("--limit", type=int, default=EXACT_LIMIT, help="largest n solved exactly")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("bench", help="compare sweeps over a corpus, CSV output")
    sp.add_argument("--corpus", help="name<TAB>source file; default: built-in corpus")
    sp.add_argument("--mode", choices=("n-1", "n2", "both"), default="n-1")
    sp.add_argument("--seed", type=int, default=0, help="master seed")
    sp.add_argument("--delta", type=float, default=0.0)
    sp.add_argument("--workers", type=int, default=None,
                    help=f"worker processes (default ${bench.WORKERS_ENV} or 1)")
    sp.add_argument("--exact-limit", type=int, default=bench.BENCH_EXACT_LIMIT)
    sp.add_argument("--n-min", type=int, default=None)
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.add_argument("--summary", help="write summary JSON here instead of stderr")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or EXIT_OK
    except (UsageError, GraphError, SpecError, SizeLimitError, bench.CorpusError, ValueError, OSError) as exc:
        print(f"cheegersweep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, NoValidCutError) as exc:
        print(f"cheegersweep: error: {exc}", file=sys.stderr)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
