"""Command-line entry point: ``dcovkit {dcor,test,simulate,scan}``.

Exit codes: 0 success, 2 usage/config error, 3 data/parse error,
4 numeric/degenerate error.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .errors import (
    ConsistencyError,
    DcovError,
    DegenerateVarianceError,
    ParameterError,
)
from .inference import STATISTIC_KINDS, permutation_test
from .scan import MarkerMatrix, scan_markers
from .simulate import SHAPES, BackcrossSpec, ShapeSpec, simulate_backcross, simulate_shape
from .stats import distance_correlation, pearson, spearman

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

DEFAULT_REPLICATES = 999
DEFAULT_SEED = 0


class UsageError(DcovError):
    pass


def _columns(spec):
    return [c.strip() for c in spec.split(",") if c.strip()] if spec else []


def _emit(args, header, rows, json_obj, extra=None):
    """Render the main output (and optional extras) and write it all at once."""
    text = io.render_json(json_obj) if args.format == "json" else io.render_csv(header, rows)
    outputs = dict(extra or {})
    if args.output:
        outputs[args.output] = text
        io.write_atomic(outputs)
    else:
        io.write_atomic(outputs)
        sys.stdout.write(text)


def _baseline(fn, x, y):
    if x.shape[1] != 1 or y.shape[1] != 1:
        return None
    try:
        return fn(x, y)
    except DegenerateVarianceError:
        return None


def _load_xy(args):
    if not args.input:
        raise UsageError("--input is required")
    table = io.load_table(args.input)
    xs, ys = _columns(args.x), _columns(args.y)
    if not xs or not ys:
        raise UsageError("--x and --y must each name at least one column")
    return table.select(xs), table.select(ys)


def cmd_dcor(args):
    x, y = _load_xy(args)
    res = distance_correlation(x, y)
    record = {
        "n": x.shape[0],
        "pearson": _baseline(pearson, x, y),
        "spearman": _baseline(spearman, x, y),
        "dcov_sq": res.dcov_sq,
        "dvar_x_sq": res.dvar_x_sq,
        "dvar_y_sq": res.dvar_y_sq,
        "dcor": res.dcor,
    }
    _emit(args, list(record), [list(record.values())], record)


def cmd_test(args):
    x, y = _load_xy(args)
    res = permutation_test(x, y, args.replicates, args.seed, args.statistic,
                           workers=args.workers)
    dc = distance_correlation(x, y)
    record = {
        "statistic": res.statistic,
        "statistic_kind": res.statistic_kind,
        "replicates": res.replicates,
        "exceed_count": res.exceed_count,
        "p_value": res.p_value,
        "seed": res.seed,
        "dcov_sq": dc.dcov_sq,
        "dcor": dc.dcor,
    }
    _emit(args, list(record), [list(record.values())], record)


def _shape_summary(shape, x, y, args):
    test = permutation_test(x, y, args.replicates, args.seed, workers=args.workers)
    return {
        "shape": shape,
        "n": len(x),
        "seed": args.seed,
        "pearson": pearson(x, y),
        "dcor": distance_correlation(x, y).dcor,
        "p_value": test.p_value,
    }


def cmd_simulate(args):
    if args.shape == "backcross":
        return _simulate_backcross(args)
    shapes = SHAPES if args.shape == "all" else (args.shape,)
    data, summary = [], []
    for shape in shapes:
        x, y = simulate_shape(ShapeSpec(shape, args.n, args.noise, args.seed))
        data.append((shape, x, y))
        summary.append(_shape_summary(shape, x, y, args))

    summary_header = list(summary[0])
    if args.format == "json":
        obj = {
            "data": [{"shape": s, "x": x, "y": y} for s, x, y in data],
            "summary": summary,
        }
        _emit(args, None, None, obj)
        return

    if len(shapes) == 1:
        header = ["x", "y"]
        rows = list(zip(data[0][1], data[0][2]))
    else:
        header = ["shape", "x", "y"]
        rows = [(s, xi, yi) for s, x, y in data for xi, yi in zip(x, y)]
    summary_text = io.render_csv(summary_header, [list(r.values()) for r in summary])
    if args.summary:
        _emit(args, header, rows, None, extra={args.summary: summary_text})
    elif args.output:
        _emit(args, header, rows, None)
        sys.stdout.write(summary_text)
    else:
        _emit(args, header, rows, None)
        sys.stderr.write(summary_text)


def _simulate_backcross(args):
    spec = BackcrossSpec(
        n_individuals=args.individuals,
        n_markers=args.markers,
        causal_marker=args.causal,
        effect_size=args.effect,
        missing_rate=args.missing_rate,
        seed=args.seed,
    )
    genotypes, phenotype = simulate_backcross(spec)
    ids = list(MarkerMatrix.from_array(genotypes).marker_ids)
    header = ["phenotype"] + ids
    rows = [[p] + [io.MISSING if np.isnan(g) else int(g) for g in row]
            for p, row in zip(phenotype, genotypes)]
    obj = {
        "phenotype": phenotype,
        "marker_ids": ids,
        "genotypes": genotypes,
    }
    _emit(args, header, rows, obj)


def cmd_scan(args):
    if not args.input:
        raise UsageError("--input is required")
    table = io.load_table(args.input)
    ys = _columns(args.y) or ["phenotype"]
    if len(ys) != 1:
        raise UsageError("scan takes exactly one phenotype column in --y")
    xs = _columns(args.x) or [c for c in table.names if c not in ys]
    markers = MarkerMatrix(table.select(xs, allow_missing=True), tuple(xs))
    phenotype = table.select(ys)
    res = scan_markers(markers, phenotype, args.replicates, args.seed, workers=args.workers)
    header = ["marker_id", "n_used", "statistic", "p_value", "neglog10_p", "degenerate"]
    rows = [[r.marker_id, r.n_used, r.statistic, r.p_value, r.neglog10_p, r.degenerate]
            for r in res.records]
    obj = {
        "replicates": res.replicates,
        "seed": res.seed,
        "records": [dict(zip(header, row)) for row in rows],
    }
    _emit(args, header, rows, obj)


def _seed(text):
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input CSV with a header row")
    common.add_argument("--x", help="comma-separated column names for x")
    common.add_argument("--y", help="comma-separated column names for y")
    common.add_argument("--replicates", "-R", type=int, default=DEFAULT_REPLICATES,
                        help="permutation replicates (default %(default)s)")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help="unsigned 64-bit seed (default %(default)s)")
    common.add_argument("--output", "-o", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--workers", type=int, default=None,
                        help="threads for permutation replicates")

    parser = argparse.ArgumentParser(
        prog="dcovkit", description="Distance covariance and correlation toolkit."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("dcor", parents=[common],
                   help="distance correlation with Pearson/Spearman baselines")

    p = sub.add_parser("test", parents=[common], help="permutation test of independence")
    p.add_argument("--statistic", choices=STATISTIC_KINDS, default="dcov_sq")

    p = sub.add_parser("simulate", parents=[common],
                       help="simulate a demonstration shape or backcross data")
    p.add_argument("--shape", required=True, choices=SHAPES + ("all", "backcross"))
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--noise", type=float, default=None,
                   help="noise level (default depends on shape)")
    p.add_argument("--summary", help="CSV path for the per-shape summary rows")
    p.add_argument("--individuals", type=int, default=154)
    p.add_argument("--markers", type=int, default=119)
    p.add_argument("--causal", type=int, default=None)
    p.add_argument("--effect", type=float, default=0.0)
    p.add_argument("--missing-rate", type=float, default=0.0)

    sub.add_parser("scan", parents=[common],
                   help="per-marker scan; --y names the phenotype, --x the markers")
    return parser


COMMANDS = {"dcor": cmd_dcor, "test": cmd_test, "simulate": cmd_simulate, "scan": cmd_scan}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.output and not Path(args.output).parent.exists():
            raise UsageError(f"output directory {Path(args.output).parent} does not exist")
        COMMANDS[args.command](args)
    except (UsageError, ParameterError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"dcovkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateVarianceError, ConsistencyError) as exc:
        print(f"dcovkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DcovError, ValueError) as exc:
        print(f"dcovkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
