"""Command line interface.

    interval-centers center  --input FILE --method METHOD [--var NAME] [--p P]
    interval-centers cluster --input FILE --k K --p {1,2} --distance D
                             [--normalize] [--seed S] [--max-iter M]
    interval-centers dist    --input FILE (--ids A B | --index I J)
                             [--distance D] [--q Q] [--normalize]

Results go to stdout as JSON, diagnostics to stderr.  Exit status: 0 on
success, 1 for usage errors, 2 for data or validation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import __version__
from .closed_form import Method, central_interval
from .clustering import ClusteringConfig, cluster
from .errors import IntervalError, InvalidConfig
from .hypercube import dispersion_profile, dist_hypercube, normalized_dist
from .intervals import Distance, check_exponent
from .io import read_csv
from .l2_hausdorff import center_l2_hausdorff

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
SIGNIFICANT_DIGITS = 12

log = logging.getLogger("interval_centers")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    v = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if v == 0 else v


def _p_out(p):
    return "inf" if p == math.inf else int(p)


def _interval(c):
    return {"lo": _num(c.lower), "hi": _num(c.upper)}


def _dump(obj):
    return json.dumps(obj, indent=2)


def _exponent(text):
    try:
        return check_exponent(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _select_vars(data, wanted):
    if wanted is None:
        return list(range(data.dim))
    if wanted not in data.names:
        raise UsageError(f"unknown variable {wanted!r}; have {', '.join(data.names)}")
    return [data.names.index(wanted)]


def cmd_center(args):
    data = read_csv(args.input)
    method = Method(args.method)
    if args.p is not None and args.p != method.p:
        raise UsageError(f"method {method.value} aggregates with p={_p_out(method.p)}")
    out = []
    for j in _select_vars(data, args.var):
        column = data.column(j)
        if method is Method.L2_HAUSDORFF:
            est = center_l2_hausdorff(column, workers=None)
        else:
            est = central_interval(column, method)
        out.append({
            "variable": data.names[j],
            "center": _interval(est.center),
            "dispersion": _num(est.dispersion),
            "method": est.method.value,
            "p": _p_out(est.p),
        })
    return out


def cmd_cluster(args):
    data = read_csv(args.input)
    try:
        config = ClusteringConfig(
            k=args.k, p=args.p, distance=args.distance, normalize=args.normalize,
            seed=args.seed, max_iter=args.max_iter,
        )
    except InvalidConfig as exc:
        raise UsageError(str(exc)) from None
    res = cluster(data, config)
    return {
        "k": config.k,
        "p": _p_out(config.p),
        "distance": config.distance.value,
        "normalize": config.normalize,
        "seed": config.seed,
        "assignments": [
            {"id": ident, "cluster": c} for ident, c in zip(data.ids, res.assignments)
        ],
        "prototypes": [
            {name: _interval(c) for name, c in zip(data.names, proto)}
            for proto in res.prototypes
        ],
        "criterion_trace": [_num(v) for v in res.criterion_trace],
        "repair_iterations": list(res.repair_iterations),
        "iterations": res.iterations,
        "converged": res.converged,
    }


def _row(data, ident=None, index=None):
    if ident is not None:
        if ident not in data.ids:
            raise IntervalError(f"unknown id {ident!r}")
        return data[data.ids.index(ident)]
    if not 0 <= index < len(data):
        raise IntervalError(f"row index {index} out of range 0..{len(data) - 1}")
    return data[index]


def cmd_dist(args):
    data = read_csv(args.input)
    if args.ids:
        x, y = (_row(data, ident=i) for i in args.ids)
    else:
        x, y = (_row(data, index=i) for i in args.index)
    if args.normalize:
        try:
            method = Method.for_pair(args.q, args.distance)
        except ValueError as exc:
            raise UsageError(f"cannot normalize: {exc}") from None
        profile = dispersion_profile(data, method)
        value = normalized_dist(x, y, profile, args.distance, args.q)
    else:
        value = dist_hypercube(x, y, args.distance, args.q)
    return {"distance": _num(value)}


def cmd_oracle(args):
    from .oracle import grid_minimize

    data = read_csv(args.input)
    out = []
    for j in _select_vars(data, args.var):
        r = grid_minimize(data.column(j), args.p, args.distance)
        out.append({"variable": data.names[j], "center": _interval(r.center),
                    "value": _num(r.value), "resolution": _num(r.resolution)})
    return out


def build_parser():
    parser = _Parser(prog="interval-centers", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("center", help="central interval and dispersion per variable")
    p.add_argument("--input", required=True)
    p.add_argument("--method", required=True, choices=[m.value for m in Method])
    p.add_argument("--var")
    p.add_argument("--p", type=_exponent, help="optional check of the method's exponent")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("cluster", help="dynamic clustering with exact prototypes")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--distance", required=True, choices=["hausdorff", "l2-bounds", "l2-midlen"])
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=100)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("dist", help="distance between two rows")
    p.add_argument("--input", required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--ids", nargs=2, metavar=("ID1", "ID2"))
    which.add_argument("--index", nargs=2, type=int, metavar=("I", "J"), help="0-based rows")
    p.add_argument("--distance", default="hausdorff", choices=[d.value for d in Distance])
    p.add_argument("--q", type=_exponent, default=2)
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("oracle", help=argparse.SUPPRESS)
    p.add_argument("--input", required=True)
    p.add_argument("--p", type=_exponent, default=2)
    p.add_argument("--distance", default="hausdorff", choices=[d.value for d in Distance])
    p.add_argument("--var")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code or EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        result = args.func(args)
    except UsageError as exc:
        print(f"interval-centers: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntervalError, OSError) as exc:
        print(f"interval-centers: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    sys.stdout.write(_dump(result) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
