"""Command line front end: ``eval``, ``sweep`` and ``transform``.

Exit codes: 0 success, 1 bad input or I/O, 2 domain error, 3 non-convergence.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .dilog import DEFAULT_MAX_TERMS, li2
from .errors import DomainError, NotConvergedError
from .numerics import EXTENDED, FLOAT64
from .recurrence import RecurrenceFormatError, dump_recurrence, load_recurrence, transform_recurrence
from .transform import TransformParams

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DOMAIN = 2
EXIT_NOT_CONVERGED = 3

SWEEP_HEADER = ["theta", "re_x", "im_x", "re_li2", "im_li2", "terms", "cond", "identity"]


def _fmt(v):
    return f"{float(v):.17g}"


def _components(v):
    if isinstance(v, (int, float)) or not hasattr(v, "imag") or v.imag == 0:
        return float(v.real if hasattr(v, "real") else v), None
    return float(v.real), float(v.imag)


def _json_scalar(v):
    if v is None:
        return None
    re, im = _components(v)
    return re if im is None else [re, im]


def _json_real(v):
    v = float(v)
    return v if math.isfinite(v) else None


def result_record(result):
    """Stable-keyed dict of a :class:`DilogResult` for JSON output."""
    return {
        "value": _json_scalar(result.value),
        "terms_used": result.terms_used,
        "condition_number": _json_real(result.condition_number),
        "error_bound": _json_real(result.error_bound),
        "identity_used": str(result.identity_used),
        "alpha_used": _json_scalar(result.alpha_used),
    }


def _text_scalar(v):
    if v is None:
        return "none"
    re, im = _components(v)
    if im is None:
        return _fmt(re)
    return f"{_fmt(re)} {'-' if im < 0 else '+'} {_fmt(abs(im))}i"


def cmd_eval(args, out=sys.stdout, err=sys.stderr):
    precision = FLOAT64 if args.precision == "f64" else EXTENDED
    x = complex(args.re, args.im) if args.im != 0 else args.re
    try:
        result = li2(x, precision=precision, on_cut=args.on_cut, max_terms=args.max_terms)
    except DomainError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    except NotConvergedError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_NOT_CONVERGED
    if args.json:
        print(json.dumps(result_record(result), sort_keys=True), file=out)
    else:
        print(f"value: {_text_scalar(result.value)}", file=out)
        print(f"terms_used: {result.terms_used}", file=out)
        print(f"condition_number: {_fmt(result.condition_number)}", file=out)
        print(f"error_bound: {_fmt(result.error_bound)}", file=out)
        print(f"identity_used: {result.identity_used}", file=out)
        print(f"alpha_used: {_text_scalar(result.alpha_used)}", file=out)
    return EXIT_OK


@dataclass(frozen=True)
class SweepRow:
    theta: float
    re_x: float
    im_x: float
    re_li2: float
    im_li2: float
    terms: int
    cond: float
    identity: str

    def as_csv(self):
        cond = "" if not math.isfinite(self.cond) else _fmt(self.cond)
        return [
            _fmt(self.theta), _fmt(self.re_x), _fmt(self.im_x),
            _fmt(self.re_li2), _fmt(self.im_li2), str(self.terms), cond, self.identity,
        ]


def sweep_rows(points=720, radius=1.0, max_terms=DEFAULT_MAX_TERMS):
    """Evaluate ``li2(radius * exp(i theta_j))`` for ``theta_j = 2 pi j / points``, ``j = 1..points-1``."""
    if points < 2:
        raise ValueError("points must be at least 2")
    thetas = 2 * np.pi * np.arange(1, points) / points
    rows = []
    for theta in thetas:
        x = complex(radius * math.cos(theta), radius * math.sin(theta))
        try:
            r = li2(x, max_terms=max_terms)
            v = complex(r.value)
            rows.append(SweepRow(float(theta), x.real, x.imag, v.real, v.imag,
                                 r.terms_used, float(r.condition_number), str(r.identity_used)))
        except NotConvergedError as exc:
            partial = exc.partial
            v = complex(partial.value) if partial is not None else complex("nan")
            rows.append(SweepRow(float(theta), x.real, x.imag, v.real, v.imag, -1, math.nan, "direct"))
    return rows


def write_sweep_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow(row.as_csv())


def cmd_sweep(args, out=sys.stdout, err=sys.stderr):
    rows = sweep_rows(args.points, args.radius, args.max_terms)
    try:
        write_sweep_csv(rows, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=err)
        return EXIT_INPUT
    ok = [r for r in rows if r.terms >= 0]
    max_terms = max((r.terms for r in ok), default=0)
    max_cond = max((r.cond for r in ok), default=float("nan"))
    print(f"points: {len(rows)} max_terms: {max_terms} max_cond: {_fmt(max_cond)}", file=out)
    if len(ok) != len(rows):
        print(f"error: {len(rows) - len(ok)} points did not converge", file=err)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_transform(args, out=sys.stdout, err=sys.stderr):
    try:
        rec = load_recurrence(args.recurrence)
    except (OSError, RecurrenceFormatError) as exc:
        print(f"error: {args.recurrence}: {exc}", file=err)
        return EXIT_INPUT
    alpha = complex(args.alpha_re, args.alpha_im) if args.alpha_im else args.alpha_re
    beta = complex(args.beta_re, args.beta_im) if args.beta_im else args.beta_re
    try:
        derived = transform_recurrence(rec, TransformParams(alpha, beta))
    except DomainError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    try:
        dump_recurrence(derived, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=err)
        return EXIT_INPUT
    print(f"order {rec.order} -> {derived.order}, offset {derived.offset}", file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="bindilog", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate Li2 at one point")
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, default=0.0)
    p.add_argument("--precision", choices=["f64", "extended"], default="f64")
    p.add_argument("--json", action="store_true")
    p.add_argument("--on-cut", choices=["error", "above", "below"], default="error")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="evaluate Li2 around a circle and write CSV")
    p.add_argument("--points", type=int, default=720)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("transform", help="transform a recurrence JSON file")
    p.add_argument("--recurrence", required=True)
    p.add_argument("--alpha-re", type=float, required=True)
    p.add_argument("--alpha-im", type=float, default=0.0)
    p.add_argument("--beta-re", type=float, default=1.0)
    p.add_argument("--beta-im", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transform)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which here means a domain error
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
