"""Command-line front end: every computation as a reproducible subcommand.

Exit codes are a stable scripting contract: 0 success, 2 usage or domain
error, 3 numeric/kernel failure.  JSON output is a single document per
invocation; CSV headers are fixed strings.  Stochastic commands require an
explicit seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import __version__
from . import pairings, qcatalan, scalar_moments, selfcheck
from . import rmt_sim
from .errors import (
    CapExceeded,
    DegreeBoundTooSmall,
    InsufficientGrid,
    InvalidConfig,
    InvalidWeight,
    KernelDomain,
    KernelNotPSD,
    NoSignChange,
    ZeroDenominator,
)
from .kernels import KernelSpec, load_kernel_file
from .pairings import PairingClass
from .scalar_moments import Backend

USAGE_ERROR = 2
NUMERIC_ERROR = 3

_CLASS_FLAGS = {"all": PairingClass.ALL, "nc": PairingClass.NON_CROSSING}


@contextmanager
def _open_out(args):
    if getattr(args, "out", None):
        fh = open(args.out, "w", encoding="utf-8", newline="")
        try:
            yield fh
        finally:
            fh.close()
    else:
        yield sys.stdout


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    with _open_out(args) as fh:
        fh.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, indent=2, sort_keys=True))


def _csv_text(header, rows, comments=()):
    lines = [header]
    lines.extend(",".join(str(field) for field in row) for row in rows)
    lines.extend(f"# {comment}" for comment in comments)
    return "\n".join(lines)


def _int_list(text):
    return [int(part) for part in text.split(",") if part.strip()]


def _float_list(text):
    return [float(part) for part in text.split(",") if part.strip()]


def cmd_enumerate(args) -> int:
    cls = _CLASS_FLAGS[args.pairing_class]
    cap = args.cap_all if cls == PairingClass.ALL else args.cap_nc
    flag = "--cap-all" if cls == PairingClass.ALL else "--cap-nc"
    if args.k > cap:
        raise CapExceeded(f"k={args.k} exceeds {flag}={cap}")
    # Rows are written as they stream off the enumerator; the pairing list
    # is never materialized (it is factorial-sized at the cap boundary).
    stream = pairings.enumerate_pairings(args.k, cls)
    count = 0
    with _open_out(args) as fh:
        if args.format == "json":
            fh.write('{\n  "k": %d,\n  "pairing_class": %s,\n  "pairings": [\n'
                     % (args.k, json.dumps(args.pairing_class)))
            for pairing in stream:
                row = json.dumps(
                    {"pairs": [list(pair) for pair in pairing.pairs],
                     "weight_exponent": pairings.weight_exponent(pairing)},
                    sort_keys=True,
                )
                fh.write(("    " if count == 0 else ",\n    ") + row)
                count += 1
            fh.write("\n  ],\n" if count else "  ],\n")
            fh.write('  "count": %d,\n  "p1_total": %d\n}\n' % (count, count))
        else:
            fh.write("index,pairs,weight_exponent\n")
            for pairing in stream:
                pairs_text = ";".join(f"{l}-{m}" for l, m in pairing.pairs)
                fh.write(f"{count},{pairs_text},{pairings.weight_exponent(pairing)}\n")
                count += 1
            fh.write(f"# count={count} p1_total={count}\n")
    return 0


def _table_command(args, build, key) -> int:
    if args.k_max < 0:
        raise InvalidConfig(f"--k-max must be non-negative, got {args.k_max}")
    table = build(args.k_max)
    report = qcatalan.bk_phi_consistency(
        args.k_max,
        bk_table=table if key == "bk" else None,
        phi_table=table if key == "phi" else None,
    )
    if args.format == "json":
        _emit_json(args, {key: table.to_json_obj(),
                          "consistency": report.to_json_obj()})
    else:
        comments = [f"consistency_all_passed={str(report.all_passed).lower()}"]
        _emit(args, _csv_text("k,exponent,coefficient", table.csv_rows(), comments))
    return 0


def cmd_bk(args) -> int:
    return _table_command(args, qcatalan.bk_recurrence, "bk")


def cmd_phi(args) -> int:
    return _table_command(args, qcatalan.phi_recurrence, "phi")


def cmd_qrev(args) -> int:
    if args.k < 1:
        raise InvalidConfig(f"--k must be positive, got {args.k}")
    poly = qcatalan.q_catalan_reversal(args.k)
    if args.format == "json":
        _emit_json(args, {"k": args.k,
                          "degree_bound": args.k * (args.k - 1) // 2,
                          **poly.to_json_obj()})
    else:
        rows = [(e, str(poly.terms[e])) for e in sorted(poly.terms)]
        _emit(args, _csv_text("exponent,coefficient", rows))
    return 0


def cmd_moment(args) -> int:
    if args.k > args.max_dp_k:
        raise CapExceeded(f"k={args.k} exceeds --max-dp-k={args.max_dp_k}")
    cls = _CLASS_FLAGS[args.pairing_class]
    fn = (scalar_moments.scalar_moment_dp if cls == PairingClass.ALL
          else scalar_moments.noncrossing_moment_dp)
    if args.backend == Backend.EXACT:
        p = Fraction(args.p)
        value = fn(args.k, p, Backend.EXACT,
                   allow_p_above_one=args.allow_p_above_one)
        payload = {"value": str(value), "value_float": float(value),
                   "p": str(p)}
        csv_value = str(value)
    else:
        p = float(Fraction(args.p))
        log_value = fn(args.k, p, Backend.LOG_SPACE)
        payload = {"log_value": log_value,
                   "value": math.exp(log_value) if log_value < 700.0 else None,
                   "p": p}
        csv_value = repr(log_value)
    if args.format == "json":
        _emit_json(args, {"k": args.k, "pairing_class": args.pairing_class,
                          "backend": args.backend, **payload})
    else:
        header = "k,p,class,backend,value"
        _emit(args, _csv_text(header, [(args.k, payload["p"],
                                        args.pairing_class, args.backend,
                                        csv_value)]))
    return 0


def cmd_growth(args) -> int:
    ks = _int_list(args.k)
    ps = _float_list(args.p)
    if not ks or not ps:
        raise InvalidConfig("--k and --p must be non-empty lists")
    if max(ks) > args.max_dp_k:
        raise CapExceeded(f"k={max(ks)} exceeds --max-dp-k={args.max_dp_k}")
    cls = _CLASS_FLAGS[args.pairing_class]
    curves = [scalar_moments.growth_curve(ks, p, cls) for p in ps]
    if args.format == "json":
        _emit_json(args, {"pairing_class": args.pairing_class,
                          "curves": [c.to_json_obj() for c in curves]})
    else:
        rows = []
        comments = []
        for curve in curves:
            for pt in curve.points:
                rows.append((pt.k, repr(pt.p), repr(pt.log_moment),
                             repr(pt.growth_rate)))
            comments.append(
                f"p={curve.points[0].p} extrapolated_growth={curve.extrapolated_limit!r}"
                f" method={curve.method}"
            )
        _emit(args, _csv_text("k,p,log_moment,growth_rate", rows, comments))
    return 0


def cmd_pc(args) -> int:
    if args.k_probe > args.max_dp_k:
        raise CapExceeded(f"--k-probe={args.k_probe} exceeds --max-dp-k={args.max_dp_k}")
    cls = _CLASS_FLAGS[args.pairing_class]
    bracket = scalar_moments.pc_bracket(args.p_lo, args.p_hi, args.k_probe,
                                        args.tol, cls)
    _emit_json(args, bracket.to_json_obj())
    return 0


def _reference_limit(k, kernel):
    """N -> infinity reference: the weighted non-crossing sum, if feasible."""
    if kernel.is_geometric:
        return qcatalan.bk_recurrence(k).entry(k).eval_f64(kernel.p)
    try:
        return pairings.weighted_sum_general(k, PairingClass.NON_CROSSING, kernel)
    except (CapExceeded, KernelDomain):
        return None


def cmd_simulate(args) -> int:
    if args.n > args.max_n:
        raise CapExceeded(f"--n={args.n} exceeds --max-n={args.max_n}")
    if args.samples > args.max_samples:
        raise CapExceeded(
            f"--samples={args.samples} exceeds --max-samples={args.max_samples}"
        )
    if args.kernel_file:
        kernel = load_kernel_file(args.kernel_file)
    else:
        kernel = KernelSpec.geometric(args.p)
    cfg = rmt_sim.RmtConfig(
        n_dim=args.n, k=args.k, kernel=kernel, samples=args.samples,
        seed=args.seed, odd_probe=args.probe == "odd", shift=args.shift,
    )
    estimate = rmt_sim.estimate_moment(cfg, workers=args.workers)
    reference = _reference_limit(cfg.k, kernel)
    doc = estimate.to_json_obj(reference=reference)
    if args.probe == "odd":
        odd = rmt_sim.odd_moment_probe(cfg, workers=args.workers)
        doc["odd_probe"] = odd.to_json_obj(reference=0.0)
    elif args.probe == "variance":
        if not args.n_grid:
            raise InvalidConfig("--probe variance requires --n-grid")
        points = rmt_sim.variance_decay_probe(cfg, _int_list(args.n_grid),
                                              workers=args.workers)
        doc["variance_decay"] = [
            {"N": pt.n_dim, "var_trace": pt.var_trace,
             "mean": pt.mean, "stderr": pt.stderr}
            for pt in points
        ]
        if args.format == "csv":
            rows = [(pt.n_dim, repr(pt.var_trace), repr(pt.mean),
                     repr(pt.stderr)) for pt in points]
            _emit(args, _csv_text("N,var_trace,mean,stderr", rows))
            return 0
    if args.format == "csv":
        row = (cfg.n_dim, cfg.k, kernel.describe(), cfg.samples, cfg.seed,
               repr(estimate.mean), repr(estimate.stderr),
               repr(estimate.var_trace))
        _emit(args, _csv_text("N,k,kernel,samples,seed,mean,stderr,var_trace",
                              [row]))
        return 0
    _emit_json(args, doc)
    return 0


def cmd_selfcheck(args) -> int:
    results = selfcheck.run_selfcheck()
    _emit(args, selfcheck.format_results(results))
    return 0 if all(r.passed for r in results) else NUMERIC_ERROR


def _add_output_flags(sub, default_format="json"):
    sub.add_argument("--format", choices=("json", "csv"), default=default_format)
    sub.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpairings",
        description="Weighted pairing sums, q-Catalan tables, and correlated-GOE trace moments.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("enumerate", help="stream pairings with their weight exponents")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--class", dest="pairing_class", choices=("all", "nc"), required=True)
    sub.add_argument("--cap-all", type=int, default=pairings.DEFAULT_ALL_CAP)
    sub.add_argument("--cap-nc", type=int, default=pairings.DEFAULT_NC_CAP)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_enumerate)

    sub = subs.add_parser("bk", help="table of weighted non-crossing sums B_k(p)")
    sub.add_argument("--k-max", type=int, required=True)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_bk)

    sub = subs.add_parser("phi", help="table of span-refined Catalan polynomials phi_k")
    sub.add_argument("--k-max", type=int, required=True)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_phi)

    sub = subs.add_parser("qrev", help="coefficient-reversed phi_k (q-Catalan form)")
    sub.add_argument("--k", type=int, required=True)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_qrev)

    sub = subs.add_parser("moment", help="pairing-sum moment via the open-arc DP")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--p", required=True, help="weight, e.g. 0.5 or 1/2")
    sub.add_argument("--class", dest="pairing_class", choices=("all", "nc"), default="all")
    sub.add_argument("--backend", choices=Backend.CHOICES, default=Backend.EXACT)
    sub.add_argument("--allow-p-above-one", action="store_true")
    sub.add_argument("--max-dp-k", type=int, default=20000)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_moment)

    sub = subs.add_parser("growth", help="growth statistic (1/k) log S_k(p) over a k grid")
    sub.add_argument("--p", required=True, help="comma-separated weights")
    sub.add_argument("--k", required=True, help="comma-separated ascending k grid")
    sub.add_argument("--class", dest="pairing_class", choices=("all", "nc"), default="all")
    sub.add_argument("--max-dp-k", type=int, default=20000)
    _add_output_flags(sub, default_format="csv")
    sub.set_defaults(func=cmd_growth)

    sub = subs.add_parser("pc", help="bisect the sign change of the extrapolated growth")
    sub.add_argument("--p-lo", type=float, required=True)
    sub.add_argument("--p-hi", type=float, required=True)
    sub.add_argument("--k-probe", type=int, required=True)
    sub.add_argument("--tol", type=float, required=True)
    sub.add_argument("--class", dest="pairing_class", choices=("all", "nc"), default="all")
    sub.add_argument("--max-dp-k", type=int, default=20000)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_pc)

    sub = subs.add_parser("simulate", help="Monte Carlo trace-product moment estimate")
    sub.add_argument("--n", type=int, required=True, help="matrix dimension N")
    sub.add_argument("--k", type=int, required=True, help="product has 2k factors")
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=float, help="geometric kernel decay")
    group.add_argument("--kernel-file", help="tabulated kernel: 'lag value' lines")
    sub.add_argument("--samples", type=int, required=True)
    sub.add_argument("--seed", type=int, required=True,
                     help="64-bit seed; required, there is no entropy default")
    sub.add_argument("--shift", type=int, default=0,
                     help="start the factor window at index shift+1")
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--probe", choices=("odd", "variance"), default=None)
    sub.add_argument("--n-grid", default=None, help="N grid for --probe variance")
    sub.add_argument("--max-n", type=int, default=1024)
    sub.add_argument("--max-samples", type=int, default=2_000_000)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_simulate)

    sub = subs.add_parser("selfcheck", help="run the oracle-equivalence suite")
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KernelNotPSD as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERIC_ERROR
    except (CapExceeded, KernelDomain, InvalidWeight, InvalidConfig,
            NoSignChange, InsufficientGrid, DegreeBoundTooSmall,
            ZeroDenominator, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
