"""Command-line interface.

Exit statuses: 0 success, 2 input error, 3 resource limit, 4 soundness or
oracle failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field

from .canonical import CanonicalForm, encode
from .errors import CompletenessError, DomainError, ParseError, ResourceLimitError, SoundnessError
from .expr import Metric, evaluate, size
from .fcfgen import DEFAULT_OUTPUT_CAP, GenerationStats, fcf_generate
from .notation import Notation, parse, render
from .numtheory import eratosthenes
from .zeta import DEFAULT_MAX_SIEVE_BITS, SieveStats, rationals, run_improved, sift_primes

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_SOUNDNESS = 0, 2, 3, 4
MAX_RATIONAL_K = 3


@dataclass
class RunReport:
    command: str
    parameters: dict
    iterations: int = 0
    manipulations: int = 0
    wall_time: float = 0.0
    output: str | None = None
    status: str = "ok"
    details: dict = field(default_factory=dict)


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _write_atomic(path, write):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_curve(path, rows):
    cols = list(rows[0]) if rows else ["k", "manipulations"]

    def write(fh):
        w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)

    _write_atomic(path, write)


def scf_iterations(max_n: int) -> int:
    """Improved Zeta iterations needed so that ``2**(k+1) >= max_n``."""
    k = 0
    while (1 << (k + 1)) < max_n:
        k += 1
    return k


def generate_expressions(form: CanonicalForm, max_n: int, report: RunReport):
    if max_n < 1:
        raise DomainError("--max must be at least 1")
    if max_n > DEFAULT_OUTPUT_CAP:
        raise ResourceLimitError(f"--max {max_n} is above the cap {DEFAULT_OUTPUT_CAP}")
    if form is CanonicalForm.FCF:
        stats = GenerationStats()
        exprs = fcf_generate(max_n, stats=stats)
    else:
        k = scf_iterations(max_n)
        if k + 1 > DEFAULT_MAX_SIEVE_BITS:
            raise ResourceLimitError(f"--max {max_n} needs more than {DEFAULT_MAX_SIEVE_BITS} bits")
        stats = SieveStats()
        exprs = run_improved(k, stats=stats).naturals.exprs[:max_n]
    report.iterations = stats.iterations
    report.manipulations = stats.manipulations
    report.details["per_iteration"] = stats.per_iteration
    return exprs


def cmd_encode(args, report):
    text = render(encode(args.n, args.form), args.notation, expand_x=args.expand_x)
    print(text)


def cmd_eval(args, report):
    text = args.expr if args.expr is not None else sys.stdin.read()
    e = parse(text.strip(), args.notation)
    print(evaluate(e, args.max_bits))


def cmd_generate(args, report):
    exprs = generate_expressions(args.form, args.max, report)

    def write(fh):
        for v, e in enumerate(exprs, 1):
            fh.write(f"{v}\t{render(e, expand_x=args.expand_x)}\n")

    _write_atomic(args.out, write)
    report.output = args.out


def cmd_sieve(args, report):
    stats = SieveStats()
    primes = sift_primes(args.bits, pruned=args.pruned, stats=stats)
    report.iterations = stats.iterations
    report.manipulations = stats.manipulations
    report.details["per_iteration"] = stats.per_iteration
    report.details["count"] = len(primes)
    print(" ".join(map(str, primes)))
    if args.curve:
        _write_curve(args.curve, stats.per_iteration)
        report.output = args.curve
    if args.compare:
        oracle = eratosthenes(1 << args.bits)
        match = oracle == primes
        report.details["oracle_match"] = match
        print(f"oracle: {'match' if match else 'MISMATCH'} ({len(oracle)} primes)", file=sys.stderr)
        if not match:
            raise _Fail(EXIT_SOUNDNESS, "zeta primes differ from the sieve oracle")


def length_table(max_n: int, metric: Metric, report: RunReport):
    fcf = generate_expressions(CanonicalForm.FCF, max_n, report)
    fcf_iters = report.iterations
    scf = generate_expressions(CanonicalForm.SCF, max_n, report)
    report.details["iterations"] = {"fcf": fcf_iters, "scf": report.iterations}
    return [(n, size(f, metric), size(s, metric)) for n, (f, s) in enumerate(zip(fcf, scf), 1)]


def cmd_stats(args, report):
    rows = length_table(args.max, args.metric, report)
    fcf_mean = sum(r[1] for r in rows) / len(rows)
    scf_mean = sum(r[2] for r in rows) / len(rows)
    smaller = "scf" if scf_mean < fcf_mean else "fcf" if fcf_mean < scf_mean else "tie"

    def write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "fcf_len", "scf_len"])
        w.writerows(rows)
        w.writerow(["mean", f"{fcf_mean:.6f}", f"{scf_mean:.6f}"])

    _write_atomic(args.out, write)
    report.output = args.out
    report.details.update(
        metric=args.metric.value, fcf_mean=fcf_mean, scf_mean=scf_mean, smaller_mean=smaller
    )
    print(f"metric={args.metric.value} fcf_mean={fcf_mean:.6f} scf_mean={scf_mean:.6f} smaller={smaller}")


def cmd_rationals(args, report):
    if not 0 <= args.k <= MAX_RATIONAL_K:
        raise ResourceLimitError(f"--k must be between 0 and {MAX_RATIONAL_K}")
    state = run_improved(args.k)
    for r in rationals(state, args.cap):
        print(f"{r.num_value}/{r.den_value}\t{render(r.numerator)}\t{render(r.denominator)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="formula-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_report(p):
        p.add_argument("--report", metavar="PATH", help="write the run report as JSON here")

    form = dict(type=CanonicalForm, choices=list(CanonicalForm), default=CanonicalForm.FCF)
    notation = dict(type=Notation, choices=list(Notation), default=Notation.INFIX)

    p = sub.add_parser("encode", help="print the canonical encoding of n")
    p.add_argument("n", type=int)
    p.add_argument("--form", **form)
    p.add_argument("--notation", **notation)
    p.add_argument("--expand-x", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("eval", help="evaluate an expression (argument or stdin)")
    p.add_argument("expr", nargs="?")
    p.add_argument("--notation", **notation)
    p.add_argument("--max-bits", type=int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("generate", help="write value<TAB>expression lines for 1..max")
    p.add_argument("--form", **form)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--expand-x", action="store_true")
    add_report(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sieve", help="primes up to 2**bits by the improved Zeta recursion")
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--compare", action="store_true", help="check against a classic sieve")
    p.add_argument("--pruned", action="store_true", help="only form products that fit the window")
    p.add_argument("--curve", metavar="CSV", help="per-iteration manipulation counts")
    add_report(p)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("stats", help="FCF vs SCF expression lengths as CSV")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--metric", type=Metric, choices=list(Metric), default=Metric.LEAVES)
    p.add_argument("--out", required=True)
    add_report(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("rationals", help="enumerate the rational set of iteration k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(func=cmd_rationals)
    return parser


def _emit(report: RunReport, path):
    text = json.dumps(asdict(report), default=str, indent=2 if path else None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: (v.value if hasattr(v, "value") else v) for k, v in vars(args).items() if k != "func"}
    report = RunReport(args.command, params)
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        args.func(args, report)
    except (DomainError, ParseError) as exc:
        code, report.status = EXIT_INPUT, f"input error: {exc}"
    except ResourceLimitError as exc:
        code, report.status = EXIT_RESOURCE, f"resource limit: {exc}"
    except (SoundnessError, CompletenessError) as exc:
        code, report.status = EXIT_SOUNDNESS, f"soundness failure: {exc}"
    except _Fail as exc:
        code, report.status = exc.code, str(exc)
    report.wall_time = time.perf_counter() - t0
    if code != EXIT_OK:
        print(f"formula-forge: {report.status}", file=sys.stderr)
    if hasattr(args, "report"):
        _emit(report, args.report)
    return code


if __name__ == "__main__":
    sys.exit(main())
