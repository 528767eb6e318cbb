"""Command-line interface.

Exit status: 0 success, 1 verification disagreement, 2 parse/format error,
3 domain violation, 4 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .advice_basis import synth_basis
from .advice_io import read_advice, write_advice
from .advice_ltf import synth_lp, synth_round
from .errors import FormatError, SqrtSumError
from .exact_oracle import sign_exact
from .harness import (
    bench_precision,
    format_bench_report,
    format_sign,
    format_verification_report,
    verify_advice,
)
from .instances import (
    FAMILIES,
    gen_family,
    min_gap,
    normalize,
    read_instance,
    write_instance,
)
from .model import DomainSpec, USSRInstance, is_zero
from .numtheory import square_free_part
from .advice_basis import decide_basis
from .advice_ltf import decide_ltf, LtfAdvice

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_FORMAT = 2


def _load_normal_form(path):
    inst = read_instance(path)
    return normalize(inst) if isinstance(inst, USSRInstance) else inst


def _write_text(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_sign(args):
    print(format_sign(sign_exact(_load_normal_form(args.input), args.max_bits)))


def cmd_normalize(args):
    write_instance(args.out, _load_normal_form(args.input))


def cmd_zero(args):
    print("true" if is_zero(_load_normal_form(args.input)) else "false")


def cmd_decompose(args):
    print(square_free_part(args.n))


def cmd_min_gap(args):
    gap = min_gap(DomainSpec(args.k, args.B))
    print(f"eps_min_lo {gap.enclosure.lower}")
    print(f"eps_min_hi {gap.enclosure.upper}")
    print(f"eps_min ~ {float(gap.enclosure.midpoint):.12g}")
    print("witness " + " ".join(str(d) for d in gap.witness.delta))


def cmd_synth(args):
    dom = DomainSpec(args.k, args.B)
    if args.method == "ltf-round":
        adv = synth_round(dom)
    elif args.method == "ltf-lp":
        adv = synth_lp(dom)
    else:
        adv = synth_basis(dom, args.pmant, args.pdrop, include_inverse=not args.no_inverse)
    write_advice(args.out, adv)


def cmd_decide(args):
    inst = _load_normal_form(args.input)
    adv = read_advice(args.advice)
    decide = decide_ltf if isinstance(adv, LtfAdvice) else decide_basis
    print(format_sign(decide(inst, adv)))


def cmd_verify(args):
    adv = read_advice(args.advice)
    if args.samples is not None:
        report = verify_advice(adv, "sampled", args.samples, args.seed, args.workers)
    else:
        report = verify_advice(adv, "exhaustive", workers=args.workers)
    _write_text(args.report, format_verification_report(report, seed=args.seed))
    status = "verified" if report.verified else "DISAGREEMENT"
    print(f"{status}: {report.agree}/{report.total} agree, max_bits_used {report.max_bits_used}")
    print(f"wall time {report.wall_time:.3f}s", file=sys.stderr)
    return EXIT_OK if report.verified else EXIT_DISAGREE


def cmd_bench(args):
    records = list(bench_precision(args.family, args.k_max, args.seed))
    _write_text(args.out, format_bench_report(records, args.family, args.k_max, args.seed))
    for r in records:
        print(f"k={r.k} bits_used={r.bits_used} certified_bits={r.certified_bits}")


def cmd_gen(args):
    write_instance(args.out, gen_family(args.family, args.k, args.seed))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FORMAT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqrtsum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sign", help="exact sign of an instance file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--max-bits", type=int, default=None)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("normalize", help="rewrite a USSR file in square-free normal form")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("zero", help="exact zero test")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_zero)

    p = sub.add_parser("decompose", help="write N as c^2 * s with s square-free")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("min-gap", help="smallest nonzero |value| over a domain")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--B", type=int, required=True)
    p.set_defaults(func=cmd_min_gap)

    p = sub.add_parser("synth", help="synthesize advice for a domain")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--method", choices=("ltf-round", "ltf-lp", "basis"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--pmant", type=int, default=None, help="mantissa bits (basis only)")
    p.add_argument("--pdrop", type=int, default=None, help="drop threshold (basis only)")
    p.add_argument("--no-inverse", action="store_true", help="omit the inverse matrix")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("decide", help="decide an instance with advice")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--advice", required=True)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="check advice against the exact oracle")
    p.add_argument("--advice", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="oracle precision per k for an instance family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate a USSR instance file")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status = args.func(args)
    except SqrtSumError as exc:
        print(f"sqrtsum: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"sqrtsum: {exc}", file=sys.stderr)
        return FormatError.exit_code
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
