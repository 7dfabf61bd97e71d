"""Command-line front end.

    amalgam-rep verify exact [--generators FILE]
    amalgam-rep verify mod --prime P [--ideal plus|minus] [--level quick|full]
    amalgam-rep orbits --prime P [--dual]
    amalgam-rep order --prime P [--target auto|SL|SU|none]
    amalgam-rep spectrum bc
    amalgam-rep report FILE [--format text|json] [--out PATH]
    amalgam-rep generators --out FILE

Exit status: 0 when no check failed, 1 on any failure, 2 when the only
problems are inconclusive checks.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import suites
from .errors import AmalgamError, UnsupportedPrime
from .fields import check_odd_prime
from .groups import kernels
from .groups.formulas import group_order_formula
from .groups.orbits import orbit_partition
from .groups.schreier import DEFAULT_MAX_MEM, matrix_group_order
from .linalg import builtin_generators, char_poly, read_generators, write_generators
from .reduction import make_context
from .report import VerificationReport


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS), help="orbit kernel implementation")
    p.add_argument("-v", "--verbose", action="store_true")


def _prime_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--ideal", choices=("plus", "minus"), default="plus")
    p.add_argument("--cap", type=int, default=100_000, help="closure size cap")
    p.add_argument("--max-mem", type=int, default=DEFAULT_MAX_MEM, metavar="BYTES")
    p.add_argument("--domain", choices=("auto", "vectors", "projective"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amalgam-rep", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)
    ex = vsub.add_parser("exact", help="exact-arithmetic checks over Z[1/sqrt(-2)]")
    ex.add_argument("--generators", metavar="FILE", help="generator fixture file")
    ex.add_argument("--cap", type=int, default=10_000)
    _common(ex)
    md = vsub.add_parser("mod", help="checks of the reduction modulo a prime ideal")
    _prime_args(md)
    md.add_argument("--level", choices=("quick", "full"), default="quick")
    _common(md)

    orb = sub.add_parser("orbits", help="orbit sizes on projective points")
    _prime_args(orb)
    orb.add_argument("--dual", action="store_true", help="act on hyperplanes instead")
    _common(orb)

    order = sub.add_parser("order", help="group order of the reduced representation")
    _prime_args(order)
    order.add_argument("--target", choices=("auto", "SL", "SU", "none"), default="auto")
    order.add_argument("--strategy", choices=("auto", "random", "deterministic"), default="auto")
    _common(order)

    spec = sub.add_parser("spectrum", help="characteristic polynomial checks")
    spec.add_argument("element", choices=("bc",))
    _common(spec)

    rep = sub.add_parser("report", help="render a saved JSON report")
    rep.add_argument("input", metavar="FILE")
    rep.add_argument("--format", choices=("text", "json"), default="text")
    rep.add_argument("--out", metavar="PATH")

    gen = sub.add_parser("generators", help="write the generator fixture file")
    gen.add_argument("--out", metavar="FILE", required=True)
    return parser


def _cmd_orbits(args) -> VerificationReport:
    ctx = make_context(args.prime, args.ideal)
    mats = suites.reduced_generators(ctx)
    rep = VerificationReport(f"orbits --prime {args.prime} --ideal {args.ideal}"
                             + (" --dual" if args.dual else ""), args.seed)

    def body():
        sizes = orbit_partition(mats, ctx.field, dual=args.dual)
        q = ctx.q
        total = (q ** 5 - 1) // (q - 1)
        return sum(sizes) == total, f"{sorted(sizes)} (sum {sum(sizes)} of {total} points)"

    rep.run(f"mod{args.prime}.orbits." + ("hyperplanes" if args.dual else "points"),
            suites.REF_ORBITS, body)
    return rep


def _cmd_order(args) -> VerificationReport:
    ctx = make_context(args.prime, args.ideal)
    mats = suites.reduced_generators(ctx)
    family = args.target
    if family == "auto":
        family = "none" if args.prime == 3 else ("SL" if ctx.kind == "split" else "SU")
    target = None if family == "none" else group_order_formula(family, 5, args.prime)
    rep = VerificationReport(f"order --prime {args.prime} --ideal {args.ideal} --target {family}", args.seed)

    def body():
        res = matrix_group_order(mats, ctx.field, domain=args.domain, strategy=args.strategy,
                                 target=target, seed=args.seed, max_mem=args.max_mem)
        detail = f"order {res.order} via {res.method}, orbits {res.chain.orbit_sizes}"
        if target is None:
            return res.certified, detail
        return res.order == target.value, f"{detail}; {target}"

    ref = suites.REF_L3 if args.prime == 3 else (suites.REF_SL if ctx.kind == "split" else suites.REF_SU)
    rep.run(f"mod{args.prime}.order", ref, body)
    return rep


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    if getattr(args, "backend", None):
        kernels.use_backend(args.backend)

    if args.command == "generators":
        write_generators(args.out)
        return 0
    if args.command == "report":
        rep = VerificationReport.load(args.input)
        text = rep.to_json() if args.format == "json" else rep.to_text()
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            out.write(text)
        return rep.exit_code()

    try:
        if hasattr(args, "prime"):
            if args.prime == 2:
                raise UnsupportedPrime("p = 2 is not supported")
            check_odd_prime(args.prime)
        if args.command == "verify" and args.suite == "exact":
            gens = read_generators(args.generators) if args.generators else None
            rep = suites.verify_exact(gens, cap=args.cap, seed=args.seed)
        elif args.command == "verify":
            rep = suites.verify_mod(args.prime, args.ideal, args.level, seed=args.seed,
                                    cap=args.cap, max_mem=args.max_mem, domain=args.domain)
        elif args.command == "orbits":
            rep = _cmd_orbits(args)
        elif args.command == "order":
            rep = _cmd_order(args)
        else:
            rep = suites.verify_spectrum(seed=args.seed)
            bc = builtin_generators()["b"] @ builtin_generators()["c"]
            out.write(f"char poly of bc: {char_poly(bc)}\n")
    except (AmalgamError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out.write(rep.to_text())
    if args.json:
        rep.write(args.json, "json")
    return rep.exit_code()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
