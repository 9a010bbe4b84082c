"""Command-line entry point.

    spinstat run --suite all --particles 3 --two-s 1 --trials 50 --out report.json
    spinstat amplitude bra.json ket.json --method standard

Exit status: 0 when every case passes, 1 when any case fails, 2 on usage or
fixture errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .amplitudes import feynman_amplitude, standard_amplitude
from .exchange import RotationSense
from .fixtures import FixtureError, complex_pair, load
from .states import IncompatibleStates
from .suites import AMPLITUDE_TOL, EXACT_TOL, SUITES, SuiteConfig, run_suite
from .symmetrization import Statistics, build_superposed_general

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinstat", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser(
        "run",
        help="run a verification suite",
        description=(
            f"Run a named verification suite. Default tolerances: {AMPLITUDE_TOL:g} for amplitude "
            f"comparisons, {EXACT_TOL:g} for exact-phase identities. The enumeration cap on "
            "--particles defaults to 7 and can be raised with SPINSTAT_MAX_N."
        ),
    )
    run.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    run.add_argument("--particles", type=int, default=2, metavar="N")
    run.add_argument("--two-s", type=int, default=1, metavar="K", help="twice the spin, e.g. 1 for s=1/2")
    run.add_argument("--orbital-dim", type=int, default=2, metavar="D")
    run.add_argument("--trials", type=int, default=20, metavar="T")
    run.add_argument("--seed", type=int, default=0, metavar="S")
    run.add_argument("--tol", type=float, default=None, metavar="X", help="override the suite's default tolerance")
    run.add_argument("--sense", choices=["ccw", "cw"], default="ccw")
    run.add_argument("--out", metavar="FILE", help="write the JSON report here")
    run.add_argument("--timestamp", action="store_true", help="stamp the report (breaks byte-identical reruns)")
    run.add_argument("--verbose", action="store_true", help="print every case, not just failures")

    amp = sub.add_parser("amplitude", help="transition amplitude between two fixture states")
    amp.add_argument("bra", help="final state fixture (JSON)")
    amp.add_argument("ket", help="initial state fixture (JSON)")
    amp.add_argument("--method", choices=["feynman", "standard"], default="feynman")
    amp.add_argument("--sense", choices=["ccw", "cw"], default="ccw")
    amp.add_argument(
        "--stats", choices=["spin", "bose", "fermi"], default="spin",
        help="projector for the standard method; 'spin' picks it from 2s",
    )
    amp.add_argument("--out", metavar="FILE", help="also write the result as JSON")
    amp.add_argument("--verbose", action="store_true", help="dump the permutation-summed bra terms")
    return parser


def _cmd_run(args) -> int:
    try:
        cfg = SuiteConfig(
            suite=args.suite,
            n_particles=args.particles,
            two_s=args.two_s,
            orbital_dim=args.orbital_dim,
            trials=args.trials,
            seed=args.seed,
            tolerance=args.tol,
            sense=RotationSense.parse(args.sense),
            out_path=args.out,
        )
    except ValueError as exc:
        print(f"spinstat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(cfg, timestamp=args.timestamp)
    for c in report["cases"]:
        if args.verbose or not c["pass"]:
            print(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}  expected={c['expected']}  actual={c['actual']}")
    s = report["summary"]
    print(f"{cfg.suite}: {s['passed']}/{s['total']} passed")
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if s["failed"] == 0 else EXIT_FAILED


def _cmd_amplitude(args) -> int:
    try:
        bra, ket = load(args.bra), load(args.ket)
        sense = RotationSense.parse(args.sense)
        if args.method == "feynman":
            result = feynman_amplitude(bra, ket, sense)
        else:
            stats = {"bose": Statistics.bose(), "fermi": Statistics.fermi()}.get(args.stats) or Statistics.from_spin(bra.two_s)
            result = standard_amplitude(bra, ket, stats)
    except (FixtureError, IncompatibleStates) as exc:
        print(f"spinstat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.verbose:
        summed = build_superposed_general(bra, sense)
        for k, t in enumerate(summed.terms):
            slots = ", ".join(f"(2m={s.two_m}, chi={s.chi:.6g})" for s in t.slots)
            print(f"term {k}: coeff={t.coeff.real:+.12g}{t.coeff.imag:+.12g}j  {slots}")
    print(f"f = {result.f.real:+.15g} {result.f.imag:+.15g}j")
    print(f"|f|^2 = {result.probability:.15g}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(result.to_json(), fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_amplitude(args)


if __name__ == "__main__":
    sys.exit(main())
