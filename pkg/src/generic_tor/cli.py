"""Command-line front end.

Exit codes: 0 success / verdict true, 1 verdict false, 2 usage or
validation error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .bertini import (
    GateError,
    bad_locus,
    check_vanishing,
    monte_carlo_density,
    validate_scenario,
)
from .homology import InvariantViolation
from .ktheory import KTheoryError, euler_invariance, generic_product
from .scenario import ScenarioError, corpus_names, load_scenario, parse_group_element

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


def _field_label(s) -> str:
    p = s.field.characteristic
    return "Q" if p == 0 else f"F_{p}"


def _load(args):
    s = load_scenario(args.scenario)
    pin = "identity" if getattr(args, "g", None) == "identity" and args.command == "density" else None
    s = s.with_overrides(prime=args.prime, i_max=args.imax, crosscheck=True if args.crosscheck else None,
                         seed=args.seed, pin=pin)
    return validate_scenario(s)


def _header(args, s) -> dict:
    return {
        "command": args.command,
        "scenario": s.name,
        "engine_version": __version__,
        "field": _field_label(s),
        "seed": s.sampler.seed,
        "i_max": s.i_max,
    }


def _emit(args, report: dict, summary: str):
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(summary)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    s = _load(args)
    g = parse_group_element(args.g or "sample:0", s)
    rep = check_vanishing(s, g)
    out = _header(args, s)
    out["g_spec"] = args.g or "sample:0"
    out["result"] = rep.as_dict(args.timings)
    flags = ", ".join(f"Tor_{i}={'0' if z else k}" for i, (k, z) in enumerate(zip(rep.k_polynomials, rep.zero)))
    _emit(args, out, f"verdict {rep.verdict}: {flags}")
    return EXIT_OK if rep.verdict else EXIT_FALSE


def cmd_density(args) -> int:
    if args.trials < 1:
        raise _Usage("--trials must be >= 1")
    s = _load(args)
    rep = monte_carlo_density(s, args.trials)
    out = _header(args, s)
    out["result"] = rep.as_dict(args.timings)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scenario", "field", "seed", "trials", "passed", "density", "failing"])
        w.writerow([s.name, _field_label(s), s.sampler.seed, rep.trials, rep.passed, rep.density, len(rep.failing)])
        Path(args.csv).write_text(buf.getvalue())
    _emit(args, out, f"density {rep.density} ({rep.passed}/{rep.trials}); failing samples: {len(rep.failing)}")
    return EXIT_OK if not rep.failing else EXIT_FALSE


def cmd_badlocus(args) -> int:
    s = _load(args)
    rep = bad_locus(s)
    out = _header(args, s)
    out["result"] = rep.as_dict(args.timings)
    _emit(args, out, f"bad locus: {rep}")
    return EXIT_OK


def cmd_kprod(args) -> int:
    if args.samples < 0:
        raise _Usage("--samples must be >= 0")
    s = _load(args)
    inv = euler_invariance(s, args.samples)
    out = _header(args, s)
    out["result"] = inv.as_dict()
    try:
        out["generic_product"] = generic_product(s.E, s.F, s).as_dict()
    except KTheoryError as exc:
        out["generic_product"] = {"error": str(exc)}
    cls = inv.classes[0][1]
    _emit(args, out, f"class {cls}; invariant {inv.invariant}")
    return EXIT_OK if inv.invariant else EXIT_FALSE


def cmd_list(args) -> int:
    for name in corpus_names():
        print(name)
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="generic-tor", description="Tor of generic group translates.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("scenario", help="scenario JSON path or bundled corpus name")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--seed", type=int, help="override the sampler seed")
        sp.add_argument("--prime", type=int, help="work over F_p instead of the scenario field")
        sp.add_argument("--imax", type=int, help="highest Tor index to compute")
        sp.add_argument("--crosscheck", action="store_true", help="also run the double-complex route")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")

    sp = sub.add_parser("check", help="Tor of E and gF for one group element")
    common(sp)
    sp.add_argument("--g", help="identity | sample:k | JSON matrix literal (default sample:0)")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("density", help="fraction of sampled g with vanishing higher Tor")
    common(sp)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--g", choices=["identity"], help="pin every trial to the identity (adversarial run)")
    sp.add_argument("--csv", help="also write a one-line CSV summary")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("badlocus", help="exact bad locus of a parametric family")
    common(sp)
    sp.set_defaults(func=cmd_badlocus)

    sp = sub.add_parser("kprod", help="Euler Tor sums across translates")
    common(sp)
    sp.add_argument("--samples", type=int, default=3)
    sp.set_defaults(func=cmd_kprod)

    sp = sub.add_parser("list", help="list the bundled scenarios")
    sp.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GateError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
