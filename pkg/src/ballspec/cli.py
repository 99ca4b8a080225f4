"""Command-line front end.

Subcommands (all parameters are explicit flags, no positionals):

  spectrum   --d D --bc BC --lambda-max X        labeled eigenvalue table
  zeros      --l L --d D --bc BC [--m M | --count K] [--tol T]
  courant    --d D --bc BC [--lmax L] [--mmax M]  sharpness verdicts
  pleijel    --gamma D | --table A B | --curve A B
  certify    --d D [--through D2]                 monotonicity certificates
  selfcheck  [--fast]                             built-in invariant suite

Common flags: --format json|csv (default json), --output PATH, --verbose
(version banner on the error stream; data output stays byte-identical).

Exit codes: 0 success; 1 usage or parameter-domain error (message on the
error stream); 2 numerical failure — the message carries the failing
module and inequality/bracket as raised by the library.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ballspec import __version__, courant, pleijel, selfcheck, spectrum, zeros
from ballspec._format import dumps, format_float
from ballspec.errors import BallspecError, NumericalError, Overflow


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting the process."""

    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _common_flags(parser: _Parser) -> None:
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--output", default=None, metavar="PATH")
    parser.add_argument("--verbose", action="store_true")


def _build_parser() -> _Parser:
    top = _Parser(prog="ballspec", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("spectrum", help="labeled eigenvalue table")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bc", choices=["dirichlet", "neumann"], required=True)
    p.add_argument("--lambda-max", dest="lambda_max", type=float, required=True)
    _common_flags(p)

    p = sub.add_parser("zeros", help="zeros of the radial target")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bc", choices=["dirichlet", "neumann"], required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--m", type=int, default=None)
    group.add_argument("--count", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    _common_flags(p)

    p = sub.add_parser("courant", help="Courant sharpness verdicts")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bc", choices=["dirichlet", "neumann"], required=True)
    p.add_argument("--lmax", type=int, default=8)
    p.add_argument("--mmax", type=int, default=4)
    _common_flags(p)

    p = sub.add_parser("pleijel", help="gamma values, table, quotient curve")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--gamma", type=int, default=None, metavar="D")
    group.add_argument(
        "--table", type=int, nargs=2, default=None, metavar=("D_MIN", "D_MAX")
    )
    group.add_argument(
        "--curve", type=int, nargs=2, default=None, metavar=("D_MIN", "D_MAX")
    )
    _common_flags(p)

    p = sub.add_parser("certify", help="monotonicity certificates")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--through", type=int, default=None, metavar="D_MAX")
    _common_flags(p)

    p = sub.add_parser("selfcheck", help="run the built-in invariant suite")
    p.add_argument("--fast", action="store_true")
    _common_flags(p)

    return top


def _emit(text: str, args) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _run_spectrum(args) -> int:
    table = spectrum.enumerate_spectrum(args.d, args.bc, args.lambda_max)
    _emit(table.to_json(indent=2) if args.format == "json" else table.to_csv(), args)
    return 0


def _run_zeros(args) -> int:
    if args.m is not None and args.m < 1:
        raise _UsageError(f"--m must be >= 1, got {args.m}")
    if args.count is not None and args.count < 1:
        raise _UsageError(f"--count must be >= 1, got {args.count}")
    ms = [args.m] if args.m is not None else list(range(1, (args.count or 5) + 1))
    finder = zeros.dirichlet_zero if args.bc == "dirichlet" else zeros.neumann_zero
    tol = zeros.DEFAULT_TOL if args.tol is None else args.tol
    entries = []
    for m in ms:
        z = finder(args.l, args.d, m, tol)
        entries.append({"m": m, "zero": z, "lambda": z * z})
    bc_name = "Dirichlet" if args.bc == "dirichlet" else "Neumann"
    if args.format == "json":
        payload = {
            "d": args.d,
            "bc": bc_name,
            "l": args.l,
            "tol": tol,
            "zeros": entries,
        }
        _emit(dumps(payload, indent=2), args)
    else:
        lines = ["m,zero,lambda"]
        for e in entries:
            lines.append(
                f"{e['m']},{format_float(e['zero'])},{format_float(e['lambda'])}"
            )
        _emit("\n".join(lines), args)
    return 0


def _run_courant(args) -> int:
    verdicts = courant.courant_sharp_ball(args.d, args.bc, args.lmax, args.mmax)
    sharp = sorted(courant.sharp_labels(verdicts))
    if args.format == "json":
        payload = {
            "d": args.d,
            "bc": verdicts[0].record.bc.value,
            "lmax": args.lmax,
            "mmax": args.mmax,
            "sharp_labels": sharp,
            "verdicts": [v.as_dict() for v in verdicts],
        }
        _emit(dumps(payload, indent=2), args)
    else:
        lines = ["l,m,bc,status,label_first,mu"]
        for v in verdicts:
            mu = "" if v.mu is None else str(v.mu)
            lines.append(
                f"{v.record.l},{v.record.m},{v.record.bc.value},"
                f"{v.status.value},{v.record.label_first},{mu}"
            )
        _emit("\n".join(lines), args)
    return 0


def _run_pleijel(args) -> int:
    if args.gamma is not None:
        row = pleijel.gamma_table(args.gamma, args.gamma)[0]
        if args.format == "json":
            payload = {
                "d": row.d,
                "gamma": row.gamma,
                "log_gamma_value": row.log_gamma_value,
            }
            _emit(dumps(payload, indent=2), args)
        else:
            _emit(f"d,gamma\n{row.d},{format_float(row.gamma)}", args)
        return 0

    if args.table is not None:
        d_min, d_max = args.table
        rows = pleijel.gamma_table(d_min, d_max)
        if args.format == "json":
            payload = {
                "d_min": d_min,
                "d_max": d_max,
                "rows": [
                    {
                        "d": r.d,
                        "gamma": pleijel.six_decimals(r.gamma),
                        "quotient": None
                        if r.quotient_next is None
                        else pleijel.six_decimals(r.quotient_next),
                    }
                    for r in rows
                ],
            }
            _emit(dumps(payload, indent=2), args)
        else:
            lines = ["d,gamma,quotient"]
            for r in rows:
                quotient = (
                    ""
                    if r.quotient_next is None
                    else pleijel.six_decimals(r.quotient_next)
                )
                lines.append(f"{r.d},{pleijel.six_decimals(r.gamma)},{quotient}")
            _emit("\n".join(lines), args)
        return 0

    d_min, d_max = args.curve
    points = pleijel.quotient_curve(d_min, d_max)
    if args.format == "json":
        _emit(pleijel.curve_to_plot_json(points, indent=2), args)
    else:
        lines = ["d,quotient"]
        for d, q in points:
            lines.append(f"{d},{format_float(q)}")
        _emit("\n".join(lines), args)
    return 0


def _run_certify(args) -> int:
    d_last = args.d if args.through is None else args.through
    if d_last < args.d:
        raise _UsageError(f"--through {d_last} is below --d {args.d}")
    certs = [pleijel.monotonicity_certificate(d) for d in range(args.d, d_last + 1)]
    if args.format == "json":
        if args.through is None:
            payload = certs[0].as_dict()
        else:
            payload = {
                "d_min": args.d,
                "d_max": d_last,
                "certificates": [c.as_dict() for c in certs],
            }
        _emit(dumps(payload, indent=2), args)
    else:
        lines = ["d,name,lhs,rhs,margin,kind"]
        for cert in certs:
            for c in cert.checks:
                lines.append(
                    f"{cert.d},{c.name},{format_float(c.lhs)},"
                    f"{format_float(c.rhs)},{format_float(c.margin)},{c.kind}"
                )
        _emit("\n".join(lines), args)
    return 0


def _run_selfcheck(args) -> int:
    results = selfcheck.run(fast=args.fast)
    lines = []
    for r in results:
        lines.append(f"ok {r.name}" if r.ok else f"FAIL {r.name}: {r.detail}")
        if args.verbose:
            print(f"# {r.name}: {r.elapsed:.2f}s", file=sys.stderr)
    passed = sum(r.ok for r in results)
    lines.append(f"selfcheck: {passed}/{len(results)} passed")
    _emit("\n".join(lines), args)
    failures = [r for r in results if not r.ok]
    if failures:
        first = failures[0]
        print(
            f"error: selfcheck failed at '{first.name}': {first.detail}",
            file=sys.stderr,
        )
        return 2
    return 0


_DISPATCH = {
    "spectrum": _run_spectrum,
    "zeros": _run_zeros,
    "courant": _run_courant,
    "pleijel": _run_pleijel,
    "certify": _run_certify,
    "selfcheck": _run_selfcheck,
}


def run(argv: list[str]) -> int:
    """Parse argv, execute one subcommand, and map errors to exit codes."""
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)

    if args.verbose:
        print(f"ballspec {__version__}", file=sys.stderr)

    try:
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, Overflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BallspecError as exc:  # parameter-domain problems: RangeError etc.
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - the CLI must never traceback
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
