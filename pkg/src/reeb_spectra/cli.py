"""Command-line interface.

Exit codes: 0 on success, 2 when a precondition is violated, 3 when the
command line or an exact-scalar literal does not parse.  Output is
deterministic: identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import approx, closing, numcheck, spectrum, toric, verify
from .errors import ContractViolation, ParseError
from .exactnum import ExactScalar, as_exact, parse_exact
from .report import (
    approx_dict,
    close_dict,
    dumps_csv,
    dumps_json,
    exact,
    flatten,
    flt,
    gap_dict,
    orbit_rows,
    spectrum_rows,
)

THREADS_ENV = "REEB_SPECTRA_THREADS"

EXIT_OK, EXIT_CONTRACT, EXIT_PARSE = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _scalar(text: str) -> ExactScalar:
    try:
        return parse_exact(text)
    except (ParseError, ContractViolation) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _jobs(requested):
    cap = os.environ.get(THREADS_ENV)
    jobs = requested if requested is not None else 1
    if cap:
        try:
            jobs = min(jobs, max(1, int(cap))) if requested is not None else max(1, int(cap))
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {cap!r}")
    return max(1, jobs)


def _close_or_none(args):
    a, L = args
    try:
        return closing.close_ellipsoid(a, L)
    except ContractViolation:
        return None


# -- subcommands --------------------------------------------------------------

def cmd_spectrum(args):
    if args.kind == "toric":
        if args.polygon is None or args.L is None:
            raise UsageError("spectrum --kind toric needs --polygon and --L")
        try:
            verts = json.loads(args.polygon)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--polygon is not JSON ({exc.msg})", args.polygon, exc.pos)
        poly = toric.ToricPolygon([(as_exact(str(x)), as_exact(str(y))) for x, y in verts])
        rows = orbit_rows(toric.toric_reeb_actions(poly, args.L, args.vertex_fans))
        return rows, ["kind", "value_exact", "value_float", "m", "n", "location"]

    if args.a is None:
        raise UsageError("spectrum needs --a")
    if (args.L is None) == (args.k is None):
        raise UsageError("spectrum needs exactly one of --L and --k")
    b = args.a if args.kind == "ball" else args.b
    if b is None:
        raise UsageError("spectrum --kind ellipsoid needs --b")
    if args.kind == "ball" and args.k is not None:
        seq = spectrum.ball_spectrum(args.a, args.k + 1)
    elif args.L is not None:
        seq = spectrum.ellipsoid_spectrum_upto(args.a, b, args.L)
    else:
        seq = spectrum.ellipsoid_spectrum_prefix(args.a, b, args.k + 1)
    return spectrum_rows(seq), ["k", "value_exact", "value_float", "m", "n"]


def cmd_gap(args):
    rep = closing.ellipsoid_gap(args.a, args.b, args.L)
    return gap_dict(rep, a=args.a, b=args.b), None


def cmd_close(args):
    return close_dict(closing.close_ellipsoid(args.a, args.L)), None


def cmd_approx(args):
    return approx_dict(approx.best_approx(args.a, args.L)), None


def cmd_sweep(args):
    if args.L_step.sign() <= 0:
        raise ContractViolation(f"--L-step must be positive, got {args.L_step}")
    Ls = []
    L = args.L_from
    while L <= args.L_to:
        Ls.append(L)
        L = L + args.L_step
    if not Ls:
        raise ContractViolation("empty L range")
    table = closing.trend_table(args.a, Ls, b=1)
    jobs = _jobs(args.jobs)
    work = [(args.a, L) for L in Ls]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            closes = list(pool.map(_close_or_none, work, chunksize=8))
    else:
        closes = [_close_or_none(w) for w in work]
    rows = []
    for (L, rep, lg), c in zip(table, closes):
        rows.append({
            "L": exact(L),
            "gap_exact": exact(rep.gap),
            "gap_float": flt(rep.gap),
            "close_exact": exact(c.value) if c is not None else None,
            "close_float": float(c.value) if c is not None else None,
            "L_times_gap": flt(lg),
        })
    return rows, ["L", "gap_exact", "gap_float", "close_exact", "close_float", "L_times_gap"]


def cmd_asympt(args):
    ratio, bound = closing.asymptotic_ratio(args.a, args.b, args.k)
    ck = spectrum.ellipsoid_ck(args.a, args.b, args.k)
    out = {"a": exact(args.a), "b": exact(args.b), "k": args.k,
           "c_k_exact": exact(ck), "c_k_float": float(ck),
           "ratio": ratio, "error_bound": bound}
    if args.a == args.b:
        d = spectrum.ball_degree(args.k)
        out["ball_bracket"] = [d / (d + 3), d / (d + 1)]
    return out, None


def cmd_verify(args):
    results = verify.run_all()
    return {"passed": all(r["ok"] for r in results), "checks": results}, None


def cmd_numcheck(args):
    prof = numcheck.load_profile(args.profile) if args.profile else numcheck.standard_profile()
    try:
        grid = tuple(int(v) for v in args.grid.split(","))
    except ValueError:
        raise UsageError(f"--grid must be comma-separated integers, got {args.grid!r}")
    if len(grid) != 3:
        raise UsageError("--grid needs three sizes nt,nr,ntheta")
    reeb = numcheck.reeb_residual(prof, grid, args.h)
    reeb_half = numcheck.reeb_residual(prof, grid, args.h / 2)
    pull = numcheck.psi_pullback_residual(h=args.psi_h, L_len=prof.L_len)
    top, bottom = reeb.max_abs["dlambda_R"], reeb_half.max_abs["dlambda_R"]
    return {
        "profile": prof.name,
        "box_condition": numcheck.check_box_condition(prof, 2001),
        "profile_violations": prof.validate(),
        "reeb": reeb.to_dict(),
        "reeb_half_step": reeb_half.to_dict(),
        "convergence_ratio": top / bottom if bottom > 0 else None,
        "psi": pull.to_dict(),
    }, None


def build_parser():
    p = _Parser(prog="reeb-spectra", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", "-o", type=Path, help="write to file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
        sp.add_argument("--output", "-o", type=Path, default=argparse.SUPPRESS)

    sp = sub.add_parser("spectrum", help="list c_k for a ball, ellipsoid or toric boundary")
    sp.add_argument("--kind", choices=["ellipsoid", "ball", "toric"], default="ellipsoid")
    sp.add_argument("--a", type=_scalar)
    sp.add_argument("--b", type=_scalar)
    sp.add_argument("--L", type=_scalar)
    sp.add_argument("--k", type=int)
    sp.add_argument("--polygon", help="JSON list of [x, y] vertices (toric)")
    sp.add_argument("--vertex-fans", action="store_true",
                    help="also list orbits over smoothed polygon vertices (toric)")
    common(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("gap", help="spectral gap of the ellipsoid E(a, b)")
    sp.add_argument("--a", type=_scalar, required=True)
    sp.add_argument("--b", type=_scalar, default=as_exact(1))
    sp.add_argument("--L", type=_scalar, required=True)
    common(sp)
    sp.set_defaults(func=cmd_gap)

    for name, func, text in [("close", cmd_close, "closing value of E(a, 1)"),
                             ("approx", cmd_approx, "constrained best approximations")]:
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--a", type=_scalar, required=True)
        sp.add_argument("--L", type=_scalar, required=True)
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("sweep", help="table of L * Gap^L for E(a, 1)")
    sp.add_argument("--a", type=_scalar, required=True)
    sp.add_argument("--L-from", dest="L_from", type=_scalar, required=True)
    sp.add_argument("--L-to", dest="L_to", type=_scalar, required=True)
    sp.add_argument("--L-step", dest="L_step", type=_scalar, default=as_exact(1))
    sp.add_argument("--jobs", type=int, help=f"worker processes (capped by {THREADS_ENV})")
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("asympt", help="c_k^2 / (2k vol) for E(a, b)")
    sp.add_argument("--a", type=_scalar, required=True)
    sp.add_argument("--b", type=_scalar, required=True)
    sp.add_argument("--k", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_asympt)

    sp = sub.add_parser("verify", help="run the built-in invariant suite")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("numcheck", help="finite-difference residuals")
    sp.add_argument("--profile", help="JSON profile table or path to one")
    sp.add_argument("--grid", default="41,41,8", help="nt,nr,ntheta")
    sp.add_argument("--h", type=float, default=1e-4)
    sp.add_argument("--psi-h", dest="psi_h", type=float, default=1e-5)
    common(sp)
    sp.set_defaults(func=cmd_numcheck)
    return p


def _render(payload, columns, fmt):
    if fmt == "json":
        return dumps_json(payload)
    if isinstance(payload, list):
        return dumps_csv(payload, columns)
    if "checks" in payload:
        return dumps_csv(payload["checks"], ["check", "ok", "detail"])
    row = flatten(payload)
    return dumps_csv([row], list(row))


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        payload, columns = args.func(args)
        text = _render(payload, columns, args.format)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except ContractViolation as exc:
        print(f"error: precondition violated: {exc}", file=stderr)
        return EXIT_CONTRACT
    if args.output is not None:
        args.output.write_text(text)
    else:
        stdout.write(text)
    if args.command == "verify" and not payload["passed"]:
        return EXIT_CONTRACT
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
