"""Command-line interface.

    dualmp ndmpi A.json
    dualmp dmpgi N.json                 # exit 2 when the DMPGI does not exist
    dualmp check-rol plain A.json B.json
    dualmp suite --scale 0.1

Exit codes: 0 success, 1 input error, 2 nonexistence, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from . import exact as ex
from .dsvd import dual_svd
from .errors import (
    CandidateRejected,
    DoesNotExist,
    DualMPError,
    InternalExistenceFailure,
    NotInvertible,
    OracleMismatch,
    ParseError,
    ShapeMismatch,
)
from .inverse import PENROSE_TOL, dmpgi, mpdgi, ndmpi, penrose_check, wdmpgi
from .io import emit, format_dual, parse, pretty, to_obj
from .laws import CHECKERS, check_commutation_consequences
from .matrix import DualMatrix, essential_split
from .solve import solve_min_norm
from .suite import SuiteConfig, run_suite, summary_table

EXIT_OK, EXIT_INPUT, EXIT_MISSING, EXIT_VERIFY = 0, 1, 2, 3
TOL_ENV = "DUALMP_TOL"


class CLIError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return PENROSE_TOL
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as exc:
        raise CLIError(f"{TOL_ENV}: {exc}") from None


def _positive(text) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"tolerance must be positive and finite: {text!r}")
    return v


# ---- output helpers ----


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _exact_pretty(M: ex.RationalDualMatrix) -> str:
    rows, cols = M.shape
    cells = [[f"{M.std[i, j]!r} + {M.dual[i, j]!r}ε" for j in range(cols)] for i in range(rows)]
    if not cells or not cells[0]:
        return f"[] ({rows}x{cols})\n"
    width = max(len(c) for row in cells for c in row)
    return "".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]\n" for row in cells)


def _matrix_out(M, fmt) -> str:
    if isinstance(M, ex.RationalDualMatrix):
        return _exact_pretty(M) if fmt == "pretty" else emit(M.to_float())
    return pretty(M) if fmt == "pretty" else emit(M)


def _report_out(d: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump(d)
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        for k, v in obj.items():
            if isinstance(v, dict):
                lines.append(f"{pad}{k}:")
                walk(v, indent + 1)
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(f"{pad}{k}:")
                for item in v:
                    lines.append(f"{pad}  - " + ", ".join(f"{a}={_fmt(b)}" for a, b in item.items()))
            else:
                lines.append(f"{pad}{k}: {_fmt(v)}")

    walk(d, 0)
    return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


# ---- commands ----


def _load(path) -> DualMatrix:
    return parse(path)


def _exact(A: DualMatrix) -> ex.RationalDualMatrix:
    return ex.RationalDualMatrix.from_float(A)


def cmd_inverse(args) -> str:
    A = _load(args.A)
    if args.exact:
        if args.command not in ("ndmpi", "mpdgi", "dmpgi"):
            raise CLIError(f"--exact is not supported for {args.command}")
        Q = _exact(A)
        if args.command == "mpdgi":
            return _matrix_out(ex.exact_mpdgi(Q), args.format)
        if args.command == "dmpgi":
            _, Nn = ex.exact_essential_split(Q)
            if not ex.is_zero(Nn.dual):
                norm = Nn.to_float().max_abs()
                raise DoesNotExist(f"DMPGI does not exist: nonessential part has norm {norm:.3e} (exact)", norm)
        return _matrix_out(ex.exact_ndmpi(Q), args.format)
    fn = {"ndmpi": lambda M: ndmpi(M), "mpdgi": mpdgi, "dmpgi": lambda M: dmpgi(M, args.tol), "wdmpgi": lambda M: wdmpgi(M, args.tol)}
    return _matrix_out(fn[args.command](A), args.format)


def cmd_dsvd(args) -> str:
    if args.exact:
        raise CLIError("--exact is not supported for dsvd (singular values are irrational in general)")
    dec = dual_svd(_load(args.A))
    if args.format == "pretty":
        sig = ", ".join(format_dual(complex(s.std), complex(s.dual)) for s in dec.sigma)
        return f"r = {dec.r}, t = {dec.t}\nsigma = ({sig})\nU =\n{pretty(dec.U)}V =\n{pretty(dec.V)}"
    return _dump(
        {
            "r": dec.r,
            "t": dec.t,
            "sigma": [[s.std, s.dual] for s in dec.sigma],
            "U": to_obj(dec.U),
            "V": to_obj(dec.V),
        }
    )


def cmd_esplit(args) -> str:
    A = _load(args.A)
    if args.exact:
        Ae, Nn = ex.exact_essential_split(_exact(A))
        if args.format == "pretty":
            return f"essential =\n{_exact_pretty(Ae)}nonessential =\n{_exact_pretty(Nn)}"
        Ae, Nn = Ae.to_float(), Nn.to_float()
        return _dump({"essential": to_obj(Ae), "nonessential": to_obj(Nn), "nonessential_norm": Nn.max_abs()})
    sp = essential_split(A)
    if args.format == "pretty":
        return (
            f"essential =\n{pretty(sp.essential)}nonessential =\n{pretty(sp.nonessential)}"
            f"nonessential norm = {sp.nonessential_norm:.3e}\n"
        )
    return _dump(
        {"essential": to_obj(sp.essential), "nonessential": to_obj(sp.nonessential), "nonessential_norm": sp.nonessential_norm}
    )


def cmd_check(args):
    A, B = _load(args.A), _load(args.B)
    law = "fol" if args.command == "check-fol" else args.law
    if law == "consequences":
        rep = check_commutation_consequences(A, B, args.tol)
    else:
        rep = CHECKERS[law](A, B, args.tol)
    d = rep.as_dict()
    if law == "123":
        ok = rep.notes["equivalence_respected"]
    else:
        ok = rep.implication_respected
    return _report_out(d, args.format), EXIT_OK if ok else EXIT_VERIFY


def cmd_solve(args) -> str:
    A, b = _load(args.A), _load(args.b)
    res = solve_min_norm(A, b)
    r = res.residual_norm
    if args.format == "pretty":
        return f"x =\n{pretty(res.solution)}residual norm = {format_dual(complex(r.std), complex(r.dual))}\nrank used = {res.rank_used}\n"
    return _dump({"solution": to_obj(res.solution), "residual_norm": [r.std, r.dual], "rank_used": res.rank_used})


def cmd_verify(args):
    A, X = _load(args.A), _load(args.X)
    which = tuple(sorted(set(args.equations)))
    if args.exact:
        res = ex.exact_penrose(_exact(A), _exact(X))
        d = {"exact": True, **{f"eq{k}": res[k] for k in which}, "alt_eq1": res["alt"]}
        ok = all(res[k] for k in which)
    else:
        rep = penrose_check(A, X, which, args.tol)
        d = rep.as_dict()
        ok = rep.all_pass
    d["all_pass"] = ok
    return _report_out(d, args.format), EXIT_OK if ok else EXIT_VERIFY


def cmd_suite(args):
    only = set(args.only) if args.only else None
    cfg = SuiteConfig(seed=args.seed, tol=args.tol, scale=args.scale, workers=args.workers)
    results = run_suite(cfg, only)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
    if args.format == "json":
        report = {
            "passed": sum(r.passed for r in results),
            "total": len(results),
            "criteria": [r.as_dict(args.timings) for r in results],
        }
        return _dump(report), code
    return summary_table(results, args.timings), code


# ---- parser ----


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit code 2 is reserved for nonexistence
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=_positive, default=None, help=f"tolerance (default 1e-9, or ${TOL_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "pretty"], default=None, help="default json (pretty for suite)")
    common.add_argument("--exact", action="store_true", help="route through exact rational arithmetic")

    p = _Parser(prog="dualmp", description="Generalized inverses of dual complex matrices.")
    p.add_argument("--version", action="version", version=f"dualmp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("ndmpi", "NDMPI of A"),
        ("mpdgi", "A_s^+ - A_s^+ A_d A_s^+ e"),
        ("dmpgi", "DMPGI of A (exit 2 if it does not exist)"),
        ("wdmpgi", "weakly dual MP inverse of A"),
    ):
        c = sub.add_parser(name, parents=[common], help=help_)
        c.add_argument("A")
        c.set_defaults(func=cmd_inverse)

    c = sub.add_parser("dsvd", parents=[common], help="dual singular value decomposition")
    c.add_argument("A")
    c.set_defaults(func=cmd_dsvd)

    c = sub.add_parser("esplit", parents=[common], help="essential / nonessential split")
    c.add_argument("A")
    c.set_defaults(func=cmd_esplit)

    c = sub.add_parser("check-rol", parents=[common], help="reverse-order-law checker")
    c.add_argument("law", choices=[k for k in CHECKERS if k != "fol"] + ["consequences"])
    c.add_argument("A")
    c.add_argument("B")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("check-fol", parents=[common], help="forward-order-law checker")
    c.add_argument("A")
    c.add_argument("B")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("solve", parents=[common], help="minimum-norm least-squares solution of A x = b")
    c.add_argument("A")
    c.add_argument("b")
    c.set_defaults(func=cmd_solve)

    c = sub.add_parser("verify", parents=[common], help="Penrose equations for a candidate X")
    c.add_argument("A")
    c.add_argument("X")
    c.add_argument("--equations", type=int, nargs="+", choices=[1, 2, 3, 4], default=[1, 2, 3, 4])
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    c.add_argument("--scale", type=_positive, default=1.0, help="multiply every sample count")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--only", type=int, nargs="+", choices=range(1, 10), metavar="N")
    c.add_argument("--timings", action="store_true", help="include wall-clock times (output no longer reproducible)")
    c.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is None:
            args.tol = default_tol()
        if args.format is None:
            args.format = "pretty" if args.command == "suite" else "json"
        out = args.func(args)
        code = EXIT_OK
        if isinstance(out, tuple):
            out, code = out
        sys.stdout.write(out)
        return code
    except CLIError as exc:
        print(f"dualmp: error: {exc}", file=sys.stderr)
        return exc.code
    except DoesNotExist as exc:
        print(f"dualmp: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except (OracleMismatch, CandidateRejected, InternalExistenceFailure) as exc:
        print(f"dualmp: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParseError, ShapeMismatch, NotInvertible) as exc:
        print(f"dualmp: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DualMPError as exc:
        print(f"dualmp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
