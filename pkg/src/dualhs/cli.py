"""Command-line front end: ``dualhs <verb> [matrix.json] [flags]``.

Exit codes: 0 success, 1 nonexistent inverse or theorem violation,
2 input or usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys

import numpy as np

from . import __version__
from .charsuite import GENERATOR_KINDS, Analysis, PropertyId, TheoremId, definitional_residual, run_trials, structural_residual
from .errors import DimensionMismatch, MatrixFormatError, NotSquare, NumericalFailure
from .geninverse import InverseKind, dggi, dmpgi, group_inverse_essential, inverse_report, mpdgi, ndmpi_svd, verify_inverse
from .hs import hs_from_svd, hs_reconstruct
from .matrix import DualMatrix, ToleranceConfig, dm_identity, load_matrix, matrix_to_json
from .svd import dual_svd, part_errors, unitarity_errors

EXIT_OK, EXIT_MISSING, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
DIGITS = 12  # decimals kept for matrix entries and singular values
RATIO_DIGITS = 3  # decimals kept for normalised residuals (1 = at tolerance)

_DEFAULTS = ToleranceConfig()


def _num(x: float, digits: int = DIGITS) -> float:
    return round(float(x), digits) + 0.0


def _sci(x: float) -> float:
    """Two significant digits: small residuals stay visible instead of rounding to zero."""
    return float(f"{float(x):.1e}") + 0.0


def _ratio(x: float):
    return _num(x, RATIO_DIGITS) if np.isfinite(x) else "inf"


def _matrix(a: DualMatrix | None):
    return None if a is None else matrix_to_json(a, DIGITS)


def _sigma(values):
    return [{"std": _num(s.std), "dual": _num(s.dual)} for s in values]


def _report(rep, **extra):
    out = {"exists": bool(rep.exists), "value": _matrix(rep.value)}
    if rep.reason:
        out["reason"] = rep.reason
    out["residuals"] = {k: _ratio(v) for k, v in rep.residuals.items()}
    out.update(extra)
    return out


# ---------------------------------------------------------------- verbs

def _svd(a, tol, args):
    res = dual_svd(a, tol)
    out = {"rows": a.rows, "cols": a.cols, "r": res.r, "t": res.t,
           "sigma": _sigma(res.sigma), "u": _matrix(res.u), "v": _matrix(res.v)}
    status = EXIT_OK
    if args.check:
        recon = res.reconstruct()
        es, ed = part_errors(a, recon, a.magnitude())
        us, ud = unitarity_errors(res.u)
        vs, vd = unitarity_errors(res.v)
        passed = max(es, ed) <= 1e-8 and max(us, ud, vs, vd) <= 1e-9
        out["check"] = {
            "reconstruction": {"std": _sci(es), "dual": _sci(ed)},
            "unitarity_u": {"std": _sci(us), "dual": _sci(ud)},
            "unitarity_v": {"std": _sci(vs), "dual": _sci(vd)},
            "pass": passed,
        }
        status = EXIT_OK if passed else EXIT_NUMERIC
    return out, status


def _hs(a, tol, args):
    h = hs_from_svd(dual_svd(a, tol))
    r = h.r
    kk = h.k @ h.k.H + h.l @ h.l.H
    mm = h.k @ h.m.H + h.l @ h.nblk.H
    eye = dm_identity(r)
    idents = {
        "KK*+LL*=I": _ratio(tol.residual(kk, eye, eye.magnitude() + eye.magnitude())) if r else 0.0,
        "KM*+LN*=0": _ratio(tol.residual(mm, DualMatrix(np.zeros(mm.shape)), eye.magnitude())) if mm.std.size else 0.0,
        "reconstruction": _ratio(tol.residual(hs_reconstruct(h), a, a.magnitude())),
    }
    out = {"n": h.n, "r": r, "t": h.t, "sigma1": _sigma(h.sigma1),
           "sigma2_dual": [_num(x) for x in h.sigma2_dual],
           "u": _matrix(h.u), "k": _matrix(h.k), "l": _matrix(h.l),
           "m": _matrix(h.m), "n_block": _matrix(h.nblk), "identities": idents}
    return out, EXIT_OK


def _ndmpi(a, tol, args):
    svd = dual_svd(a, tol)
    x = ndmpi_svd(a, tol)
    rep = verify_inverse(a, x, InverseKind.NDMPI, tol, essential=svd.essential())
    return _report(rep), EXIT_OK if rep.exists else EXIT_NUMERIC


def _mpdgi(a, tol, args):
    x = mpdgi(a, tol)
    # always defined; report how far it is from satisfying the Penrose system
    rep = verify_inverse(a, x, InverseKind.DMPGI, tol)
    return {"exists": True, "value": _matrix(x),
            "penrose_residuals": {k: _ratio(v) for k, v in rep.residuals.items()}}, EXIT_OK


def _existence(fn):
    def run(a, tol, args):
        rep = fn(a, tol)
        return _report(rep), EXIT_OK if rep.exists else EXIT_MISSING
    return run


def _group_ess(a, tol, args):
    rep = group_inverse_essential(hs_from_svd(dual_svd(a, tol)), tol)
    return _report(rep), EXIT_OK if rep.exists else EXIT_MISSING


def _check(a, tol, args):
    ctx = Analysis(a, tol)
    props = {}
    for p in PropertyId:
        d = definitional_residual(ctx, p)
        s = structural_residual(ctx.hs, p, tol)
        props[p.value] = {"definition": d <= 1.0, "hs_blocks": s <= 1.0,
                          "residuals": {"definition": _ratio(d), "hs_blocks": _ratio(s)}}
    return {"n": a.rows, "r": ctx.hs.r, "t": ctx.hs.t, "properties": props}, EXIT_OK


def _verify(args, tol):
    sizes = args.size or [4]
    kinds = tuple(args.kind) if args.kind else GENERATOR_KINDS
    summary = run_trials(args.theorem, args.trials, sizes, seed=args.seed, kinds=kinds, tol=tol)
    out = summary.to_dict()
    out["sizes"] = sizes
    out["seed"] = args.seed
    for rep in out["flagged"]:
        for c in rep["conditions"].values():
            if isinstance(c["residual"], float):
                c["residual"] = _ratio(c["residual"])
    return out, EXIT_MISSING if summary.violations else EXIT_OK


MATRIX_VERBS = {
    "svd": (_svd, "dual singular value decomposition"),
    "hs": (_hs, "Hartwig-Spindelboeck decomposition (square)"),
    "ndmpi": (_ndmpi, "new dual Moore-Penrose inverse"),
    "mpdgi": (_mpdgi, "Moore-Penrose dual generalized inverse (always defined)"),
    "dmpgi": (_existence(dmpgi), "dual Moore-Penrose generalized inverse, if it exists"),
    "dggi": (_existence(dggi), "dual group generalized inverse, if it exists"),
    "inv": (_existence(inverse_report), "ordinary dual inverse, if the standard part is invertible"),
    "group-ess": (_group_ess, "group inverse of the essential part, if it exists"),
    "check": (_check, "evaluate every matrix property by definition and by HS blocks"),
}


# ---------------------------------------------------------------- plumbing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help=f"absolute and relative equality tolerance (default {_DEFAULTS.eq_abs_tol:g})")
    common.add_argument("--rank-tol", type=float, default=None,
                        help=f"relative rank threshold (default {_DEFAULTS.rank_rel_tol:g})")
    common.add_argument("--output", choices=("json", "pretty"), default="json",
                        help="output format (default json)")

    parser = argparse.ArgumentParser(
        prog="dualhs",
        description="Dual complex matrix decompositions, generalized inverses and theorem checks. "
                    "Exit codes: 0 ok, 1 inverse does not exist or theorem violated, "
                    "2 input/usage error, 3 numerical failure.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for name, (_, text) in MATRIX_VERBS.items():
        p = sub.add_parser(name, parents=[common], help=text, description=text)
        p.add_argument("matrix", help="matrix JSON file ({rows, cols, standard, dual})")
        if name == "svd":
            p.add_argument("--check", action="store_true",
                           help="re-multiply the factors and print reconstruction and unitarity errors")
    p = sub.add_parser("verify", parents=[common], help="fuzz one theorem with seeded random matrices",
                       description="Run a theorem suite on seeded random matrices; exit 1 on any violation.")
    p.add_argument("theorem", choices=[t.value for t in TheoremId])
    p.add_argument("--trials", type=int, default=200, help="number of trials (default 200)")
    p.add_argument("--size", type=int, action="append", help="matrix order; repeat to mix sizes (default 4)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--kind", action="append", choices=GENERATOR_KINDS,
                   help="restrict generator kinds; repeatable (default all)")
    return parser


def _tolerance(args) -> ToleranceConfig:
    kw = {}
    if args.tol is not None:
        kw["eq_abs_tol"] = kw["eq_rel_tol"] = args.tol
    if args.rank_tol is not None:
        kw["rank_rel_tol"] = args.rank_tol
    return ToleranceConfig(**kw)


def _fmt_complex(re: float, im: float) -> str:
    return f"{re:.6g}{im:+.6g}i" if im else f"{re:.6g}"


def _pretty(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict) and {"rows", "cols", "standard", "dual"} <= set(obj):
        lines = []
        for part in ("standard", "dual"):
            lines.append(f"{pad}{part}:")
            cells = [[_fmt_complex(*z) for z in row] for row in obj[part]]
            width = max((len(c) for row in cells for c in row), default=0)
            lines += [pad + "  " + "  ".join(c.rjust(width) for c in row) for row in cells]
        return lines
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_scalar_list(v):
                lines.append(f"{pad}{k}:")
                lines += _pretty(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for item in obj:
            sub = _pretty(item, indent + 1)
            lines.append(f"{pad}-")
            lines += sub
        return lines
    return [pad + _scalar(obj)]


def _is_scalar_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, dict) and set(v) == {"std", "dual"}:
        return f"{v['std']:.12g} + {v['dual']:.12g}e"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.12g}"
    return json.dumps(v)


def _json(obj, indent: int = 0) -> str:
    """Indented JSON with numeric leaves (pairs, matrix rows) kept on one line."""
    if isinstance(obj, dict) and obj:
        pad = "  " * (indent + 1)
        items = [f"{pad}{json.dumps(k)}: {_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and obj and not _flat(obj):
        pad = "  " * (indent + 1)
        items = [pad + _json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, separators=(", ", ": "))


def _flat(v) -> bool:
    """Scalars, or a matrix row of [re, im] pairs."""
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _is_scalar_list(x)) for x in v)


def render(payload, style: str) -> str:
    if style == "pretty":
        return "\n".join(_pretty(payload)) + "\n"
    return _json(payload) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    """Execute one CLI invocation and return its exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        tol = _tolerance(args)
        if args.verb == "verify":
            if args.trials < 0 or any(s < 1 for s in (args.size or [])):
                raise ValueError("--trials must be >= 0 and --size >= 1")
            payload, status = _verify(args, tol)
        else:
            a = load_matrix(args.matrix)
            payload, status = MATRIX_VERBS[args.verb][0](a, tol, args)
    except (MatrixFormatError, OSError) as exc:
        print(f"dualhs: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except (NotSquare, DimensionMismatch, ValueError) as exc:
        print(f"dualhs: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"dualhs: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    stdout.write(render(payload, args.output))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
