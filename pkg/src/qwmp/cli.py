"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .cramer import LeftSystem, RightSystem, solve_left, solve_right
from .errors import (
    AxiomViolation,
    DimensionMismatch,
    NonConvergence,
    NotHermitian,
    NotPositiveDefinite,
    QuaternionLinalgError,
)
from .io import MatrixFileError, read_matrix, to_document
from .qmatrix import QMatrix
from .quaternion import DEFAULT_TOL, format_quaternion
from .rcdet import cdet, det_hermitian, rdet
from .spectral import wsvd
from .weights import WeightPair
from .wmp import wmp

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

METHOD_CHOICES = (
    "auto",
    "hermitian-col",
    "hermitian-row",
    "general-col",
    "general-row",
    "wsvd",
    "limit",
    "reduction",
    "all",
)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# shared helpers


def _add_common(p, weights=True):
    p.add_argument("--matrix", required=True, help="matrix file (JSON); '-' reads stdin")
    if weights:
        p.add_argument("--weight-m", help="weight M file (default identity)")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--weight-n", help="weight N file (default identity)")
        g.add_argument("--weight-n-inv", help="file holding N^-1 instead of N")
    p.add_argument("--backend", choices=("rational", "float"), help="default: inferred from the files")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance for float comparisons")
    p.add_argument("--out", choices=("text", "json"), default="text")


def _convert(A, backend):
    if backend == "rational":
        return A.to_exact()
    if backend == "float":
        return A.to_float()
    return A


def _load(args):
    stdin_uses = [x for x in (args.matrix, getattr(args, "weight_m", None), getattr(args, "weight_n", None),
                              getattr(args, "weight_n_inv", None), getattr(args, "rhs", None)) if x == "-"]
    if len(stdin_uses) > 1:
        raise InputError("only one input may come from stdin")
    A = _convert(read_matrix(args.matrix), args.backend)
    if not hasattr(args, "weight_m"):
        return A, None
    M = _convert(read_matrix(args.weight_m), args.backend) if args.weight_m else QMatrix.identity(A.rows)
    if args.weight_n_inv:
        N, Ninv = None, _convert(read_matrix(args.weight_n_inv), args.backend)
    else:
        N = _convert(read_matrix(args.weight_n), args.backend) if args.weight_n else QMatrix.identity(A.cols)
        Ninv = None
    W = WeightPair(M, N, Ninv, tol=args.tol)
    W.check_shape(A)
    return A, W


def _short(comps):
    # text output only; JSON keeps full precision
    return [c if not isinstance(c, float) else float(f"{c:.12g}") for c in comps]


def _render(A):
    cells = [[format_quaternion(_short(A.data[i, j])) for j in range(A.cols)] for i in range(A.rows)]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _scalar(x):
    return str(x) if not isinstance(x, float) else repr(x)


def _emit(args, payload, text):
    if args.out == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_inverse(args):
    A, W = _load(args)
    method = args.method.replace("-", "_")
    try:
        rep = wmp(A, W, method=method, tol=args.tol)
    except AxiomViolation as exc:
        rep = exc.residuals
        print(f"verification failed: {exc}", file=sys.stderr)
        if rep is not None and args.verify:
            _print_inverse(args, rep)
        return EXIT_VERIFY
    _print_inverse(args, rep)
    return EXIT_OK


def _print_inverse(args, rep):
    payload = {"method": rep.method, "rank": rep.rank, "inverse": to_document(rep.inverse)}
    lines = [f"method: {rep.method}", f"rank: {rep.rank}", "inverse:", _render(rep.inverse)]
    if args.verify:
        blocks = {}
        for name, res in rep.residuals.items():
            blocks[name] = dict(res.as_dict(), exact_zero=res.exact_zero)
            lines.append(
                f"residuals[{name}]: "
                + " ".join(f"{k}={v:.3e}" for k, v in res.as_dict().items())
                + (" (exact zero)" if res.exact_zero else "")
            )
        payload["residuals"] = blocks
        if rep.discrepancy is not None:
            payload["max_discrepancy"] = rep.discrepancy
            lines.append(f"max discrepancy: {rep.discrepancy:.3e}")
    _emit(args, payload, "\n".join(lines))


def cmd_solve(args):
    A, W = _load(args)
    b = _convert(read_matrix(args.rhs), args.backend)
    if args.side == "right":
        if b.shape == (1, A.rows) and A.rows != 1:
            b = QMatrix._wrap(b.data.reshape(A.rows, 1, 4).copy())
        x = solve_right(RightSystem(A, b, W), tol=args.tol)
        residual = (A @ x - b).max_norm()
    else:
        if b.shape == (A.cols, 1) and A.cols != 1:
            b = QMatrix._wrap(b.data.reshape(1, A.cols, 4).copy())
        x = solve_left(LeftSystem(A, b, W), tol=args.tol)
        residual = (x @ A - b).max_norm()
    payload = {"side": args.side, "x": to_document(x), "residual": residual}
    text = f"x ({args.side} system):\n{_render(x)}\nresidual: {residual:.6e}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_wsvd(args):
    A, W = _load(args)
    res = wsvd(A, W, args.tol)
    Mf, Nif = W.M.to_float(), W.N_inv.to_float()
    eye_m = QMatrix.identity(A.rows, exact=False)
    eye_n = QMatrix.identity(A.cols, exact=False)
    resid = {
        "U*MU-I": (res.U.H @ Mf @ res.U - eye_m).max_norm(),
        "V*N^-1V-I": (res.V.H @ Nif @ res.V - eye_n).max_norm(),
        "UDV*-A": (res.reconstruct() - A.to_float()).max_norm(),
    }
    payload = {"r": res.r, "sigma": [float(s) for s in res.sigma], "residuals": resid}
    text = "\n".join(
        [f"r: {res.r}", "sigma: " + " ".join(f"{s:.12g}" for s in res.sigma)]
        + [f"{k}: {v:.3e}" for k, v in resid.items()]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_det(args):
    A, _ = _load(args)
    if args.kind == "hermitian":
        value = det_hermitian(A, args.tol)
        payload = {"kind": "hermitian", "value": _scalar(value)}
        text = _scalar(value)
    else:
        if args.index is None:
            raise InputError("--index is required for rdet/cdet")
        q = (rdet if args.kind == "rdet" else cdet)(args.index, A)
        payload = {"kind": args.kind, "index": args.index, "value": [_scalar(c) for c in q.components]}
        text = str(q)
    _emit(args, payload, text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="qwmp", description="Weighted Moore-Penrose inverses of quaternion matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inverse", help="weighted Moore-Penrose inverse")
    _add_common(p)
    p.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    p.add_argument("--verify", action="store_true", help="print Penrose residuals")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("solve", help="Cramer-rule solution of Ax = b or xA = b")
    _add_common(p)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.add_argument("--rhs", required=True, help="right-hand side file (column for right, row for left)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("wsvd", help="weighted singular value decomposition")
    _add_common(p)
    p.set_defaults(func=cmd_wsvd)

    p = sub.add_parser("det", help="row, column or Hermitian determinant")
    _add_common(p, weights=False)
    p.add_argument("--kind", choices=("rdet", "cdet", "hermitian"), required=True)
    p.add_argument("--index", type=int, help="1-based anchor row/column for rdet/cdet")
    p.set_defaults(func=cmd_det)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AxiomViolation, NonConvergence) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except MatrixFileError as exc:
        print(f"input error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"input error: cannot read {exc.filename}: {exc.strerror}", file=sys.stderr)
    except DimensionMismatch as exc:
        print(f"dimension mismatch: {exc}", file=sys.stderr)
    except NotPositiveDefinite as exc:
        print(f"weight error: {exc}", file=sys.stderr)
    except NotHermitian as exc:
        print(f"not Hermitian: {exc}", file=sys.stderr)
    except (InputError, QuaternionLinalgError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
