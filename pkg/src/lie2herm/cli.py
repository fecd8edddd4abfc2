"""Command-line interface.

Exit codes: 0 success, 1 domain failure (invalid algebra, missing or
non-Hermitian structure, wrong dimension, unknown name), 2 usage or parse error.
Human-readable output prints the same values as ``--json``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog, fileformat
from .algebra import exterior_derivative
from .errors import Lie2Error, MissingJ, NotLie2, PaddingImpossible, ParseError
from .geometry import (
    bismut_connection,
    curvature,
    levi_civita_koszul,
    sectional_curvature,
)
from .hermitian import (
    JType,
    Verdict,
    adapted_frame,
    c_form,
    classify,
    classify_J_type,
    search_type2_hermitian,
)
from .lie2 import decompose_extended, validate
from .tolerance import resolve, set_default_tol

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x


def _emit(record: dict, args, lines: list[str] | None = None) -> None:
    record = _jsonable(record)
    if args.json:
        print(json.dumps(record, indent=2))
        return
    for line in lines or []:
        print(line)
    for key, value in record.items():
        if isinstance(value, (dict, list)) and key in ("rows", "frames", "entries"):
            continue
        print(f"{key}: {value!r}")


def _load(args) -> fileformat.AlgebraFile:
    return fileformat.load(args.path)


def _dec(doc: fileformat.AlgebraFile, tol):
    hints = doc.hints or (None, None)
    return decompose_extended(doc.algebra, *hints, tol=tol)


# --- commands ----------------------------------------------------------------------

def cmd_validate(args) -> int:
    doc = _load(args)
    rep = validate(doc.algebra, args.tol)
    record = {
        "antisymmetry_residual": rep.antisymmetry_residual,
        "jacobi_residual": rep.jacobi_residual,
        "ok": rep.ok,
    }
    _emit(record, args, ["valid" if rep.ok else "INVALID"])
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def classification_record(doc: fileformat.AlgebraFile, tol=None) -> dict:
    """All values reported by ``classify``; shared with the acceptance tests."""
    if doc.J is None:
        raise MissingJ("the file has no J")
    L, J = doc.algebra, doc.J
    rep = classify(L, J, tol)
    record = {"name": doc.name, "type": None, "lambda": None, "mu": None}
    dec = None
    try:
        dec = _dec(doc, tol)
    except (NotLie2, PaddingImpossible):
        pass
    if dec is not None:
        t = classify_J_type(L, J, dec, tol)
        record.update({"type": t.type.value, "lambda": t.lam, "mu": t.mu})
    record.update({
        "compatible": rep.compatible,
        "compatibility_residual": rep.compatibility_residual,
        "nijenhuis_residual": rep.nijenhuis_residual,
        "integrable": rep.integrable,
        "abelian": rep.abelian,
        "abelian_residual": rep.abelian_residual,
        "domega_norm": rep.domega_norm,
        "c_norm": rep.c_norm,
        "dc_norm": rep.dc_norm,
        "bismut_torsion_norm": rep.bismut_torsion_norm,
        "dc_top": rep.dc_top,
        "dc_adapted": None,
        "verdict": rep.verdict.value,
    })
    if rep.integrable and rep.compatible and L.dim == 4 and dec is not None and record["type"] != JType.MIXED.value:
        frame = adapted_frame(dec, J, tol)
        dc = exterior_derivative(c_form(L, J, tol), L)
        record["dc_adapted"] = dc.evaluate(*frame)
    return record


def cmd_classify(args) -> int:
    doc = _load(args)
    record = classification_record(doc, args.tol)
    parts = []
    if record["type"] is not None:
        parts.append(JType(record["type"]).label)
    parts.append(Verdict(record["verdict"]).label)
    if record["dc_top"] is not None:
        parts.append(f"dc_top = {record['dc_top']:g}")
    _emit(record, args, [", ".join(parts)])
    return EXIT_OK


def cmd_decompose(args) -> int:
    doc = _load(args)
    dec = _dec(doc, args.tol)
    record = {
        "e1": dec.e1, "e2": dec.e2, "gamma": dec.gamma.T, "padded": dec.padded,
        "a1": dec.a1, "a2": dec.a2, "b1": dec.b1, "b2": dec.b2, "f1": dec.f1, "f2": dec.f2,
    }
    _emit(record, args)
    return EXIT_OK


def _rows(coeffs: np.ndarray, tol: float) -> list[str]:
    n = coeffs.shape[0]
    rows = []
    for i in range(n):
        for j in range(n):
            terms = [(k, float(coeffs[i, j, k])) for k in range(n) if abs(coeffs[i, j, k]) > tol]
            if terms:
                rhs = " + ".join(f"{v!r} b{k + 1}" for k, v in terms).replace("+ -", "- ")
                rows.append(f"nabla_b{i + 1} b{j + 1} = {rhs}")
    return rows


def cmd_connection(args) -> int:
    doc = _load(args)
    L = doc.algebra
    if args.which == "levi-civita":
        conn = levi_civita_koszul(L)
    else:
        if doc.J is None:
            raise MissingJ("the Bismut connection needs J")
        conn = bismut_connection(L, doc.J, c_form(L, doc.J, args.tol), tol=args.tol)
    rows = _rows(conn.coeffs, resolve(args.tol))
    record = {"connection": args.which, "coeffs": conn.coeffs, "rows": rows}
    if args.json:
        _emit(record, args)
    else:
        print("\n".join(rows) if rows else "(all coefficients zero)")
    return EXIT_OK


def cmd_curvature(args) -> int:
    doc = _load(args)
    L = doc.algebra
    R = curvature(levi_civita_koszul(L), L)
    E = np.eye(L.dim)
    sec = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            sec[f"K(b{i + 1},b{j + 1})"] = sectional_curvature(L, E[i], E[j], R)
    if args.json:
        _emit({"sectional": sec}, args)
    else:
        print("\n".join(f"{k} = {v!r}" for k, v in sec.items()))
    return EXIT_OK


def cmd_search_type2(args) -> int:
    doc = _load(args)
    found = search_type2_hermitian(doc.algebra, args.grid, args.tol)
    frames = [
        {"i": f.i, "j": f.j, "lambda": f.lam, "mu": f.mu, "lambda2": f.lam2, "mu2": f.mu2,
         "Je1": f.J[:, 0], "Je2": f.J[:, 1]}
        for f in found
    ]
    record = {"grid": args.grid, "count": len(frames), "frames": frames}
    if args.json:
        _emit(record, args)
    elif not frames:
        print("none found")
    else:
        print(f"{len(frames)} frame(s) found")
        for fr in frames:
            print(f"Je1 = {fr['lambda']!r} g1 + {fr['mu']!r} g2, Je2 = {fr['lambda2']!r} g1 + {fr['mu2']!r} g2")
    return EXIT_OK


def cmd_catalog(args) -> int:
    names = [args.name] if args.name else catalog.list()
    entries = [catalog.get(n) for n in names]
    if args.export:
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        for e in entries:
            fileformat.dump(fileformat.from_catalog(e), out / f"{e.name}.yaml")
    record = {"entries": [{"name": e.name, "dim": e.dim, "description": e.description} for e in entries]}
    if args.export:
        record["exported_to"] = str(args.export)
    if args.json:
        _emit(record, args)
    elif args.name and not args.export:
        print(fileformat.dumps(fileformat.from_catalog(entries[0])), end="")
    else:
        for e in entries:
            print(f"{e.name}\t{e.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def flags(default):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--json", action="store_true", default=default if default is argparse.SUPPRESS else False,
                       help="machine-readable output")
        p.add_argument("--tol", type=_positive_float, default=default,
                       help="comparison tolerance (default 1e-9, or LIE2_TOL)")
        return p

    # flags may appear before or after the subcommand; the subcommand copies must
    # not overwrite values given before it
    common = flags(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="lie2herm", parents=[flags(None)],
                                     description="Hermitian structures on Lie algebras with two-dimensional derived algebra")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="antisymmetry and Jacobi residuals")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", parents=[common], help="type and Kaehler/SKT/weak verdict of J")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", parents=[common], help="print the decomposition data")
    p.add_argument("path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("connection", parents=[common], help="Levi-Civita or Bismut connection table")
    p.add_argument("which", choices=["levi-civita", "bismut"])
    p.add_argument("path")
    p.set_defaults(func=cmd_connection)

    p = sub.add_parser("curvature", parents=[common], help="sectional curvature of coordinate planes")
    p.add_argument("path")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("search-type2", parents=[common], help="grid search for Hermitian Type II structures")
    p.add_argument("path")
    p.add_argument("--grid", type=_positive_int, default=360, help="angle steps per circle")
    p.set_defaults(func=cmd_search_type2)

    p = sub.add_parser("catalog", parents=[common], help="list, show or export the example catalog")
    p.add_argument("name", nargs="?")
    p.add_argument("--export", metavar="DIR")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_default_tol(args.tol)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Lie2Error as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        set_default_tol(None)


if __name__ == "__main__":
    sys.exit(main())
