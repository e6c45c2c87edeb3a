"""Command-line interface.

Exit codes: 0 success, 1 a self-check assertion failed, 2 malformed input or
an invalid algebra/representation, 3 sampled pairs did not agree on a type.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import schemas, zoo
from .exactmath import MultiPoly, to_rational
from .jk import DEFAULT_CEILING, SymbolicPathUnavailable, fundamental_semiinvariant, jk_invariants
from .liealg import InvalidAlgebra, LieAlgebra, Representation, adjoint, coadjoint, regular_dims, validate
from .linalg import Matrix
from .pencil import Pencil, PencilError, pencil_invariants
from .shifts import (NotRegular, degree_sum_bounds, formal_invariant_truncated, sing1_safe_origins, trdeg_Ya,
                     verify_invariant, vorontsov_check)
from .suite import run_check

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_pencil(path: str) -> Pencil:
    data = _load_json(path)
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise InputError(f"{path}: a pencil file needs fields 'A' and 'B'")
    mats = {}
    for key in ("A", "B"):
        try:
            mats[key] = Matrix.from_json(data[key])
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: field {key}: {exc}") from None
    A, B = mats["A"], mats["B"]
    if A.shape != B.shape:
        raise InputError(f"{path}: A is {A.rows}x{A.cols} but B is {B.rows}x{B.cols}")
    return Pencil(A, B)


def load_representation(args) -> tuple[Representation, zoo.ZooEntry | None]:
    entry = None
    if args.zoo:
        try:
            entry = zoo.get(args.zoo)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
        algebra = entry.algebra()
    elif getattr(args, "algebra", None):
        try:
            algebra = LieAlgebra.from_json(_load_json(args.algebra), check=False)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"{args.algebra}: {exc}") from None
    else:
        raise InputError("give --zoo NAME or an algebra file")
    kind = args.rep
    if kind is None:
        if entry is None:
            raise InputError("--rep adjoint|coadjoint|FILE is required with an algebra file")
        return entry.representation(), entry
    if kind == "adjoint":
        rep = adjoint(_validated(algebra))
    elif kind == "coadjoint":
        rep = coadjoint(_validated(algebra))
    else:
        algebra = _validated(algebra)
        try:
            rep = Representation.from_json(algebra, _load_json(kind))
        except InvalidAlgebra:
            raise
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"{kind}: {exc}") from None
    # zoo invariants only apply to the entry's own representation
    own = entry is not None and kind == "coadjoint" and entry.is_coadjoint
    return rep, entry if own else None


def _validated(algebra: LieAlgebra) -> LieAlgebra:
    v = validate(algebra)
    if v is not None:
        raise InvalidAlgebra(v)
    return algebra


def load_invariants(path: str, nvars: int) -> list[MultiPoly]:
    data = _load_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("polynomials"), list):
        raise InputError(f"{path}: an invariants file needs a 'polynomials' list")
    out = []
    for pos, p in enumerate(data["polynomials"]):
        try:
            out.append(MultiPoly.from_json(p, nvars))
        except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: polynomials[{pos}]: {exc}") from None
    return out


def parse_vector(text: str, dim: int) -> tuple:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != dim:
        raise InputError(f"--a needs {dim} coordinates, got {len(parts)}")
    try:
        return tuple(to_rational(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--a: {exc}") from None


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(value)}")
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(u, (dict, list)) for u in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(u) for u in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def emit(kind: str, result: dict, fmt: str, stream=None) -> None:
    doc = {"schema": schemas.SCHEMA_ID, "kind": kind, "convention": schemas.EIGENVALUE_CONVENTION, "result": result}
    schemas.validate_report(doc)
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(_render_text(doc)) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_pencil(args) -> int:
    P = load_pencil(args.file)
    emit("pencil", pencil_invariants(P).to_json(), args.format)
    return EXIT_OK


def _agreement_code(report) -> int:
    return EXIT_OK if report.witness.agreed else EXIT_DISAGREE


def cmd_rep_analyze(args) -> int:
    rep, _ = load_representation(args)
    report = jk_invariants(rep, args.trials, args.seed, args.bound)
    emit("rep-analyze", report.to_json(), args.format)
    return _agreement_code(report)


def cmd_rep_semiinvariant(args) -> int:
    rep, _ = load_representation(args)
    report = jk_invariants(rep, args.trials, args.seed, args.bound)
    try:
        semi = fundamental_semiinvariant(rep, args.ceiling)
    except SymbolicPathUnavailable as exc:
        print(f"jkinv: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = semi.to_json()
    result["degree_via_pencil"] = report.deg_D
    result["degrees_agree"] = semi.degree == report.deg_D
    result["witness"] = report.witness.to_json()
    emit("rep-semiinvariant", result, args.format)
    return _agreement_code(report)


def cmd_shifts(args) -> int:
    rep, entry = load_representation(args)
    if args.invariants:
        polys = load_invariants(args.invariants, rep.dimV)
    elif entry is not None:
        polys = list(entry.invariants)
    else:
        polys = []
    checks = [verify_invariant(rep, f) for f in polys]
    bad = [c for c in checks if not c.verified]
    if bad:
        emit("error", {"message": "supplied polynomial is not an invariant", "details": [c.to_json() for c in bad]},
             args.format)
        return EXIT_INPUT
    report = jk_invariants(rep, args.trials, args.seed, args.bound)
    if args.a is not None:
        a = parse_vector(args.a, rep.dimV)
    else:
        a = sing1_safe_origins(rep, 1, args.seed, args.bound, report.invariants.rank)[0]
    tr = trdeg_Ya(rep, polys, a, args.trials, args.seed, args.bound, report=report)
    result = {
        "a": [str(v) for v in a],
        "invariants": [c.to_json() for c in checks],
        "trdeg": tr.to_json(),
        "vorontsov": [v.to_json() for v in vorontsov_check(rep, polys, report, args.seed, args.bound)],
        "degree_sums": ([v.to_json() for v in degree_sum_bounds(rep, polys, report, None, args.seed, args.bound)]
                        if len(polys) == report.q else []),
        "formal_chains": [],
    }
    try:
        r = regular_dims(rep, args.trials, args.seed, args.bound).rank
        result["formal_chains"] = [ch.to_json() for ch in formal_invariant_truncated(rep, a, args.order, r)]
    except NotRegular as exc:
        result["formal_chains_skipped"] = str(exc)
    emit("shifts", result, args.format)
    return _agreement_code(report)


def cmd_zoo(args) -> int:
    if args.action == "list":
        emit("zoo-list", {"entries": [{"name": e.name, "description": e.description} for e in zoo.ZOO.values()]},
             args.format)
        return EXIT_OK
    if not args.name:
        raise InputError("zoo show needs a NAME")
    try:
        entry = zoo.get(args.name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    emit("zoo-show", entry.to_json(), args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.zoo == "list":
        return cmd_zoo(argparse.Namespace(action="list", name=None, format=args.format))
    names = [args.zoo] if args.zoo else None
    if names:
        try:
            zoo.get(names[0])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    result = run_check(args.seed, args.trials, args.bound, args.ceiling, names)
    emit("check", result, args.format)
    if not result["agreed"]:
        return EXIT_DISAGREE
    return EXIT_OK if result["passed"] else EXIT_FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help="PRNG seed (default: $JK_SEED or 1)")
    common.add_argument("--trials", type=_positive, default=8, help="sampled points or pairs (default 8)")
    common.add_argument("--bound", type=_positive, default=1000, help="coordinate bound for samples (default 1000)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--ceiling", type=_positive, default=DEFAULT_CEILING,
                        help="maximal number of symbolic minors (default 20000)")

    rep_args = argparse.ArgumentParser(add_help=False)
    rep_args.add_argument("algebra", nargs="?", help="algebra JSON file (instead of --zoo)")
    rep_args.add_argument("--zoo", help="built-in zoo entry")
    rep_args.add_argument("--rep", help="adjoint, coadjoint or a representation JSON file")

    parser = argparse.ArgumentParser(prog="jkinv", description="Jordan-Kronecker invariants of pencils and "
                                     "Lie algebra representations, in exact rational arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pencil", parents=[common], help="invariants of a pencil A + λB")
    p.add_argument("file", help='JSON file {"A": [[..]], "B": [[..]]}')
    p.set_defaults(func=cmd_pencil)

    rep = sub.add_parser("rep", help="representation analysis")
    rsub = rep.add_subparsers(dest="rep_command", required=True)
    ra = rsub.add_parser("analyze", parents=[common, rep_args], help="Jordan-Kronecker invariant")
    ra.set_defaults(func=cmd_rep_analyze)
    rs = rsub.add_parser("semiinvariant", parents=[common, rep_args], help="fundamental semi-invariant")
    rs.set_defaults(func=cmd_rep_semiinvariant)

    s = sub.add_parser("shifts", parents=[common, rep_args], help="argument shifts of invariants")
    s.add_argument("--invariants", help='JSON file {"polynomials": [..]}')
    s.add_argument("--a", help="shift origin, e.g. '1,0,-2/3' (default: a seeded regular point)")
    s.add_argument("--order", type=int, default=2, help="formal invariant truncation order (default 2)")
    s.set_defaults(func=cmd_shifts)

    z = sub.add_parser("zoo", parents=[common], help="built-in examples")
    z.add_argument("action", choices=("list", "show"))
    z.add_argument("name", nargs="?")
    z.set_defaults(func=cmd_zoo)

    c = sub.add_parser("check", parents=[common], help="run every self-check on the zoo")
    c.add_argument("--zoo", help="restrict to one entry, or 'list' to print the entries")
    c.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 1) is None:
        env = os.environ.get("JK_SEED")
        try:
            args.seed = _seed(env) if env else 1
        except argparse.ArgumentTypeError as exc:
            print(f"jkinv: JK_SEED: {exc}", file=sys.stderr)
            return EXIT_INPUT
    if getattr(args, "order", 0) < 0:
        print("jkinv: --order must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    if args.command in ("rep", "shifts", "check") and args.trials < 3:
        print("jkinv: --trials must be at least 3 for representation analysis", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"jkinv: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PencilError as exc:
        print(f"jkinv: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidAlgebra as exc:
        print(f"jkinv: {exc}", file=sys.stderr)
        emit("error", {"message": str(exc), "violation": exc.violation.to_json()}, args.format)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"jkinv: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
