"""Command-line interface.

Every subcommand prints one JSON report (sorted keys, two-space indent) and
exits with 0 on success, 1 when the input is well formed but violates a
mathematical precondition, and 2 on parse or I/O errors.  Reports carry no
wall-clock data unless ``--timing`` is given, so identical inputs give
byte-identical output.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Any, Sequence

from . import alexander, engine, homology, rings
from .calculus import DOUBLE, OPEN_BOOK, NotReducible, complement_decomposition, normalize, poincare
from .catalog import EXAMPLE_NAMES, describe, example_script
from .combinatorics import PolytopeDual, connectivity_of_Z, replicate_complex, validate
from .errors import (
    DimensionMismatch,
    Disconnected,
    EmptyManifold,
    NotWeaklyHyperbolic,
    ParseError,
    QuadricsError,
)
from .files import (
    FormatError,
    complex_from_json,
    config_from_json,
    read_json,
    script_from_json,
    vectors_from_json,
)
from .gale import (
    Configuration,
    check_weak_hyperbolicity,
    combinatorics,
    hyperbolicity_violation,
    origin_in_hull,
    vertices,
)
from .grammar import parse, to_string
from .rewrite import expand

SCHEMA_VERSION = 1

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class _Input:
    """A resolved input: file contents or a catalog example."""

    def __init__(self, kind: str, value: Any, raw: bytes):
        self.kind = kind  # "configuration", "complex", "script" or "violation"
        self.value = value
        self.raw = raw

    @property
    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.raw).hexdigest()


def _load(args) -> _Input:
    if getattr(args, "example", None):
        return _Input("script", example_script(args.example), f"example:{args.example}".encode())
    if not args.input:
        raise FormatError("give an input file or --example NAME")
    obj, raw = read_json(args.input)
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    if "vectors" in obj:
        if getattr(args, "command", None) == "check":
            # weak hyperbolicity is reported before the dimension requirement
            k, rows = vectors_from_json(obj)
            violation = hyperbolicity_violation(rows, k)
            if violation:
                return _Input("violation", (k, rows, violation), raw)
        return _Input("configuration", config_from_json(obj), raw)
    if "maximal_faces" in obj:
        return _Input("complex", complex_from_json(obj), raw)
    if "seed" in obj or "example" in obj:
        return _Input("script", script_from_json(obj), raw)
    raise FormatError("input is neither a configuration, a complex nor a script")


def _config_of(inp: _Input) -> Configuration:
    if inp.kind == "configuration":
        return inp.value
    if inp.kind == "script":
        return engine.run_script(inp.value)[0]
    raise FormatError("this command needs a configuration (or a script), not a complex")


def _dual_of(inp: _Input) -> PolytopeDual:
    if inp.kind == "complex":
        return inp.value
    if inp.kind == "script":
        return engine.run_script(inp.value)[1]
    return combinatorics(inp.value)


# ---- subcommands; each returns (result, verdicts, exit code) ------------------

def cmd_check(args, inp: _Input):
    if inp.kind == "violation":
        k, rows, violation = inp.value
        result = {"m": len(rows), "k": k, "d": len(rows) - k - 1, "weakly_hyperbolic": False,
                  "violation": list(violation), "origin_in_hull": origin_in_hull(rows, k)}
        return result, {"check": "violation"}, EXIT_VIOLATION
    config = _config_of(inp)
    violation = check_weak_hyperbolicity(config)
    nonempty = origin_in_hull(config.vectors, config.k)
    result = {
        "m": config.m, "k": config.k, "d": config.d,
        "weakly_hyperbolic": violation is None,
        "violation": list(violation) if violation else None,
        "origin_in_hull": nonempty,
    }
    ok = violation is None and nonempty
    return result, {"check": "ok" if ok else "violation"}, EXIT_OK if ok else EXIT_VIOLATION


def cmd_faces(args, inp: _Input):
    P = _dual_of(inp)
    K = P.complex
    report = validate(P)
    result = {
        "m": P.m, "d": P.d,
        "maximal_faces": [list(f) for f in K.maximal_faces],
        "f_vector": K.f_vector(),
        "minimal_nonfaces": [list(f) for f in K.minimal_nonfaces()],
        "connectivity_of_Z": connectivity_of_Z(P),
        "violations": list(report.violations),
    }
    if inp.kind != "complex" and args.vertices:
        config = _config_of(inp)
        result["vertices"] = {",".join(map(str, s)): [str(x) for x in r] for s, r in sorted(vertices(config).items())}
    return result, {"valid": report.ok}, EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_homology(args, inp: _Input):
    if args.complex:
        if inp.kind == "complex":
            P = replicate_complex(inp.value, [2] * inp.value.m)
            H = homology.z_homology(P, cap=args.cap, keep_ledger=args.ledger)
        else:
            H = homology.zc_homology(_config_of(inp), cap=args.cap, keep_ledger=args.ledger)
    else:
        H = homology.z_homology(_dual_of(inp), cap=args.cap, keep_ledger=args.ledger)
    result = {"route": "complex" if args.complex else "real", "homology": H.to_json()}
    if args.ledger:
        result["ledger"] = homology.ledger_to_json(H)
    return result, {"torsion_free": homology.is_torsion_free(H)}, EXIT_OK


def _decomposition_json(res: engine.DecompositionResult) -> dict:
    out = {"dim": res.dim, "determined": res.determined, "hypotheses_used": list(res.hypotheses_used)}
    if res.determined:
        out["expression"] = to_string(res.expr)
        nf = normalize(res.expr)
        out["normal_form"] = str(nf) if not isinstance(nf, NotReducible) else None
        out["poincare"] = list(poincare(res.expr))
    else:
        out["undetermined"] = res.expr.reason
        out["blocked"] = res.expr.blocked
        out["betti"] = list(res.betti) if res.betti else None
    return out


def cmd_decompose(args, inp: _Input):
    if inp.kind != "script":
        raise FormatError("decompose needs a construction script")
    s = inp.value
    mode = "complex" if args.complex else "real"
    res = engine.decompose_complex(s) if args.complex else engine.decompose_real(s)
    result = {"mode": mode, "decomposition": _decomposition_json(res)}
    verdicts = {"determined": res.determined}
    if args.validate:
        cv = engine.cross_validate(s, mode)
        result["cross_validation"] = {
            "verdict": cv.verdict,
            "predicted": list(cv.predicted) if cv.predicted else None,
            "computed": list(cv.computed),
            "torsion_free": cv.torsion_free,
            "mismatched_degrees": list(cv.mismatched_degrees),
        }
        verdicts["cross_validation"] = cv.verdict
        if cv.verdict == "FAIL":
            return result, verdicts, EXIT_VIOLATION
    return result, verdicts, EXIT_OK


def cmd_calc(args, _inp):
    e = parse(args.expr)
    nf = normalize(e)
    result = {
        "input": to_string(e),
        "dim": e.dim,
        "expanded": to_string(expand(e)),
        "poincare": list(poincare(e)),
    }
    if isinstance(nf, NotReducible):
        result["normal_form"] = None
        result["not_reducible"] = nf.reason
    else:
        result["normal_form"] = str(nf)
    return result, {"reducible": not isinstance(nf, NotReducible)}, EXIT_OK


def cmd_rings(args, _inp):
    if args.action == "show":
        out = {}
        for name in args.names:
            R = rings.catalog_ring(name)
            out[name] = {
                "betti": list(R.betti()),
                "associative": R.check_associative(),
                "duality": R.check_duality(),
                "table": R.table_text().splitlines(),
            }
        return out, {}, EXIT_OK
    if len(args.names) != 2:
        raise FormatError("rings compare takes exactly two ring names")
    a, b = args.names
    cmp = rings.not_isomorphic_ungraded(rings.catalog_ring(a), rings.catalog_ring(b))
    result = {"left": a, "right": b, "verdict": cmp.verdict, "invariant": cmp.invariant,
              "left_invariants": cmp.left, "right_invariants": cmp.right}
    return result, {"verdict": cmp.verdict}, EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise FormatError(f"expected a comma-separated list of integers, got {text!r}") from None


def cmd_appendix(args, _inp):
    if args.part != "a2":
        raise FormatError(f"unknown appendix part {args.part!r}")
    spec = alexander.ProductSpec.parse(args.spec)
    result: dict = {"n_list": list(spec.n_list), "q": spec.q, "n": spec.n}
    ok = True
    if args.J:
        J = _int_list(args.J)
        dims = alexander.dual_sphere_dims(spec, J)
        result["dual_sphere"] = {"dim": dims[0], "codim": dims[1]}
        result["disjointness"] = alexander.verify_disjointness(spec, J)
        ok &= result["disjointness"]["disjoint"]
        result["pairing"] = alexander.verify_dual_pairing(spec, J)
        ok &= result["pairing"]["unique_point"] and result["pairing"]["transversal"]
        if args.L:
            result["offdiagonal"] = alexander.verify_offdiagonal(spec, J, _int_list(args.L))
            ok &= result["offdiagonal"]["disjoint"]
    for which in (DOUBLE, OPEN_BOOK):
        try:
            result[f"complement_{which}"] = to_string(complement_decomposition(spec.n_list, spec.q, which))
        except QuadricsError as exc:
            result[f"complement_{which}"] = None
            result[f"complement_{which}_reason"] = str(exc)
    return result, {"verified": bool(ok)}, EXIT_OK if ok else EXIT_VIOLATION


# ---- driver --------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadrics", description="Exact computations for intersections of quadrics.")
    p.add_argument("--examples", action="store_true", help="list the built-in example catalog and exit")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = p.add_subparsers(dest="command")

    def with_input(sp):
        sp.add_argument("input", nargs="?", help="JSON file (configuration, complex or script)")
        sp.add_argument("--example", help="use a built-in example instead of a file")
        return sp

    with_input(sub.add_parser("check", help="weak hyperbolicity and non-emptiness"))
    sp = with_input(sub.add_parser("faces", help="dual complex of the quotient polytope"))
    sp.add_argument("--vertices", action="store_true", help="include vertex coordinates")
    sp = with_input(sub.add_parser("homology", help="integral homology of Z or of Z^C"))
    sp.add_argument("--complex", action="store_true", help="moment-angle manifold (every vector doubled)")
    sp.add_argument("--ledger", action="store_true", help="list the contribution of every subset")
    sp.add_argument("--cap", type=int, default=homology.DEFAULT_CAP, help="largest ground set to enumerate")
    sp = with_input(sub.add_parser("decompose", help="symbolic decomposition of a construction script"))
    sp.add_argument("--complex", action="store_true", help="decompose the moment-angle manifold")
    sp.add_argument("--validate", action="store_true", help="cross-check Betti numbers against homology")
    sp = sub.add_parser("calc", help="normalize a manifold expression")
    sp.add_argument("expr")
    sp = sub.add_parser("rings", help="Z2 cohomology rings from the catalog")
    sp.add_argument("action", choices=("compare", "show"))
    sp.add_argument("names", nargs="+")
    sp = sub.add_parser("appendix", help="checks for spheres dual to a product of spheres")
    sp.add_argument("part", help="a2")
    sp.add_argument("--spec", required=True, help="n_1,...,n_k:q, e.g. 1,1,2:3")
    sp.add_argument("--J", help="comma-separated index set")
    sp.add_argument("--L", help="second index set for the off-diagonal check")
    return p


COMMANDS = {
    "check": cmd_check,
    "faces": cmd_faces,
    "homology": cmd_homology,
    "decompose": cmd_decompose,
    "calc": cmd_calc,
    "rings": cmd_rings,
    "appendix": cmd_appendix,
}

_VIOLATIONS = (NotWeaklyHyperbolic, EmptyManifold, Disconnected, DimensionMismatch)


def _emit(report: dict, stream) -> None:
    stream.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def run(argv: Sequence[str], stream=None) -> int:
    stream = stream or sys.stdout
    argv = list(argv)
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.examples:
        _emit({"schema_version": SCHEMA_VERSION, "examples": describe(), "names": list(EXAMPLE_NAMES)}, stream)
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    report: dict = {"schema_version": SCHEMA_VERSION, "command": [a for a in argv if a != "--timing"]}
    t0 = time.perf_counter()
    try:
        if args.command in ("calc", "rings", "appendix"):
            inp = None
            payload = args.expr if args.command == "calc" else " ".join(argv)
            report["input_digest"] = "sha256:" + hashlib.sha256(payload.encode()).hexdigest()
        else:
            inp = _load(args)
            report["input_digest"] = inp.digest
            report["input_kind"] = inp.kind
        result, verdicts, code = COMMANDS[args.command](args, inp)
        report["result"] = result
        report["verdicts"] = verdicts
    except (ParseError, FormatError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
    except _VIOLATIONS as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_VIOLATION
    except QuadricsError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_VIOLATION
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    report["exit_code"] = code
    _emit(report, stream)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
