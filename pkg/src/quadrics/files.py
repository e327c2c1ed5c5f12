"""JSON formats for configurations, complexes and construction scripts.

Rationals are written as strings (``"3/4"``) or integers; indices are
1-based.  Formats::

    configuration  {"k": 2, "vectors": [["1", "0"], ["-1", "1/2"], ...]}
    complex        {"m": 4, "d": 2, "maximal_faces": [[1, 3], [1, 4], ...]}
    script         {"seed": SEED, "steps": [STEP, ...]}

    SEED  {"simplex": 3} | {"polygon": 5} | {"config": CONFIGURATION}
          | {"example": "cube"}
    STEP  {"cut_vertex": [1, 3, 5]} | {"cut_vertex": "any"} | "cut_vertex"
          (likewise cut_vertex_prime, cut_edge, cut_edge_prime)
          | {"replicate": [2, 2, 1, 1]}
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .combinatorics import PolytopeDual
from .engine import (
    ANY,
    ConstructionScript,
    CutEdge,
    CutEdgePrime,
    CutVertex,
    CutVertexPrime,
    Explicit,
    Polygon,
    Replicate,
    Simplex,
)
from .errors import ParseError, QuadricsError
from .gale import Configuration

STEP_NAMES = {
    "cut_vertex": CutVertex,
    "cut_vertex_prime": CutVertexPrime,
    "cut_edge": CutEdge,
    "cut_edge_prime": CutEdgePrime,
}


class FormatError(QuadricsError):
    """Structurally invalid input file (exit code 2 on the command line)."""


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"bad rational {x!r}: use an integer or a 'p/q' string")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad rational {x!r}") from None
    raise FormatError(f"bad rational {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.pos, exc.msg) from None


def read_json(path: Union[str, Path]) -> tuple[Any, bytes]:
    """Parsed content and raw bytes (the latter for digests)."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise FormatError(f"{path} is not UTF-8") from None
    return loads(text), raw


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing key {key!r}")
    v = obj[key]
    if not isinstance(v, kind) or isinstance(v, bool):
        raise FormatError(f"key {key!r} has the wrong type")
    return v


def vectors_from_json(obj: Any) -> tuple[int, list[tuple[Fraction, ...]]]:
    """``k`` and the vector list, checked for shape only."""
    vectors = _require(obj, "vectors", list)
    rows = []
    for v in vectors:
        if not isinstance(v, list):
            raise FormatError("each vector must be a list")
        rows.append(tuple(parse_rational(x) for x in v))
    k = obj.get("k", len(rows[0]) if rows else 0)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise FormatError("k must be a non-negative integer")
    if any(len(r) != k for r in rows):
        raise FormatError(f"every vector must have {k} entries")
    return k, rows


def config_from_json(obj: Any) -> Configuration:
    k, rows = vectors_from_json(obj)
    try:
        return Configuration(k, tuple(rows))
    except QuadricsError as exc:
        raise FormatError(str(exc)) from None


def config_to_json(config: Configuration) -> dict:
    return {"k": config.k, "vectors": [[format_rational(x) for x in v] for v in config.vectors]}


def complex_from_json(obj: Any) -> PolytopeDual:
    m = _require(obj, "m", int)
    faces = _require(obj, "maximal_faces", list)
    for f in faces:
        if not isinstance(f, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in f):
            raise FormatError("faces must be lists of integers")
        if any(i < 1 or i > m for i in f):
            raise FormatError(f"face {f} leaves the ground set 1..{m}")
    d = obj.get("d")
    if d is None:
        d = max((len(f) for f in faces), default=0)
    if not isinstance(d, int):
        raise FormatError("d must be an integer")
    return PolytopeDual.from_faces(m, d, faces)


def complex_to_json(P: PolytopeDual) -> dict:
    return {"m": P.m, "d": P.d, "maximal_faces": [list(f) for f in P.maximal_faces]}


def _seed_from_json(obj: Any):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise FormatError("seed must be an object with exactly one key")
    (key, val), = obj.items()
    if key in ("simplex", "polygon"):
        if not isinstance(val, int) or isinstance(val, bool):
            raise FormatError(f"{key} seed takes an integer")
        try:
            return Simplex(val) if key == "simplex" else Polygon(val)
        except QuadricsError as exc:
            raise FormatError(str(exc)) from None
    if key in ("config", "configuration"):
        return Explicit(config_from_json(val))
    if key == "example":
        from .catalog import example_script
        s = example_script(val)
        if s.steps:
            raise FormatError(f"example {val!r} is not a seed; use it as a whole script")
        return s.seed
    raise FormatError(f"unknown seed kind {key!r}")


def _step_from_json(obj: Any):
    if isinstance(obj, str):
        obj = {obj: ANY}
    if not isinstance(obj, dict) or len(obj) != 1:
        raise FormatError("step must be a name or an object with exactly one key")
    (key, val), = obj.items()
    if key == "replicate":
        if not isinstance(val, list):
            raise FormatError("replicate takes a list of positive integers")
        return Replicate(tuple(val))
    if key not in STEP_NAMES:
        raise FormatError(f"unknown step {key!r}")
    if val != ANY and not isinstance(val, list):
        raise FormatError(f"{key} takes a list of facet indices or {ANY!r}")
    return STEP_NAMES[key](val if val == ANY else tuple(val))


def script_from_json(obj: Any) -> ConstructionScript:
    if isinstance(obj, dict) and "example" in obj and "seed" not in obj:
        from .catalog import example_script
        base = example_script(obj["example"])
        extra = tuple(_step_from_json(s) for s in obj.get("steps", []))
        return base.then(*extra)
    seed = _seed_from_json(_require(obj, "seed", dict))
    steps = obj.get("steps", [])
    if not isinstance(steps, list):
        raise FormatError("steps must be a list")
    return ConstructionScript(seed, tuple(_step_from_json(s) for s in steps))


def _step_to_json(step) -> Any:
    if isinstance(step, Replicate):
        return {"replicate": list(step.J)}
    name = next(k for k, v in STEP_NAMES.items() if isinstance(step, v))
    return {name: step.face if step.face == ANY else list(step.face)}


def script_to_json(s: ConstructionScript) -> dict:
    seed = s.seed
    if isinstance(seed, Simplex):
        sj = {"simplex": seed.d}
    elif isinstance(seed, Polygon):
        sj = {"polygon": seed.m}
    else:
        sj = {"config": config_to_json(seed.config)}
    return {"seed": sj, "steps": [_step_to_json(st) for st in s.steps]}


def read_configuration(path) -> tuple[Configuration, bytes]:
    obj, raw = read_json(path)
    return config_from_json(obj), raw


def read_script(path) -> tuple[ConstructionScript, bytes]:
    obj, raw = read_json(path)
    return script_from_json(obj), raw
