"""Built-in examples, each given as a construction script."""
from __future__ import annotations

import re

from .engine import ConstructionScript, CutVertex, Explicit, Simplex
from .errors import QuadricsError
from .gale import Configuration

SQUARE = Configuration.of([[1], [1], [-1], [-1]])
CUBE = Configuration.of([[1, 0], [1, 0], [-1, 1], [-1, 1], [0, -1], [0, -1]])

EXAMPLE_NAMES = ("square", "cube", "truncated-cube", "pentagon", "simplex-d", "dual-stack-n", "prism")

_DESCRIPTIONS = {
    "square": "square, Z = S1 x S1",
    "cube": "3-cube, Z = S1 x S1 x S1",
    "truncated-cube": "cube with the vertex {1,3,5} cut",
    "pentagon": "square with the vertex {1,3} cut",
    "simplex-d": "d-simplex, e.g. simplex-3; Z = S^d",
    "dual-stack-n": "3-simplex with n vertex cuts, e.g. dual-stack-2 (dual-stack-n-dD for a d-simplex)",
    "prism": "triangle x interval, the 3-simplex with one vertex cut",
}


def describe() -> dict[str, str]:
    return dict(_DESCRIPTIONS)


def example_script(name: str) -> ConstructionScript:
    """Script for a catalog name; ``simplex-D`` and ``dual-stack-N[-dD]`` take parameters."""
    if name == "square":
        return ConstructionScript(Explicit(SQUARE))
    if name == "cube":
        return ConstructionScript(Explicit(CUBE))
    if name == "truncated-cube":
        return ConstructionScript(Explicit(CUBE), (CutVertex((1, 3, 5)),))
    if name == "pentagon":
        return ConstructionScript(Explicit(SQUARE), (CutVertex((1, 3)),))
    if name == "prism":
        return ConstructionScript(Simplex(3), (CutVertex(),))
    m = re.fullmatch(r"simplex-(\d+)", name)
    if m:
        return ConstructionScript(Simplex(int(m.group(1))))
    m = re.fullmatch(r"dual-stack-(\d+)(?:-d(\d+))?", name)
    if m:
        n, d = int(m.group(1)), int(m.group(2) or 3)
        return ConstructionScript(Simplex(d), (CutVertex(),) * n)
    raise QuadricsError(f"unknown example {name!r}; known: {', '.join(EXAMPLE_NAMES)}")
