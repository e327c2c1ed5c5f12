"""Construction scripts and the decomposition engine.

A script is a seed polytope followed by cuts and replications.  The engine
walks it twice in parallel: once on configurations (to get the actual
polytope) and once symbolically, applying the known decomposition rule for
each step when its hypotheses hold.  Whenever they do not, the symbolic side
becomes :class:`Undetermined` and records which hypothesis failed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from .calculus import (
    ConnSum,
    Gyr,
    ManifoldExpr,
    NormalForm,
    Prod,
    Sphere,
    conn_sum,
    double_punctured,
    normalize,
    open_book_punctured,
    poincare,
    repeat,
    sphere_product,
)
from .combinatorics import PolytopeDual, connectivity_of_Z, is_dual_c_neighborly, simplex_blocks
from .errors import InvalidStep, QuadricsError
from .gale import Configuration, combinatorics, cut_face, replicate, simplex_configuration
from .homology import GradedHomology, is_torsion_free, z_homology, zc_homology


# ------------------------------------------------------------------ scripts

@dataclass(frozen=True)
class Simplex:
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise QuadricsError("Simplex seed needs d >= 1")


@dataclass(frozen=True)
class Polygon:
    m: int

    def __post_init__(self):
        if self.m < 3:
            raise QuadricsError("Polygon seed needs m >= 3")


@dataclass(frozen=True)
class Explicit:
    config: Configuration


ANY = "any"


def _check_face(step):
    if step.face != ANY:
        if isinstance(step.face, str):
            raise QuadricsError(f"face must be a list of indices or {ANY!r}")
        object.__setattr__(step, "face", tuple(sorted(int(x) for x in step.face)))


@dataclass(frozen=True)
class CutVertex:
    face: Union[tuple, str] = ANY

    def __post_init__(self):
        _check_face(self)


@dataclass(frozen=True)
class CutVertexPrime:
    face: Union[tuple, str] = ANY

    def __post_init__(self):
        _check_face(self)


@dataclass(frozen=True)
class CutEdge:
    face: Union[tuple, str] = ANY

    def __post_init__(self):
        _check_face(self)


@dataclass(frozen=True)
class CutEdgePrime:
    face: Union[tuple, str] = ANY

    def __post_init__(self):
        _check_face(self)


@dataclass(frozen=True)
class Replicate:
    J: tuple

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(int(j) for j in self.J))
        if any(j < 1 for j in self.J):
            raise QuadricsError("replication entries must be positive")


Seed = Union[Simplex, Polygon, Explicit]
Step = Union[CutVertex, CutVertexPrime, CutEdge, CutEdgePrime, Replicate]
VERTEX_STEPS = (CutVertex, CutVertexPrime)
EDGE_STEPS = (CutEdge, CutEdgePrime)
PRIME_STEPS = (CutVertexPrime, CutEdgePrime)


@dataclass(frozen=True)
class ConstructionScript:
    seed: Seed
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def then(self, *steps: Step) -> "ConstructionScript":
        return ConstructionScript(self.seed, self.steps + tuple(steps))


@dataclass(frozen=True)
class Stage:
    """State after the seed (``step is None``) or after one step."""

    step: object
    config: Configuration
    dual: PolytopeDual


def _resolve_face(P: PolytopeDual, step) -> tuple[int, ...]:
    face = step.face
    if isinstance(step, VERTEX_STEPS):
        if face == ANY:
            return P.maximal_faces[0]
        face = tuple(sorted(face))
        if face not in P.maximal_faces:
            raise QuadricsError(f"{list(face)} is not a vertex")
        return face
    # edges: faces of size d-1 whose link is two vertices
    if face == ANY:
        cands = sorted({tuple(x for x in sigma if x != v)
                        for sigma in P.maximal_faces for v in sigma})
        for tau in cands:
            if _edge_link(P, tau) is not None:
                return tau
        raise QuadricsError("polytope has no edge")
    face = tuple(sorted(face))
    if len(face) != P.d - 1 or _edge_link(P, face) is None:
        raise QuadricsError(f"{list(face)} is not an edge")
    return face


def _edge_link(P: PolytopeDual, tau) -> tuple[int, int] | None:
    s = set(tau)
    ends = [next(iter(set(sig) - s)) for sig in P.maximal_faces if s <= set(sig)]
    return tuple(sorted(ends)) if len(ends) == 2 else None


def _seed_config(seed: Seed) -> Configuration:
    if isinstance(seed, Simplex):
        return simplex_configuration(seed.d)
    if isinstance(seed, Polygon):
        config = simplex_configuration(2)
        for _ in range(seed.m - 3):
            config = cut_face(config, combinatorics(config).maximal_faces[0])
        return config
    if isinstance(seed, Explicit):
        return seed.config
    raise TypeError(f"unknown seed {seed!r}")


@lru_cache(maxsize=128)
def walk(s: ConstructionScript) -> tuple[Stage, ...]:
    """Configurations and duals after the seed and after every step."""
    config = _seed_config(s.seed)
    stages = [Stage(None, config, combinatorics(config))]
    for i, step in enumerate(s.steps, start=1):
        P = stages[-1].dual
        try:
            if isinstance(step, Replicate):
                if len(step.J) != P.m:
                    raise QuadricsError(f"replication vector has {len(step.J)} entries, polytope has {P.m} facets")
                config = replicate(config, step.J)
            else:
                config = cut_face(config, _resolve_face(P, step))
                if isinstance(step, PRIME_STEPS):
                    config = replicate(config, [1] * P.m + [2])
            stages.append(Stage(step, config, combinatorics(config)))
        except InvalidStep:
            raise
        except QuadricsError as exc:
            raise InvalidStep(i, str(exc)) from exc
    return tuple(stages)


def run_script(s: ConstructionScript) -> tuple[Configuration, PolytopeDual]:
    last = walk(s)[-1]
    return last.config, last.dual


# ----------------------------------------------------------------- results

@dataclass(frozen=True)
class Undetermined:
    reason: str
    blocked: str = ""

    def __str__(self):
        return f"Undetermined({self.reason})"


@dataclass(frozen=True)
class DecompositionResult:
    expr: Union[ManifoldExpr, Undetermined]
    hypotheses_used: tuple[str, ...]
    dim: int
    betti: tuple[int, ...] | None = None

    def __post_init__(self):
        # first use of each tag, in order
        object.__setattr__(self, "hypotheses_used", tuple(dict.fromkeys(self.hypotheses_used)))

    @property
    def determined(self) -> bool:
        return not isinstance(self.expr, Undetermined)


def summands_from_betti(H: GradedHomology, d: int) -> ManifoldExpr | None:
    """Connected sum of two-sphere products with the Betti numbers of ``H``.

    Only meaningful once a theorem has certified that the manifold is such a
    sum; returns ``None`` when the numbers cannot come from one.
    """
    b = H.ranks(d + 1)
    if not is_torsion_free(H) or b[0] != 1 or b[d] != 1 or (d >= 2 and b[1] != 0):
        return None
    if any(b[i] != b[d - i] for i in range(d + 1)):
        return None
    parts: list[ManifoldExpr | None] = []
    for p in range(2, d):
        if 2 * p < d:
            parts.append(repeat(Prod(Sphere(p), Sphere(d - p)), b[p]))
    if d % 2 == 0 and d >= 4:
        if b[d // 2] % 2:
            return None
        parts.append(repeat(Prod(Sphere(d // 2), Sphere(d // 2)), b[d // 2] // 2))
    parts = [x for x in parts if x is not None]
    if not parts:
        return Sphere(d)
    return conn_sum(*parts)


def _product_of_simplices(P: PolytopeDual) -> ManifoldExpr | None:
    blocks = simplex_blocks(P.complex)
    if blocks is None:
        return None
    return sphere_product(*(len(b) - 1 for b in blocks))


class _Walker:
    """Symbolic state carried along a script on the real side."""

    def __init__(self):
        self.expr: ManifoldExpr | None = None
        self.why: Undetermined | None = None
        self.pending: str | None = None
        self.tags: list[str] = []

    def known(self, expr: ManifoldExpr, tag: str):
        self.expr, self.why, self.pending = expr, None, None
        self.tags.append(tag)

    def unknown(self, reason: str, blocked: str, pending: str | None = None):
        self.expr, self.why, self.pending = None, Undetermined(reason, blocked), pending


def _seed(w: _Walker, seed: Seed, P: PolytopeDual):
    d = P.d
    if isinstance(seed, Simplex):
        w.known(Sphere(d), "simplex-seed")
        return
    if isinstance(seed, Polygon):
        w.unknown("polygon base: Betti only", "polygon-replication", pending="c1")
        return
    prod = _product_of_simplices(P)
    if prod is not None:
        w.known(prod, "product-of-simplices")
        return
    c = connectivity_of_Z(P)
    if d % 2 == 0:
        half = d // 2
        if c >= half:
            if half >= 3:
                H = z_homology(P)
                e = summands_from_betti(H, d)
                if e is not None:
                    w.known(e, "even-dual-neighborly")
                else:
                    w.unknown("Betti numbers do not fit a sum of sphere products", "even-dual-neighborly")
                return
            if half == 2:
                w.unknown("dimension 4 with c=2: only replicas of dimension >= 5 are certified",
                          "even-dual-neighborly", pending="c2")
                return
            w.unknown("c=1 seed: only simply connected replicas of dimension >= 5 are certified",
                      "polygon-replication", pending="c1")
            return
    else:
        half = (d - 1) // 2
        if half >= 2 and c >= half:
            H = z_homology(P)
            if not is_torsion_free(H):
                w.unknown("homology has torsion", "odd-torsion-free")
                return
            if half % 2 == 1 or half in (2, 6):
                e = summands_from_betti(H, d)
                if e is not None:
                    w.known(e, "odd-torsion-free")
                    return
                w.unknown("Betti numbers do not fit a sum of sphere products", "odd-torsion-free")
                return
            w.unknown("stably trivial bundles possible", "odd-torsion-free", pending="bundle")
            return
    w.unknown("no decomposition rule applies to this seed", "seed")


def _cut(w: _Walker, step, P: PolytopeDual):
    m, d = P.m, P.d
    if isinstance(step, VERTEX_STEPS):
        if w.expr is None:
            w.unknown(f"vertex cut of an undetermined manifold ({w.why.reason})", "vertex-cut")
            return
        k = 2 ** (m - d)
        if isinstance(step, CutVertex):
            w.known(double_punctured(w.expr, k), "vertex-cut-double")
        else:
            w.known(open_book_punctured(w.expr, k), "vertex-cut-open-book")
        return
    prime = isinstance(step, CutEdgePrime)
    tag = "edge-cut-open-book" if prime else "edge-cut-double"
    if d < 3 or not is_dual_c_neighborly(P, 2):
        w.unknown("edge cut needs a 1-connected Z (dual 2-neighborly polytope)", tag)
        return
    if w.expr is None:
        w.unknown(f"edge cut of an undetermined manifold ({w.why.reason})", tag)
        return
    h = 2 ** (m - d - 1)
    if prime:
        w.known(conn_sum(Gyr(w.expr), repeat(Prod(Sphere(3), Sphere(d - 2)), h),
                         repeat(Prod(Sphere(2), Sphere(d - 1)), h - 1)), tag)
    else:
        w.known(conn_sum(w.expr, w.expr, repeat(Prod(Sphere(2), Sphere(d - 2)), h),
                         repeat(Prod(Sphere(1), Sphere(d - 1)), h - 1)), tag)


def _replicate(w: _Walker, step: Replicate, before: PolytopeDual, after: PolytopeDual):
    if all(j == 1 for j in step.J):
        return
    prod = _product_of_simplices(after)
    if prod is not None:
        w.known(prod, "product-of-simplices")
        return
    d = after.d
    if w.expr is not None:
        ok = (isinstance(normalize(w.expr), NormalForm) and before.d >= 5
              and is_dual_c_neighborly(before, 2))
        tag, pending_ok = "replication-preserves-sums", ok
        reason = "replication needs a simply connected sum of sphere products of dimension >= 5"
    elif w.pending == "c2":
        tag, pending_ok = "even-dual-neighborly", d >= 5
        reason = "replica of a c=2 seed has dimension < 5"
    elif w.pending == "c1":
        tag = "polygon-replication"
        pending_ok = d >= 5 and is_dual_c_neighborly(after, 2)
        reason = "replica of a c=1 seed is not simply connected of dimension >= 5"
    elif w.pending == "bundle":
        tag, pending_ok = "odd-torsion-free", True
        reason = ""
    else:
        w.unknown(f"replication of an undetermined manifold ({w.why.reason})", "replication")
        return
    if not pending_ok:
        w.unknown(reason, tag, pending=w.pending if w.expr is None else None)
        return
    e = summands_from_betti(z_homology(after), d)
    if e is None:
        w.unknown("Betti numbers do not fit a sum of sphere products", tag)
        return
    w.known(e, tag)


def decompose_real(s: ConstructionScript) -> DecompositionResult:
    """Symbolic decomposition of ``Z`` for the final polytope of ``s``."""
    stages = walk(s)
    w = _Walker()
    _seed(w, s.seed, stages[0].dual)
    for prev, cur in zip(stages, stages[1:]):
        if isinstance(cur.step, Replicate):
            _replicate(w, cur.step, prev.dual, cur.dual)
        else:
            _cut(w, cur.step, prev.dual)
    final = stages[-1].dual
    if w.expr is None:
        betti = z_homology(final).ranks(final.d + 1) if final.m <= 20 else None
        return DecompositionResult(w.why, tuple(w.tags), final.d, betti)
    assert w.expr.dim == final.d, (w.expr, final.d)
    return DecompositionResult(w.expr, tuple(w.tags), final.d)


def moment_angle_vertex_cut(E: ManifoldExpr, m: int, d: int) -> ManifoldExpr:
    """``G(E) # sum_j C(m-d, j) (S^(j+2) x S^(d+m-j-1))`` for a cut of an ``m``-facet ``d``-polytope."""
    parts = [Gyr(E)]
    for j in range(1, m - d + 1):
        parts.append(repeat(Prod(Sphere(j + 2), Sphere(d + m - j - 1)), comb(m - d, j)))
    return conn_sum(*parts)


def decompose_complex(s: ConstructionScript) -> DecompositionResult:
    """Symbolic decomposition of the moment-angle manifold of the final polytope."""
    stages = walk(s)
    final = stages[-1].dual
    dim = final.m + final.d
    if s.steps and isinstance(s.steps[-1], CutVertex):
        before = stages[-2].dual
        if before.m < 3 * before.d:
            inner = decompose_complex(ConstructionScript(s.seed, s.steps[:-1]))
            if inner.determined:
                e = moment_angle_vertex_cut(inner.expr, before.m, before.d)
                return DecompositionResult(e, inner.hypotheses_used + ("moment-angle-vertex-cut",), dim)
    doubled = decompose_real(s.then(Replicate((2,) * final.m)))
    if doubled.determined:
        return DecompositionResult(doubled.expr, doubled.hypotheses_used, dim)
    return DecompositionResult(doubled.expr, doubled.hypotheses_used, dim, doubled.betti)


# --------------------------------------------------------- cross-validation

@dataclass(frozen=True)
class CrossValidation:
    verdict: str
    predicted: tuple[int, ...] | None
    computed: tuple[int, ...]
    torsion_free: bool
    mismatched_degrees: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def compare_with_homology(expr, H: GradedHomology, dim: int) -> CrossValidation:
    computed = H.ranks(dim + 1)
    tf = is_torsion_free(H)
    if isinstance(expr, Undetermined) or expr is None:
        return CrossValidation("SKIPPED", None, computed, tf)
    predicted = tuple(poincare(expr))
    bad = tuple(i for i in range(max(len(predicted), len(computed)))
                if (predicted[i] if i < len(predicted) else 0) != (computed[i] if i < len(computed) else 0))
    ok = not bad and tf
    return CrossValidation("PASS" if ok else "FAIL", predicted, computed, tf, bad)


def cross_validate(s: ConstructionScript, mode: str = "real") -> CrossValidation:
    if mode not in ("real", "complex"):
        raise QuadricsError(f"mode must be 'real' or 'complex', not {mode!r}")
    config, P = run_script(s)
    if mode == "real":
        result = decompose_real(s)
        H = z_homology(P)
    else:
        result = decompose_complex(s)
        H = zc_homology(config)
    return compare_with_homology(result.expr, H, result.dim)


def drop_one_summand(expr: ManifoldExpr) -> ManifoldExpr:
    """Negative control: remove the last top-level summand of a connected sum."""
    if not isinstance(expr, ConnSum):
        raise QuadricsError("not a connected sum")
    kids = list(expr.children)
    last = kids.pop()
    if isinstance(last, ConnSum):
        kids.append(repeat(last.children[0], len(last.children) - 1))
    return conn_sum(*[k for k in kids if k is not None])
