"""Exact rational configurations and their polytope combinatorics.

A configuration is a list ``Lambda_1..Lambda_m`` of vectors in ``Q^k``.  The
associated polytope is ``{r >= 0 : sum Lambda_i r_i = 0, sum r_i = 1}`` of
dimension ``d = m - k - 1``; ``J`` is a face of its dual complex iff the origin
lies in the convex hull of the vectors indexed by the complement of ``J``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from ._lp import feasible_point, solve_square
from .combinatorics import PolytopeDual, SimplicialComplex, index_set, stellar_cut
from .errors import (
    Disconnected,
    EmptyManifold,
    InconsistentCut,
    InvalidFace,
    NotWeaklyHyperbolic,
    QuadricsError,
)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use integers, Fractions or 'p/q' strings")
    return Fraction(x)


@dataclass(frozen=True)
class Configuration:
    k: int
    vectors: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        vecs = tuple(tuple(_frac(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if self.k < 0:
            raise QuadricsError("k must be non-negative")
        for v in vecs:
            if len(v) != self.k:
                raise QuadricsError(f"vector {v} does not lie in Q^{self.k}")
        m, d = len(vecs), len(vecs) - self.k - 1
        if not m > d > 0:
            raise QuadricsError(f"need m > d > 0, got m={m}, d={d}")

    @classmethod
    def of(cls, vectors: Sequence[Sequence], k: int | None = None) -> "Configuration":
        if k is None:
            k = len(vectors[0]) if vectors else 0
        return cls(k, tuple(tuple(v) for v in vectors))

    @property
    def m(self) -> int:
        return len(self.vectors)

    @property
    def d(self) -> int:
        return self.m - self.k - 1

    def restrict(self, indices: Iterable[int]) -> list[tuple[Fraction, ...]]:
        return [self.vectors[i - 1] for i in indices]


def simplex_configuration(d: int) -> Configuration:
    """``k = 0`` configuration whose polytope is the ``d``-simplex."""
    return Configuration(0, tuple(() for _ in range(d + 1)))


def origin_in_hull(vectors: Sequence[Sequence], k: int | None = None) -> bool:
    """Exact test for ``0 in conv(vectors)``.

    With ``k = 0`` every non-empty list contains the origin in its hull.
    """
    vectors = list(vectors)
    if not vectors:
        return False
    if k is None:
        k = len(vectors[0])
    if k == 0:
        return True
    A = [[v[c] for v in vectors] for c in range(k)]
    A.append([1] * len(vectors))
    return feasible_point(A, [0] * k + [1]) is not None


def check_weak_hyperbolicity(config: Configuration) -> tuple[int, ...] | None:
    """``None`` when weakly hyperbolic, else a minimal violating index set.

    Subsets are scanned by size and then lexicographically, so the first hit
    has no violating proper subset.
    """
    return hyperbolicity_violation(config.vectors, config.k)


def hyperbolicity_violation(vectors: Sequence[Sequence], k: int) -> tuple[int, ...] | None:
    """Same scan on a bare vector list (no ``m > d > 0`` requirement)."""
    vectors = [tuple(_frac(x) for x in v) for v in vectors]
    for size in range(1, k + 1):
        for I in combinations(range(1, len(vectors) + 1), size):
            if origin_in_hull([vectors[i - 1] for i in I], k):
                return I
    return None


def is_face(config: Configuration, J: Iterable[int]) -> bool:
    """The face criterion, evaluated directly from the hull test."""
    J = set(index_set(J, config.m))
    rest = [i for i in range(1, config.m + 1) if i not in J]
    return origin_in_hull(config.restrict(rest), config.k)


def _vertex_solutions(config: Configuration):
    """Yield ``(sigma, r)`` for every vertex; ``r`` is supported off ``sigma``."""
    k, m = config.k, config.m
    for T in combinations(range(1, m + 1), k + 1):
        M = [[config.vectors[i - 1][c] for i in T] for c in range(k)]
        M.append([1] * (k + 1))
        lam = solve_square(M, [0] * k + [1])
        if lam is None or any(x <= 0 for x in lam):
            continue
        r = [Fraction(0)] * m
        for i, x in zip(T, lam):
            r[i - 1] = x
        sigma = tuple(i for i in range(1, m + 1) if i not in T)
        yield sigma, tuple(r)


@lru_cache(maxsize=512)
def combinatorics(config: Configuration) -> PolytopeDual:
    """Dual complex of the polytope of ``config`` (cached; configurations are immutable).

    Raises :class:`NotWeaklyHyperbolic`, :class:`EmptyManifold` or
    :class:`Disconnected` (some facet empty).
    """
    bad = check_weak_hyperbolicity(config)
    if bad is not None:
        raise NotWeaklyHyperbolic(bad)
    if not origin_in_hull(config.vectors, config.k):
        raise EmptyManifold("origin is not in the convex hull of the configuration")
    faces = [sigma for sigma, _ in _vertex_solutions(config)]
    present = {i for f in faces for i in f}
    missing = [i for i in range(1, config.m + 1) if i not in present]
    if missing:
        raise Disconnected(missing)
    return PolytopeDual(SimplicialComplex(config.m, tuple(faces)), config.d)


def vertices(config: Configuration) -> dict[tuple[int, ...], tuple[Fraction, ...]]:
    """Map each vertex (maximal face) to its point of ``Q^m``."""
    combinatorics(config)
    return dict(sorted(_vertex_solutions(config)))


def replication_blocks(J: Sequence[int]) -> list[tuple[int, ...]]:
    """New indices taken by each old index under replication by ``J``."""
    out = []
    start = 1
    for j in J:
        out.append(tuple(range(start, start + j)))
        start += j
    return out


def replicate(config: Configuration, J: Sequence[int]) -> Configuration:
    """Repeat ``Lambda_i`` ``J[i-1]`` times, blockwise in index order."""
    J = [int(j) for j in J]
    if len(J) != config.m or any(j < 1 for j in J):
        raise QuadricsError(f"replication vector must have {config.m} positive entries")
    vecs = tuple(v for v, j in zip(config.vectors, J) for _ in range(j))
    return Configuration(config.k, vecs)


def positive_row_combination(rows: Sequence[Sequence[Fraction]], base: Sequence[Fraction]):
    """Coefficients ``c`` with ``base + sum c_j rows_j`` strictly positive.

    Solved as the homogeneous feasibility problem ``y_0 base + sum y_j rows_j
    >= 1`` in free variables, then divided by ``y_0``; ``y_0 > 0`` is forced
    whenever the polytope cut out by ``rows`` and ``base = 1`` is bounded.
    Returns ``None`` if no such combination exists.
    """
    R = [list(base)] + [list(r) for r in rows]
    nr, n = len(R), len(base)
    # variables: y+ (nr), y- (nr), slack (n)
    A = []
    for i in range(n):
        row = [R[r][i] for r in range(nr)] + [-R[r][i] for r in range(nr)]
        slack = [0] * n
        slack[i] = -1
        A.append(row + slack)
    sol = feasible_point(A, [1] * n)
    if sol is None:
        return None
    y = [sol[r] - sol[nr + r] for r in range(nr)]
    if y[0] <= 0:
        return None
    return [yj / y[0] for yj in y[1:]]


def cut_face(config: Configuration, F: Iterable[int]) -> Configuration:
    return _cut_face(config, index_set(F, config.m))


@lru_cache(maxsize=256)
def _cut_face(config: Configuration, F: tuple[int, ...]) -> Configuration:
    """Configuration of the polytope with the face ``F`` truncated.

    The new facet is index ``m + 1`` and the result lives in ``Q^(k+1)``.  The
    cut is the half-space ``sum_{i in F} r_i >= eps`` with ``eps`` half the least
    positive value of that sum over the vertices.  The result is checked
    against :func:`quadrics.combinatorics.stellar_cut`.
    """
    P = combinatorics(config)
    if not P.complex.contains(F) or not F:
        raise InvalidFace(f"{list(F)} is not a face")
    if not 1 <= len(F) <= config.d:
        raise InvalidFace(f"face size must be in 1..{config.d}")
    expected = stellar_cut(P, F)

    verts = vertices(config)
    sums = [sum(r[i - 1] for i in F) for r in verts.values()]
    positive = [s for s in sums if s > 0]
    assert positive, "a proper face always misses some vertex"
    eps = min(positive) / 2

    k, m = config.k, config.m
    fset = set(F)
    # homogeneous rows over (r_1..r_m, r_new); the last one is the slack relation
    rows = [[config.vectors[i][c] for i in range(m)] + [Fraction(0)] for c in range(k)]
    rows.append([eps - 1 if i + 1 in fset else eps for i in range(m)] + [Fraction(1)])
    normal = [Fraction(1)] * m + [Fraction(0)]
    coeffs = positive_row_combination(rows, normal)
    if coeffs is None:
        raise InconsistentCut("no positive normalization for the cut polytope")
    w = [normal[i] + sum(c * row[i] for c, row in zip(coeffs, rows)) for i in range(m + 1)]
    new_vectors = tuple(tuple(row[i] / w[i] for row in rows) for i in range(m + 1))
    out = Configuration(k + 1, new_vectors)

    got = combinatorics(out)
    if set(got.maximal_faces) != set(expected.maximal_faces):
        raise InconsistentCut(
            f"cut of {list(F)} realized {got.maximal_faces}, expected {expected.maximal_faces}"
        )
    return out
