"""Simplicial complexes on facet indices and the combinatorial face cuts.

A simple polytope ``P`` with facets ``F_1..F_m`` is stored through its dual
complex ``K``: a set ``J`` of indices is a face of ``K`` iff the facets
``F_i, i in J`` have a common point.  Vertices of ``P`` are the maximal faces
of ``K``.  Indices are 1-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidFace, QuadricsError


def index_set(elements: Iterable[int], m: int | None = None) -> tuple[int, ...]:
    """Sorted duplicate-free tuple; checks the range ``1..m`` when ``m`` is given."""
    out = tuple(sorted(set(int(e) for e in elements)))
    if m is not None and out and (out[0] < 1 or out[-1] > m):
        raise InvalidFace(f"index set {list(out)} not contained in 1..{m}")
    return out


def to_mask(face: Iterable[int]) -> int:
    mask = 0
    for i in face:
        mask |= 1 << (i - 1)
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def submasks(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def _maximal_only(faces: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    masks = sorted({to_mask(f) for f in faces}, key=lambda x: -bin(x).count("1"))
    kept: list[int] = []
    for fm in masks:
        if not any(fm & k == fm for k in kept):
            kept.append(fm)
    return tuple(sorted(from_mask(k) for k in kept if k))


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on the ground set ``1..m`` given by its maximal faces.

    The constructor only canonicalizes the listing (each face sorted, the list
    sorted lexicographically); it does not drop non-maximal entries, so that
    :func:`validate` can report them.  Use :meth:`from_faces` to reduce an
    arbitrary generating list.
    """

    m: int
    maximal_faces: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        faces = tuple(sorted(tuple(sorted(int(v) for v in f)) for f in self.maximal_faces))
        object.__setattr__(self, "maximal_faces", faces)

    @classmethod
    def from_faces(cls, m: int, faces: Iterable[Sequence[int]]) -> "SimplicialComplex":
        return cls(m, _maximal_only(faces))

    @property
    def dim(self) -> int:
        if not self.maximal_faces:
            return -1
        return max(len(f) for f in self.maximal_faces) - 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.maximal_faces for v in f}))

    def maximal_masks(self) -> list[int]:
        return [to_mask(f) for f in self.maximal_faces]

    def contains(self, face: Iterable[int]) -> bool:
        fm = to_mask(face)
        return any(fm & mm == fm for mm in self.maximal_masks())

    def face_masks(self) -> set[int]:
        """Bitmasks of all faces, the empty face (0) included when non-empty."""
        out: set[int] = set()
        for mm in self.maximal_masks():
            if mm in out:
                continue
            out.update(submasks(mm))
        return out

    def faces(self) -> list[tuple[int, ...]]:
        """All non-empty faces, ordered by size then lexicographically."""
        fs = [from_mask(x) for x in self.face_masks() if x]
        return sorted(fs, key=lambda f: (len(f), f))

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 1)
        for x in self.face_masks():
            if x:
                counts[bin(x).count("1") - 1] += 1
        return counts

    def link(self, face: Iterable[int]) -> "SimplicialComplex":
        fm = to_mask(face)
        rest = [from_mask(mm & ~fm) for mm in self.maximal_masks() if mm & fm == fm]
        return SimplicialComplex.from_faces(self.m, rest)

    def minimal_nonfaces(self) -> list[tuple[int, ...]]:
        faces = self.face_masks()
        found = set()
        for fm in faces:
            for v in range(self.m):
                bit = 1 << v
                if fm & bit:
                    continue
                cand = fm | bit
                if cand in faces or cand in found:
                    continue
                if all((cand & ~(1 << u)) in faces for u in range(self.m) if cand >> u & 1):
                    found.add(cand)
        if not faces:
            found.add(0)
        return sorted((from_mask(x) for x in found), key=lambda f: (len(f), f))


@dataclass(frozen=True)
class PolytopeDual:
    """Dual complex of a simple ``d``-polytope with ``complex.m`` facets."""

    complex: SimplicialComplex
    d: int

    @property
    def m(self) -> int:
        return self.complex.m

    @property
    def maximal_faces(self):
        return self.complex.maximal_faces

    @classmethod
    def from_faces(cls, m: int, d: int, faces) -> "PolytopeDual":
        return cls(SimplicialComplex.from_faces(m, faces), d)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


def full_subcomplex(K: SimplicialComplex, J: Iterable[int]) -> SimplicialComplex:
    """Faces of ``K`` contained in ``J``; the original labels and ``m`` are kept."""
    J = index_set(J, K.m)
    jm = to_mask(J)
    return SimplicialComplex(K.m, _maximal_only(from_mask(mm & jm) for mm in K.maximal_masks()))


def is_dual_c_neighborly(P: PolytopeDual, c: int) -> bool:
    """True iff every ``c`` facets of ``P`` meet, i.e. every ``c``-set is a face."""
    if not 0 <= c <= P.d:
        raise QuadricsError(f"c={c} outside 0..{P.d}")
    if c == 0:
        return True
    faces = P.complex.face_masks()
    return all(to_mask(s) in faces for s in combinations(range(1, P.m + 1), c))


def connectivity_of_Z(P: PolytopeDual) -> int:
    """Largest ``c`` such that ``P`` is dual ``c``-neighborly; ``Z`` is then (c-1)-connected."""
    c = 0
    while c < P.d and is_dual_c_neighborly(P, c + 1):
        c += 1
    return c


def validate(P: PolytopeDual) -> ValidationReport:
    out = []
    K = P.complex
    for f in K.maximal_faces:
        if len(set(f)) != len(f):
            out.append(f"face {list(f)} has repeated indices")
        if f and (f[0] < 1 or f[-1] > K.m):
            out.append(f"face {list(f)} outside 1..{K.m}")
    masks = K.maximal_masks()
    antichain = len(set(masks)) == len(masks) and not any(
        a != b and a & b == a for a in masks for b in masks
    )
    if not antichain:
        out.append("not an antichain")
    for f in K.maximal_faces:
        if len(f) != P.d:
            out.append(f"not pure: face {list(f)} has {len(f)} elements, expected {P.d}")
    present = set(K.vertices)
    for i in range(1, K.m + 1):
        if i not in present:
            out.append(f"facet {i} empty")
    return ValidationReport(tuple(out))


def stellar_cut(P: PolytopeDual, F: Iterable[int]) -> PolytopeDual:
    """Dual of truncating the face ``F`` of ``P`` (a stellar subdivision of ``K`` at ``F``).

    The new facet gets index ``m + 1``.  Maximal faces containing ``F`` are
    replaced by ``{new} | (sigma - {x})`` for every ``x`` in ``F``.
    """
    F = index_set(F, P.m)
    if not F:
        raise InvalidFace("cannot cut the empty face")
    if not P.complex.contains(F):
        raise InvalidFace(f"{list(F)} is not a face")
    if len(F) < 2:
        # truncating a whole facet leaves that facet empty
        raise InvalidFace(f"cutting the single facet {F[0]} would leave it empty")
    fset = set(F)
    new = P.m + 1
    kept = []
    added = []
    for sigma in P.maximal_faces:
        if fset <= set(sigma):
            for x in F:
                added.append(tuple(sorted((set(sigma) - {x}) | {new})))
        else:
            kept.append(sigma)
    return PolytopeDual(SimplicialComplex(new, tuple(kept) + tuple(added)), P.d)


def cut_vertex(P: PolytopeDual, sigma: Iterable[int]) -> PolytopeDual:
    sigma = index_set(sigma, P.m)
    if sigma not in P.maximal_faces:
        raise InvalidFace(f"{list(sigma)} is not a vertex (maximal face)")
    return stellar_cut(P, sigma)


def cut_edge(P: PolytopeDual, tau: Iterable[int]) -> PolytopeDual:
    tau = index_set(tau, P.m)
    if not P.complex.contains(tau):
        raise InvalidFace(f"{list(tau)} is not a face")
    if len(tau) != P.d - 1:
        raise InvalidFace(f"an edge has {P.d - 1} facets, got {list(tau)}")
    lk = P.complex.link(tau)
    if len(lk.maximal_faces) != 2 or any(len(f) != 1 for f in lk.maximal_faces):
        raise InvalidFace(f"link of {list(tau)} is not two vertices")
    return stellar_cut(P, tau)


def replicate_complex(P: PolytopeDual, J: Sequence[int]) -> PolytopeDual:
    """Dual complex of the replicated configuration, computed combinatorially.

    Index ``i`` becomes the block of ``J[i-1]`` consecutive new indices; a set
    is a face iff the indices whose whole block it contains form a face of ``K``.
    """
    if len(J) != P.m or any(j < 1 for j in J):
        raise QuadricsError(f"replication vector must have {P.m} positive entries")
    blocks = []
    start = 1
    for j in J:
        blocks.append(tuple(range(start, start + j)))
        start += j
    new_m = start - 1
    out = []
    for sigma in P.maximal_faces:
        base = [v for i in sigma for v in blocks[i - 1]]
        choices = [list(combinations(blocks[i - 1], J[i - 1] - 1))
                   for i in range(1, P.m + 1) if i not in sigma]
        stack = [tuple(base)]
        for opts in choices:
            stack = [s + c for s in stack for c in opts]
        out.extend(stack)
    d = P.d + sum(j - 1 for j in J)
    return PolytopeDual(SimplicialComplex(new_m, tuple(out)), d)


def simplex_blocks(K: SimplicialComplex) -> list[tuple[int, ...]] | None:
    """Blocks ``B_1..B_r`` when ``K`` is the join of the boundaries of simplices on them.

    That happens iff the minimal non-faces are pairwise disjoint and cover the
    ground set; the polytope is then the product of simplices of dimensions
    ``|B_j| - 1``.
    """
    if not K.maximal_faces:
        return None
    mnf = K.minimal_nonfaces()
    seen: set[int] = set()
    for b in mnf:
        if seen & set(b):
            return None
        seen |= set(b)
    if seen != set(range(1, K.m + 1)):
        return None
    return mnf
