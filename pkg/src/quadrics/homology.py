"""Integral homology of simplicial complexes and of the manifolds ``Z``.

``H_i(Z)`` is assembled from full subcomplexes:  ``H~_i(Z)`` is the direct sum
over non-empty ``J`` of ``H~_{i-1}(K_J)``, and ``H_0(Z) = Z`` is added by hand.
Most ``K_J`` are contractible; they are discarded by removing dominated
vertices (a vertex ``v`` whose every maximal face also contains some ``w``
can be deleted without changing the homotopy type) before any matrix is built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .combinatorics import PolytopeDual, SimplicialComplex, from_mask, submasks, to_mask
from .errors import Disconnected, GroundSetTooLarge
from .snf import rank_mod2, sparse_rank_and_torsion

DEFAULT_CAP = 20


@dataclass(frozen=True)
class HomologyGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(sorted(int(x) for x in self.torsion))
        if any(x < 2 for x in t):
            raise ValueError("torsion divisors must be >= 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisor chain")
        object.__setattr__(self, "torsion", t)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __add__(self, other: "HomologyGroup") -> "HomologyGroup":
        return HomologyGroup(self.rank + other.rank, _merge_torsion(self.torsion, other.torsion))

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _merge_torsion(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Invariant factors of the direct sum, via prime-power decomposition."""
    powers: dict[int, list[int]] = {}
    for n in a + b:
        for p, e in _factor(n).items():
            powers.setdefault(p, []).append(p ** e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    out = [1] * length
    for p, vals in powers.items():
        vals.sort(reverse=True)
        for i, v in enumerate(vals):
            out[length - 1 - i] *= v
    return tuple(x for x in out if x > 1)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class GradedHomology:
    groups: tuple[HomologyGroup, ...]
    reduced: bool = False
    ledger: tuple = field(default=(), compare=False)

    def __post_init__(self):
        g = list(self.groups)
        while g and g[-1].is_zero:
            g.pop()
        object.__setattr__(self, "groups", tuple(g))

    def __getitem__(self, i: int) -> HomologyGroup:
        if 0 <= i < len(self.groups):
            return self.groups[i]
        return HomologyGroup()

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def ranks(self, length: int | None = None) -> tuple[int, ...]:
        n = len(self.groups) if length is None else length
        return tuple(self[i].rank for i in range(n))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * g.rank for i, g in enumerate(self.groups))

    def to_json(self) -> dict:
        return {"reduced": self.reduced, "degrees": [g.to_json() for g in self.groups]}


def is_torsion_free(H: GradedHomology) -> bool:
    return all(not g.torsion for g in H.groups)


# ---------------------------------------------------------------- complexes

def _faces_by_dim(maximal_masks: Iterable[int]) -> list[list[int]]:
    """Faces (as sorted masks) grouped by dimension, the empty face at index 0."""
    seen: set[int] = set()
    for mm in maximal_masks:
        if mm not in seen:
            seen.update(submasks(mm))
    if not seen:
        return []
    by: list[list[int]] = [[] for _ in range(max(bin(x).count("1") for x in seen) + 1)]
    for x in seen:
        by[bin(x).count("1")].append(x)
    for lst in by:
        lst.sort()
    return by


def _boundary_columns(by: list[list[int]], q: int) -> list[dict[int, int]]:
    """Columns of the boundary from ``q``-faces (q+1 vertices) to ``(q-1)``-faces."""
    index = {x: i for i, x in enumerate(by[q])}
    cols = []
    for x in by[q + 1]:
        col = {}
        sign = 1
        bits = x
        while bits:
            low = bits & -bits
            col[index[x ^ low]] = sign
            sign = -sign
            bits ^= low
        cols.append(col)
    return cols


def _reduced_homology_masks(maximal_masks: list[int]) -> GradedHomology:
    by = _faces_by_dim(maximal_masks)
    if len(by) <= 1:
        return GradedHomology((), reduced=True)
    top = len(by) - 2  # dimension of the complex
    ranks = {}
    torsion = {}
    for q in range(0, top + 1):  # boundary from dim q to dim q-1 (dim -1 = empty face)
        r, t = sparse_rank_and_torsion(_boundary_columns(by, q))
        ranks[q], torsion[q] = r, t
    groups = []
    for q in range(0, top + 1):
        n_q = len(by[q + 1])
        b = n_q - ranks[q] - ranks.get(q + 1, 0)
        groups.append(HomologyGroup(b, torsion.get(q + 1, ())))
    return GradedHomology(tuple(groups), reduced=True)


def reduced_homology(K: SimplicialComplex) -> GradedHomology:
    """Reduced integral homology; the empty complex has none in degrees >= 0."""
    return _reduced_homology_masks(K.maximal_masks())


def reduced_betti_mod2(K: SimplicialComplex) -> tuple[int, ...]:
    """Reduced Betti numbers over GF(2), by bitset elimination."""
    by = _faces_by_dim(K.maximal_masks())
    if len(by) <= 1:
        return ()
    top = len(by) - 2
    rk = {}
    for q in range(0, top + 1):
        index = {x: i for i, x in enumerate(by[q])}
        cols = []
        for x in by[q + 1]:
            v = 0
            bits = x
            while bits:
                low = bits & -bits
                v |= 1 << index[x ^ low]
                bits ^= low
            cols.append(v)
        rk[q] = rank_mod2(cols)
    out = [len(by[q + 1]) - rk[q] - rk.get(q + 1, 0) for q in range(top + 1)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


# ------------------------------------------------------------- splitting

def face_lookup(K: SimplicialComplex) -> np.ndarray:
    """Boolean array over all ``2^m`` masks marking the faces of ``K``."""
    lookup = np.zeros(1 << K.m, dtype=bool)
    for mm in K.maximal_masks():
        bits = [1 << i for i in range(K.m) if mm >> i & 1]
        sel = (np.arange(1 << len(bits))[:, None] >> np.arange(len(bits))) & 1
        lookup[sel @ np.array(bits, dtype=np.int64)] = True
    return lookup


def non_cone_subsets(K: SimplicialComplex, lookup: np.ndarray | None = None) -> np.ndarray:
    """Masks ``J != 0`` for which ``K_J`` is not a cone.

    A vertex ``v`` of ``K_J`` is a cone point iff no minimal non-face of ``K``
    inside ``J`` contains ``v``; so ``K_J`` is a cone unless the minimal
    non-faces inside ``J`` cover ``J``.  That union is computed for every ``J``
    at once by a subset-OR transform.
    """
    m = K.m
    if lookup is None:
        lookup = face_lookup(K)
    n = 1 << m
    idx = np.arange(n, dtype=np.int64)
    minimal = ~lookup
    for i in range(m):
        bit = 1 << i
        has = (idx & bit) != 0
        minimal[has] &= lookup[idx[has] ^ bit]
    cover = np.where(minimal, idx, 0)
    for i in range(m):
        view = cover.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    out = np.nonzero(cover == idx)[0]
    return out[out != 0]


def _maximal_masks_of(masks) -> list[int]:
    ordered = sorted(set(masks), key=lambda x: -bin(x).count("1"))
    kept: list[int] = []
    for f in ordered:
        if not any(f & k == f for k in kept):
            kept.append(f)
    return kept


def _core(J: int, faces: list[int]) -> tuple[int, list[int]]:
    """Delete dominated vertices until none is left.

    ``v`` is dominated when all maximal faces through ``v`` share another
    vertex ``w``; the link of ``v`` is then a cone and deleting ``v`` keeps the
    homotopy type.  Returns the remaining vertex mask and maximal faces.
    """
    while True:
        dominated = 0
        v = J
        while v:
            low = v & -v
            v ^= low
            common = J
            for f in faces:
                if f & low:
                    common &= f
            if common != low:
                dominated = low
                break
        if not dominated:
            return J, faces
        J ^= dominated
        faces = _maximal_masks_of(f & ~dominated for f in faces)


def _z_homology(P: PolytopeDual, keep_ledger: bool) -> GradedHomology:
    K = P.complex
    masks = K.maximal_masks()
    cache: dict[int, GradedHomology] = {}
    total = [HomologyGroup() for _ in range(P.d + 1)]
    total[0] = HomologyGroup(1)
    ledger = []
    for J in non_cone_subsets(K):
        J = int(J)
        core, faces = _core(J, _maximal_masks_of(f & J for f in masks))
        if core & (core - 1) == 0:
            continue
        if core not in cache:
            cache[core] = _reduced_homology_masks(faces)
        H = cache[core]
        if not H.groups:
            continue
        for i, g in enumerate(H.groups):
            if not g.is_zero:
                if i + 1 >= len(total):
                    total.extend(HomologyGroup() for _ in range(i + 2 - len(total)))
                total[i + 1] = total[i + 1] + g
        if keep_ledger:
            ledger.append((from_mask(J), H))
    ledger.sort(key=lambda e: e[0])
    return GradedHomology(tuple(total), reduced=False, ledger=tuple(ledger))


_cached_z_homology = lru_cache(maxsize=64)(_z_homology)


def z_homology(P: PolytopeDual, cap: int = DEFAULT_CAP, keep_ledger: bool = False) -> GradedHomology:
    """Unreduced integral homology of ``Z`` from the dual complex of ``P``.

    With ``keep_ledger`` the result carries ``(J, H~(K_J))`` for every subset
    with a non-zero contribution, in lexicographic order of ``J``.  Raises
    :class:`GroundSetTooLarge` when ``m`` exceeds ``cap`` and
    :class:`Disconnected` when some facet is empty (a vertex missing from ``K``).
    """
    missing = sorted(set(range(1, P.m + 1)) - set(P.complex.vertices))
    if missing:
        raise Disconnected(missing)
    if P.m > cap:
        raise GroundSetTooLarge(f"m={P.m} exceeds the subset cap {cap}")
    return _cached_z_homology(P, bool(keep_ledger))


def zc_homology(config, cap: int = DEFAULT_CAP, keep_ledger: bool = False) -> GradedHomology:
    """Homology of the moment-angle manifold: ``Z`` of the configuration with every vector doubled."""
    from .gale import combinatorics, replicate

    return z_homology(combinatorics(replicate(config, [2] * config.m)), cap, keep_ledger)


def euler_from_faces(P: PolytopeDual) -> int:
    """Euler characteristic of ``Z`` from face counts alone.

    Summing the reduced Euler characteristics of all full subcomplexes gives
    ``chi(Z) = sum over faces s of K (empty face included) of (-1)^|s| 2^(m-|s|)``.
    """
    m = P.m
    return sum((-1) ** bin(x).count("1") * 2 ** (m - bin(x).count("1"))
               for x in P.complex.face_masks())


def ledger_sum(H: GradedHomology, d: int) -> GradedHomology:
    """Re-sum a ledger into unreduced homology (the degree shift plus the unit)."""
    total = [HomologyGroup() for _ in range(d + 1)]
    total[0] = HomologyGroup(1)
    for _, h in H.ledger:
        for i, g in enumerate(h.groups):
            total[i + 1] = total[i + 1] + g
    return GradedHomology(tuple(total))


def ledger_to_json(H: GradedHomology) -> list[dict]:
    return [{"J": list(J), "contributes": {str(i + 1): g.to_json()
                                           for i, g in enumerate(h.groups) if not g.is_zero}}
            for J, h in H.ledger]


__all__ = [
    "HomologyGroup", "GradedHomology", "is_torsion_free", "reduced_homology",
    "reduced_betti_mod2", "z_homology", "zc_homology", "euler_from_faces",
    "ledger_sum", "ledger_to_json", "from_mask",
]
