"""Exact checks for the round spheres dual to a product of spheres in ``S^n``.

``R^(n+1)`` splits as ``R^(n_1+1) x ... x R^(n_k+1) x R^q`` and the product
``P = S^n_1 x ... x S^n_k x {0}`` sits in ``S^n`` with ``|X_i|^2 = 1/k``.
For a non-empty ``J`` the sphere ``S_J`` is cut out by ``X_i = x_i e^i_0``
(``i`` in ``J``) and ``sum x_i = (|J|-1)/sqrt(k)``; the disk ``D_J`` replaces
the equality by ``>=``.

All coordinates below are multiplied by ``sqrt(k)``, which turns every
equation into an integer one: points of ``P`` have ``u_i = +-1`` and the
sphere condition on ``S_J`` reads ``sum u_i = |J| - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import QuadricsError

MAX_J = 24


@dataclass(frozen=True)
class ProductSpec:
    n_list: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(x) for x in self.n_list))
        if not self.n_list:
            raise QuadricsError("need at least one sphere factor")
        if any(x < 0 for x in self.n_list) or self.q < 0:
            raise QuadricsError("sphere dimensions and q must be non-negative")
        if self.n < 1:
            raise QuadricsError("ambient sphere dimension must be at least 1")

    @property
    def k(self) -> int:
        return len(self.n_list)

    @property
    def n(self) -> int:
        return sum(self.n_list) + self.q + self.k - 1

    def n_of(self, J: Iterable[int]) -> int:
        return sum(self.n_list[i - 1] for i in J)

    @classmethod
    def parse(cls, text: str) -> "ProductSpec":
        """``"1,1,2:3"`` is ``n_list = (1, 1, 2)``, ``q = 3``."""
        try:
            left, right = text.split(":")
            return cls(tuple(int(x) for x in left.split(",")), int(right))
        except ValueError as exc:
            raise QuadricsError(f"bad product spec {text!r}; expected like '1,1,2:3'") from exc


def _index_set(spec: ProductSpec, J: Iterable[int]) -> tuple[int, ...]:
    J = tuple(sorted(set(int(i) for i in J)))
    if not J:
        raise QuadricsError("J must be non-empty")
    if J[0] < 1 or J[-1] > spec.k:
        raise QuadricsError(f"J must lie in 1..{spec.k}")
    return J


def dual_sphere_dims(spec: ProductSpec, J: Iterable[int]) -> tuple[int, int]:
    """``(dim S_J, codimension of its affine span)`` = ``(n - n_J - 1, n_J + 1)``."""
    J = _index_set(spec, J)
    nJ = spec.n_of(J)
    return spec.n - nJ - 1, nJ + 1


def _pattern_sums(size: int) -> np.ndarray:
    """``sum eps_i`` for every sign pattern; bit ``i`` set means ``eps_i = -1``."""
    if size > MAX_J:
        raise QuadricsError(f"|J| = {size} exceeds the enumeration guard {MAX_J}")
    idx = np.arange(1 << size, dtype=np.int64)
    minus = np.zeros_like(idx)
    for i in range(size):
        minus += (idx >> i) & 1
    return size - 2 * minus


def verify_disjointness(spec: ProductSpec, J: Iterable[int]) -> dict:
    """``S_J`` misses ``P``: no sign pattern has ``sum eps_i = |J| - 1``."""
    J = _index_set(spec, J)
    sums = _pattern_sums(len(J))
    hits = int(np.count_nonzero(sums == len(J) - 1))
    return {
        "J": list(J),
        "patterns_checked": int(sums.size),
        "sum_values": sorted(set(int(s) for s in sums)),
        "target": len(J) - 1,
        "hits": hits,
        "disjoint": hits == 0,
    }


def _eliminate(rows: Sequence[Sequence[int]]) -> tuple[int, Fraction]:
    """Rank and (for square input) determinant by sparse exact elimination.

    Rows are stored as ``{column: value}`` (ints until a division is inexact) so that the mostly-unit
    tangent frames cost almost nothing.
    """
    work = [{j: int(v) for j, v in enumerate(r) if v} for r in rows]
    ncols = len(rows[0]) if rows else 0
    det = 1
    rank = 0
    used = [False] * len(work)
    for col in range(ncols):
        cands = [i for i, r in enumerate(work) if not used[i] and col in r]
        if not cands:
            det = 0
            continue
        i = min(cands, key=lambda t: len(work[t]))
        used[i] = True
        piv = work[i]
        pv = piv[col]
        # sign of moving row i to position ``rank`` among unused rows
        if sum(1 for t in range(i) if not used[t]) % 2:
            det = -det
        det *= pv
        for t in cands:
            if t == i:
                continue
            r = work[t]
            f = r[col] // pv if r[col] % pv == 0 else Fraction(r[col], pv)
            for j, v in piv.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
        rank += 1
    if rank < len(work):
        det = 0
    return rank, Fraction(det)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix."""
    if not rows:
        return 0
    return _eliminate(rows)[0]


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    if len(rows) != len(rows[0]):
        raise QuadricsError("determinant needs a square matrix")
    det = _eliminate(rows)[1]
    assert det.denominator == 1
    return int(det)


def _coordinates(spec: ProductSpec) -> tuple[dict[tuple[int, int], int], int]:
    """Column of ``e^i_j`` (1-based ``i``) and of the first ``Y`` coordinate."""
    col = {}
    c = 0
    for i, ni in enumerate(spec.n_list, start=1):
        for j in range(ni + 1):
            col[(i, j)] = c
            c += 1
    return col, c


def _unit(size: int, pos: int, val: int = 1) -> list[int]:
    v = [0] * size
    v[pos] = val
    return v


def verify_dual_pairing(spec: ProductSpec, J: Iterable[int]) -> dict:
    """``D_J`` meets ``P_J`` in the single point ``p`` and transversally there."""
    J = _index_set(spec, J)
    zero = [i for i in J if spec.n_list[i - 1] == 0]
    if zero:
        raise QuadricsError(f"n_i = 0 for i in {zero}: the pairing needs positive sphere dimensions")
    sums = _pattern_sums(len(J))
    inside = np.nonzero(sums >= len(J) - 1)[0]
    unique_point = inside.size == 1 and int(inside[0]) == 0  # pattern 0 is all +1

    n = spec.n
    col, ybase = _coordinates(spec)
    size = n + 1
    jset = set(J)
    tangent_P = [_unit(size, col[(i, j)]) for i in J for j in range(1, spec.n_list[i - 1] + 1)]
    tangent_D = [_unit(size, col[(i, j)]) for i in range(1, spec.k + 1) if i not in jset
                 for j in range(1, spec.n_list[i - 1] + 1)]
    tangent_D += [_unit(size, ybase + t) for t in range(spec.q)]
    for i in range(2, spec.k + 1):
        v = _unit(size, col[(1, 0)])
        v[col[(i, 0)]] = -1
        tangent_D.append(v)
    normal = [0] * size
    for i in range(1, spec.k + 1):
        normal[col[(i, 0)]] = 1
    # every tangent vector really is tangent to S^n at p
    assert all(sum(a * b for a, b in zip(v, normal)) == 0 for v in tangent_P + tangent_D)
    rP, rD = integer_rank(tangent_P), integer_rank(tangent_D)
    rSum = integer_rank(tangent_P + tangent_D)
    det = integer_det(tangent_P + tangent_D + [normal]) if rSum == n else 0
    return {
        "J": list(J),
        "n": n,
        "patterns_checked": int(sums.size),
        "unique_point": bool(unique_point),
        "point_scaled": [1] * spec.k + [0] * spec.q,
        "rank_tangent_P_J": rP,
        "rank_tangent_D_J": rD,
        "rank_sum": rSum,
        "transversal": rP + rD == n and rSum == n,
        "linking_sign": (det > 0) - (det < 0),
    }


PERTURBATION = (Fraction(3, 5), Fraction(4, 5))


def verify_offdiagonal(spec: ProductSpec, J: Iterable[int], L: Iterable[int]) -> dict:
    """``D_J`` misses a small perturbation of ``P_L`` when ``J != L`` and ``n_J = n_L``."""
    J, L = _index_set(spec, J), _index_set(spec, L)
    if J == L:
        raise QuadricsError("J and L must differ")
    if spec.n_of(J) != spec.n_of(L):
        raise QuadricsError(f"n_J = {spec.n_of(J)} differs from n_L = {spec.n_of(L)}")
    zero = [i for i in sorted(set(J) | set(L)) if spec.n_list[i - 1] == 0]
    if zero:
        raise QuadricsError(f"n_i = 0 for i in {zero}")
    i = next(x for x in J if x not in L)
    a, b = PERTURBATION
    # perturbed P'_L: sqrt(k) X_i = a e_0 + b e_1 with a^2 + b^2 = 1; D_J needs the e_1 part to vanish
    on_circle = a * a + b * b == 1
    return {
        "J": list(J),
        "L": list(L),
        "witness": i,
        "perturbation_scaled": [str(a), str(b)],
        "on_sphere": on_circle,
        "e1_component_on_P_L": str(b),
        "e1_component_on_D_J": "0",
        "disjoint": on_circle and b != 0,
    }
