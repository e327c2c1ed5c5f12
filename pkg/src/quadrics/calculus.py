"""Symbolic closed manifolds built from spheres by product, connected sum and gyration.

Normalization targets connected sums of sphere products.  Gyration is pushed
through connected sums and expanded on two-factor products; gyration of a
product of three or more spheres has no such expansion and is left blocked.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .errors import DimensionMismatch, QuadricsError


@dataclass(frozen=True)
class Sphere:
    n: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise QuadricsError(f"S^{self.n}: sphere dimension must be at least 1")

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class Prod:
    children: tuple

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = tuple(children[0])
        object.__setattr__(self, "children", tuple(children))
        if len(self.children) < 2:
            raise QuadricsError("a product needs at least two factors")

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.children)


@dataclass(frozen=True)
class ConnSum:
    children: tuple

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = tuple(children[0])
        object.__setattr__(self, "children", tuple(children))
        if len(self.children) < 2:
            raise QuadricsError("a connected sum needs at least two summands")
        dims = {c.dim for c in self.children}
        if len(dims) != 1:
            raise DimensionMismatch(f"connected sum of manifolds of dimensions {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.children[0].dim


@dataclass(frozen=True)
class Gyr:
    child: object

    @property
    def dim(self) -> int:
        return self.child.dim + 1


ManifoldExpr = Union[Sphere, Prod, ConnSum, Gyr]


def repeat(e: ManifoldExpr, count: int) -> ManifoldExpr | None:
    """``count`` copies of ``e`` as one node; ``None`` for zero copies."""
    if count < 0:
        raise QuadricsError("negative multiplicity")
    if count == 0:
        return None
    if count == 1:
        return e
    return ConnSum(*([e] * count))


def conn_sum(*parts) -> ManifoldExpr:
    """Connected sum of the non-``None`` parts (a single part is returned as is)."""
    parts = [p for p in parts if p is not None]
    if not parts:
        raise QuadricsError("empty connected sum")
    return parts[0] if len(parts) == 1 else ConnSum(*parts)


def sphere_product(*ns: int) -> ManifoldExpr:
    return Sphere(ns[0]) if len(ns) == 1 else Prod(*(Sphere(n) for n in ns))


# ------------------------------------------------------------- normal form

@dataclass(frozen=True)
class NormalForm:
    dim: int
    summands: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        s = tuple(sorted(tuple(sorted(int(p) for p in f)) for f in self.summands))
        for f in s:
            if len(f) < 2 or f[0] < 1 or sum(f) != self.dim:
                raise QuadricsError(f"bad summand {f} for dimension {self.dim}")
        object.__setattr__(self, "summands", s)

    def multiplicities(self) -> list[tuple[tuple[int, ...], int]]:
        out: list[tuple[tuple[int, ...], int]] = []
        for f in self.summands:
            if out and out[-1][0] == f:
                out[-1] = (f, out[-1][1] + 1)
            else:
                out.append((f, 1))
        return out

    def to_expr(self) -> ManifoldExpr:
        if not self.summands:
            return Sphere(self.dim)
        return conn_sum(*(sphere_product(*f) for f in self.summands))

    def __str__(self):
        if not self.summands:
            return f"S({self.dim})"
        parts = []
        for f, c in self.multiplicities():
            body = "*".join(f"S({p})" for p in f)
            parts.append(body if c == 1 else f"{c}({body})")
        return " + ".join(parts)


@dataclass(frozen=True)
class NotReducible:
    reason: str

    def __str__(self):
        return f"NotReducible({self.reason})"


def normalize(e: ManifoldExpr) -> NormalForm | NotReducible:
    if isinstance(e, Sphere):
        return NormalForm(e.n)
    if isinstance(e, Prod):
        factors: list[int] = []
        for c in e.children:
            nf = normalize(c)
            if isinstance(nf, NotReducible):
                return nf
            if len(nf.summands) > 1:
                return NotReducible("product with a non-trivial connected sum")
            factors.extend(nf.summands[0] if nf.summands else (nf.dim,))
        return NormalForm(e.dim, (tuple(factors),))
    if isinstance(e, ConnSum):
        out: list[tuple[int, ...]] = []
        for c in e.children:
            nf = normalize(c)
            if isinstance(nf, NotReducible):
                return nf
            out.extend(nf.summands)
        return NormalForm(e.dim, tuple(out))
    if isinstance(e, Gyr):
        nf = normalize(e.child)
        if isinstance(nf, NotReducible):
            return NotReducible(f"gyration over irreducible child: {nf.reason}")
        out = []
        for f in nf.summands:
            if len(f) > 2:
                return NotReducible("gyration of triple product" if len(f) == 3
                                    else f"gyration of {len(f)}-fold product")
            p, q = f
            out += [(p + 1, q), (p, q + 1)]
        return NormalForm(nf.dim + 1, tuple(out))
    raise TypeError(f"not a manifold expression: {e!r}")


# ---------------------------------------------------------------- Poincare

def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poincare(e) -> tuple[int, ...]:
    """Betti vector ``(b_0, ..., b_dim)``; accepts expressions and normal forms."""
    if isinstance(e, NormalForm):
        e = e.to_expr()
    n = e.dim
    if isinstance(e, Sphere):
        out = [0] * (n + 1)
        out[0] += 1
        out[n] += 1
        return tuple(out)
    if isinstance(e, Prod):
        acc = [1]
        for c in e.children:
            acc = _polymul(acc, poincare(c))
        return tuple(acc)
    if isinstance(e, ConnSum):
        out = [0] * (n + 1)
        for c in e.children:
            for i, b in enumerate(poincare(c)):
                out[i] += b
        extra = len(e.children) - 1
        out[0] -= extra
        out[n] -= extra
        return tuple(out)
    if isinstance(e, Gyr):
        # P(GM) = (1+t)(P(M) - t^k) - t + t^(k+1), k = dim M
        k = e.child.dim
        pm = list(poincare(e.child))
        pm[k] -= 1
        out = _polymul([1, 1], pm)
        out += [0] * (k + 2 - len(out))
        out[1] -= 1
        out[k + 1] += 1
        return tuple(out)
    raise TypeError(f"not a manifold expression: {e!r}")


# --------------------------------------------------- punctured constructions

def double_punctured(M: ManifoldExpr, k: int) -> ManifoldExpr:
    """Double of ``M`` with ``k`` open disks removed: ``M # M # (k-1)(S^1 x S^(d-1))``."""
    d = M.dim
    if k < 1:
        raise QuadricsError("k must be positive")
    if d < 2:
        raise QuadricsError("M must have dimension at least 2")
    return ConnSum(*filter(None, [M, M, repeat(Prod(Sphere(1), Sphere(d - 1)), k - 1)]))


def open_book_punctured(M: ManifoldExpr, k: int) -> ManifoldExpr:
    """Trivial open book on ``M`` minus ``k`` disks: ``GM # (k-1)(S^2 x S^(d-1))``."""
    d = M.dim
    if k < 1:
        raise QuadricsError("k must be positive")
    if d < 2:
        raise QuadricsError("M must have dimension at least 2")
    return conn_sum(Gyr(M), repeat(Prod(Sphere(2), Sphere(d - 1)), k - 1))


DOUBLE = "double"
OPEN_BOOK = "open-book"


def complement_decomposition(n_list: Sequence[int], q: int, which: str = DOUBLE) -> ManifoldExpr:
    """Double or open book of the complement of ``S^n1 x ... x S^nk x {0}`` in ``S^n``.

    ``n = sum n_i + q + k - 1``; summands run over non-empty ``J``, by size and
    then lexicographically, as ``S^(n - n_J - 1) x S^(n_J + 1)`` (double) or
    ``S^(n - n_J - 1) x S^(n_J + 2)`` (open book).  Requires ``q + k >= 4``.
    """
    n_list = [int(x) for x in n_list]
    k = len(n_list)
    if k < 1 or any(x < 0 for x in n_list) or q < 0:
        raise QuadricsError("need k >= 1 and non-negative n_i, q")
    if q + k < 4:
        raise QuadricsError(f"q + k = {q + k} < 4")
    shift = {DOUBLE: 1, OPEN_BOOK: 2}.get(which)
    if shift is None:
        raise QuadricsError(f"unknown construction {which!r}")
    n = sum(n_list) + q + k - 1
    parts = []
    for size in range(1, k + 1):
        for J in combinations(range(k), size):
            nJ = sum(n_list[i] for i in J)
            parts.append(Prod(Sphere(n - nJ - 1), Sphere(nJ + shift)))
    return conn_sum(*parts)
