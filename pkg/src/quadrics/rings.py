"""Cohomology rings with Z2 coefficients and ungraded invariants.

Elements of a ring are ``int`` bitmasks over its basis (bit ``i`` is basis
element ``i``); addition is XOR.  The invariants here are the ones that
survive forgetting the grading: the filtration by powers of the maximal ideal
``M`` and the induced multiplication ``M/M^2 x M/M^2 -> M^2/M^3``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .calculus import NormalForm
from .errors import QuadricsError

EXHAUSTIVE_PROPOSITION_DIM = 12
EXHAUSTIVE_ISOTROPIC_DIM = 8


def _bits(v: int) -> Iterable[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class _Echelon:
    """Incremental GF(2) row echelon form; each row carries a tag mask."""

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}  # leading bit -> (vector, tag)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        while v:
            h = v.bit_length() - 1
            if h not in self.rows:
                break
            rv, rt = self.rows[h]
            v ^= rv
            tag ^= rt
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = (v, tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def __len__(self):
        return len(self.rows)


def rank_z2(vectors: Iterable[int]) -> int:
    e = _Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


@dataclass
class RingZ2:
    """Finite graded commutative Z2-algebra given by a basis and a product table.

    ``table[(i, j)]`` (``i <= j``) is the product of basis elements as a
    bitmask; missing pairs multiply to zero.  Basis element 0 is the unit.
    """

    basis: list[tuple[str, int]]
    table: dict[tuple[int, int], int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if not self.basis or self.basis[0][1] != 0:
            raise QuadricsError("basis element 0 must be the unit in degree 0")
        n = len(self.basis)
        for i in range(n):
            self.table[(0, i)] = 1 << i
        self.table = {k: v for k, v in self.table.items() if v}
        self._index = {nm: i for i, (nm, _) in enumerate(self.basis)}
        if len(self._index) != n:
            raise QuadricsError("basis names must be distinct")
        for (i, j), v in self.table.items():
            if i > j:
                raise QuadricsError("table keys must be ordered pairs i <= j")
            deg = self.basis[i][1] + self.basis[j][1]
            if any(self.basis[b][1] != deg for b in _bits(v)):
                raise QuadricsError(f"product {self.basis[i][0]}*{self.basis[j][0]} is not homogeneous")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def top_degree(self) -> int:
        return max(d for _, d in self.basis)

    def index(self, name: str) -> int:
        return self._index[name]

    def element(self, *names: str) -> int:
        v = 0
        for nm in names:
            v ^= 1 << self._index[nm]
        return v

    def basis_product(self, i: int, j: int) -> int:
        return self.table.get((i, j) if i <= j else (j, i), 0)

    def mul(self, x: int, y: int) -> int:
        out = 0
        for i in _bits(x):
            for j in _bits(y):
                out ^= self.basis_product(i, j)
        return out

    def betti(self) -> tuple[int, ...]:
        out = [0] * (self.top_degree + 1)
        for _, d in self.basis:
            out[d] += 1
        return tuple(out)

    def check_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.basis_product(i, j)
                for k in range(n):
                    if self.mul(ij, 1 << k) != self.mul(1 << i, self.basis_product(j, k)):
                        return False
        return True

    def check_duality(self) -> bool:
        """Top-degree pairing is nondegenerate and the top degree is one-dimensional."""
        top = self.top_degree
        tops = [i for i, (_, d) in enumerate(self.basis) if d == top]
        if len(tops) != 1:
            return False
        f = 1 << tops[0]
        for p in range(top + 1):
            left = [i for i, (_, d) in enumerate(self.basis) if d == p]
            right = [i for i, (_, d) in enumerate(self.basis) if d == top - p]
            if len(left) != len(right):
                return False
            # Gram matrix rows as bitmasks over ``right``
            rows = []
            for i in left:
                r = 0
                for c, j in enumerate(right):
                    prod = self.basis_product(i, j)
                    if prod & ~f:
                        return False
                    if prod:
                        r |= 1 << c
                rows.append(r)
            if rank_z2(rows) != len(left):
                return False
        return True

    def table_text(self) -> str:
        """Canonical text: basis with degrees, then every nonzero product."""
        lines = [f"ring {self.name}".rstrip(), "basis:"]
        lines += [f"  {nm} deg {d}" for nm, d in self.basis]
        lines.append("products:")
        for (i, j) in sorted(self.table):
            if i == 0:
                continue
            terms = " + ".join(self.basis[b][0] for b in _bits(self.table[(i, j)]))
            lines.append(f"  {self.basis[i][0]} * {self.basis[j][0]} = {terms}")
        return "\n".join(lines) + "\n"


def _proper_subsets(k: int) -> list[tuple[int, ...]]:
    return [S for r in range(1, k) for S in combinations(range(1, k + 1), r)]


def _label(S: Sequence[int]) -> str:
    return ",".join(map(str, S))


def sphere_product_ring(p_list: Sequence[int], prefix: str = "x", fundamental: str = "f") -> RingZ2:
    """``H*(S^p1 x ... x S^pr; Z2)``: one class per proper non-empty factor subset."""
    p_list = tuple(p_list)
    if any(p < 1 for p in p_list):
        raise QuadricsError("sphere dimensions must be positive")
    k = len(p_list)
    basis = [("1", 0)]
    pos = {}
    for S in _proper_subsets(k):
        pos[S] = len(basis)
        basis.append((f"{prefix}[{_label(S)}]", sum(p_list[i - 1] for i in S)))
    pos[tuple(range(1, k + 1))] = len(basis)
    basis.append((fundamental, sum(p_list)))
    table = {}
    subsets = list(pos)
    for S in subsets:
        for T in subsets:
            if set(S) & set(T):
                continue
            i, j = pos[S], pos[T]
            if i <= j:
                table[(i, j)] = 1 << pos[tuple(sorted(S + T))]
    return RingZ2(basis, table, name=prefix)


def connected_sum(*rings: RingZ2, name: str = "") -> RingZ2:
    """Identify the units and the fundamental classes; cross products vanish.

    Basis names that clash with an earlier summand get a ``#t`` suffix (``t`` the summand number).
    """
    if not rings:
        raise QuadricsError("need at least one ring")
    top = rings[0].top_degree
    if any(r.top_degree != top for r in rings):
        raise QuadricsError("connected sum needs equal top degrees")
    basis = [("1", 0)]
    table = {}
    f_pos = None
    used = {"1"}
    for t, r in enumerate(rings, start=1):
        tops = [i for i, (_, d) in enumerate(r.basis) if d == top]
        if len(tops) != 1:
            raise QuadricsError("each ring must have a one-dimensional top degree")
        remap = {0: 0}
        for i, (nm, d) in enumerate(r.basis):
            if i == 0:
                continue
            if d == top:
                if f_pos is None:
                    f_pos = len(basis)
                    basis.append((nm, d))
                    used.add(nm)
                remap[i] = f_pos
            else:
                remap[i] = len(basis)
                basis.append((nm if nm not in used else f"{nm}#{t}", d))
                used.add(basis[-1][0])
        for (i, j), v in r.table.items():
            if i == 0:
                continue
            a, b = sorted((remap[i], remap[j]))
            w = 0
            for x in _bits(v):
                w ^= 1 << remap[x]
            table[(a, b)] = table.get((a, b), 0) ^ w
    return RingZ2(basis, table, name=name)


def ring_of_normal_form(nf: NormalForm, name: str = "") -> RingZ2:
    """Ring of a connected sum of sphere products (a sphere if no summands)."""
    if not nf.summands:
        return RingZ2([("1", 0), ("f", nf.dim)], name=name or f"S{nf.dim}")
    parts = [sphere_product_ring(s, prefix=f"x{t}") for t, s in enumerate(nf.summands, start=1)]
    return connected_sum(*parts, name=name or str(nf))


def gyration_ring(p_list: Sequence[int], name: str = "") -> RingZ2:
    """Ring of the gyration of ``S^p1 x ... x S^pk``.

    ``A[S]`` comes from the product class of ``S``, ``A'[S]`` from that class
    times the circle generator; ``F'`` is the fundamental class.
    """
    p_list = tuple(int(p) for p in p_list)
    if len(p_list) < 2:
        raise QuadricsError("gyration ring needs at least two factors")
    if any(p < 2 for p in p_list):
        raise QuadricsError("gyration ring needs sphere dimensions >= 2")
    k = len(p_list)
    full = tuple(range(1, k + 1))
    basis = [("1", 0)]
    A, Ap = {}, {}
    subsets = _proper_subsets(k)
    for S in subsets:
        A[S] = len(basis)
        basis.append((f"A[{_label(S)}]", sum(p_list[i - 1] for i in S)))
    for S in subsets:
        Ap[S] = len(basis)
        basis.append((f"A'[{_label(S)}]", sum(p_list[i - 1] for i in S) + 1))
    F = len(basis)
    basis.append(("F'", sum(p_list) + 1))
    table = {}

    def put(i, j, v):
        table[(min(i, j), max(i, j))] = v

    for S in subsets:
        for T in subsets:
            if set(S) & set(T):
                continue
            U = tuple(sorted(S + T))
            if U != full:
                if A[S] <= A[T]:
                    put(A[S], A[T], 1 << A[U])
                put(A[S], Ap[T], 1 << Ap[U])
            else:
                put(A[S], Ap[T], 1 << F)
    return RingZ2(basis, table, name=name or f"G{p_list}")


# ---- the quotient form -------------------------------------------------------

@dataclass(frozen=True)
class BilinearFormZ2:
    """Symmetric bilinear map ``Z2^n x Z2^n -> Z2^t``; ``values[i][j]`` is a bitmask."""

    source_dim: int
    target_dim: int
    values: tuple[tuple[int, ...], ...]
    source_names: tuple[str, ...] = ()
    target_names: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.source_dim
        if len(self.values) != n or any(len(r) != n for r in self.values):
            raise QuadricsError("values must be a square table")
        for i in range(n):
            for j in range(n):
                if self.values[i][j] != self.values[j][i]:
                    raise QuadricsError("form must be symmetric")

    @classmethod
    def zero(cls, n: int) -> "BilinearFormZ2":
        return cls(n, 0, tuple((0,) * n for _ in range(n)))

    def __call__(self, u: int, v: int) -> int:
        out = 0
        for i in _bits(u):
            row = self.values[i]
            for j in _bits(v):
                out ^= row[j]
        return out

    def vector(self, *names: str) -> int:
        return sum(1 << self.source_names.index(nm) for nm in names)

    def restrict(self, vectors: Sequence[int]) -> "BilinearFormZ2":
        vals = tuple(tuple(self(u, v) for v in vectors) for u in vectors)
        return BilinearFormZ2(len(vectors), self.target_dim, vals)


def _span_products(R: RingZ2, left: Sequence[int], right: Sequence[int]) -> list[int]:
    return [R.mul(x, y) for x in left for y in right]


def _basis_of(vectors: Iterable[int]) -> list[int]:
    e = _Echelon()
    out = []
    for v in vectors:
        if e.add(v):
            out.append(v)
    return out


def _complement(sub: Sequence[int], ambient: Sequence[int]) -> tuple[_Echelon, list[int]]:
    """Extend a basis of ``sub`` inside ``ambient``; tags mark the complement vectors."""
    e = _Echelon()
    for v in sub:
        e.add(v)
    reps = []
    for v in ambient:
        if not e.contains(v):
            e.add(v, 1 << len(reps))
            reps.append(v)
    return e, reps


def ideal_filtration(R: RingZ2) -> tuple[list[int], list[int], list[int]]:
    """Bases of ``M``, ``M^2`` and ``M^3``."""
    if R.betti()[0] != 1:
        raise QuadricsError("ring must be connected")
    M = [1 << i for i in range(1, R.dim)]
    M2 = _basis_of(_span_products(R, M, M))
    M3 = _basis_of(_span_products(R, M2, M))
    return M, M2, M3


def m_quotient_form(R: RingZ2) -> BilinearFormZ2:
    """The multiplication ``M/M^2 x M/M^2 -> M^2/M^3``."""
    M, M2, M3 = ideal_filtration(R)
    _, src = _complement(M2, M)
    target_e, tgt = _complement(M3, M2)

    def coords(x: int) -> int:
        rest, tag = target_e.reduce(x)
        assert rest == 0
        return tag

    vals = tuple(tuple(coords(R.mul(u, v)) for v in src) for u in src)

    def names(vs):
        return tuple(" + ".join(R.basis[b][0] for b in _bits(v)) for v in vs)

    return BilinearFormZ2(len(src), len(tgt), vals, names(src), names(tgt))


# ---- isotropic subspaces -----------------------------------------------------

def _isotropic_vectors(form: BilinearFormZ2) -> list[int]:
    return [v for v in range(1, 1 << form.source_dim) if form(v, v) == 0]


def find_zero_product_triple(form: BilinearFormZ2) -> tuple[int, int, int] | None:
    """Three independent vectors with all products (squares included) zero."""
    n = form.source_dim
    if n > EXHAUSTIVE_PROPOSITION_DIM:
        raise QuadricsError(f"source dimension {n} exceeds the exhaustive guard {EXHAUSTIVE_PROPOSITION_DIM}")
    iso = _isotropic_vectors(form)
    for a, u in enumerate(iso):
        perp_u = [v for v in iso[a + 1:] if form(u, v) == 0]
        for b, v in enumerate(perp_u):
            for w in perp_u[b + 1:]:
                if w in (u ^ v,) or form(v, w):
                    continue
                return u, v, w
    return None


def is_zero_product_triple(form: BilinearFormZ2, u: int, v: int, w: int) -> bool:
    vs = (u, v, w)
    if rank_z2(vs) != 3:
        return False
    return all(form(x, y) == 0 for x in vs for y in vs)


def proposition_check(form: BilinearFormZ2) -> bool:
    """True iff every three vectors with all products zero are dependent."""
    return find_zero_product_triple(form) is None


def radical(form: BilinearFormZ2) -> list[int]:
    """Basis of ``{v : form(v, .) = 0}``."""
    n = form.source_dim
    # v is in the radical iff the map v -> (form(v, e_j))_j vanishes; solve per target bit
    rows = []
    for j in range(n):
        for t in range(form.target_dim):
            r = 0
            for i in range(n):
                if form.values[i][j] >> t & 1:
                    r |= 1 << i
            rows.append(r)
    return _kernel(rows, n)


def _kernel(rows: Sequence[int], n: int) -> list[int]:
    """Basis of ``{v in Z2^n : popcount(r & v) even for all r}``."""
    piv: dict[int, int] = {}
    for r in rows:
        for p, pr in piv.items():
            if r >> p & 1:
                r ^= pr
        if r:
            p = r.bit_length() - 1
            for q in list(piv):
                if piv[q] >> p & 1:
                    piv[q] ^= r
            piv[p] = r
    free = [i for i in range(n) if i not in piv]
    out = []
    for f in free:
        v = 1 << f
        for p, pr in piv.items():
            if pr >> f & 1:
                v |= 1 << p
        out.append(v)
    return out


def _max_isotropic_exhaustive(form: BilinearFormZ2) -> list[int]:
    """A largest totally isotropic subspace (basis), by search over subspaces."""
    iso = _isotropic_vectors(form)
    best: list[int] = []
    seen: set[frozenset] = set()

    def span(vs):
        out = {0}
        for v in vs:
            out |= {x ^ v for x in out}
        return frozenset(out)

    def grow(chosen, sp, cands):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + rank_z2(cands) <= len(best):
            return
        for idx, v in enumerate(cands):
            nsp = frozenset(sp | {x ^ v for x in sp})
            if nsp in seen:
                continue
            seen.add(nsp)
            rest = [w for w in cands[idx + 1:] if w not in nsp and form(v, w) == 0]
            grow(chosen + [v], nsp, rest)

    grow([], span([]), iso)
    return best


@dataclass(frozen=True)
class IsotropicBounds:
    lower: int
    witness: tuple[int, ...]
    upper: int
    method: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def max_zero_product_subspace(form: BilinearFormZ2) -> IsotropicBounds:
    """Bounds on the largest subspace on which the form vanishes.

    The radical always belongs to such a subspace, and isotropic subspaces
    containing it correspond to those of the quotient; the quotient part is
    searched exhaustively when small enough.
    """
    n = form.source_dim
    rad = radical(form)
    e, comp = _complement(rad, [1 << i for i in range(n)])
    core = form.restrict(comp)
    if core.source_dim <= EXHAUSTIVE_ISOTROPIC_DIM:
        sub = _max_isotropic_exhaustive(core)
        lift = [_lift(c, comp) for c in sub]
        size = len(rad) + len(sub)
        return IsotropicBounds(size, tuple(rad + lift), size,
                               f"radical {len(rad)} + exhaustive core {len(sub)} of {core.source_dim}")
    # greedy lower bound, trivial upper bound
    chosen: list[int] = []
    for v in _isotropic_vectors(core):
        if all(core(v, w) == 0 for w in chosen) and rank_z2(chosen + [v]) > len(chosen):
            chosen.append(v)
    lift = [_lift(c, comp) for c in chosen]
    # an isotropic subspace for one target bit of rank r has dimension <= n - r + r // 2
    upper = n
    for t in range(form.target_dim):
        gram = [sum((form.values[i][j] >> t & 1) << j for j in range(n)) for i in range(n)]
        r = rank_z2(gram)
        upper = min(upper, n - r + r // 2)
    return IsotropicBounds(len(rad) + len(chosen), tuple(rad + lift), upper, "greedy lower, rank upper")


def _lift(c: int, comp: Sequence[int]) -> int:
    v = 0
    for b in _bits(c):
        v ^= comp[b]
    return v


@dataclass(frozen=True)
class RingComparison:
    verdict: str  # "NotIsomorphic" or "Inconclusive"
    invariant: str | None
    left: dict
    right: dict


def ungraded_invariants(R: RingZ2) -> dict:
    M, M2, M3 = ideal_filtration(R)
    form = m_quotient_form(R)
    bounds = max_zero_product_subspace(form)
    return {
        "total_dim": R.dim,
        "dim_M/M2": len(M) - len(M2),
        "dim_M2/M3": len(M2) - len(M3),
        "max_zero_product": [bounds.lower, bounds.upper],
    }


def not_isomorphic_ungraded(R1: RingZ2, R2: RingZ2) -> RingComparison:
    """Separate two rings by an ungraded invariant, or report Inconclusive."""
    a, b = ungraded_invariants(R1), ungraded_invariants(R2)
    for key in ("total_dim", "dim_M/M2", "dim_M2/M3"):
        if a[key] != b[key]:
            return RingComparison("NotIsomorphic", key, a, b)
    (l1, u1), (l2, u2) = a["max_zero_product"], b["max_zero_product"]
    if u1 < l2 or u2 < l1:
        return RingComparison("NotIsomorphic", "max_zero_product", a, b)
    return RingComparison("Inconclusive", None, a, b)


# ---- catalog -----------------------------------------------------------------

def _nf(dim: int, *summands: tuple[int, ...]) -> NormalForm:
    return NormalForm(dim, tuple(summands))


def catalog_ring(name: str) -> RingZ2:
    """Built-in rings by name."""
    if name == "x-ring":
        return ring_of_normal_form(_nf(3, (1, 1, 1), (1, 1, 1)), name=name)
    if name == "y-ring":
        return gyration_ring((3, 3, 3), name=name)
    if name == "z-cv-real":
        return ring_of_normal_form(_nf(3, *([(1, 1, 1)] * 2 + [(1, 2)] * 7)), name=name)
    if name == "z-cv-complex":
        rest = ring_of_normal_form(_nf(10, *([(3, 7)] * 3 + [(4, 6)] * 3 + [(5, 5)])))
        return connected_sum(gyration_ring((3, 3, 3)), rest, name=name)
    if name == "pentagon-real":
        return ring_of_normal_form(_nf(2, *([(1, 1)] * 5)), name=name)
    if name == "pentagon-complex":
        return ring_of_normal_form(_nf(7, *([(3, 4)] * 5)), name=name)
    raise QuadricsError(f"unknown ring {name!r}; known: {', '.join(RING_NAMES)}")


RING_NAMES = ("x-ring", "y-ring", "z-cv-real", "z-cv-complex", "pentagon-real", "pentagon-complex")
