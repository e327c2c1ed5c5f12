"""Integer Smith normal form, dense and sparse.

The sparse routine eliminates unit pivots first (boundary matrices of
simplicial complexes are mostly +-1) and hands the small remainder to the
dense algorithm.
"""
from __future__ import annotations

from math import gcd
from typing import Mapping, Sequence


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero diagonal entries ``d1 | d2 | ...`` of the Smith form of ``M``."""
    A = [[int(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    out = []
    t = 0
    while t < rows and t < cols:
        # smallest nonzero entry in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    A[t], A[i] = A[i], A[t]
                if j != t:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        out.append(abs(A[t][t]))
        t += 1
    # enforce the divisibility chain (the loop above already does, normalize anyway)
    return _divisor_chain(out)


def _divisor_chain(values: list[int]) -> tuple[int, ...]:
    vals = [v for v in values if v]
    changed = True
    while changed:
        changed = False
        vals.sort()
        for i in range(len(vals) - 1):
            a, b = vals[i], vals[i + 1]
            if b % a:
                g = gcd(a, b)
                vals[i], vals[i + 1] = g, a * b // g
                changed = True
    return tuple(sorted(vals))


def sparse_rank_and_torsion(columns: Sequence[Mapping[int, int]]) -> tuple[int, tuple[int, ...]]:
    """Rank and non-unit elementary divisors of a sparse integer matrix.

    ``columns[c]`` maps row index to entry.  Unit pivots are eliminated by
    Schur complement (each one removes a row and a column and records a
    divisor 1); what is left goes through :func:`smith_normal_form`.
    """
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for c, col in enumerate(columns):
        col = {r: int(v) for r, v in col.items() if v}
        if col:
            cols[c] = col
            for r in col:
                rows.setdefault(r, set()).add(c)
    rank = _eliminate_singletons(cols, rows)
    # columns ordered by length; fill-in is small for boundary matrices
    queue = sorted(cols, key=lambda c: len(cols[c]))
    progress = True
    while progress:
        progress = False
        for c in queue:
            col = cols.get(c)
            if not col:
                continue
            units = [r for r, v in col.items() if v in (1, -1)]
            if not units:
                continue
            r = min(units, key=lambda x: len(rows[x]))
            pv = col[r]
            for c2 in list(rows[r]):
                if c2 == c:
                    continue
                col2 = cols[c2]
                f = col2[r] * pv  # pv is its own inverse
                for rr, v in col.items():
                    nv = col2.get(rr, 0) - f * v
                    if nv:
                        if rr not in col2:
                            rows[rr].add(c2)
                        col2[rr] = nv
                    elif rr in col2:
                        del col2[rr]
                        rows[rr].discard(c2)
                if not col2:
                    del cols[c2]
            for rr in col:
                rows[rr].discard(c)
            del cols[c]
            del rows[r]
            rank += 1
            progress = True
        queue = sorted(cols, key=lambda c: len(cols[c]))
    if not cols:
        return rank, ()
    row_ids = sorted({r for col in cols.values() for r in col})
    pos = {r: i for i, r in enumerate(row_ids)}
    dense = [[0] * len(cols) for _ in row_ids]
    for j, c in enumerate(sorted(cols)):
        for r, v in cols[c].items():
            dense[pos[r]][j] = v
    divs = smith_normal_form(dense)
    return rank + len(divs), tuple(x for x in divs if x > 1)


def _eliminate_singletons(cols: dict[int, dict[int, int]], rows: dict[int, set[int]]) -> int:
    """Unit pivots alone in their row or column; these cause no fill-in.

    For a boundary matrix this is the algebraic side of a cascade of
    elementary collapses.  Returns the number of pivots removed.
    """
    done = 0
    row_q = [r for r, cs in rows.items() if len(cs) == 1]
    col_q = [c for c, col in cols.items() if len(col) == 1]
    while row_q or col_q:
        if row_q:
            r = row_q.pop()
            cs = rows.get(r)
            if not cs or len(cs) != 1:
                continue
            c = next(iter(cs))
            if cols[c][r] not in (1, -1):
                continue
            # row ops clear column c; only column c changes
            for rr in cols[c]:
                if rr != r:
                    rows[rr].discard(c)
                    if len(rows[rr]) == 1:
                        row_q.append(rr)
                    elif not rows[rr]:
                        del rows[rr]
            del cols[c]
            del rows[r]
        else:
            c = col_q.pop()
            col = cols.get(c)
            if not col or len(col) != 1:
                continue
            r = next(iter(col))
            if col[r] not in (1, -1):
                continue
            # column ops clear row r; only row r changes
            for cc in rows[r]:
                if cc != c:
                    del cols[cc][r]
                    if len(cols[cc]) == 1:
                        col_q.append(cc)
                    elif not cols[cc]:
                        del cols[cc]
            del cols[c]
            del rows[r]
        done += 1
    return done


def rank_mod2(columns: Sequence[int]) -> int:
    """Rank over GF(2) of a matrix whose columns are given as int bitsets."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in columns:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                rank += 1
                break
    return rank
