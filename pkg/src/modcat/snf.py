"""Exact integer matrix normal forms.

Everything in this package reduces to integer linear algebra on small dense
matrices, so the routines here work on lists of rows of Python ints and stay
exact.  Two normal forms are provided:

* Smith normal form, with or without the unimodular transforms.  The full
  version returns ``D = left @ A @ right`` together with ``right_inv`` so
  callers can change coordinates in both directions.
* Hermite normal form (row-style, upper echelon) for canonical lattice keys
  and membership tests.

Conventions: matrices are rectangular lists of lists, rows first.  A lattice
is given by a generating list of row vectors; it need not be a basis.
"""

from __future__ import annotations

from dataclasses import dataclass


def identity_matrix(m: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(m)] for i in range(m)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Product of two integer matrices (rows x cols must be compatible)."""
    if a and b and len(a[0]) != len(b):
        raise ValueError("incompatible shapes for matrix product")
    cols = len(b[0]) if b else 0
    return [
        [sum(arow[t] * b[t][j] for t in range(len(b))) for j in range(cols)]
        for arow in a
    ]


def mat_vec(a: list[list[int]], x: list[int]) -> list[int]:
    return [sum(row[i] * x[i] for i in range(len(x))) for row in a]


def vec_mat(x: list[int], a: list[list[int]]) -> list[int]:
    cols = len(a[0]) if a else 0
    return [sum(x[i] * a[i][j] for i in range(len(a))) for j in range(cols)]


@dataclass
class SmithForm:
    """D = left @ A @ right with left, right unimodular.

    ``diagonal`` lists D[i][i] for i < min(rows, cols), nonnegative, each
    dividing the next among the nonzero entries (zeros, if any, come last).
    ``right_inv`` is the exact integer inverse of ``right``.
    """

    rows: int
    cols: int
    diagonal: list[int]
    left: list[list[int]]
    right: list[list[int]]
    right_inv: list[list[int]]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _pivot_position(m: list[list[int]], t: int, rows: int, cols: int):
    """Smallest |entry| > 0 in the trailing submatrix, ties broken by index."""
    best = None
    best_val = None
    for i in range(t, rows):
        mi = m[i]
        for j in range(t, cols):
            v = mi[j]
            if v:
                a = v if v > 0 else -v
                if best_val is None or a < best_val:
                    best_val = a
                    best = (i, j)
                    if a == 1:
                        return best
    return best


def smith_normal_form(matrix: list[list[int]]) -> SmithForm:
    """Full Smith normal form with transform tracking.

    Deterministic: the pivot choice scans for the smallest nonzero absolute
    value (first occurrence wins), so identical inputs give identical
    transforms.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [list(r) for r in matrix]
    left = identity_matrix(rows)
    right = identity_matrix(cols)
    right_inv = identity_matrix(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        msrc, mdst = m[src], m[dst]
        for c in range(cols):
            mdst[c] += q * msrc[c]
        lsrc, ldst = left[src], left[dst]
        for c in range(rows):
            ldst[c] += q * lsrc[c]

    def negate_row(i):
        m[i] = [-v for v in m[i]]
        left[i] = [-v for v in left[i]]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]
        right_inv[i], right_inv[j] = right_inv[j], right_inv[i]

    def add_col(src, dst, q):
        # col dst += q * col src; inverse: row src -= q * row dst
        for r in m:
            r[dst] += q * r[src]
        for r in right:
            r[dst] += q * r[src]
        vsrc, vdst = right_inv[src], right_inv[dst]
        for c in range(cols):
            vsrc[c] -= q * vdst[c]

    def negate_col(i):
        for r in m:
            r[i] = -r[i]
        for r in right:
            r[i] = -r[i]
        right_inv[i] = [-v for v in right_inv[i]]

    for t in range(min(rows, cols)):
        while True:
            pos = _pivot_position(m, t, rows, cols)
            if pos is None:
                break
            i, j = pos
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            if m[t][t] < 0:
                negate_row(t)
            # Clear column t, then row t; restart if a remainder survived.
            dirty = False
            p = m[t][t]
            for r in range(t + 1, rows):
                if m[r][t]:
                    q = m[r][t] // p
                    add_row(t, r, -q)
                    if m[r][t]:
                        dirty = True
            for c in range(t + 1, cols):
                if m[t][c]:
                    q = m[t][c] // p
                    add_col(t, c, -q)
                    if m[t][c]:
                        dirty = True
            if dirty:
                continue
            # Pivot must divide every remaining entry for the divisor chain.
            p = m[t][t]
            offender = None
            for r in range(t + 1, rows):
                mr = m[r]
                for c in range(t + 1, cols):
                    if mr[c] % p:
                        offender = r
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if m[t][t] < 0:
            negate_row(t)

    diagonal = [m[i][i] for i in range(min(rows, cols))]
    return SmithForm(rows, cols, diagonal, left, right, right_inv)


def snf_diagonal(matrix: list[list[int]]) -> list[int]:
    """Smith diagonal only, no transform bookkeeping (hot path).

    Row/column operations are applied in place on a copy; the result is the
    same ``diagonal`` list ``smith_normal_form`` would produce.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [list(r) for r in matrix]
    n_min = min(rows, cols)
    for t in range(n_min):
        while True:
            pos = _pivot_position(m, t, rows, cols)
            if pos is None:
                break
            i, j = pos
            if i != t:
                m[i], m[t] = m[t], m[i]
            if j != t:
                for r in m:
                    r[j], r[t] = r[t], r[j]
            if m[t][t] < 0:
                m[t] = [-v for v in m[t]]
            dirty = False
            p = m[t][t]
            mt = m[t]
            for r in range(t + 1, rows):
                mr = m[r]
                if mr[t]:
                    q = mr[t] // p
                    for c in range(t, cols):
                        mr[c] -= q * mt[c]
                    if mr[t]:
                        dirty = True
            for c in range(t + 1, cols):
                if mt[c]:
                    q = mt[c] // p
                    for r in range(t, rows):
                        m[r][c] -= q * m[r][t]
                    if mt[c]:
                        dirty = True
            if dirty:
                continue
            p = m[t][t]
            offender = None
            for r in range(t + 1, rows):
                mr = m[r]
                for c in range(t + 1, cols):
                    if mr[c] % p:
                        offender = r
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            mo = m[offender]
            m[t] = [a + b for a, b in zip(mt, mo)]
        if m[t][t] < 0:
            m[t] = [-v for v in m[t]]
    return [m[i][i] for i in range(n_min)]


def hermite_normal_form(rows_in: list[list[int]], cols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows_in``.

    Returns the echelon basis: pivots positive and strictly right-moving,
    entries above each pivot reduced to [0, pivot).  Zero rows are dropped,
    so the result is a canonical key for the lattice itself.
    """
    work = [list(r) for r in rows_in if any(r)]
    result: list[list[int]] = []
    for col in range(cols):
        nonzero = [r for r in work if r[col]]
        work = [r for r in work if not r[col]]
        if not nonzero:
            continue
        pivot = nonzero[0]
        for other in nonzero[1:]:
            while other[col]:
                q = pivot[col] // other[col]
                if q:
                    for c in range(cols):
                        pivot[c] -= q * other[c]
                pivot, other = other, pivot
            if any(other):
                work.append(other)
        if pivot[col] < 0:
            pivot = [-v for v in pivot]
        result.append(pivot)
    # reduce entries above each pivot, left to right: a pass at pivot column p
    # only disturbs columns > p of the rows above, so already-finished pivot
    # columns stay reduced and the output is the unique reduced basis
    for i in range(1, len(result)):
        p = next(c for c, x in enumerate(result[i]) if x)
        pv = result[i][p]
        for j in range(i):
            q = result[j][p] // pv
            if q:
                for c in range(cols):
                    result[j][c] -= q * result[i][c]
    return result


def lattice_key(rows_in: list[list[int]], cols: int) -> tuple[tuple[int, ...], ...]:
    """Canonical hashable key for the lattice spanned by ``rows_in``."""
    return tuple(tuple(r) for r in hermite_normal_form(rows_in, cols))


def lattice_member(hnf_basis: list[list[int]], vec: list[int]) -> bool:
    """Membership of ``vec`` in the lattice with echelon basis ``hnf_basis``."""
    v = list(vec)
    for b in hnf_basis:
        p = next(i for i, x in enumerate(b) if x)
        if v[p] % b[p]:
            return False
        q = v[p] // b[p]
        if q:
            for c in range(len(v)):
                v[c] -= q * b[c]
    return not any(v)
