"""Exact integer linear algebra: Smith normal form, ranks and solvability.

Two engines live here. ``smith_normal_form`` is a dense routine that also
returns the unimodular transforms; it is used for bases of sublattices and for
solving systems. ``invariant_factors`` works on sparse row dictionaries and
only tracks the diagonal, which is all homology needs. Entries are Python ints
throughout, so coefficient growth never overflows.
"""
from __future__ import annotations

from math import gcd

import numpy as np
import scipy.sparse as sp


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def divisor_chain(values):
    """Normalize nonzero diagonal entries to invariant factors d1 | d2 | ... (ascending)."""
    d = sorted(abs(int(v)) for v in values if v)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                g = gcd(d[i], d[j])
                if g != d[i]:
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def _to_lists(M):
    if sp.issparse(M):
        M = M.toarray()
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(len(arr), -1) if arr.size else arr.reshape(0, 0)
    return [[int(v) for v in row] for row in arr]


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(M):
    """Return (D, U, V) with U @ M @ V = D, D diagonal with d1 | d2 | ..., U, V unimodular.

    All three are lists of lists of Python ints.
    """
    A = _to_lists(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        ra, rs = A[dst], A[src]
        for k in range(n):
            if rs[k]:
                ra[k] -= q * rs[k]
        ua, us = U[dst], U[src]
        for k in range(m):
            if us[k]:
                ua[k] -= q * us[k]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        for row in V:
            if row[src]:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            p = A[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return A, U, V


def _det(M):
    """Exact determinant by fraction-free elimination (Bareiss)."""
    A = [row[:] for row in M]
    k = len(A)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for i in range(k - 1):
        if A[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if A[r][i]), None)
            if swap is None:
                return 0
            A[i], A[swap] = A[swap], A[i]
            sign = -sign
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                A[r][c] = (A[r][c] * A[i][i] - A[r][i] * A[i][c]) // prev
        prev = A[i][i]
    return sign * A[-1][-1]


def is_unimodular(M):
    return abs(_det(M)) == 1


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def matmul(A, B):
    """Exact product of list-of-lists matrices."""
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in range(len(A))]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a and b) for col in Bt] for row in A]


def inverse_unimodular(M):
    """Exact inverse of a unimodular matrix by Euclidean row reduction."""
    k = len(M)
    A = [list(row) + [int(i == j) for j in range(k)] for i, row in enumerate(M)]
    for c in range(k):
        while True:
            live = [r for r in range(c, k) if A[r][c]]
            if not live:
                raise ValueError("matrix is singular")
            r0 = min(live, key=lambda r: abs(A[r][c]))
            if len(live) == 1:
                break
            for r in live:
                if r != r0:
                    q = A[r][c] // A[r0][c]
                    A[r] = [a - q * b for a, b in zip(A[r], A[r0])]
        if abs(A[r0][c]) != 1:
            raise ValueError("matrix is not unimodular")
        A[c], A[r0] = A[r0], A[c]
        if A[c][c] < 0:
            A[c] = [-a for a in A[c]]
        for r in range(k):
            if r != c and A[r][c]:
                q = A[r][c]
                A[r] = [a - q * b for a, b in zip(A[r], A[c])]
    return [row[k:] for row in A]


# ---------------------------------------------------------------- sparse engine

class _Sparse:
    """Row-major dictionary matrix with a column index, for elimination."""

    def __init__(self, M):
        M = sp.coo_matrix(M)
        self.rows = {}
        self.cols = {}
        for i, j, v in zip(M.row.tolist(), M.col.tolist(), M.data.tolist()):
            v = int(v)
            if v:
                self.rows.setdefault(i, {})
                self.rows[i][j] = self.rows[i].get(j, 0) + v
        for i, row in list(self.rows.items()):
            for j in [j for j, v in row.items() if v == 0]:
                del row[j]
            if not row:
                del self.rows[i]
                continue
            for j in row:
                self.cols.setdefault(j, set()).add(i)

    def _set(self, i, j, v):
        row = self.rows.setdefault(i, {})
        if v:
            row[j] = v
            self.cols.setdefault(j, set()).add(i)
        else:
            row.pop(j, None)
            c = self.cols.get(j)
            if c is not None:
                c.discard(i)
                if not c:
                    del self.cols[j]

    def row_combine(self, i, r, a, b):
        """row i <- a*row i + b*row r (row r unchanged)."""
        row_i = self.rows.get(i, {})
        row_r = self.rows[r]
        keys = set(row_i) | set(row_r)
        for j in keys:
            self._set(i, j, a * row_i.get(j, 0) + b * row_r.get(j, 0))
        if not self.rows.get(i):
            self.rows.pop(i, None)

    def two_rows(self, r, i, x, y, u, w):
        """(row r, row i) <- (x r + y i, u r + w i)."""
        row_r = dict(self.rows.get(r, {}))
        row_i = dict(self.rows.get(i, {}))
        for j in set(row_r) | set(row_i):
            a, b = row_r.get(j, 0), row_i.get(j, 0)
            self._set(r, j, x * a + y * b)
            self._set(i, j, u * a + w * b)
        for k in (r, i):
            if not self.rows.get(k):
                self.rows.pop(k, None)

    def two_cols(self, c, j, x, y, u, w):
        """(col c, col j) <- (x c + y j, u c + w j)."""
        touched = set(self.cols.get(c, ())) | set(self.cols.get(j, ()))
        for i in touched:
            row = self.rows[i]
            a, b = row.get(c, 0), row.get(j, 0)
            self._set(i, c, x * a + y * b)
            self._set(i, j, u * a + w * b)
            if not self.rows.get(i):
                self.rows.pop(i, None)

    def drop(self, r, c):
        for j in self.rows.pop(r, {}):
            s = self.cols.get(j)
            if s is not None:
                s.discard(r)
                if not s:
                    del self.cols[j]
        for i in self.cols.pop(c, set()):
            row = self.rows.get(i)
            if row is not None:
                row.pop(c, None)
                if not row:
                    del self.rows[i]


def _nearest(v, p):
    """Integer q minimizing |v - q p|."""
    q, rem = divmod(v, p)
    if 2 * abs(rem) > abs(p):
        q += 1
    return q


def _pivot_candidates(S):
    """All entries sorted by (|value|, Markowitz cost, row, column)."""
    cands = []
    for j, rs in S.cols.items():
        clen = len(rs)
        for i in rs:
            cands.append((abs(S.rows[i][j]), (len(S.rows[i]) - 1) * (clen - 1), i, j))
    cands.sort()
    return cands


def invariant_factors(M):
    """Nonzero invariant factors (1s included) of an integer matrix, as a divisor chain.

    The length of the result is the rank. Pivots of the smallest magnitude are taken
    from one sorted scan until they run out, which avoids a rescan per pivot.
    """
    S = _Sparse(M)
    pivots = []
    queue = []
    while S.cols:
        r = c = None
        while queue:
            best, _, i, j = queue.pop()
            v = S.rows.get(i, {}).get(j)
            if v and abs(v) <= best:
                r, c = i, j
                break
        if r is None:
            cands = _pivot_candidates(S)
            queue = [x for x in cands if x[0] == cands[0][0]][::-1]
            _, _, r, c = queue.pop()
        while True:
            # Euclid down column c with nearest-integer quotients; the pivot moves to
            # the smallest entry, which keeps coefficients from growing.
            while len(S.cols.get(c, ())) > 1:
                r = min(S.cols[c], key=lambda i: (abs(S.rows[i][c]), len(S.rows[i]), i))
                p = S.rows[r][c]
                for i in [i for i in S.cols[c] if i != r]:
                    S.row_combine(i, r, 1, -_nearest(S.rows[i][c], p))
            p = S.rows[r][c]
            if all(w % p == 0 for w in S.rows[r].values()):
                break  # column ops would only touch row r, which is dropped next
            # some entry of row r is not a multiple: reduce the row and restart
            for j in [j for j in S.rows[r] if j != c]:
                w = S.rows[r].get(j, 0)
                q = _nearest(w, p)
                if q:
                    S.two_cols(c, j, 1, 0, -q, 1)
            c = min(S.rows[r], key=lambda j: (abs(S.rows[r][j]), len(S.cols[j]), j))
        pivots.append(S.rows[r][c])
        S.drop(r, c)
    return divisor_chain(pivots)


def rank(M):
    return len(invariant_factors(M))


def rank_mod_p(M, p):
    """Rank over the field with p elements."""
    M = sp.coo_matrix(M)
    rows = {}
    for i, j, v in zip(M.row.tolist(), M.col.tolist(), M.data.tolist()):
        v = int(v) % p
        if v:
            rows.setdefault(i, {})
            rows[i][j] = (rows[i].get(j, 0) + v) % p
    rows = {i: {j: v for j, v in r.items() if v} for i, r in rows.items()}
    rows = {i: r for i, r in rows.items() if r}
    cols = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    rk = 0
    while cols:
        c, rs = min(cols.items(), key=lambda kv: (len(kv[1]), kv[0]))
        r = min(rs, key=lambda i: (len(rows[i]), i))
        inv = pow(rows[r][c], -1, p)
        pivot_row = rows.pop(r)
        for j in pivot_row:
            cols[j].discard(r)
        for i in list(cols[c]):
            f = rows[i][c] * inv % p
            row = rows[i]
            for j, v in pivot_row.items():
                nv = (row.get(j, 0) - f * v) % p
                if nv:
                    row[j] = nv
                    cols.setdefault(j, set()).add(i)
                else:
                    row.pop(j, None)
                    cols[j].discard(i)
            if not row:
                del rows[i]
        for j in list(cols):
            if not cols[j]:
                del cols[j]
        rk += 1
    return rk


def in_image(A, y):
    """True when the integer vector y is an integer combination of the columns of A.

    The column lattice of [A | y] contains that of A with finite index when the
    ranks agree; the index is the ratio of the invariant-factor products.
    """
    A = sp.csr_matrix(A)
    y = np.asarray(y, dtype=np.int64).reshape(-1, 1)
    if not y.any():
        return True
    fa = invariant_factors(A)
    fb = invariant_factors(sp.hstack([A, sp.csr_matrix(y)]))
    if len(fa) != len(fb):
        return False
    pa = pb = 1
    for v in fa:
        pa *= v
    for v in fb:
        pb *= v
    return pa == pb


def solve_integer(A, y):
    """An integer solution x of A x = y, or None when none exists."""
    A = _to_lists(A)
    y = [int(v) for v in np.asarray(y).ravel()]
    D, U, V = smith_normal_form(A)
    m = len(D)
    n = len(D[0]) if m else 0
    Uy = [sum(U[i][k] * y[k] for k in range(m)) for i in range(m)]
    z = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d:
            if Uy[i] % d:
                return None
            z[i] = Uy[i] // d
        elif Uy[i]:
            return None
    return [sum(V[j][k] * z[k] for k in range(n)) for j in range(n)]
