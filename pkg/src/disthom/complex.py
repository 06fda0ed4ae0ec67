"""Chain complexes of finite magmas as sparse integer matrices.

Distributive complexes put C_n = Z[X^(n+1)]; group complexes put C_n = Z[X^n].
Basis tuples are listed in lexicographic order, so the index of a tuple is its
base-|X| value. Every complex checks that consecutive boundaries compose to
zero when it is built.
"""
from __future__ import annotations

import itertools
import json

import numpy as np
import scipy.sparse as sp

from . import snf
from .errors import (
    InputError,
    NotASpindle,
    NotASubcomplex,
    NotAssociative,
    WeakDistributivityViolated,
)
from .magma import (
    BinOp,
    associativity_failures,
    distributivity_failures,
    is_idempotent,
    weak_distributivity_failures,
)


# ---------------------------------------------------------------- systems

class MultiTermSystem:
    """Operations *_1..*_k with integer weights a_1..a_k; the boundary is sum a_j d^(*_j)."""

    def __init__(self, ops, weights=None, check=True):
        ops = list(ops)
        if not ops:
            raise InputError("a system needs at least one operation")
        n = ops[0].n
        for op in ops:
            if op.n != n:
                raise InputError("all operations must share the carrier")
        weights = [1] * len(ops) if weights is None else [int(w) for w in weights]
        if len(weights) != len(ops):
            raise InputError(f"{len(weights)} weights for {len(ops)} operations")
        self.ops = tuple(ops)
        self.weights = tuple(weights)
        self.n = n
        self.sigma = sum(weights)
        if check:
            w = self.weak_distributivity_witness()
            if w is not None:
                raise WeakDistributivityViolated("operations are not weakly distributive", witness=w)

    def __repr__(self):
        names = ", ".join(op.name or "?" for op in self.ops)
        return f"MultiTermSystem([{names}], weights={list(self.weights)})"

    @property
    def is_multi_spindle(self):
        return all(is_idempotent(op) for op in self.ops)

    def weak_distributivity_witness(self):
        """First failing (op pair, triple), or None for a weakly distributive set."""
        for i, f in enumerate(self.ops):
            bad = distributivity_failures(f, f)
            if bad:
                return {"ops": [i, i], "triple": list(bad[0])}
        for i, j in itertools.combinations(range(len(self.ops)), 2):
            bad = weak_distributivity_failures(self.ops[i], self.ops[j])
            if bad:
                return {"ops": [i, j], "triple": list(bad[0])}
        return None


def one_term(op, weight=1, check=True):
    return MultiTermSystem([op], [weight], check=check)


# ---------------------------------------------------------------- tuple helpers

def all_tuples(m, length):
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((m,) * length).reshape(length, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def tuple_index(arr, m):
    arr = np.asarray(arr, dtype=np.int64)
    if arr.shape[1] == 0:
        return np.zeros(arr.shape[0], dtype=np.int64)
    powers = m ** np.arange(arr.shape[1] - 1, -1, -1, dtype=np.int64)
    return arr @ powers


def _map_matrix(target, rows, cols, data=None):
    n_src = len(target)
    data = np.ones(n_src, dtype=np.int64) if data is None else data
    return sp.csr_matrix((data, (target, np.arange(n_src))), shape=(rows, cols), dtype=np.int64)


def _zero(rows, cols):
    return sp.csr_matrix((rows, cols), dtype=np.int64)


def _face_one(table, tup, i):
    if i == 0:
        return tup[:, 1:]
    acted = table[tup[:, :i], tup[:, i:i + 1]]
    return np.hstack([acted, tup[:, i + 1:]])


def face_map(sys, n, i):
    """Matrix of d_i = sum_j a_j d_i^(*_j) from Z[X^(n+1)] to Z[X^n]."""
    if not 0 <= i <= n:
        raise InputError(f"face index {i} out of range for degree {n}")
    m = sys.n
    tup = all_tuples(m, n + 1)
    out = _zero(m ** n, m ** (n + 1))
    for op, w in zip(sys.ops, sys.weights):
        if w:
            out = out + w * _map_matrix(tuple_index(_face_one(op.table, tup, i), m), m ** n, m ** (n + 1))
    return out.tocsr()


def degeneracy_map(size, n, i):
    """s_i from Z[X^(n+1)] to Z[X^(n+2)], doubling coordinate i."""
    if not 0 <= i <= n:
        raise InputError(f"degeneracy index {i} out of range for degree {n}")
    tup = all_tuples(size, n + 1)
    new = np.hstack([tup[:, :i + 1], tup[:, i:]])
    return _map_matrix(tuple_index(new, size), size ** (n + 2), size ** (n + 1))


def t_map(sys, n, i):
    """t_i = d_i s_i - d_(i+1) s_i on degree n."""
    s = degeneracy_map(sys.n, n, i)
    return (face_map(sys, n + 1, i) @ s - face_map(sys, n + 1, i + 1) @ s).tocsr()


def distributive_boundary(sys, n):
    """Matrix of the boundary on degree n >= 1."""
    out = _zero(sys.n ** n, sys.n ** (n + 1))
    for i in range(n + 1):
        out = out + (-1) ** i * face_map(sys, n, i)
    return out.tocsr()


# ---------------------------------------------------------------- complexes

class GradedComplex:
    """Free chain complex: a basis per degree and boundary matrices between them.

    ``boundaries[n]`` maps degree n to degree n-1 and exists for n_min < n <= n_max.
    Derived complexes remember their parent with coordinate maps in both
    directions (``to_self`` takes parent coordinates, ``to_parent`` own ones).
    """

    def __init__(self, kind, bases, boundaries, n_min, n_max, carrier_size,
                 parent=None, to_self=None, to_parent=None, verify=True, meta=None):
        self.kind = kind
        self.bases = {d: list(b) for d, b in bases.items()}
        self.boundaries = {d: sp.csr_matrix(b, dtype=np.int64) for d, b in boundaries.items()}
        self.n_min = n_min
        self.n_max = n_max
        self.carrier_size = carrier_size
        self.parent = parent
        self.to_self = to_self or {}
        self.to_parent = to_parent or {}
        self.meta = dict(meta or {})
        self._index = {}
        self._cache = {}
        for d in range(n_min + 1, n_max + 1):
            shape = self.boundaries[d].shape
            if shape != (len(self.bases[d - 1]), len(self.bases[d])):
                raise InputError(f"boundary {d} has shape {shape}, bases give "
                                 f"{(len(self.bases[d - 1]), len(self.bases[d]))}")
        if verify:
            self.verify()

    def __repr__(self):
        ranks = [self.dim(d) for d in self.degrees()]
        return f"GradedComplex({self.kind}, degrees {self.n_min}..{self.n_max}, ranks {ranks})"

    def degrees(self):
        return range(self.n_min, self.n_max + 1)

    def dim(self, n):
        return len(self.bases[n]) if n in self.bases else 0

    def boundary(self, n):
        if n in self.boundaries:
            return self.boundaries[n]
        if n == self.n_min or n == self.n_max + 1:
            return _zero(self.dim(n - 1), self.dim(n))
        raise InputError(f"degree {n} outside {self.n_min}..{self.n_max}")

    def verify(self):
        """Check boundary(n-1) @ boundary(n) = 0; raises with a matrix witness."""
        for d in range(self.n_min + 2, self.n_max + 1):
            prod = (self.boundaries[d - 1] @ self.boundaries[d]).tocoo()
            nz = np.nonzero(prod.data)[0]
            if len(nz):
                k = nz[0]
                i, j = int(prod.row[k]), int(prod.col[k])
                witness = {"degree": d, "row": self.label(d - 2, i), "column": self.label(d, j),
                           "value": int(prod.data[k])}
                raise WeakDistributivityViolated("boundary squared is nonzero", witness=witness)

    def label(self, n, i):
        lab = self.bases[n][i]
        return list(lab) if isinstance(lab, tuple) else lab

    def index(self, n):
        if n not in self._index:
            self._index[n] = {lab: i for i, lab in enumerate(self.bases[n])}
        return self._index[n]

    @property
    def has_tuple_basis(self):
        return all(isinstance(b, tuple) for d in self.degrees() for b in self.bases[d])

    def root(self):
        cx = self
        while cx.parent is not None:
            cx = cx.parent
        return cx

    def coordinates(self, vec):
        """Coordinates of a ChainVector (given by basis tuples of the root complex)."""
        root = self.root()
        n = vec.degree
        idx = root.index(n)
        y = np.zeros(root.dim(n), dtype=np.int64)
        for t, c in vec.coeffs.items():
            if t not in idx:
                raise InputError(f"{t} is not a basis tuple in degree {n}")
            y[idx[t]] += c
        chain = []
        cx = self
        while cx.parent is not None:
            chain.append(cx)
            cx = cx.parent
        for cx in reversed(chain):
            y = np.asarray(cx.to_self[n] @ y).ravel()
        return y

    def to_json(self):
        degrees = {}
        for d in self.degrees():
            entry = {"basis": [self.label(d, i) for i in range(self.dim(d))]}
            if d in self.boundaries:
                B = self.boundaries[d].tocoo()
                order = np.lexsort((B.col, B.row))
                entry["boundary"] = {
                    "shape": list(B.shape),
                    "entries": [[int(B.row[k]), int(B.col[k]), int(B.data[k])] for k in order if B.data[k]],
                }
            degrees[str(d)] = entry
        return {"kind": list(self.kind), "carrier_size": self.carrier_size,
                "n_min": self.n_min, "n_max": self.n_max, "degrees": degrees}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


class ChainVector:
    """A chain: degree plus a sparse map from basis tuples to nonzero integers."""

    def __init__(self, degree, coeffs=None):
        self.degree = degree
        self.coeffs = {}
        for t, c in (coeffs or {}).items():
            self.add(t, c)

    def add(self, t, c):
        t = tuple(int(x) for x in t)
        v = self.coeffs.get(t, 0) + int(c)
        if v:
            self.coeffs[t] = v
        else:
            self.coeffs.pop(t, None)

    def __add__(self, other):
        out = ChainVector(self.degree, self.coeffs)
        for t, c in other.coeffs.items():
            out.add(t, c)
        return out

    def __neg__(self):
        return ChainVector(self.degree, {t: -c for t, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, ChainVector) and self.degree == other.degree and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        terms = " + ".join(f"{c}*{t}" for t, c in sorted(self.coeffs.items()))
        return f"ChainVector[{self.degree}]({terms or '0'})"

    def to_array(self, size):
        """Dense coordinates in the lexicographic tuple basis of a carrier of this size."""
        length = len(next(iter(self.coeffs))) if self.coeffs else None
        if length is None:
            return None
        y = np.zeros(size ** length, dtype=np.int64)
        for t, c in self.coeffs.items():
            y[tuple_index(np.array([t]), size)[0]] += c
        return y

    @classmethod
    def from_array(cls, degree, y, basis):
        return cls(degree, {basis[i]: int(v) for i, v in enumerate(np.asarray(y).ravel()) if v})


def build_distributive_complex(sys, n_max, augmented=False):
    """C_n = Z[X^(n+1)], 0 <= n <= n_max, with the weighted distributive boundary.

    With ``augmented`` there is a degree -1 copy of Z and the degree-0 boundary
    sends each generator to sum(weights): every one-term piece drops x_0.
    """
    if n_max < 0:
        raise InputError("n_max must be >= 0")
    m = sys.n
    bases = {n: [tuple(int(v) for v in row) for row in all_tuples(m, n + 1)] for n in range(n_max + 1)}
    boundaries = {n: distributive_boundary(sys, n) for n in range(1, n_max + 1)}
    n_min = 0
    if augmented:
        bases[-1] = [()]
        boundaries[0] = sp.csr_matrix(np.full((1, m), sys.sigma, dtype=np.int64))
        n_min = -1
    variant = "augmented" if augmented else "full"
    try:
        return GradedComplex(("distributive", variant), bases, boundaries, n_min, n_max, m,
                             meta={"system": sys})
    except WeakDistributivityViolated as exc:
        witness = {"boundary": exc.witness, "operations": sys.weak_distributivity_witness()}
        raise WeakDistributivityViolated("boundary squared is nonzero", witness=witness) from None


# ---------------------------------------------------------------- group and Hochschild

def _require_associative(op):
    bad = associativity_failures(op)
    if bad:
        raise NotAssociative("operation is not associative", witness={"triple": list(bad[0])})


def group_face_map(op, n, i):
    """Face d_i on Z[X^n]: d_0 drops x_1, d_n drops x_n, otherwise multiply x_i x_(i+1)."""
    if not 0 <= i <= n or n < 1:
        raise InputError(f"face index {i} out of range for degree {n}")
    m = op.n
    tup = all_tuples(m, n)
    if i == 0:
        new = tup[:, 1:]
    elif i == n:
        new = tup[:, :-1]
    else:
        prod = op.table[tup[:, i - 1], tup[:, i]][:, None]
        new = np.hstack([tup[:, :i - 1], prod, tup[:, i + 1:]])
    return _map_matrix(tuple_index(new, m), m ** (n - 1), m ** n)


_GROUP_FACES = {
    "full": lambda n: range(0, n + 1),
    "truncated-left": lambda n: range(1, n + 1),
    "truncated-right": lambda n: range(0, n),
}


def group_boundary(ops, weights, n, variant="full"):
    """Weighted sum of group boundaries over several associative operations."""
    out = _zero(ops[0].n ** (n - 1), ops[0].n ** n)
    for op, w in zip(ops, weights):
        for i in _GROUP_FACES[variant](n):
            out = out + w * (-1) ** i * group_face_map(op, n, i)
    return out.tocsr()


def build_group_complex(op, n_max, variant="full", augmented=False):
    """C_n = Z[X^n] for 0 <= n <= n_max with the (possibly truncated) group boundary."""
    _require_associative(op)
    if variant not in _GROUP_FACES:
        raise InputError(f"unknown group-complex variant {variant!r}")
    if augmented and variant != "full":
        raise InputError("augmentation is only compatible with the full group boundary")
    m = op.n
    bases = {n: [tuple(int(v) for v in row) for row in all_tuples(m, n)] for n in range(n_max + 1)}
    boundaries = {n: group_boundary([op], [1], n, variant) for n in range(1, n_max + 1)}
    n_min = 0
    if augmented:
        bases[-1] = [()]
        boundaries[0] = sp.csr_matrix(np.ones((1, 1), dtype=np.int64))
        n_min = -1
    family = "group" if variant == "full" else variant
    return GradedComplex((family, "augmented" if augmented else "full"), bases, boundaries,
                         n_min, n_max, m, meta={"op": op})


def hochschild_face_map(op, n, i):
    """Face d_i on Z[X^(n+1)]; the last face wraps: d_n(x) = (x_n x_0, x_1, ..., x_(n-1))."""
    if not 0 <= i <= n or n < 1:
        raise InputError(f"face index {i} out of range for degree {n}")
    m = op.n
    tup = all_tuples(m, n + 1)
    if i < n:
        prod = op.table[tup[:, i], tup[:, i + 1]][:, None]
        new = np.hstack([tup[:, :i], prod, tup[:, i + 2:]])
    else:
        prod = op.table[tup[:, n], tup[:, 0]][:, None]
        new = np.hstack([prod, tup[:, 1:n]])
    return _map_matrix(tuple_index(new, m), m ** n, m ** (n + 1))


def build_hochschild_complex(op, n_max, augmented=False):
    _require_associative(op)
    m = op.n
    bases = {n: [tuple(int(v) for v in row) for row in all_tuples(m, n + 1)] for n in range(n_max + 1)}
    boundaries = {}
    for n in range(1, n_max + 1):
        out = _zero(m ** n, m ** (n + 1))
        for i in range(n + 1):
            out = out + (-1) ** i * hochschild_face_map(op, n, i)
        boundaries[n] = out.tocsr()
    n_min = 0
    if augmented:
        bases[-1] = [()]
        boundaries[0] = sp.csr_matrix(np.ones((1, m), dtype=np.int64))
        n_min = -1
    return GradedComplex(("hochschild", "augmented" if augmented else "full"), bases, boundaries,
                         n_min, n_max, m, meta={"op": op})


def presimplicial_failures(face, n):
    """Pairs i < j <= n where d_i d_j != d_(j-1) d_i on degree n.

    ``face(k, i)`` must return the matrix of d_i on degree k.
    """
    bad = []
    for j in range(1, n + 1):
        for i in range(j):
            diff = (face(n - 1, i) @ face(n, j) - face(n - 1, j - 1) @ face(n, i)).tocoo()
            if np.any(diff.data):
                bad.append((i, j))
    return bad


# ---------------------------------------------------------------- sub and quotient complexes

def _system(cx):
    root = cx.root()
    sys = root.meta.get("system")
    if sys is None:
        raise InputError("this construction needs a distributive complex")
    return sys


def _is_degenerate(t):
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


def _basis_predicate(which, cx, t=None, A=None):
    if which == "degenerate":
        return _is_degenerate
    if which == "early-degenerate":
        return lambda x: len(x) >= 2 and x[0] == x[1]
    if which == "point":
        if t is None:
            raise InputError("the point subcomplex needs an element t")
        return lambda x: all(v == t for v in x)
    if which == "sub-multishelf":
        if A is None:
            raise InputError("the sub-multishelf subcomplex needs a subset A")
        A = set(A)
        return lambda x: all(v in A for v in x)
    return None


_KIND = {
    "degenerate": "degenerate-sub", "early-degenerate": "early-degenerate", "point": "point",
    "sub-multishelf": "sub-multishelf", "t": "t-sub", "tD": "tD-sub", "t0": "t0-sub", "t0D": "t0D-sub",
}


def subcomplex(parent, which, t=None, A=None):
    """Subcomplex spanned by degenerate tuples, t-images, a point, or tuples over a subset.

    ``which`` is one of degenerate, early-degenerate, point (with t),
    sub-multishelf (with A), t, tD, t0, t0D. The last four are spans of images of
    the maps t_i (and s_i for the D versions).
    """
    if which not in _KIND:
        raise InputError(f"unknown subcomplex {which!r}")
    if which == "sub-multishelf":
        sys = _system(parent)
        Aset = set(A)
        for op in sys.ops:
            for a in Aset:
                for b in Aset:
                    if op(a, b) not in Aset:
                        raise NotASubcomplex("subset is not closed under the operations",
                                             witness={"op": op.name, "pair": [a, b]})
    pred = _basis_predicate(which, parent, t, A)
    if pred is not None:
        return _basis_subcomplex(parent, pred, (parent.kind[0], _KIND[which]))
    return _span_subcomplex(parent, which)


def _basis_subcomplex(parent, pred, kind):
    if not parent.has_tuple_basis:
        raise InputError("basis-subset subcomplexes need a complex with tuple labels")
    keep = {d: [i for i, lab in enumerate(parent.bases[d]) if pred(lab)] for d in parent.degrees()}
    if parent.n_min == -1 and kind[1] in ("point", "sub-multishelf"):
        keep[-1] = [0]
    for d in range(parent.n_min + 1, parent.n_max + 1):
        B = parent.boundaries[d].tocsc()
        inside = np.zeros(parent.dim(d - 1), dtype=bool)
        inside[keep[d - 1]] = True
        for j in keep[d]:
            rows = B.indices[B.indptr[j]:B.indptr[j + 1]]
            vals = B.data[B.indptr[j]:B.indptr[j + 1]]
            out = rows[(~inside[rows]) & (vals != 0)]
            if len(out):
                raise NotASubcomplex("boundary leaves the span",
                                     witness={"degree": d, "chain": parent.label(d, j),
                                              "lands_on": parent.label(d - 1, int(out[0]))})
    bases = {d: [parent.bases[d][i] for i in keep[d]] for d in parent.degrees()}
    boundaries = {d: parent.boundaries[d][keep[d - 1], :][:, keep[d]]
                  for d in range(parent.n_min + 1, parent.n_max + 1)}
    to_self, to_parent = {}, {}
    for d in parent.degrees():
        k = keep[d]
        to_parent[d] = sp.csr_matrix((np.ones(len(k), dtype=np.int64), (k, np.arange(len(k)))),
                                     shape=(parent.dim(d), len(k)))
        to_self[d] = to_parent[d].T.tocsr()
    cx = GradedComplex(kind, bases, boundaries, parent.n_min, parent.n_max, parent.carrier_size,
                       parent=parent, to_self=to_self, to_parent=to_parent, meta={"keep": keep})
    return cx


def _spanning_columns(parent, which, d):
    sys = _system(parent)
    if parent.root() is not parent:
        raise InputError("t-subcomplexes are only built inside a full distributive complex")
    m = sys.n
    mats = []
    if d < 0:
        return _zero(parent.dim(d), 0)
    t_range = range(d + 1) if which in ("t", "tD") else range(1)
    for i in t_range:
        mats.append(t_map(sys, d, i))
    if which in ("tD", "t0D") and d >= 1:
        s_range = range(d) if which == "tD" else range(1)
        for i in s_range:
            mats.append(degeneracy_map(m, d - 1, i))
    return sp.hstack(mats).tocsc()


def _reduced_columns(G):
    """Dense integer columns with zeros and repeats (up to sign) removed."""
    G = G.tocsc()
    seen = set()
    cols = []
    for j in range(G.shape[1]):
        lo, hi = G.indptr[j], G.indptr[j + 1]
        entries = tuple(sorted((int(r), int(v)) for r, v in zip(G.indices[lo:hi], G.data[lo:hi]) if v))
        if not entries:
            continue
        if entries[0][1] < 0:
            entries = tuple((r, -v) for r, v in entries)
        if entries in seen:
            continue
        seen.add(entries)
        col = [0] * G.shape[0]
        for r, v in entries:
            col[r] = v
        cols.append(col)
    return [list(row) for row in zip(*cols)] if cols else [[] for _ in range(G.shape[0])]


def _lattice_basis(G):
    """Basis data for the column span of G: (U, U^-1, diagonal, rank)."""
    A = _reduced_columns(G)
    m = len(A)
    if not A or not A[0]:
        I = [[int(i == j) for j in range(m)] for i in range(m)]
        return I, I, [], 0
    D, U, _ = snf.smith_normal_form(A)
    diag = [d for d in snf.diagonal(D) if d]
    return U, snf.inverse_unimodular(U), diag, len(diag)


def _span_subcomplex(parent, which):
    data = {}
    for d in parent.degrees():
        data[d] = _lattice_basis(_spanning_columns(parent, which, d))
    bases, to_self, to_parent = {}, {}, {}
    for d in parent.degrees():
        U, Ui, diag, k = data[d]
        bases[d] = [("span", d, i) for i in range(k)]
        ui = np.array(Ui, dtype=object).reshape(parent.dim(d), -1)
        emb = np.array([[ui[r][i] * diag[i] for i in range(k)] for r in range(parent.dim(d))], dtype=object)
        to_parent[d] = sp.csr_matrix(emb.astype(np.int64).reshape(parent.dim(d), k))
        to_self[d] = (np.array(U, dtype=object).reshape(-1, parent.dim(d))[:k], diag)
    boundaries = {}
    for d in range(parent.n_min + 1, parent.n_max + 1):
        U, _, diag, k = data[d - 1]
        image = (parent.boundaries[d] @ to_parent[d]).toarray().astype(object)
        coords = np.array(U, dtype=object).reshape(-1, parent.dim(d - 1)) @ image if parent.dim(d - 1) else image
        for j in range(coords.shape[1] if coords.ndim == 2 else 0):
            for r in range(coords.shape[0]):
                v = coords[r, j]
                if (r >= k and v) or (r < k and v % diag[r]):
                    raise NotASubcomplex("boundary leaves the span",
                                         witness={"degree": d, "generator": j})
        sub = np.array([[coords[r, j] // diag[r] for j in range(coords.shape[1])] for r in range(k)],
                       dtype=object).reshape(k, coords.shape[1])
        boundaries[d] = sp.csr_matrix(sub.astype(np.int64))
    cx = GradedComplex((parent.kind[0], _KIND[which]), bases, boundaries, parent.n_min, parent.n_max,
                       parent.carrier_size, parent=parent, to_parent=to_parent, verify=True,
                       meta={"span": data})
    cx.to_self = {d: _SpanCoords(*to_self[d]) for d in parent.degrees()}
    return cx


class _SpanCoords:
    """Coordinates in a span basis: (U y)[:k] / diag."""

    def __init__(self, Uk, diag):
        self.Uk = Uk
        self.diag = diag

    def __matmul__(self, y):
        y = np.asarray(y, dtype=object).ravel()
        c = self.Uk @ y if len(self.diag) else np.zeros(0, dtype=object)
        return np.array([int(v) // d for v, d in zip(c, self.diag)], dtype=np.int64)


def quotient(parent, sub):
    """Quotient complex parent / sub for a subcomplex that is a direct summand."""
    if sub.parent is not parent:
        raise InputError("sub must be a subcomplex built from this parent")
    keep = sub.meta.get("keep")
    if keep is not None:
        rest = {d: sorted(set(range(parent.dim(d))) - set(keep[d])) for d in parent.degrees()}
        bases = {d: [parent.bases[d][i] for i in rest[d]] for d in parent.degrees()}
        boundaries = {d: parent.boundaries[d][rest[d - 1], :][:, rest[d]]
                      for d in range(parent.n_min + 1, parent.n_max + 1)}
        to_self, to_parent = {}, {}
        for d in parent.degrees():
            r = rest[d]
            to_parent[d] = sp.csr_matrix((np.ones(len(r), dtype=np.int64), (r, np.arange(len(r)))),
                                         shape=(parent.dim(d), len(r)))
            to_self[d] = to_parent[d].T.tocsr()
        n_min = parent.n_min
        while n_min < parent.n_max and not bases[n_min]:
            n_min += 1
        bases = {d: b for d, b in bases.items() if d >= n_min}
        boundaries = {d: b for d, b in boundaries.items() if d > n_min}
        return GradedComplex((parent.kind[0], _quotient_kind(sub.kind[1])), bases, boundaries,
                             n_min, parent.n_max, parent.carrier_size, parent=parent,
                             to_self=to_self, to_parent=to_parent, meta={"rest": rest})
    data = sub.meta["span"]
    for d, (_, _, diag, _) in data.items():
        if any(abs(v) != 1 for v in diag):
            raise InputError(f"subcomplex is not a direct summand in degree {d}; "
                             "its quotient has torsion chain groups")
    bases, to_self, to_parent = {}, {}, {}
    for d in parent.degrees():
        U, Ui, diag, k = data[d]
        dim = parent.dim(d)
        bases[d] = [("class", d, i) for i in range(dim - k)]
        P = np.array(U, dtype=object).reshape(-1, dim)[k:]
        L = np.array(Ui, dtype=object).reshape(dim, -1)[:, k:]
        to_self[d] = sp.csr_matrix(P.astype(np.int64).reshape(dim - k, dim))
        to_parent[d] = sp.csr_matrix(L.astype(np.int64).reshape(dim, dim - k))
    boundaries = {d: (to_self[d - 1] @ parent.boundaries[d] @ to_parent[d]).tocsr()
                  for d in range(parent.n_min + 1, parent.n_max + 1)}
    return GradedComplex((parent.kind[0], _quotient_kind(sub.kind[1])), bases, boundaries,
                         parent.n_min, parent.n_max, parent.carrier_size, parent=parent,
                         to_self=to_self, to_parent=to_parent)


def _quotient_kind(subkind):
    return {"degenerate-sub": "normalized", "early-degenerate": "early-normalized",
            "point": "relative", "sub-multishelf": "relative"}.get(subkind, "relative")


def normalized_complex(cx):
    return quotient(cx, subcomplex(cx, "degenerate"))


def degenerate_complex(cx):
    return subcomplex(cx, "degenerate")


def relative_to_point(cx, t):
    """C(X, {t}) = C(X) / C({t})."""
    return quotient(cx, subcomplex(cx, "point", t=t))


def early_normalized_pieces(cx, t):
    """(C({t}), F0(X,{t}) = F0 / C({t}), C^eN(X,{t}) = C(X,{t}) / F0)."""
    point = subcomplex(cx, "point", t=t)
    rel = quotient(cx, point)
    f0 = subcomplex(rel, "early-degenerate")
    en = quotient(rel, f0)
    return point, f0, en


# ---------------------------------------------------------------- structural maps

def remarkable_map(star, n):
    """f(x_0..x_n) = (x_0*x_1*...*x_n, x_1*...*x_n, ..., x_n), products left-normed."""
    m = star.n
    tup = all_tuples(m, n + 1)
    out = tup.copy()
    for k in range(n + 1):
        acc = tup[:, k]
        for j in range(k + 1, n + 1):
            acc = star.table[acc, tup[:, j]]
        out[:, k] = acc
    return _map_matrix(tuple_index(out, m), m ** (n + 1), m ** (n + 1))


def splitting_map_alpha(sys, n):
    """alpha(x_0..x_n) = (x_0, x_1 - x_0, ..., x_n - x_(n-1)) expanded multilinearly."""
    if not sys.is_multi_spindle:
        bad = next(op for op in sys.ops if not is_idempotent(op))
        raise NotASpindle("splitting map needs idempotent operations", witness={"op": bad.name})
    m = sys.n
    tup = all_tuples(m, n + 1)
    size = m ** (n + 1)
    out = _zero(size, size)
    for mask in range(1 << n):
        new = tup.copy()
        sign = 1
        for i in range(1, n + 1):
            if mask >> (i - 1) & 1:
                new[:, i] = tup[:, i - 1]
                sign = -sign
        out = out + sign * _map_matrix(tuple_index(new, m), size, size)
    return out.tocsr()


def p0_map(size, n):
    """Drop x_0: degree n to degree n - 1 (degree -1 is the augmentation copy of Z)."""
    tup = all_tuples(size, n + 1)
    return _map_matrix(tuple_index(tup[:, 1:], size), size ** n, size ** (n + 1))


def s0_map(size, n):
    return degeneracy_map(size, n, 0)


def homotopy_h(t, size, n):
    """h_t(x) = (x, t): degree n to degree n + 1; n = -1 sends 1 to (t)."""
    tup = all_tuples(size, n + 1)
    new = np.hstack([tup, np.full((len(tup), 1), t, dtype=np.int64)])
    return _map_matrix(tuple_index(new, size), size ** (n + 2), size ** (n + 1))


def translation_map(sys, t, n):
    """f_t(x) = sum_j a_j (x_0 *_j t, ..., x_n *_j t)."""
    m = sys.n
    tup = all_tuples(m, n + 1)
    size = m ** (n + 1)
    out = _zero(size, size)
    for op, w in zip(sys.ops, sys.weights):
        if w:
            out = out + w * _map_matrix(tuple_index(op.table[tup, t], m), size, size)
    return out.tocsr()


def prepend_map(elements, size, n, group=False):
    """h(x) = (sum of elements, x): degree n to degree n + 1."""
    length = n if group else n + 1
    tup = all_tuples(size, length)
    target_len = length + 1
    out = _zero(size ** target_len, size ** length)
    for a in elements:
        new = np.hstack([np.full((len(tup), 1), a, dtype=np.int64), tup])
        out = out + _map_matrix(tuple_index(new, size), size ** target_len, size ** length)
    return out.tocsr()


def identity_matrix(k):
    return sp.identity(k, dtype=np.int64, format="csr")


def is_zero(M):
    M = sp.csr_matrix(M)
    M.eliminate_zeros()
    return M.nnz == 0


def equal(A, B):
    return is_zero(sp.csr_matrix(A) - sp.csr_matrix(B))
