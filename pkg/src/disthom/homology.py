"""Integral and mod-p homology of GradedComplexes, plus splitting and homotopy checks."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import complex as cxm
from . import snf
from .errors import InputError, NotAnOrbit


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank plus cyclic torsion factors forming an ascending divisor chain."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        chain = tuple(d for d in snf.divisor_chain([abs(int(t)) for t in self.torsion if t != 0]) if d > 1)
        free = int(self.rank) + sum(1 for t in self.torsion if t == 0)
        if free < 0:
            raise InputError("rank must be nonnegative")
        object.__setattr__(self, "rank", free)
        object.__setattr__(self, "torsion", chain)

    @classmethod
    def from_cyclic(cls, orders):
        """Direct sum of Z_d over the given orders; d = 0 means Z and d = 1 is dropped."""
        orders = [abs(int(d)) for d in orders]
        return cls(sum(1 for d in orders if d == 0), tuple(d for d in orders if d > 1))

    def __add__(self, other):
        return AbelianGroup(self.rank + other.rank, self.torsion + other.torsion)

    def primary_factors(self):
        """Torsion as sorted prime powers; this is the order-free canonical form."""
        out = []
        for d in self.torsion:
            p = 2
            while d > 1:
                if d % p == 0:
                    q = 1
                    while d % p == 0:
                        d //= p
                        q *= p
                    out.append(q)
                p += 1
        return sorted(out)

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        run = []
        for d in self.torsion:
            if run and run[0] == d:
                run.append(d)
            else:
                if run:
                    parts.append(_cyc(run))
                run = [d]
        if run:
            parts.append(_cyc(run))
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def _cyc(run):
    return f"Z_{run[0]}" if len(run) == 1 else f"Z_{run[0]}^{len(run)}"


@dataclass
class HomologyTable:
    complex_kind: tuple
    groups: dict = field(default_factory=dict)
    annihilator_certificates: list = field(default_factory=list)

    def __getitem__(self, n):
        return self.groups[n]

    def degrees(self):
        return sorted(self.groups)

    def __eq__(self, other):
        return isinstance(other, HomologyTable) and self.groups == other.groups

    def to_json(self):
        return {str(n): self.groups[n].to_json() for n in self.degrees()}


# ---------------------------------------------------------------- computation

def boundary_factors(cx, n):
    """Invariant factors (ones included) of the boundary on degree n, cached on the complex."""
    key = ("factors", n)
    if key not in cx._cache:
        B = cx.boundary(n)
        cx._cache[key] = snf.invariant_factors(B) if B.nnz else []
    return cx._cache[key]


def homology(cx, n):
    """H_n = ker(boundary n) / im(boundary n+1), valid for n_min <= n < n_max."""
    if not cx.n_min <= n < cx.n_max:
        raise InputError(f"homology in degree {n} needs boundaries up to degree {n + 1}; "
                         f"complex covers {cx.n_min}..{cx.n_max}")
    f_in = boundary_factors(cx, n + 1)
    f_out = boundary_factors(cx, n)
    rank = cx.dim(n) - len(f_out) - len(f_in)
    return AbelianGroup(rank, tuple(d for d in f_in if d > 1))


def homology_table(cx, degrees=None):
    degrees = range(cx.n_min, cx.n_max) if degrees is None else degrees
    return HomologyTable(cx.kind, {n: homology(cx, n) for n in degrees})


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def homology_mod_p(cx, n, p):
    """Dimension of H_n(C tensor Z/p) over the field with p elements."""
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    if not cx.n_min <= n < cx.n_max:
        raise InputError(f"degree {n} out of range")
    def rk(d):
        B = cx.boundary(d)
        return snf.rank_mod_p(B, p) if B.nnz else 0
    return cx.dim(n) - rk(n) - rk(n + 1)


def universal_coefficients_mod_p(h_n, h_prev, p):
    """dim H_n(C; Z/p) predicted from integral H_n and H_(n-1)."""
    tor = sum(1 for d in h_n.torsion if d % p == 0)
    prev = sum(1 for d in h_prev.torsion if d % p == 0) if h_prev is not None else 0
    return h_n.rank + tor + prev


# ---------------------------------------------------------------- certificates

def _matrix_witness(M):
    M = sp.coo_matrix(M)
    nz = np.nonzero(M.data)[0]
    if not len(nz):
        return None
    k = nz[0]
    return {"row": int(M.row[k]), "column": int(M.col[k]), "value": int(M.data[k])}


def _check_orbit(ops, orbit):
    A = sorted(set(int(a) for a in orbit))
    for i, op in enumerate(ops):
        for b in range(op.n):
            image = sorted(op(a, b) for a in A)
            if image != A:
                raise NotAnOrbit("orbit is not permuted by a right translation",
                                 witness={"op": i, "b": b, "image": image})
    return A


def annihilator_check(cx, orbit):
    """Verify d h + h d = |A| Sigma Id for h(x) = (sum over A, x).

    Works on a distributive complex (scale |A| * sum of weights, down to degree -1
    when augmented) and a full group complex (scale |A|, degrees >= 1). Returns a
    certificate dict with one entry per checked degree.
    """
    root = cx.root()
    if root is not cx:
        raise InputError("annihilator certificates are built on a root complex")
    sys = cx.meta.get("system")
    group = sys is None
    if group:
        if cx.kind[0] != "group":
            raise InputError("annihilator certificates need a distributive or full group complex")
        ops, scale, lo = [cx.meta["op"]], 1, 1
    else:
        ops, scale, lo = list(sys.ops), sys.sigma, cx.n_min
    A = _check_orbit(ops, orbit)
    scale *= len(A)
    m = cx.carrier_size
    degrees = []
    for n in range(lo, cx.n_max):
        h_n = cxm.prepend_map(A, m, n, group=group)
        lhs = cx.boundary(n + 1) @ h_n
        if n > cx.n_min:
            lhs = lhs + cxm.prepend_map(A, m, n - 1, group=group) @ cx.boundary(n)
        diff = lhs - scale * cxm.identity_matrix(cx.dim(n))
        degrees.append({"degree": n, "ok": cxm.is_zero(diff), "witness": _matrix_witness(diff)})
    return {"orbit": A, "scale": scale, "degrees": degrees, "ok": all(d["ok"] for d in degrees)}


def translation_homotopy_check(cx, t):
    """Verify d h_t - h_t d = (-1)^(n+1) f_t on an augmented or full distributive complex."""
    sys = cx.meta["system"]
    m = cx.carrier_size
    out = []
    for n in range(max(cx.n_min, 0), cx.n_max):
        lhs = cx.boundary(n + 1) @ cxm.homotopy_h(t, m, n)
        if n > cx.n_min:
            lhs = lhs - cxm.homotopy_h(t, m, n - 1) @ cx.boundary(n)
        diff = lhs - (-1) ** (n + 1) * cxm.translation_map(sys, t, n)
        out.append({"degree": n, "ok": cxm.is_zero(diff), "witness": _matrix_witness(diff)})
    return out


def early_degenerate_identities(sys, n_max):
    """Degree-wise checks of d s0 + s0 d = Sigma s0 p0 and p0 s0 = Id for 1 <= n < n_max."""
    cx = cxm.build_distributive_complex(sys, n_max)
    m = sys.n
    out = []
    for n in range(1, n_max):
        s0 = cxm.s0_map(m, n)
        p0 = cxm.p0_map(m, n)
        homotopy = cx.boundary(n + 1) @ s0 + cxm.s0_map(m, n - 1) @ cx.boundary(n)
        target = sys.sigma * (cxm.s0_map(m, n - 1) @ p0)
        out.append({"identity": "homotopy", "degree": n, "ok": cxm.equal(homotopy, target)})
        out.append({"identity": "retraction", "degree": n,
                    "ok": cxm.equal(cxm.p0_map(m, n + 1) @ s0, cxm.identity_matrix(cx.dim(n)))})
    return out


def alpha_chain_map_check(sys, n_max):
    """Check that alpha commutes with the boundary and kills degenerate tuples."""
    cx = cxm.build_distributive_complex(sys, n_max)
    out = []
    for n in range(1, n_max + 1):
        comm = cx.boundary(n) @ cxm.splitting_map_alpha(sys, n) - cxm.splitting_map_alpha(sys, n - 1) @ cx.boundary(n)
        out.append({"degree": n, "ok": cxm.is_zero(comm)})
    return out


def _compare(name, degree, whole, parts, extra=None):
    total = AbelianGroup()
    for p in parts:
        total = total + p
    row = {"check": name, "degree": degree, "whole": str(whole),
           "parts": [str(p) for p in parts], "ok": whole == total}
    if extra:
        row.update(extra)
    return row


def splitting_check(sys, n_max):
    """Compare each direct-sum decomposition with the homology of the whole, degree by degree.

    Covers H = H^D + H^Norm (multi-spindles only), H = H({t}) + H(X,{t}) for each
    element idempotent under every operation, and H(X,{t}) = H(F0,{t}) + H^eN(X,{t}).
    """
    cx = cxm.build_distributive_complex(sys, n_max + 1)
    whole = homology_table(cx)
    rows = []
    if sys.is_multi_spindle:
        deg = cxm.subcomplex(cx, "degenerate")
        norm = cxm.quotient(cx, deg)
        hd, hn = homology_table(deg), homology_table(norm)
        for n in range(n_max + 1):
            rows.append(_compare("degenerate+normalized", n, whole[n], [hd[n], hn[n]]))
    for t in range(sys.n):
        if not all(op(t, t) == t for op in sys.ops):
            continue
        point, f0, en = cxm.early_normalized_pieces(cx, t)
        rel = f0.parent
        hp, hr = homology_table(point), homology_table(rel)
        for n in range(n_max + 1):
            rows.append(_compare("point+relative", n, whole[n], [hp[n], hr[n]], {"t": t}))
        hf = homology_table(f0)
        he = HomologyTable(en.kind, {n: homology(en, n) for n in range(en.n_min, en.n_max)})
        for n in range(n_max + 1):
            parts = [hf[n], he.groups.get(n, AbelianGroup())]
            rows.append(_compare("early-degenerate+early-normalized", n, hr[n], parts, {"t": t}))
    return {"system": repr(sys), "rows": rows, "ok": all(r["ok"] for r in rows)}
