"""Finite magmas as Cayley tables and the composition monoid of all operations.

Tables follow ``table[a][b] = a * b``. The right translation ``x -> x * b`` is
column ``b`` of the table, so "invertible" always means "every column is a
permutation".
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    CarrierMismatch,
    IdempotencyRequired,
    InputError,
    NotALattice,
    NotDistributive,
    NotEndomorphism,
    NotIdempotentEndomap,
    NotInvertible,
    SizeExceeded,
)


@dataclass(frozen=True)
class Carrier:
    size: int
    labels: tuple | None = None

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"carrier size must be positive, got {self.size}")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.size or len(set(labels)) != self.size:
                raise InputError("labels must be distinct and match the carrier size")
            object.__setattr__(self, "labels", labels)

    def label(self, x):
        return self.labels[x] if self.labels else str(x)


class BinOp:
    """A binary operation on {0, ..., n-1} stored as a read-only Cayley table."""

    __slots__ = ("table", "name", "carrier", "_key")

    def __init__(self, table, name=None, carrier=None):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InputError(f"table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise InputError(f"table entry at {tuple(int(x) for x in bad)} is not in [0, {n})",
                             witness=[int(x) for x in bad])
        arr.setflags(write=False)
        if carrier is None:
            carrier = Carrier(n)
        elif carrier.size != n:
            raise CarrierMismatch(f"carrier size {carrier.size} != table size {n}")
        self.table = arr
        self.name = name
        self.carrier = carrier
        self._key = arr.tobytes()

    @property
    def n(self):
        return self.table.shape[0]

    def __call__(self, a, b):
        return int(self.table[a, b])

    def __eq__(self, other):
        return isinstance(other, BinOp) and self.n == other.n and self._key == other._key

    def __hash__(self):
        return hash((self.n, self._key))

    def __lt__(self, other):
        return self.as_tuple() < other.as_tuple()

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"BinOp({label}{self.table.tolist()})"

    def as_tuple(self):
        return tuple(int(x) for x in self.table.ravel())

    def to_list(self):
        return self.table.tolist()

    def renamed(self, name):
        return BinOp(self.table, name, self.carrier)


def _check_same(*ops):
    n = ops[0].n
    for op in ops[1:]:
        if op.n != n:
            raise CarrierMismatch(f"operations live on carriers of size {n} and {op.n}")
    return n


# ---------------------------------------------------------------- basic ops

def identity_op(n):
    """The right-trivial operation a*b = a, the unit of the composition monoid."""
    return BinOp(np.repeat(np.arange(n)[:, None], n, axis=1), "*0")


def left_trivial_op(n):
    """a*b = b."""
    return BinOp(np.repeat(np.arange(n)[None, :], n, axis=0), "*~")


def compose(f, g):
    """The product a (f g) b = (a f b) g b."""
    _check_same(f, g)
    cols = np.arange(f.n)[None, :]
    return BinOp(g.table[f.table, cols])


def invert(op):
    """Inverse in the composition monoid: (a * b) inv b = a."""
    n = op.n
    inv = np.empty_like(op.table)
    for b in range(n):
        col = op.table[:, b]
        if len(set(col.tolist())) != n:
            raise NotInvertible(f"column {b} is not a permutation", witness={"column": b})
        inv[col, b] = np.arange(n)
    name = f"inv({op.name})" if op.name else None
    return BinOp(inv, name)


# ---------------------------------------------------------------- predicates

def _triples(n):
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return a.ravel(), b.ravel(), c.ravel()


def distributivity_failures(f, g):
    """Triples (a, b, c) where (a f b) g c != (a g c) f (b g c)."""
    _check_same(f, g)
    a, b, c = _triples(f.n)
    F, G = f.table, g.table
    lhs = G[F[a, b], c]
    rhs = F[G[a, c], G[b, c]]
    bad = np.nonzero(lhs != rhs)[0]
    return [(int(a[i]), int(b[i]), int(c[i])) for i in bad]


def right_distributes(f, g):
    """True when every translation by g is an f-homomorphism."""
    return not distributivity_failures(f, g)


def is_shelf(op):
    return right_distributes(op, op)


def is_idempotent(op):
    return bool(np.all(np.diag(op.table) == np.arange(op.n)))


def is_invertible(op):
    n = op.n
    return all(len(set(op.table[:, b].tolist())) == n for b in range(n))


def associativity_failures(op):
    a, b, c = _triples(op.n)
    T = op.table
    bad = np.nonzero(T[T[a, b], c] != T[a, T[b, c]])[0]
    return [(int(a[i]), int(b[i]), int(c[i])) for i in bad]


def is_associative(op):
    return not associativity_failures(op)


def is_kei(op):
    n = op.n
    cols = np.arange(n)[None, :]
    return bool(np.all(op.table[op.table, cols] == np.arange(n)[:, None]))


def classify(op):
    """Names of all axioms the operation satisfies."""
    out = set()
    shelf = is_shelf(op)
    idem = is_idempotent(op)
    inv = is_invertible(op)
    if idem:
        out.add("idempotent")
    if inv:
        out.add("invertible")
    if is_associative(op):
        out.add("associative")
    if shelf:
        out.add("shelf")
        if idem:
            out.add("spindle")
        if inv:
            out.add("rack")
            if idem:
                out.add("quandle")
                if is_kei(op):
                    out.add("kei")
    return frozenset(out)


def is_distributive_pair(f, g):
    """Both ops are shelves and each right-distributes over the other."""
    return (right_distributes(f, f) and right_distributes(g, g)
            and right_distributes(f, g) and right_distributes(g, f))


def weak_distributivity_failures(f, g):
    """Triples where {(a f b) g c, (a g b) f c} != {(a g c) f (b g c), (a f c) g (b f c)}."""
    _check_same(f, g)
    a, b, c = _triples(f.n)
    F, G = f.table, g.table
    l1, l2 = G[F[a, b], c], F[G[a, b], c]
    r1, r2 = F[G[a, c], G[b, c]], G[F[a, c], F[b, c]]
    same = ((l1 == r1) & (l2 == r2)) | ((l1 == r2) & (l2 == r1))
    bad = np.nonzero(~same)[0]
    return [(int(a[i]), int(b[i]), int(c[i])) for i in bad]


def is_weakly_distributive_pair(f, g):
    return is_shelf(f) and is_shelf(g) and not weak_distributivity_failures(f, g)


def is_weakly_associative_pair(f, g):
    """{(a f b) g c, (a g b) f c} = {a g (b f c), a f (b g c)} for all triples."""
    _check_same(f, g)
    a, b, c = _triples(f.n)
    F, G = f.table, g.table
    l1, l2 = G[F[a, b], c], F[G[a, b], c]
    r1, r2 = G[a, F[b, c]], F[a, G[b, c]]
    same = ((l1 == r1) & (l2 == r2)) | ((l1 == r2) & (l2 == r1))
    return bool(np.all(same))


def commutes(f, g):
    return compose(f, g) == compose(g, f)


# ---------------------------------------------------------------- sets of ops

class OpSet:
    """An ordered collection of distinct operations on one carrier."""

    def __init__(self, ops, n=None):
        ops = list(dict.fromkeys(ops))
        if not ops and n is None:
            raise InputError("an empty OpSet needs an explicit carrier size")
        self.n = ops[0].n if ops else n
        if ops:
            _check_same(*ops)
        self.ops = tuple(ops)

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def __contains__(self, op):
        return op in self.ops

    def __eq__(self, other):
        return isinstance(other, OpSet) and set(self.ops) == set(other.ops)

    def __hash__(self):
        return hash(frozenset(self.ops))

    def __repr__(self):
        return f"OpSet(n={self.n}, size={len(self.ops)})"

    def key(self):
        return frozenset(self.ops)

    @cached_property
    def is_distributive_set(self):
        return all(right_distributes(f, g) for f in self.ops for g in self.ops)

    @cached_property
    def is_monoid_closed(self):
        members = set(self.ops)
        if identity_op(self.n) not in members:
            return False
        return all(compose(f, g) in members for f in self.ops for g in self.ops)

    @cached_property
    def all_idempotent(self):
        return all(is_idempotent(op) for op in self.ops)

    @cached_property
    def all_invertible(self):
        return all(is_invertible(op) for op in self.ops)

    def commutativity_witness(self):
        for f, g in itertools.combinations(self.ops, 2):
            if compose(f, g) != compose(g, f):
                return (f, g)
        return None


def monoid_closure(seed, max_size=10_000, n=None):
    """Smallest set containing seed and the identity that is closed under compose."""
    seed = list(seed)
    if n is None:
        if not seed:
            raise InputError("monoid_closure of an empty seed needs the carrier size")
        n = seed[0].n
    unit = identity_op(n)
    found = [unit] + [op for op in seed if op != unit]
    found = list(dict.fromkeys(found))
    known = set(found)
    frontier = list(found)
    while frontier:
        new = []
        for f in frontier:
            for g in list(found):
                for h in (compose(f, g), compose(g, f)):
                    if h not in known:
                        known.add(h)
                        found.append(h)
                        new.append(h)
                        if len(found) > max_size:
                            raise SizeExceeded(f"closure exceeds {max_size} operations")
        frontier = new
    result = OpSet(found)
    if OpSet(seed or [unit]).is_distributive_set and not result.is_distributive_set:
        raise AssertionError("closure of a distributive set lost distributivity")
    return result


# ---------------------------------------------------------------- constructions

def _as_map(g, n=None):
    g = [int(x) for x in g]
    n = len(g) if n is None else n
    if len(g) != n or any(not 0 <= x < n for x in g):
        raise InputError(f"not an endomap of a {n}-element set: {g}")
    return g


def make_g_shelf(g):
    """a * b = g(b); a shelf exactly when g is idempotent."""
    g = _as_map(g)
    n = len(g)
    if any(g[g[x]] != g[x] for x in range(n)):
        x = next(x for x in range(n) if g[g[x]] != g[x])
        raise NotIdempotentEndomap("g(g(x)) != g(x)", witness={"x": x})
    return BinOp([[g[b] for b in range(n)] for a in range(n)], "*g")


def make_f_shelf(f):
    """a * b = f(a); a shelf for every endomap f."""
    f = _as_map(f)
    n = len(f)
    return BinOp([[f[a]] * n for a in range(n)], "*f")


def make_retraction_shelf(r):
    """a * b = r(b) for a retraction r onto its image."""
    op = make_g_shelf(r)
    return op.renamed("*r")


def retractions(n, image):
    """All retractions of {0..n-1} onto the subset ``image``, in lexicographic order."""
    image = sorted(set(image))
    rest = [x for x in range(n) if x not in image]
    out = []
    for values in itertools.product(image, repeat=len(rest)):
        r = list(range(n))
        for x, v in zip(rest, values):
            r[x] = v
        out.append(r)
    return out


def mroczkowski_monoid(n=3, image=(1, 2)):
    """The shelves a*b = r(b) over all retractions r onto ``image``, plus the identity."""
    ops = [make_retraction_shelf(r) for r in retractions(n, image)]
    return OpSet([identity_op(n)] + ops)


def dihedral_quandle(n):
    """a * b = 2b - a mod n."""
    return BinOp([[(2 * b - a) % n for b in range(n)] for a in range(n)], f"R{n}")


def trivial_quandle(n):
    return identity_op(n).renamed(f"T{n}")


# ---------------------------------------------------------------- groups

def cyclic_group(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(k):
    """Multiplication table of S_k; elements are permutations in lexicographic order.

    The product is composition (pq)(x) = p(q(x)).
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]


class Group:
    """A finite group given by its multiplication table."""

    def __init__(self, table):
        T = np.array(table, dtype=np.int64)
        op = BinOp(T)
        n = op.n
        if not is_associative(op):
            raise InputError("group table is not associative")
        units = [e for e in range(n) if all(T[e, x] == x and T[x, e] == x for x in range(n))]
        if not units:
            raise InputError("group table has no identity")
        self.e = units[0]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if T[x, y] == self.e and T[y, x] == self.e]
            if not ys:
                raise InputError(f"element {x} has no inverse")
            inv.append(ys[0])
        self.table = T
        self.n = n
        self.inv = inv

    def mul(self, a, b):
        return int(self.table[a, b])

    def is_endomorphism(self, h):
        return all(h[self.mul(a, b)] == self.mul(h[a], h[b]) for a in range(self.n) for b in range(self.n))

    def endomorphisms(self):
        """All endomorphisms, found by extending images of a small generating set."""
        gens = []
        span = {self.e}
        while len(span) < self.n:
            g = min(x for x in range(self.n) if x not in span)
            gens.append(g)
            span = self._generated(gens)
        out = []
        for images in itertools.product(range(self.n), repeat=len(gens)):
            h = self._extend(gens, images)
            if h is not None and self.is_endomorphism(h):
                out.append(h)
        return sorted(out)

    def _generated(self, gens):
        span = {self.e}
        frontier = [self.e]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in span:
                        span.add(y)
                        new.append(y)
            frontier = new
        return span

    def _extend(self, gens, images):
        h = {self.e: self.e}
        frontier = [self.e]
        while frontier:
            new = []
            for x in frontier:
                for g, hg in zip(gens, images):
                    y = self.mul(x, g)
                    hy = self.mul(h[x], hg)
                    if y in h:
                        if h[y] != hy:
                            return None
                    else:
                        h[y] = hy
                        new.append(y)
            frontier = new
        return [h[x] for x in range(self.n)]


def make_group_shelf(G, h, variant):
    """Spindles on a group from an endomorphism h.

    variant "i": h(a b^-1) b, "ii": h(b^-1 a) b, "iii": h(b a^-1) b (needs h∘h = h).
    """
    if not isinstance(G, Group):
        G = Group(G)
    h = _as_map(h, G.n)
    if not G.is_endomorphism(h):
        pair = next((a, b) for a in range(G.n) for b in range(G.n)
                    if h[G.mul(a, b)] != G.mul(h[a], h[b]))
        raise NotEndomorphism("h(ab) != h(a)h(b)", witness={"pair": pair})
    m, inv = G.mul, G.inv
    if variant == "i":
        rule = lambda a, b: m(h[m(a, inv[b])], b)
    elif variant == "ii":
        rule = lambda a, b: m(h[m(inv[b], a)], b)
    elif variant == "iii":
        if any(h[h[x]] != h[x] for x in range(G.n)):
            raise IdempotencyRequired("variant iii needs h∘h = h")
        rule = lambda a, b: m(h[m(b, inv[a])], b)
    else:
        raise InputError(f"unknown variant {variant!r}")
    return BinOp([[rule(a, b) for b in range(G.n)] for a in range(G.n)], f"*h[{variant}]")


def conjugation_quandle(G):
    """a * b = b^-1 a b."""
    if not isinstance(G, Group):
        G = Group(G)
    m, inv = G.mul, G.inv
    return BinOp([[m(m(inv[b], a), b) for b in range(G.n)] for a in range(G.n)], "conj")


# ---------------------------------------------------------------- lattices

@dataclass(frozen=True)
class LatticeOps:
    join: BinOp
    meet: BinOp
    size: int
    join_irreducibles: int
    leq: tuple

    def __iter__(self):
        return iter((self.join, self.meet))


def boolean_lattice(k):
    """Order matrix of the subsets of a k-set, subsets indexed by bitmask."""
    m = 1 << k
    return [[(a & b) == a for b in range(m)] for a in range(m)]


def chain_lattice(m):
    return [[a <= b for b in range(m)] for a in range(m)]


def make_lattice_ops(leq):
    """Join and meet tables of a finite distributive lattice given by its order."""
    R = np.array(leq, dtype=bool)
    n = R.shape[0]
    if R.shape != (n, n) or n == 0:
        raise NotALattice("order matrix must be square and non-empty")
    if not R.diagonal().all():
        raise NotALattice("order is not reflexive")
    for a, b in itertools.product(range(n), repeat=2):
        if a != b and R[a, b] and R[b, a]:
            raise NotALattice("order is not antisymmetric", witness=[a, b])
    for a, b, c in itertools.product(range(n), repeat=3):
        if R[a, b] and R[b, c] and not R[a, c]:
            raise NotALattice("order is not transitive", witness=[a, b, c])

    def bound(a, b, upper):
        cands = [c for c in range(n) if (R[a, c] and R[b, c] if upper else R[c, a] and R[c, b])]
        best = [c for c in cands if all((R[c, d] if upper else R[d, c]) for d in cands)]
        if not best:
            raise NotALattice(f"no {'join' if upper else 'meet'} for {a}, {b}", witness=[a, b])
        return best[0]

    join = [[bound(a, b, True) for b in range(n)] for a in range(n)]
    meet = [[bound(a, b, False) for b in range(n)] for a in range(n)]
    for a, b, c in itertools.product(range(n), repeat=3):
        if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
            raise NotDistributive("meet does not distribute over join", witness=[a, b, c])
    bottom = next(x for x in range(n) if R[x].all())
    irreducible = 0
    for x in range(n):
        if x == bottom:
            continue
        if all(join[a][b] != x for a in range(n) for b in range(n) if a != x and b != x):
            irreducible += 1
    return LatticeOps(BinOp(join, "*join"), BinOp(meet, "*meet"), n, irreducible,
                      tuple(tuple(bool(v) for v in row) for row in R))


# ---------------------------------------------------------------- generalized lattices

def is_generalized_lattice(f, g):
    """Return (conditions 1-3 hold, mutual distributivity holds).

    Conditions: both ops self-distributive; absorption (a f b) g b = b = (a g b) f b;
    (a f b) f b = a f b and (a g b) g b = a g b.
    """
    n = _check_same(f, g)
    F, G = f.table, g.table
    cols = np.arange(n)[None, :]
    rows_b = np.broadcast_to(cols, (n, n))
    absorb = np.all(G[F, cols] == rows_b) and np.all(F[G, cols] == rows_b)
    stable = np.all(F[F, cols] == F) and np.all(G[G, cols] == G)
    base = is_shelf(f) and is_shelf(g) and bool(absorb) and bool(stable)
    mutual = right_distributes(f, g) and right_distributes(g, f)
    return base, mutual


# ---------------------------------------------------------------- JSON I/O

def load_structure(source):
    """Parse the structure format {"n", "labels"?, "ops": [{"name", "table"}]}.

    ``source`` is a path, a JSON string or an already-decoded dict.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "ops" not in data:
        raise InputError("structure needs keys 'n' and 'ops'")
    carrier = Carrier(int(data["n"]), data.get("labels"))
    ops = []
    for i, entry in enumerate(data["ops"]):
        if "table" not in entry:
            raise InputError(f"op {i} has no table")
        ops.append(BinOp(entry["table"], entry.get("name", f"op{i}"), carrier))
    if not ops:
        raise InputError("structure lists no operations")
    return carrier, ops


def dump_structure(ops, labels=None):
    data = {"n": ops[0].n}
    if labels:
        data["labels"] = list(labels)
    data["ops"] = [{"name": op.name or f"op{i}", "table": op.to_list()} for i, op in enumerate(ops)]
    return data


def load_lattice(source):
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from exc
    if "leq" not in data:
        raise InputError("lattice needs key 'leq'")
    return make_lattice_ops(data["leq"])
