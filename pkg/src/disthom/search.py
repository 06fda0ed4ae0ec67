"""Search for maximal distributive sets and monoids of binary operations on a small carrier."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, InputError
from .magma import BinOp, OpSet, compose, identity_op, right_distributes

CATEGORIES = ("all-ops", "invertible-only", "idempotent-only", "quandle-ops")


@dataclass
class SearchSpec:
    carrier_size: int
    category: str = "all-ops"
    require_monoid: bool = True
    isomorphism_dedup: bool = False
    budget_nodes: int | None = None
    budget_seconds: float | None = None

    def __post_init__(self):
        if not 1 <= self.carrier_size <= 6:
            raise InputError("carrier size must lie in 1..6")
        if self.category not in CATEGORIES:
            raise InputError(f"unknown category {self.category!r}; choose from {CATEGORIES}")


@dataclass
class SearchReport:
    spec: SearchSpec
    maximal_sets: list = field(default_factory=list)
    poset_edges: list = field(default_factory=list)
    commutativity_audit: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    complete: bool = True
    reason: str | None = None

    def to_json(self, include_timing=False):
        stats = dict(self.stats)
        if not include_timing:
            stats.pop("seconds", None)
        sets = []
        for s, audit in zip(self.maximal_sets, self.commutativity_audit):
            witness = audit[1]
            sets.append({
                "size": len(s),
                "ops": [op.to_list() for op in sorted(s.ops)],
                "commutative": witness is None,
                "witness": None if witness is None else [witness[0].to_list(), witness[1].to_list()],
            })
        return {
            "carrier_size": self.spec.carrier_size,
            "category": self.spec.category,
            "require_monoid": self.spec.require_monoid,
            "isomorphism_dedup": self.spec.isomorphism_dedup,
            "complete": self.complete,
            "reason": self.reason,
            "maximal_sets": sets,
            "poset_edges": [list(e) for e in self.poset_edges],
            "stats": stats,
        }


class _Budget:
    def __init__(self, spec):
        self.max_nodes = spec.budget_nodes
        self.deadline = None if spec.budget_seconds is None else time.monotonic() + spec.budget_seconds
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget of {self.max_nodes} exhausted")
        if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


# ---------------------------------------------------------------- candidates

def _consistent(t, n):
    """Self-distributivity on every triple whose lookups are all assigned (-1 marks unknown)."""
    for x in range(n):
        for z in range(n):
            v = t[x * n + z]
            if v < 0:
                continue
            for y in range(n):
                u, w = t[x * n + y], t[y * n + z]
                if u < 0 or w < 0:
                    continue
                lhs, rhs = t[u * n + z], t[v * n + w]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
    return True


def _shelf_tables(n, category, budget, stats):
    idem = category in ("idempotent-only", "quandle-ops")
    perm = category in ("invertible-only", "quandle-ops")
    t = [-1] * (n * n)
    out = []

    def fill(k):
        budget.tick()
        if k == n * n:
            out.append(list(t))
            return
        a, b = divmod(k, n)
        choices = [a] if idem and a == b else range(n)
        for v in choices:
            if perm and any(t[i * n + b] == v for i in range(a)):
                continue
            t[k] = v
            if _consistent(t, n):
                fill(k + 1)
            else:
                stats["prunes"] += 1
            t[k] = -1

    fill(0)
    return out


def enumerate_candidate_ops(spec, budget=None, stats=None):
    """All shelves on the carrier in the category, in lexicographic table order."""
    budget = budget or _Budget(spec)
    stats = stats if stats is not None else {"prunes": 0}
    stats.setdefault("prunes", 0)
    n = spec.carrier_size
    tables = _shelf_tables(n, spec.category, budget, stats)
    return [BinOp([tab[i * n:(i + 1) * n] for i in range(n)]) for tab in tables]


# ---------------------------------------------------------------- cliques

def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _maximal_cliques(adj, budget):
    """Bron-Kerbosch with pivoting over bitset adjacency; cliques as sorted index lists."""
    found = []

    def expand(R, P, X):
        budget.tick()
        if not P and not X:
            found.append(sorted(_bits(R)))
            return
        pivot = max(_bits(P | X), key=lambda u: (bin(P & adj[u]).count("1"), -u))
        for v in list(_bits(P & ~adj[pivot])):
            bit = 1 << v
            expand(R | bit, P & adj[v], X & adj[v])
            P &= ~bit
            X |= bit

    expand(0, (1 << len(adj)) - 1, 0)
    return sorted(found)


def compatibility_graph(ops):
    """Bitset adjacency: i ~ j when ops i and j distribute over each other."""
    adj = [0] * len(ops)
    for i, j in itertools.combinations(range(len(ops)), 2):
        if right_distributes(ops[i], ops[j]) and right_distributes(ops[j], ops[i]):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


# ---------------------------------------------------------------- isomorphism

def relabel(op, perm):
    """The table of op transported along the carrier bijection x -> perm[x]."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    return BinOp(perm[op.table[np.ix_(inv, inv)]])


def canonical_key(ops, n):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(relabel(op, perm).as_tuple() for op in ops))
        if best is None or key < best:
            best = key
    return best


# ---------------------------------------------------------------- search

def audit_commutativity(report_or_sets):
    sets = report_or_sets.maximal_sets if isinstance(report_or_sets, SearchReport) else report_or_sets
    return [(s, s.commutativity_witness()) for s in sets]


def find_maximal_distributive_sets(spec):
    """Maximal distributive sets (monoids when require_monoid) in the category.

    Members of a distributive set are shelves, so the ground set is the shelves of
    the category. Maximal sets are the maximal cliques of the mutual-distributivity
    graph. The monoid generated by a distributive set is distributive and stays in
    each category, so a maximal clique is already closed under composition; this
    is re-checked for every reported set.
    """
    start = time.monotonic()
    budget = _Budget(spec)
    stats = {"prunes": 0}
    report = SearchReport(spec)
    n = spec.carrier_size
    try:
        ops = enumerate_candidate_ops(spec, budget, stats)
        stats["candidates"] = len(ops)
        adj = compatibility_graph(ops)
        cliques = _maximal_cliques(adj, budget)
    except BudgetExceeded as exc:
        report.complete = False
        report.reason = str(exc)
        stats["nodes"] = budget.nodes
        stats["seconds"] = round(time.monotonic() - start, 3)
        report.stats = stats
        return report
    stats["maximal_cliques"] = len(cliques)
    unit = identity_op(n)
    sets, seen = [], set()
    not_closed = 0
    for clique in cliques:
        s = OpSet([ops[i] for i in clique])
        if spec.require_monoid and not _closed(s, unit):
            not_closed += 1
            continue
        if spec.isomorphism_dedup:
            key = canonical_key(s.ops, n)
            if key in seen:
                continue
            seen.add(key)
        sets.append(s)
    stats["not_closed"] = not_closed
    stats["nodes"] = budget.nodes
    stats["seconds"] = round(time.monotonic() - start, 3)
    report.maximal_sets = sets
    report.poset_edges = [(i, j) for i, j in itertools.permutations(range(len(sets)), 2)
                          if set(sets[i].ops) < set(sets[j].ops)]
    report.commutativity_audit = audit_commutativity(sets)
    report.stats = stats
    return report


def _closed(s, unit):
    members = set(s.ops)
    return unit in members and all(compose(f, g) in members for f in s.ops for g in s.ops)


def maximality_witnesses(opset, candidates):
    """For each candidate outside the set, a member it fails to distribute with (None if it fits)."""
    out = {}
    for c in candidates:
        if c in opset:
            continue
        bad = next((m for m in opset if not (right_distributes(c, m) and right_distributes(m, c))), None)
        out[c] = bad
    return out


def contains_up_to_isomorphism(big, small, n):
    """True when some carrier relabeling of ``small`` is a subset of ``big``."""
    members = set(big.ops)
    for perm in itertools.permutations(range(n)):
        if all(relabel(op, perm) in members for op in small.ops):
            return True
    return False
