"""Oriented link diagrams from PD codes, colorings by a magma, and the chains they define.

PD convention: X[i,j,k,l] lists the four edge labels at a crossing counterclockwise,
starting from the incoming under edge i; the under strand leaves along k. The
crossing is positive when the over strand runs from l to j and negative when it
runs from j to l.

Regions are the faces of the diagram. An edge colored a separates the region on
its right, colored x, from the region on its left, colored x*a. Region 0 is the
face with the most edges.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass

from . import snf
from .complex import ChainVector, MultiTermSystem, build_distributive_complex, quotient, subcomplex
from .errors import (
    InvalidColoring,
    InvalidShadowColoring,
    InvalidSite,
    MalformedPD,
    NonPlanar,
    NotACycle,
)
from .magma import BinOp, identity_op, invert, is_invertible


@dataclass(frozen=True)
class Crossing:
    slots: tuple      # edge labels (i, j, k, l)
    sign: int
    over_arc: int
    under_in_arc: int
    under_out_arc: int
    corners: tuple    # corners[q] = region between slots q and q+1

    @property
    def right_under_arc(self):
        """Under arc on the right of the over strand: incoming when positive, outgoing when negative."""
        return self.under_in_arc if self.sign > 0 else self.under_out_arc

    @property
    def source_region(self):
        """Region on the right of both strands."""
        return self.corners[0] if self.sign > 0 else self.corners[1]


class LinkDiagram:
    """A connected oriented link diagram rebuilt from PD tuples with signs."""

    def __init__(self, pd, unknot=False):
        self.pd = tuple((tuple(int(v) for v in x[:4]), int(x[4])) for x in pd)
        self.is_unknot_circle = unknot and not pd
        if self.is_unknot_circle:
            self.crossings = []
            self.edges = [1]
            self.arcs = [[1]]
            self.edge_arc = {1: 0}
            self.region_count = 2
            self.edge_faces = {1: (1, 0)}
            return
        self._build()

    # ------------------------------------------------------------ construction

    def _build(self):
        ends = {}
        for c, (slots, sign) in enumerate(self.pd):
            if sign not in (1, -1):
                raise MalformedPD(f"crossing {c} has sign {sign}")
            for s, lab in enumerate(slots):
                ends.setdefault(lab, []).append((c, s))
        for lab, e in ends.items():
            if len(e) != 2:
                raise MalformedPD(f"edge {lab} appears {len(e)} times, expected 2", witness={"edge": lab})
        self.edges = sorted(ends)
        self._ends = ends
        # incoming endpoints: slot 0, and the over-in slot (3 for positive, 1 for negative)
        tail, head = {}, {}
        for c, (slots, sign) in enumerate(self.pd):
            over_in = 3 if sign > 0 else 1
            for s in range(4):
                incoming = s == 0 or s == over_in
                (head if incoming else tail).setdefault(slots[s], []).append((c, s))
        for lab in self.edges:
            if len(head.get(lab, ())) != 1 or len(tail.get(lab, ())) != 1:
                raise MalformedPD(f"edge {lab} is not oriented consistently", witness={"edge": lab})
        self.edge_head = {lab: head[lab][0] for lab in self.edges}
        self.edge_tail = {lab: tail[lab][0] for lab in self.edges}
        # arcs: edges glued through over passes
        parent = {lab: lab for lab in self.edges}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for slots, _ in self.pd:
            a, b = find(slots[1]), find(slots[3])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups = {}
        for lab in self.edges:
            groups.setdefault(find(lab), []).append(lab)
        self.arcs = sorted(sorted(g) for g in groups.values())
        self.edge_arc = {lab: i for i, g in enumerate(self.arcs) for lab in g}
        self._faces()
        crossings = []
        for c, (slots, sign) in enumerate(self.pd):
            crossings.append(Crossing(
                slots=slots, sign=sign,
                over_arc=self.edge_arc[slots[1]],
                under_in_arc=self.edge_arc[slots[0]],
                under_out_arc=self.edge_arc[slots[2]],
                corners=tuple(self._dart_face[(c, (q + 1) % 4)] for q in range(4)),
            ))
        self.crossings = crossings
        if len(self.pd) and len(self.components()) and not self._connected():
            raise NonPlanar("diagram is not connected")

    def _other_end(self, c, s):
        lab = self.pd[c][0][s]
        a, b = self._ends[lab]
        return b if a == (c, s) else a

    def _faces(self):
        """Trace faces: leave (c, s), arrive at (c', s'), leave next at (c', s'+1); faces lie on the right."""
        darts = [(c, s) for c in range(len(self.pd)) for s in range(4)]
        seen = {}
        faces = []
        for d in darts:
            if d in seen:
                continue
            cycle = []
            cur = d
            while cur not in seen:
                seen[cur] = len(faces)
                cycle.append(cur)
                c2, s2 = self._other_end(*cur)
                cur = (c2, (s2 + 1) % 4)
            if seen[cur] != len(faces) or cur != d:
                raise NonPlanar("face tracing did not close up")
            faces.append(cycle)
        V = len(self.pd)
        if len(faces) != V + 2:
            raise NonPlanar(f"{len(faces)} faces for {V} crossings; a connected planar diagram has {V + 2}",
                            witness={"faces": len(faces), "crossings": V})
        outer = min(range(len(faces)), key=lambda f: (-len(faces[f]), min(faces[f])))
        rest = sorted((f for f in range(len(faces)) if f != outer), key=lambda f: min(faces[f]))
        order = [outer] + rest
        renum = {old: new for new, old in enumerate(order)}
        self.faces = [faces[old] for old in order]
        self._dart_face = {d: renum[f] for d, f in seen.items()}
        self.region_count = len(faces)
        self.edge_faces = {}
        for lab in self.edges:
            right = self._dart_face[self.edge_tail[lab]]
            left = self._dart_face[self.edge_head[lab]]
            self.edge_faces[lab] = (right, left)

    def _connected(self):
        adj = {c: set() for c in range(len(self.pd))}
        for lab, ((c1, _), (c2, _)) in self._ends.items():
            adj[c1].add(c2)
            adj[c2].add(c1)
        seen = {0}
        todo = [0]
        while todo:
            for d in adj[todo.pop()]:
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        return len(seen) == len(self.pd)

    # ------------------------------------------------------------ queries

    def __repr__(self):
        return f"LinkDiagram({len(self.crossings)} crossings, {len(self.arcs)} arcs, {self.region_count} regions)"

    @property
    def arc_count(self):
        return len(self.arcs)

    def next_edge(self, lab):
        """Edge that follows ``lab`` along the orientation."""
        c, s = self.edge_head[lab]
        return self.pd[c][0][(s + 2) % 4]

    def components(self):
        if self.is_unknot_circle:
            return [[1]]
        left = set(self.edges)
        comps = []
        while left:
            start = min(left)
            comp = [start]
            left.discard(start)
            lab = self.next_edge(start)
            while lab != start:
                comp.append(lab)
                left.discard(lab)
                lab = self.next_edge(lab)
            comps.append(comp)
        return comps

    def writhe(self):
        return sum(x.sign for x in self.crossings)

    def to_text(self):
        if self.is_unknot_circle:
            return "O\n"
        lines = []
        for slots, sign in self.pd:
            lines.append(f"X[{','.join(str(v) for v in slots)}] {'+' if sign > 0 else '-'}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parsing

_X = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*([+-])?")


def parse_diagram(text):
    """Parse PD text: ``X[i,j,k,l]`` entries, each optionally followed by ``+`` or ``-``.

    A wrapper ``PD[...]`` and ``#`` comments are allowed. A lone ``O`` is the
    crossingless unknot. Without explicit signs the orientation of over strands is
    inferred from the under strands, falling back to consecutive edge numbering.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if body in ("O", "PD[]", ""):
        if body == "":
            raise MalformedPD("empty PD code")
        return LinkDiagram([], unknot=True)
    found = list(_X.finditer(body))
    leftover = _X.sub("", body)
    leftover = re.sub(r"PD\[|\]|,|\s", "", leftover)
    if not found or leftover:
        raise MalformedPD(f"cannot parse PD code near {leftover[:20]!r}" if leftover else "no crossings found")
    tuples = [tuple(int(m.group(g)) for g in range(1, 5)) for m in found]
    signs = [None if m.group(5) is None else (1 if m.group(5) == "+" else -1) for m in found]
    return from_pd(tuples, signs)


def from_pd(tuples, signs=None):
    tuples = [tuple(int(v) for v in t) for t in tuples]
    if any(len(t) != 4 for t in tuples):
        raise MalformedPD("every crossing needs four labels")
    signs = list(signs) if signs is not None else [None] * len(tuples)
    if None in signs:
        inferred = _infer_signs(tuples)
        signs = [s if s is not None else inferred[c] for c, s in enumerate(signs)]
    return LinkDiagram([t + (s,) for t, s in zip(tuples, signs)])


def _infer_signs(tuples):
    ends = {}
    for c, t in enumerate(tuples):
        for s, lab in enumerate(t):
            ends.setdefault(lab, []).append((c, s))
    for lab, e in ends.items():
        if len(e) != 2:
            raise MalformedPD(f"edge {lab} appears {len(e)} times, expected 2", witness={"edge": lab})

    def other(c, s):
        a, b = ends[tuples[c][s]]
        return b if a == (c, s) else a

    incoming = {}
    todo = deque()

    def mark(end, value):
        if end in incoming:
            if incoming[end] != value:
                raise MalformedPD("edge orientations conflict", witness={"crossing": end[0], "slot": end[1]})
            return
        incoming[end] = value
        todo.append(end)

    for c in range(len(tuples)):
        mark((c, 0), True)
        mark((c, 2), False)
    while todo:
        c, s = todo.popleft()
        mark(other(c, s), not incoming[(c, s)])
        if s in (1, 3):
            mark((c, 4 - s), not incoming[(c, s)])
    signs = []
    labels = sorted(ends)
    count = len(labels)
    for c, (i, j, k, l) in enumerate(tuples):
        if (c, 3) in incoming:
            signs.append(1 if incoming[(c, 3)] else -1)
        elif (j - l) % count == 1:
            signs.append(1)
        elif (l - j) % count == 1:
            signs.append(-1)
        else:
            raise MalformedPD(f"cannot orient the over strand at crossing {c}", witness={"crossing": c})
    return signs


def braid_closure(word, strands=None):
    """PD of the closure of a braid word; generator i > 0 is sigma_i, -i its inverse (strands go up)."""
    if not word:
        raise MalformedPD("empty braid word")
    strands = strands or max(abs(g) for g in word) + 1
    current = list(range(1, strands + 1))
    nxt = strands + 1
    tuples, signs = [], []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise MalformedPD(f"generator {g} out of range for {strands} strands")
        a, b = current[i], current[i + 1]          # bottom-left, bottom-right
        c, d = nxt, nxt + 1                        # top-left, top-right
        nxt += 2
        if g > 0:   # strand a -> d passes over
            tuples.append((b, d, c, a))
            signs.append(1)
        else:       # strand b -> c passes over
            tuples.append((a, b, d, c))
            signs.append(-1)
        current[i], current[i + 1] = c, d
    close = {top: bottom for top, bottom in zip(current, range(1, strands + 1))}
    tuples = [tuple(close.get(v, v) for v in t) for t in tuples]
    return LinkDiagram([t + (s,) for t, s in zip(tuples, signs)])


TREFOIL = "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\n"
FIGURE_EIGHT = "X[4,2,5,1] +\nX[8,6,1,5] +\nX[6,3,7,4] -\nX[2,7,3,8] -\n"


# ---------------------------------------------------------------- colorings

class Coloring:
    """Arc colors satisfying under_out = under_in * over (positive) or under_in = under_out * over (negative)."""

    def __init__(self, diagram, op, arc_colors, check=True):
        self.diagram = diagram
        self.op = op
        self.arc_colors = tuple(int(v) for v in arc_colors)
        if check:
            bad = coloring_violation(diagram, op, self.arc_colors)
            if bad is not None:
                raise InvalidColoring("crossing relation fails", witness=bad)

    def edge_color(self, lab):
        return self.arc_colors[self.diagram.edge_arc[lab]]

    def __eq__(self, other):
        return isinstance(other, Coloring) and self.arc_colors == other.arc_colors

    def __hash__(self):
        return hash(self.arc_colors)

    def __repr__(self):
        return f"Coloring{self.arc_colors}"


def _relation_ok(x, op, col):
    a, b, o = col[x.under_in_arc], col[x.under_out_arc], col[x.over_arc]
    return op(a, o) == b if x.sign > 0 else op(b, o) == a


def coloring_violation(diagram, op, col):
    if len(col) != diagram.arc_count:
        return {"expected_arcs": diagram.arc_count, "got": len(col)}
    for c, x in enumerate(diagram.crossings):
        if not _relation_ok(x, op, col):
            return {"crossing": c, "colors": [col[x.under_in_arc], col[x.over_arc], col[x.under_out_arc]]}
    return None


def enumerate_colorings(diagram, op, fixed=None):
    """All colorings, by backtracking with propagation; ``fixed`` pins some arc colors."""
    n = op.n
    m = diagram.arc_count
    col = [-1] * m
    by_arc = {a: [] for a in range(m)}
    for x in diagram.crossings:
        for a in {x.under_in_arc, x.under_out_arc, x.over_arc}:
            by_arc[a].append(x)
    out = []

    def assign(a, v, trail):
        if col[a] >= 0:
            return col[a] == v
        col[a] = v
        trail.append(a)
        for x in by_arc[a]:
            i, o, u = col[x.under_in_arc], col[x.over_arc], col[x.under_out_arc]
            if o < 0:
                continue
            if x.sign > 0:
                if i >= 0:
                    if not assign(x.under_out_arc, op(i, o), trail):
                        return False
            else:
                if u >= 0:
                    if not assign(x.under_in_arc, op(u, o), trail):
                        return False
            if col[x.under_in_arc] >= 0 and col[x.under_out_arc] >= 0 and not _relation_ok(x, op, col):
                return False
        return True

    def undo(trail):
        for a in trail:
            col[a] = -1

    def search(a):
        while a < m and col[a] >= 0:
            a += 1
        if a == m:
            out.append(Coloring(diagram, op, col, check=True))
            return
        for v in range(n):
            trail = []
            if assign(a, v, trail):
                search(a + 1)
            undo(trail)

    trail = []
    ok = True
    for a, v in sorted((fixed or {}).items()):
        if not assign(a, v, trail):
            ok = False
            break
    if ok:
        search(0)
    return sorted(out, key=lambda c: c.arc_colors)


def brute_force_colorings(diagram, op):
    """Oracle: test every assignment of colors to arcs."""
    out = []
    for col in itertools.product(range(op.n), repeat=diagram.arc_count):
        if coloring_violation(diagram, op, col) is None:
            out.append(Coloring(diagram, op, col, check=False))
    return out


def count_colorings(diagram, op):
    return len(enumerate_colorings(diagram, op))


# ---------------------------------------------------------------- shadow colorings

class ShadowColoring:
    """A coloring plus region colors with left region = right region * (arc color)."""

    def __init__(self, coloring, region_colors, check=True):
        self.coloring = coloring
        self.region_colors = tuple(int(v) for v in region_colors)
        if check:
            bad = shadow_violation(coloring, self.region_colors)
            if bad is not None:
                raise InvalidShadowColoring("region rule fails", witness=bad)

    def __repr__(self):
        return f"ShadowColoring(arcs={self.coloring.arc_colors}, regions={self.region_colors})"


def shadow_violation(coloring, regions):
    D = coloring.diagram
    op = coloring.op
    if len(regions) != D.region_count:
        return {"expected_regions": D.region_count, "got": len(regions)}
    for lab in D.edges:
        right, left = D.edge_faces[lab]
        if op(regions[right], coloring.edge_color(lab)) != regions[left]:
            return {"edge": lab, "right": right, "left": left}
    return None


def shadow_colorings(coloring, outer=None, seed_region=0):
    """Shadow colorings extending a coloring, one per consistent color of the seed region (default 0)."""
    D = coloring.diagram
    op = coloring.op
    out = []
    for x0 in ([outer] if outer is not None else range(op.n)):
        regions = [-1] * D.region_count
        regions[seed_region] = x0
        changed = True
        while changed:
            changed = False
            for lab in D.edges:
                right, left = D.edge_faces[lab]
                if regions[right] >= 0 and regions[left] < 0:
                    regions[left] = op(regions[right], coloring.edge_color(lab))
                    changed = True
                elif regions[left] >= 0 and regions[right] < 0:
                    pre = [x for x in range(op.n) if op(x, coloring.edge_color(lab)) == regions[left]]
                    if len(pre) == 1:
                        regions[right] = pre[0]
                        changed = True
        if min(regions) < 0:
            continue
        if shadow_violation(coloring, regions) is None:
            out.append(ShadowColoring(coloring, regions, check=False))
    return out


# ---------------------------------------------------------------- cycles

def rack_system(op):
    """The rack boundary d^(*) - d^(*0): ops (identity, op) with weights (-1, 1)."""
    return MultiTermSystem([identity_op(op.n), op], [-1, 1], check=False)


def apply_boundary(sys, vec):
    """Boundary of a ChainVector computed straight from the face formulas."""
    out = ChainVector(vec.degree - 1)
    for t, c in vec.coeffs.items():
        n = len(t) - 1
        for op, w in zip(sys.ops, sys.weights):
            if not w:
                continue
            for i in range(n + 1):
                if i == 0:
                    new = t[1:]
                else:
                    new = tuple(op(x, t[i]) for x in t[:i]) + t[i + 1:]
                out.add(new, (-1) ** i * w * c)
    return out


def p0_chain(vec):
    out = ChainVector(vec.degree - 1)
    for t, c in vec.coeffs.items():
        out.add(t[1:], c)
    return out


def cycle_c1(coloring, check=True):
    """c(D) = sum over crossings of sign * (right under arc color, over color)."""
    if check:
        bad = coloring_violation(coloring.diagram, coloring.op, coloring.arc_colors)
        if bad is not None:
            raise InvalidColoring("crossing relation fails", witness=bad)
    col = coloring.arc_colors
    vec = ChainVector(1)
    for x in coloring.diagram.crossings:
        vec.add((col[x.right_under_arc], col[x.over_arc]), x.sign)
    if check and apply_boundary(rack_system(coloring.op), vec):
        raise NotACycle("c(D) is not a cycle", witness={"chain": repr(vec)})
    return vec


def cycle_c2(shadow, check=True):
    """c_2(D) = sum over crossings of sign * (source region, right under arc, over arc)."""
    coloring = shadow.coloring
    if check:
        bad = shadow_violation(coloring, shadow.region_colors)
        if bad is not None:
            raise InvalidShadowColoring("region rule fails", witness=bad)
    col = coloring.arc_colors
    reg = shadow.region_colors
    vec = ChainVector(2)
    for x in coloring.diagram.crossings:
        vec.add((reg[x.source_region], col[x.right_under_arc], col[x.over_arc]), x.sign)
    if check and apply_boundary(rack_system(coloring.op), vec):
        raise NotACycle("c_2(D) is not a cycle", witness={"chain": repr(vec)})
    return vec


def rack_complex(op, n_max, normalized=False):
    cx = build_distributive_complex(rack_system(op), n_max)
    if normalized:
        cx = quotient(cx, subcomplex(cx, "degenerate"))
    return cx


def homologous(u, v, cx):
    """True when u - v is a boundary in cx; u and v must be cycles of the same degree."""
    if u.degree != v.degree:
        raise NotACycle("chains have different degrees")
    n = u.degree
    if not cx.n_min <= n < cx.n_max:
        raise NotACycle(f"complex does not reach degree {n + 1}")
    yu, yv = cx.coordinates(u), cx.coordinates(v)
    for name, y in (("first", yu), ("second", yv)):
        if n > cx.n_min and (cx.boundary(n) @ y).any():
            raise NotACycle(f"{name} chain is not a cycle")
    return snf.in_image(cx.boundary(n + 1), yu - yv)


# ---------------------------------------------------------------- Reidemeister moves

def _fresh(D, k):
    start = max(D.edges) + 1
    return list(range(start, start + k))


def _rewrite(D, replace):
    """Copy of the PD with endpoint labels replaced: replace[(c, s)] = new label."""
    out = []
    for c, (slots, sign) in enumerate(D.pd):
        out.append([replace.get((c, s), lab) for s, lab in enumerate(slots)] + [sign])
    return out


R1_KINDS = [(1, "under"), (1, "over"), (-1, "under"), (-1, "over")]


def _r1(D, site):
    lab, sign, first = site
    if (sign, first) not in R1_KINDS:
        raise InvalidSite(f"unknown R1 kind {(sign, first)}")
    if D.is_unknot_circle:
        e1 = e2 = 1
        m = 2
        pd = []
    else:
        if lab not in D.edge_head:
            raise InvalidSite(f"no edge {lab}", witness={"edge": lab})
        e1, e2 = lab, _fresh(D, 1)[0]
        m = e2 + 1
        pd = _rewrite(D, {D.edge_head[lab]: e2})
    new = {(1, "under"): (e1, e2, m, m), (-1, "under"): (e1, m, m, e2),
           (1, "over"): (m, m, e2, e1), (-1, "over"): (m, e1, e2, m)}[(sign, first)]
    pd.append(list(new) + [sign])
    return LinkDiagram(pd)


def _face_darts(D, region):
    if not 0 <= region < D.region_count:
        raise InvalidSite(f"no region {region}")
    return D.faces[region]


def _r2(D, site):
    """Push edge ``over`` across edge ``under`` inside a region bounded by both."""
    over, under, region = site
    if D.is_unknot_circle or over == under:
        raise InvalidSite("R2 needs two distinct edges")
    darts = _face_darts(D, region)
    found = {}
    for d in darts:
        lab = D.pd[d[0]][0][d[1]]
        if lab in (over, under):
            if lab in found:
                raise InvalidSite(f"edge {lab} bounds the region twice")
            found[lab] = d
    if len(found) != 2:
        raise InvalidSite("both edges must bound the region", witness={"region": region})
    # A dart leaves (c, s) and runs to the other end of its edge, with the region on its right.
    # Locally the over edge runs east along the top of the region and the under edge runs west
    # along the bottom. The over edge dips south across the under edge at C1 (west) and back
    # north at C2 (east).
    e_start, f_start = found[over], found[under]
    e_fwd = D.edge_tail[over] == e_start
    f_fwd = D.edge_tail[under] == f_start
    e_end = D._other_end(*e_start)
    f_end = D._other_end(*f_start)
    emid, e2, fmid, f2 = _fresh(D, 4)
    e1, f1 = over, under
    pd = _rewrite(D, {e_start: e1, e_end: e2, f_start: f1, f_end: f2})
    # C1: north e1, south emid, east fmid, west f2.  C2: north e2, south emid, west fmid, east f1.
    c1 = {"N": e1, "S": emid, "E": fmid, "W": f2}
    c2 = {"N": e2, "S": emid, "W": fmid, "E": f1}
    ccw = ["E", "N", "W", "S"]
    # under strand flows west when traversed forward; its incoming side at C1 is east (fmid), at C2 east (f1)
    for cdict, in_side_fwd in ((c1, "E"), (c2, "E")):
        start = in_side_fwd if f_fwd else {"E": "W", "W": "E"}[in_side_fwd]
        k = ccw.index(start)
        slots = [cdict[ccw[(k + t) % 4]] for t in range(4)]
        # over strand: forward means it runs east then dips south at C1 and comes north at C2
        over_in_side = ("N" if cdict is c1 else "S") if e_fwd else ("S" if cdict is c1 else "N")
        pos = [ccw[(k + t) % 4] for t in range(4)].index(over_in_side)
        pd.append(slots + [1 if pos == 3 else -1])
    return LinkDiagram(pd)


def r3_sites(D, require_positive=True):
    """Triangular regions whose three strands are top (over twice), middle and bottom (under twice)."""
    sites = []
    for f, darts in enumerate(D.faces if not D.is_unknot_circle else []):
        if len(darts) != 3:
            continue
        cs = [d[0] for d in darts]
        if len(set(cs)) != 3:
            continue
        if require_positive and any(D.pd[c][1] < 0 for c in cs):
            continue
        if _r3_roles(D, darts) is not None:
            sites.append(f)
    return sites


def _r3_roles(D, darts):
    """Per triangle edge: strand info, or None if the triangle is not an R3 configuration."""
    segs = []
    for c, s in darts:
        c2, s2 = D._other_end(c, s)
        segs.append(((c, s), (c2, s2)))
    over_count = []
    for (c, s), (c2, s2) in segs:
        a = s % 2 == 1
        b = s2 % 2 == 1
        over_count.append(a + b)
    if sorted(over_count) != [0, 1, 2]:
        return None
    return segs


def _r3(D, site, require_positive=True):
    region = site
    darts = _face_darts(D, region)
    if D.is_unknot_circle or len(darts) != 3 or len({d[0] for d in darts}) != 3:
        raise InvalidSite("R3 needs a triangular region with three distinct crossings")
    if require_positive and any(D.pd[d[0]][1] < 0 for d in darts):
        raise InvalidSite("R3 is restricted to all-positive triangles")
    segs = _r3_roles(D, darts)
    if segs is None:
        raise InvalidSite("triangle strands are not top/middle/bottom")
    # Each triangle edge is one strand running between two triangle crossings. The move
    # reverses the order in which every strand meets its two crossings and keeps the slot
    # pattern of each crossing. For a strand entering crossing A at slot a_in, leaving A
    # along the triangle edge at a_out, entering B at b_in and leaving at b_out, the new
    # strand enters B at b_in, runs along a fresh triangle edge to A and leaves A at a_out.
    fresh = _fresh(D, 3)
    replace = {}
    for (end1, end2), new in zip(segs, fresh):
        lab = D.pd[end1[0]][0][end1[1]]
        tail, head = D.edge_tail[lab], D.edge_head[lab]
        (ca, sa_out), (cb, sb_in) = tail, head
        sa_in, sb_out = (sa_out + 2) % 4, (sb_in + 2) % 4
        before = D.pd[ca][0][sa_in]
        after = D.pd[cb][0][sb_out]
        replace[(cb, sb_in)] = before
        replace[(cb, sb_out)] = new
        replace[(ca, sa_in)] = new
        replace[(ca, sa_out)] = after
    pd = _rewrite(D, replace)
    return LinkDiagram(pd)


def apply_reidemeister(D, move, site, require_positive=True):
    """Apply a move that adds crossings (R1, R2) or an R3 move.

    R1 site: (edge, sign, 'under' | 'over'), where the last entry says whether the kink
    is entered under or over. R2 site: (over edge, under edge, region). R3 site: a
    triangular region. R3 is restricted to all-positive triangles unless
    ``require_positive`` is False.
    """
    if move == "R1":
        return _r1(D, site)
    if move == "R2":
        return _r2(D, site)
    if move == "R3":
        return _r3(D, site, require_positive)
    raise InvalidSite(f"unknown move {move!r}")


def reidemeister_sites(D, move, require_positive=True):
    if move == "R1":
        edges = [1] if D.is_unknot_circle else D.edges
        return [(e,) + kind for e in edges for kind in R1_KINDS]
    if move == "R2":
        if D.is_unknot_circle:
            return []
        out = []
        for f, darts in enumerate(D.faces):
            labs = [D.pd[c][0][s] for c, s in darts]
            once = [lab for lab in labs if labs.count(lab) == 1]
            for a, b in itertools.permutations(once, 2):
                out.append((a, b, f))
        return out
    if move == "R3":
        return r3_sites(D, require_positive)
    raise InvalidSite(f"unknown move {move!r}")


def transfer_coloring(coloring, new_diagram):
    """Colorings of the new diagram agreeing with ``coloring`` on every edge label both share."""
    D = coloring.diagram
    fixed = {}
    for lab in new_diagram.edges:
        if lab in D.edge_arc:
            arc = new_diagram.edge_arc[lab]
            v = coloring.edge_color(lab)
            if fixed.get(arc, v) != v:
                return []
            fixed[arc] = v
    return enumerate_colorings(new_diagram, coloring.op, fixed)


def transfer_shadow(shadow, new_coloring):
    """Shadow coloring of the new diagram agreeing with ``shadow`` right of a shared edge."""
    D, D2 = shadow.coloring.diagram, new_coloring.diagram
    shared = [lab for lab in D2.edges if lab in D.edge_faces]
    if not shared:
        return []
    lab = shared[0]
    color = shadow.region_colors[D.edge_faces[lab][0]]
    return shadow_colorings(new_coloring, outer=color, seed_region=D2.edge_faces[lab][0])


# ---------------------------------------------------------------- Yang-Baxter

def yang_baxter_operator(op):
    """R(a, b) = (b, a*b) as a pair table R[a][b]."""
    n = op.n
    return [[(b, op(a, b)) for b in range(n)] for a in range(n)]


def _apply_R(R, t, pos):
    a, b = t[pos], t[pos + 1]
    x, y = R[a][b]
    return t[:pos] + (x, y) + t[pos + 2:]


def braid_relation_failures(R, n):
    """Triples where (R x Id)(Id x R)(R x Id) and (Id x R)(R x Id)(Id x R) differ."""
    bad = []
    for t in itertools.product(range(n), repeat=3):
        lhs = _apply_R(R, _apply_R(R, _apply_R(R, t, 0), 1), 0)
        rhs = _apply_R(R, _apply_R(R, _apply_R(R, t, 1), 0), 1)
        if lhs != rhs:
            bad.append(t)
    return bad


def ybe_check(op):
    return not braid_relation_failures(yang_baxter_operator(op), op.n)


def yang_baxter_inverse(op):
    """R^-1(a, b) = (b bar* a, a) for an invertible op, where (x bar* a) * a = x."""
    bar = invert(op)
    n = op.n
    return [[(bar(b, a), a) for b in range(n)] for a in range(n)]


def inverse_check(op):
    if not is_invertible(op):
        return False
    R, Ri = yang_baxter_operator(op), yang_baxter_inverse(op)
    n = op.n
    for a, b in itertools.product(range(n), repeat=2):
        x, y = R[a][b]
        if Ri[x][y] != (a, b):
            return False
        x, y = Ri[a][b]
        if R[x][y] != (a, b):
            return False
    return True
