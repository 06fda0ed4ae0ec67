"""The ``disthom`` command line.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.
Errors are written to stderr as one JSON object with the error name, message and witness.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys

from . import complex as cxm
from . import homology as hom
from . import knots, magma, oracles, search
from .errors import BudgetExceeded, DisthomError, InputError, NotASpindle

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

CATEGORY_ALIASES = {
    "all": "all-ops", "all-ops": "all-ops",
    "idempotent": "idempotent-only", "idempotent-only": "idempotent-only",
    "invertible": "invertible-only", "invertible-only": "invertible-only",
    "quandle": "quandle-ops", "quandle-ops": "quandle-ops",
}

LATTICES = {
    "B1": lambda: magma.boolean_lattice(1),
    "B2": lambda: magma.boolean_lattice(2),
    "B3": lambda: magma.boolean_lattice(3),
    "C2": lambda: magma.chain_lattice(2),
    "C3": lambda: magma.chain_lattice(3),
    "C4": lambda: magma.chain_lattice(4),
}


# ---------------------------------------------------------------- helpers

def _ints(text, what="list"):
    if text is None:
        return None
    try:
        return [int(float(v)) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"cannot read {what} {text!r} as comma-separated integers") from exc


def _number(text):
    try:
        return int(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from exc


def _system_from(args, check=True):
    """Operations of --structure with --weights.

    One weight per operation, or one extra leading weight, which then goes to the
    operation a*b = a prepended to the list.
    """
    _, ops = magma.load_structure(args.structure)
    weights = _ints(args.weights, "weights")
    if weights is not None and len(weights) == len(ops) + 1:
        ops = [magma.identity_op(ops[0].n).renamed("*0")] + ops
    if weights is not None and len(weights) != len(ops):
        raise InputError(f"{len(weights)} weights for {len(ops)} operations",
                         witness={"weights": weights, "ops": len(ops)})
    return cxm.MultiTermSystem(ops, weights, check=check)


def _lattice_ops(name):
    if name in LATTICES:
        return magma.make_lattice_ops(LATTICES[name]())
    return magma.load_lattice(name)


def _emit(data, args, csv_rows=None):
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in csv_rows or []:
            w.writerow(row)
        text = buf.getvalue()
    else:
        rows = csv_rows or []
        widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))] if rows else []
        text = "".join("  ".join(str(v).ljust(wd) for v, wd in zip(r, widths)).rstrip() + "\n" for r in rows)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _group_rows(table):
    rows = [["degree", "rank", "torsion", "group"]]
    for n in table.degrees():
        g = table[n]
        rows.append([n, g.rank, " ".join(str(t) for t in g.torsion), str(g)])
    return rows


# ---------------------------------------------------------------- commands

def cmd_classify(args):
    _, ops = magma.load_structure(args.structure)
    out = {"ops": [], "pairs": []}
    for op in ops:
        out["ops"].append({"name": op.name, "classes": sorted(magma.classify(op))})
    for i, j in itertools.combinations(range(len(ops)), 2):
        f, g = ops[i], ops[j]
        out["pairs"].append({
            "ops": [i, j],
            "distributive": magma.is_distributive_pair(f, g),
            "weakly_distributive": magma.is_weakly_distributive_pair(f, g),
            "commute": magma.commutes(f, g),
        })
    opset = magma.OpSet(ops)
    out["distributive_set"] = opset.is_distributive_set
    out["monoid_closed"] = opset.is_monoid_closed
    rows = [["op", "classes"]] + [[o["name"], " ".join(o["classes"])] for o in out["ops"]]
    _emit(out, args, rows)
    return EXIT_OK


def cmd_search(args):
    spec = search.SearchSpec(
        carrier_size=args.n,
        category=CATEGORY_ALIASES.get(args.category, args.category),
        require_monoid=args.monoid,
        isomorphism_dedup=args.dedup,
        budget_nodes=args.budget_nodes,
        budget_seconds=args.budget_seconds,
    )
    report = search.find_maximal_distributive_sets(spec)
    data = report.to_json(include_timing=args.timing)
    rows = [["set", "size", "commutative"]] + [[i, s["size"], s["commutative"]]
                                                for i, s in enumerate(data["maximal_sets"])]
    _emit(data, args, rows)
    return EXIT_OK if report.complete else EXIT_BUDGET


def _build(args, n_top):
    kind = args.complex
    if kind == "distributive":
        sys_ = _system_from(args)
        return cxm.build_distributive_complex(sys_, n_top, augmented=args.augmented)
    _, ops = magma.load_structure(args.structure)
    if kind == "hochschild":
        return cxm.build_hochschild_complex(ops[0], n_top, augmented=args.augmented)
    variant = {"group": "full", "group-left": "truncated-left", "group-right": "truncated-right"}[kind]
    return cxm.build_group_complex(ops[0], n_top, variant=variant, augmented=args.augmented)


def _variant(cx, args):
    v = args.variant
    if v == "full":
        return cx
    if v == "normalized":
        return cxm.normalized_complex(cx)
    if v == "degenerate":
        return cxm.degenerate_complex(cx)
    if args.point is None:
        raise InputError(f"variant {v} needs --point")
    if v == "point":
        return cxm.subcomplex(cx, "point", t=args.point)
    if v == "relative":
        return cxm.relative_to_point(cx, args.point)
    point, f0, en = cxm.early_normalized_pieces(cx, args.point)
    return {"early-degenerate": f0, "early-normalized": en}[v]


def cmd_homology(args):
    cx = _build(args, args.nmax + 1)
    cx.verify()
    sub = _variant(cx, args)
    table = hom.homology_table(sub, range(sub.n_min, args.nmax + 1))
    data = {"complex": list(sub.kind), "homology": table.to_json()}
    _emit(data, args, _group_rows(table))
    return EXIT_OK


def _orbits(ops, m):
    """Smallest nonempty subsets permuted by every right translation (all subsets for m <= 4)."""
    found = []
    for k in range(1, m + 1):
        for A in itertools.combinations(range(m), k):
            if all(sorted(op(a, b) for a in A) == list(A) for op in ops for b in range(m)):
                found.append(list(A))
        if found:
            break
    return found


def cmd_verify(args):
    sys_ = _system_from(args, check=False)
    rows = []
    witness = sys_.weak_distributivity_witness()
    rows.append({"check": "weak-distributivity", "ok": witness is None, "witness": witness})
    try:
        cx = cxm.build_distributive_complex(sys_, args.nmax, augmented=True)
        cx.verify()
        rows.append({"check": "boundary-squared", "ok": True, "witness": None})
    except DisthomError as exc:
        rows.append({"check": "boundary-squared", "ok": False, "witness": exc.witness})
        _emit({"system": repr(sys_), "rows": rows, "ok": False}, args, _verify_rows(rows))
        return EXIT_FAIL
    for j, op in enumerate(sys_.ops):
        single = cxm.one_term(op, check=False)
        bad = [] if args.nmax < 1 else cxm.presimplicial_failures(
            lambda k, i: cxm.face_map(single, k, i), args.nmax)
        rows.append({"check": "presimplicial", "op": j, "ok": not bad,
                     "witness": None if not bad else {"pair": list(bad[0])}})
    split = hom.splitting_check(sys_, args.nmax - 1)
    for r in split["rows"]:
        rows.append({"check": r["check"], "degree": r["degree"], "ok": r["ok"],
                     "witness": None if r["ok"] else {"whole": r["whole"], "parts": r["parts"]},
                     **({"t": r["t"]} if "t" in r else {})})
    for A in _orbits(sys_.ops, sys_.n):
        cert = hom.annihilator_check(cx, A)
        bad = [d for d in cert["degrees"] if not d["ok"]]
        rows.append({"check": "annihilator", "orbit": A, "ok": cert["ok"],
                     "witness": bad[0]["witness"] if bad else None})
    for t in range(sys_.n):
        res = hom.translation_homotopy_check(cx, t)
        bad = [d for d in res if not d["ok"]]
        rows.append({"check": "translation-homotopy", "t": t, "ok": not bad,
                     "witness": bad[0]["witness"] if bad else None})
    for r in hom.early_degenerate_identities(sys_, args.nmax):
        rows.append({"check": "early-degenerate-" + r["identity"], "degree": r["degree"], "ok": r["ok"],
                     "witness": None})
    try:
        for r in hom.alpha_chain_map_check(sys_, args.nmax):
            rows.append({"check": "alpha-chain-map", "degree": r["degree"], "ok": r["ok"], "witness": None})
    except NotASpindle:
        pass
    ok = all(r["ok"] for r in rows)
    _emit({"system": repr(sys_), "rows": rows, "ok": ok}, args, _verify_rows(rows))
    return EXIT_OK if ok else EXIT_FAIL


def _verify_rows(rows):
    out = [["check", "detail", "result", "witness"]]
    for r in rows:
        detail = " ".join(f"{k}={r[k]}" for k in ("op", "degree", "t", "orbit") if k in r)
        out.append([r["check"], detail, "PASS" if r["ok"] else "FAIL",
                    "" if r["witness"] is None else json.dumps(r["witness"], sort_keys=True)])
    return out


def _chain_json(vec):
    return [{"tuple": list(t), "coefficient": c} for t, c in sorted(vec.coeffs.items())]


def cmd_knot(args):
    with open(args.pd) as fh:
        D = knots.parse_diagram(fh.read())
    _, ops = magma.load_structure(args.structure)
    op = ops[0]
    cols = knots.enumerate_colorings(D, op)
    data = {"crossings": len(D.crossings), "arcs": D.arc_count, "regions": D.region_count,
            "writhe": D.writhe(), "invariant": args.invariant}
    rows = [["coloring", "value"]]
    if args.invariant == "colorings":
        data["count"] = len(cols)
        data["colorings"] = [list(c.arc_colors) for c in cols]
        rows += [[" ".join(map(str, c.arc_colors)), ""] for c in cols]
    elif args.invariant == "c1":
        data["cycles"] = []
        for c in cols:
            vec = knots.cycle_c1(c)
            data["cycles"].append({"coloring": list(c.arc_colors), "chain": _chain_json(vec)})
            rows.append([" ".join(map(str, c.arc_colors)), repr(vec)])
    else:
        data["cycles"] = []
        for c in cols:
            for s in knots.shadow_colorings(c):
                vec = knots.cycle_c2(s)
                data["cycles"].append({"coloring": list(c.arc_colors), "regions": list(s.region_colors),
                                       "chain": _chain_json(vec)})
                rows.append([" ".join(map(str, c.arc_colors)) + " | " + " ".join(map(str, s.region_colors)),
                             repr(vec)])
    _emit(data, args, rows)
    return EXIT_OK


def _oracle_complex(args):
    """The complex a formula describes, and the basis of comparison."""
    name = args.formula
    w = _ints(args.weights, "weights")
    if name in ("g-shelf", "g-shelf-scaled"):
        g = _ints(args.g, "endomap")
        if g is None:
            raise InputError(f"{name} needs --g")
        op = magma.make_g_shelf(g)
        d = 1 if name == "g-shelf" else (w[0] if w else args.d)
        if d is None:
            raise InputError("g-shelf-scaled needs --weights d")
        params = {"size": len(g), "image": len(set(g)), "d": d}
        cx = cxm.build_distributive_complex(cxm.one_term(op, d), args.nmax + 1, augmented=d != 0)
        return cx, params
    if name == "point":
        if not w:
            raise InputError("point needs --weights")
        ops = [magma.trivial_quandle(1)] * len(w)
        cx = cxm.build_distributive_complex(cxm.MultiTermSystem(ops, w), args.nmax + 1)
        return cx, {"sigma": sum(w)}
    if name == "two-term":
        if args.size is None or not w or len(w) != 2:
            raise InputError("two-term needs --size and --weights a,d")
        m = args.size
        sys_ = cxm.MultiTermSystem([magma.identity_op(m), magma.left_trivial_op(m)], w)
        return cxm.build_distributive_complex(sys_, args.nmax + 1), {"size": m, "a": w[0], "d": w[1]}
    if name == "three-term":
        if args.structure is None or not w or len(w) != 3:
            raise InputError("three-term needs --structure and --weights a,c,d")
        _, ops = magma.load_structure(args.structure)
        m = ops[0].n
        sys_ = cxm.MultiTermSystem([magma.identity_op(m), ops[0], magma.left_trivial_op(m)], w)
        return (cxm.build_distributive_complex(sys_, args.nmax + 1),
                {"size": m, "a": w[0], "c": w[1], "d": w[2]})
    if args.lattice is None or not w or len(w) != 4:
        raise InputError(f"{name} needs --lattice and --weights a,b,c,d")
    L = _lattice_ops(args.lattice)
    m = L.size
    sys_ = cxm.MultiTermSystem([magma.identity_op(m), L.join, L.meet, magma.left_trivial_op(m)], w)
    cx = cxm.build_distributive_complex(sys_, args.nmax + 1)
    if name == "boolean-normalized":
        cx = cxm.normalized_complex(cx)
    elif name == "boolean-degenerate":
        cx = cxm.degenerate_complex(cx)
    params = {"a": w[0], "b": w[1], "c": w[2], "d": w[3], "L": L.size, "J": L.join_irreducibles}
    return cx, params


def cmd_oracle_compare(args):
    cx, params = _oracle_complex(args)
    rows_json = []
    rows = [["degree", "computed", "formula", "result", "parameters"]]
    ok = True
    lo = max(cx.n_min, 0)
    for n in range(lo, args.nmax + 1):
        computed = hom.homology(cx, n)
        expected = oracles.formula_oracle(args.formula, params, n, n)[n]
        same = computed == expected
        ok &= same
        info = oracles.term_parameters(args.formula, params, n)
        rows_json.append({"degree": n, "computed": computed.to_json(), "formula": expected.to_json(),
                          "result": "PASS" if same else "FAIL", "parameters": info,
                          "witness": None if same else {"computed": str(computed), "formula": str(expected)}})
        rows.append([n, str(computed), str(expected), "PASS" if same else "FAIL",
                     json.dumps({k: v for k, v in info.items() if k != "terms"}, sort_keys=True)])
    _emit({"formula": args.formula, "parameters": params, "rows": rows_json, "ok": ok}, args, rows)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="disthom", description="Multi-term distributive homology toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp_):
        sp_.add_argument("--format", choices=("json", "csv", "table"), default="json")
        sp_.add_argument("--output", help="write the report here instead of stdout")
        sp_.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    c = sub.add_parser("classify", help="axioms of each operation and of each pair")
    c.add_argument("--structure", required=True)
    common(c)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("search", help="maximal distributive sets on a small carrier")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--category", default="all-ops", choices=sorted(CATEGORY_ALIASES))
    s.add_argument("--monoid", action="store_true", help="report only sets closed under composition")
    s.add_argument("--dedup", action="store_true", help="merge sets equal up to relabeling the carrier")
    s.add_argument("--budget-nodes", type=_number)
    s.add_argument("--budget-seconds", type=float)
    s.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")
    common(s)
    s.set_defaults(func=cmd_search)

    h = sub.add_parser("homology", help="integral homology of a chain complex")
    h.add_argument("--structure", required=True)
    h.add_argument("--weights")
    h.add_argument("--nmax", type=int, required=True)
    h.add_argument("--complex", default="distributive",
                   choices=("distributive", "group", "group-left", "group-right", "hochschild"))
    h.add_argument("--variant", default="full",
                   choices=("full", "normalized", "degenerate", "point", "relative",
                            "early-degenerate", "early-normalized"))
    h.add_argument("--point", type=int)
    h.add_argument("--augmented", action="store_true")
    common(h)
    h.set_defaults(func=cmd_homology)

    v = sub.add_parser("verify", help="boundary, splitting and homotopy checks")
    v.add_argument("--structure", required=True)
    v.add_argument("--weights")
    v.add_argument("--nmax", type=int, default=3)
    common(v)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("knot", help="colorings and cycles of a link diagram")
    k.add_argument("--pd", required=True)
    k.add_argument("--structure", required=True)
    k.add_argument("--invariant", choices=("colorings", "c1", "c2"), default="colorings")
    common(k)
    k.set_defaults(func=cmd_knot)

    o = sub.add_parser("oracle-compare", help="closed-form homology against direct computation")
    o.add_argument("--formula", required=True, choices=sorted(oracles.FORMULAS))
    o.add_argument("--weights")
    o.add_argument("--nmax", type=int, required=True)
    o.add_argument("--lattice", help="B1, B2, B3, C2, C3, C4 or a lattice JSON file")
    o.add_argument("--structure")
    o.add_argument("--size", type=int)
    o.add_argument("--g", help="idempotent endomap as a comma list")
    o.add_argument("--d", type=int)
    common(o)
    o.set_defaults(func=cmd_oracle_compare)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        sys.stderr.write(json.dumps(exc.report(), sort_keys=True) + "\n")
        return EXIT_BUDGET
    except InputError as exc:
        sys.stderr.write(json.dumps(exc.report(), sort_keys=True) + "\n")
        return EXIT_INPUT
    except DisthomError as exc:
        sys.stderr.write(json.dumps(exc.report(), sort_keys=True, default=str) + "\n")
        return EXIT_FAIL
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "InputError", "message": str(exc), "witness": None}) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
