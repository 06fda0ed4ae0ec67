"""Closed-form homology formulas, used as oracles against direct Smith-form computation.

Each formula returns a list of terms (order, exponent, label); order 0 stands for Z.
``formula_oracle`` turns the terms into an AbelianGroup per degree.
"""
from __future__ import annotations

from math import gcd

from .errors import HypothesisViolated, InputError
from .homology import AbelianGroup, HomologyTable


def u_sequence(n, m):
    """u_0 = 1, u_n = m^n - u_(n-1); equals (m^(n+1) + (-1)^n) / (m + 1)."""
    if n < 0:
        raise InputError("u_n needs n >= 0")
    u = 1
    for k in range(1, n + 1):
        u = m ** k - u
    return u


def a_sequence(n):
    return u_sequence(n, 2)


def _gcd(*vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
    return g


def _need(cond, message):
    if not cond:
        raise HypothesisViolated(message)


def _group(terms):
    orders = []
    for order, exp, label in terms:
        if exp < 0:
            raise HypothesisViolated(f"negative exponent {exp} for term {label}")
        orders.extend([order] * exp)
    return AbelianGroup.from_cyclic(orders)


# ---------------------------------------------------------------- formulas

def g_shelf(n, size, image):
    """Reduced one-term homology of a*b = g(b), g idempotent with |g(X)| = image."""
    _need(1 <= image <= size, "image size must lie in 1..|X|")
    return [(0, (image - 1) * size ** n, "free")]


def g_shelf_scaled(n, size, image, d):
    """Reduced homology of d times the g-shelf boundary; d = 0 gives the unreduced chain groups."""
    _need(1 <= image <= size, "image size must lie in 1..|X|")
    if d == 0:
        return [(0, size ** (n + 1), "chains")]
    return [(0, (image - 1) * size ** n, "free"),
            (abs(d), size ** (n + 1) - image * u_sequence(n, size), "torsion")]


def point(n, sigma):
    """Homology of a one-element multi-shelf with weight sum sigma."""
    if sigma == 0 or n == 0:
        return [(0, 1, "Z")]
    return [] if n % 2 == 0 else [(abs(sigma), 1, "Z_sigma")]


def early_degenerate_piece(n, size, g):
    """Reduced early degenerate piece: Z_g^(u_n - 1) for even n, Z_g^(u_n) for odd n."""
    _need(g != 0, "the early degenerate piece needs a nonzero gcd")
    u = u_sequence(n, size)
    return [(g, u - 1 if n % 2 == 0 else u, "early-degenerate")]


def early_normalized_piece(n, size, g):
    """Reduced early normalized piece: Z_g^(u_(n+1) - u_n + (-1)^n)."""
    _need(g != 0, "the early normalized piece needs a nonzero coefficient")
    return [(g, u_sequence(n + 1, size) - u_sequence(n, size) + (-1) ** n, "early-normalized")]


def two_term(n, size, a, d):
    """Homology of a d^(*0) + d d^(*~) on a carrier of the given size."""
    _need(a != 0, "two-term formula needs a != 0")
    g = _gcd(a, d)
    if a + d == 0:
        return point(n, 0) + early_degenerate_piece(n, size, g) + early_normalized_piece(n, size, abs(a))
    u, u1 = u_sequence(n, size), u_sequence(n + 1, size)
    if n == 0:
        return [(0, 1, "Z"), (abs(a), size - 1, "Z_a")]
    if n % 2 == 0:
        return [(abs(a), u1 - u + 1, "Z_a"), (g, u - 1, "Z_gcd(a,d)")]
    return [(abs(a + d), 1, "Z_(a+d)"), (abs(a), u1 - u - 1, "Z_a"), (g, u, "Z_gcd(a,d)")]


def two_term_pieces(n, size, a, d):
    """(point, early degenerate, early normalized) terms separately."""
    _need(a != 0, "the early normalized piece needs a != 0")
    return (point(n, a + d), early_degenerate_piece(n, size, _gcd(a, d)),
            early_normalized_piece(n, size, abs(a)))


def three_term(n, size, a, c, d):
    """Homology of a d^(*0) + c d^(*) + d d^(*~) for a spindle * with a right unit and a right projector."""
    _need(a != 0 or c != 0, "three-term formula needs a != 0 or c != 0")
    g1, g2 = _gcd(a, c), _gcd(a, c, d)
    sigma = a + c + d
    if sigma == 0:
        return point(n, 0) + early_degenerate_piece(n, size, g2) + early_normalized_piece(n, size, g1)
    u, u1 = u_sequence(n, size), u_sequence(n + 1, size)
    if n == 0:
        return [(0, 1, "Z"), (g1, size - 1, "Z_gcd(a,c)")]
    if n % 2 == 0:
        return [(g1, u1 - u + 1, "Z_gcd(a,c)"), (g2, u - 1, "Z_gcd(a,c,d)")]
    return [(abs(sigma), 1, "Z_(a+c+d)"), (g1, u1 - u - 1, "Z_gcd(a,c)"), (g2, u, "Z_gcd(a,c,d)")]


def three_term_pieces(n, size, a, c, d):
    _need(a != 0 or c != 0, "the early normalized piece needs a != 0 or c != 0")
    return (point(n, a + c + d), early_degenerate_piece(n, size, _gcd(a, c, d)),
            early_normalized_piece(n, size, _gcd(a, c)))


def boolean_normalized(n, a, b, c, d):
    """Normalized four-term homology of the two-element Boolean algebra."""
    g = _gcd(a + b, a + c)
    if n == 0:
        return [(0, 1, "Z"), (g, 1, "Z_gcd(a+b,a+c)")]
    if g == 0:
        return [(0, 2, "Z")]
    return [(g, 1, "Z_gcd(a+b,a+c)")]


def boolean_degenerate(n, a, b, c, d):
    """Degenerate four-term homology of the two-element Boolean algebra."""
    _need(a + b + c + d != 0, "needs a+b+c+d != 0")
    _need(a + b != 0 or a + c != 0, "needs a+b != 0 or a+c != 0")
    an = a_sequence(n)
    g1, g2 = _gcd(a + b, a + c), _gcd(a + b, a + c, c + d)
    if n % 2 == 0:
        return [(g1, an - 1, "Z_gcd(a+b,a+c)"), (g2, an - 1, "Z_gcd(a+b,a+c,c+d)")]
    return [(abs(a + b + c + d), 1, "Z_(a+b+c+d)"), (g1, an - 1, "Z_gcd(a+b,a+c)"),
            (g2, an, "Z_gcd(a+b,a+c,c+d)")]


def lattice(n, L, J, a, b, c, d):
    """Four-term homology of a finite distributive lattice with L elements and J join-irreducibles."""
    _need(a + b + c + d != 0, "needs a+b+c+d != 0")
    _need(a + b != 0 or a + c != 0, "needs a+b != 0 or a+c != 0")
    _need(a != 0 or b != 0 or c != 0, "needs one of a, b, c nonzero")
    g_ab_ac = _gcd(a + b, a + c)
    g_abc = _gcd(a, b, c)
    g_cd = _gcd(a + b, a + c, c + d)
    g_all = _gcd(a, b, c, d)
    if n == 0:
        return [(0, 1, "Z"), (g_ab_ac, J, "Z_gcd(a+b,a+c)"), (g_abc, L - J - 1, "Z_gcd(a,b,c)")]
    ju = J * a_sequence(n)
    u, u1 = u_sequence(n, L), u_sequence(n + 1, L)
    if n % 2 == 0:
        return [(g_ab_ac, ju, "Z_gcd(a+b,a+c)"), (g_abc, u1 - u + 1 - ju, "Z_gcd(a,b,c)"),
                (g_cd, ju - J, "Z_gcd(a+b,a+c,c+d)"), (g_all, u - 1 - ju + J, "Z_gcd(a,b,c,d)")]
    return [(abs(a + b + c + d), 1, "Z_(a+b+c+d)"), (g_ab_ac, ju, "Z_gcd(a+b,a+c)"),
            (g_abc, u1 - u - 1 - ju, "Z_gcd(a,b,c)"), (g_cd, ju, "Z_gcd(a+b,a+c,c+d)"),
            (g_all, u - ju, "Z_gcd(a,b,c,d)")]


FORMULAS = {
    "g-shelf": (g_shelf, ("size", "image")),
    "g-shelf-scaled": (g_shelf_scaled, ("size", "image", "d")),
    "point": (point, ("sigma",)),
    "two-term": (two_term, ("size", "a", "d")),
    "three-term": (three_term, ("size", "a", "c", "d")),
    "boolean-normalized": (boolean_normalized, ("a", "b", "c", "d")),
    "boolean-degenerate": (boolean_degenerate, ("a", "b", "c", "d")),
    "lattice": (lattice, ("L", "J", "a", "b", "c", "d")),
}


def formula_terms(name, params, n):
    if name not in FORMULAS:
        raise InputError(f"unknown formula {name!r}; choose from {sorted(FORMULAS)}")
    fn, keys = FORMULAS[name]
    missing = [k for k in keys if k not in params]
    if missing:
        raise InputError(f"formula {name} needs parameters {missing}")
    return fn(n, *(int(params[k]) for k in keys))


def formula_oracle(name, params, n_max, n_min=0):
    """Closed-form HomologyTable for degrees n_min..n_max."""
    groups = {n: _group(formula_terms(name, params, n)) for n in range(n_min, n_max + 1)}
    return HomologyTable(("formula", name), groups)


def term_parameters(name, params, n):
    """The auxiliary numbers a report shows next to a formula (u_n, a_n, L, J, gcds)."""
    out = {k: params[k] for k in FORMULAS[name][1]}
    base = params.get("size", params.get("L"))
    if base is not None:
        out["u_n"] = u_sequence(n, int(base))
        out["u_n+1"] = u_sequence(n + 1, int(base))
    if name in ("boolean-degenerate", "lattice"):
        out["a_n"] = a_sequence(n)
    out["terms"] = [[order, exp, label] for order, exp, label in formula_terms(name, params, n)]
    return out
