import itertools

import pytest
from hypothesis import given, settings, strategies as st

from disthom import complex as cxm
from disthom import magma, oracles
from disthom.errors import HypothesisViolated, InputError
from disthom.homology import homology
from disthom.magma import identity_op, left_trivial_op


def agree(cx, name, params, degrees):
    for n in degrees:
        expected = oracles.formula_oracle(name, params, n, n)[n]
        assert homology(cx, n) == expected, (name, params, n)


def test_u_sequence():
    assert [oracles.u_sequence(n, 2) for n in range(6)] == [1, 1, 3, 5, 11, 21]
    for m in range(1, 6):
        for n in range(7):
            assert oracles.u_sequence(n, m) * (m + 1) == m ** (n + 1) + (-1) ** n
    with pytest.raises(InputError):
        oracles.u_sequence(-1, 2)


def test_g_shelf_formula():
    for g in ([0, 0, 2], [1, 1, 1], [0, 1, 2], [0, 0]):
        op = magma.make_g_shelf(g)
        cx = cxm.build_distributive_complex(cxm.one_term(op), 4, augmented=True)
        agree(cx, "g-shelf", {"size": len(g), "image": len(set(g))}, range(0, 4))


def test_g_shelf_scaled_formula():
    for g, d in (([0, 0, 2], 2), ([1, 1, 1], 3), ([0, 1], -2), ([0, 0, 2], 6)):
        cx = cxm.build_distributive_complex(cxm.one_term(magma.make_g_shelf(g), d), 4, augmented=True)
        agree(cx, "g-shelf-scaled", {"size": len(g), "image": len(set(g)), "d": d}, range(0, 4))


@pytest.mark.parametrize("weights", [(1,), (2, 1), (1, -1), (3, 0, 2), (-5, 1)])
def test_point_formula(weights):
    cx = cxm.build_distributive_complex(cxm.MultiTermSystem([identity_op(1)] * len(weights), list(weights)), 6)
    agree(cx, "point", {"sigma": sum(weights)}, range(0, 6))


@pytest.mark.parametrize("m,a,d", [(2, 1, 1), (2, 2, -1), (3, 1, -1), (2, 3, 3), (3, 2, 4), (2, -2, 6)])
def test_two_term_formula(m, a, d):
    n_top = 4 if m == 2 else 3
    sys = cxm.MultiTermSystem([identity_op(m), left_trivial_op(m)], [a, d])
    cx = cxm.build_distributive_complex(sys, n_top)
    agree(cx, "two-term", {"size": m, "a": a, "d": d}, range(0, n_top))


@pytest.mark.parametrize("a,c,d", [(2, 1, 3), (1, 1, -2), (0, 2, 4), (3, 3, 1), (2, -4, 6)])
def test_three_term_formula(a, c, d):
    meet = magma.BinOp([[0, 0], [0, 1]])
    sys = cxm.MultiTermSystem([identity_op(2), meet, left_trivial_op(2)], [a, c, d])
    cx = cxm.build_distributive_complex(sys, 4)
    agree(cx, "three-term", {"size": 2, "a": a, "c": c, "d": d}, range(0, 4))


B1 = magma.make_lattice_ops(magma.boolean_lattice(1))


@pytest.mark.parametrize("w", [(1, 0, 1, 1), (1, 1, 1, 1), (2, 0, 2, 1), (1, -1, 3, 2), (3, 1, -1, 0)])
def test_boolean_formulas(w):
    sys = cxm.MultiTermSystem([identity_op(2), B1.join, B1.meet, left_trivial_op(2)], list(w))
    cx = cxm.build_distributive_complex(sys, 5)
    params = dict(zip("abcd", w))
    agree(cxm.normalized_complex(cx), "boolean-normalized", params, range(0, 5))
    try:
        oracles.boolean_degenerate(1, *w)
    except HypothesisViolated:
        return
    agree(cxm.degenerate_complex(cx), "boolean-degenerate", params, range(1, 5))


@pytest.mark.parametrize("leq,w", [
    (magma.boolean_lattice(2), (1, 0, 1, 1)),
    (magma.chain_lattice(3), (1, 1, 1, 1)),
    (magma.chain_lattice(3), (2, 0, 2, 1)),
    (magma.boolean_lattice(2), (1, 2, 0, 3)),
])
def test_lattice_formula(leq, w):
    L = magma.make_lattice_ops(leq)
    sys = cxm.MultiTermSystem([identity_op(L.size), L.join, L.meet, left_trivial_op(L.size)], list(w))
    cx = cxm.build_distributive_complex(sys, 3)
    params = dict(zip("abcd", w), L=L.size, J=L.join_irreducibles)
    agree(cx, "lattice", params, range(0, 3))


def test_formula_hypotheses():
    with pytest.raises(HypothesisViolated):
        oracles.two_term(2, 2, 0, 1)
    with pytest.raises(HypothesisViolated):
        oracles.lattice(1, 4, 2, 1, -1, 0, 0)
    with pytest.raises(InputError):
        oracles.formula_terms("nope", {}, 1)
    with pytest.raises(InputError):
        oracles.formula_terms("two-term", {"size": 2}, 1)


def test_term_parameters():
    info = oracles.term_parameters("lattice", {"L": 4, "J": 2, "a": 1, "b": 0, "c": 1, "d": 1}, 2)
    assert info["u_n"] == 13 and info["a_n"] == 3
    assert info["terms"][0][0] == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(-4, 4).filter(bool), st.integers(-4, 4))
def test_two_term_random(a, d):
    sys = cxm.MultiTermSystem([identity_op(2), left_trivial_op(2)], [a, d])
    cx = cxm.build_distributive_complex(sys, 4)
    agree(cx, "two-term", {"size": 2, "a": a, "d": d}, range(0, 4))
