import itertools
import random

import numpy as np
import pytest
import scipy.sparse as sp

from disthom import complex as cxm
from disthom import magma
from disthom.homology import homology
from disthom.errors import InputError, NotAssociative, NotASubcomplex, WeakDistributivityViolated
from disthom.magma import BinOp, identity_op, left_trivial_op

from conftest import random_shelf


def column(M, j):
    return np.asarray(M.tocsc()[:, j].todense()).ravel()


def test_face_map_example():
    op = magma.dihedral_quandle(3)
    sys = cxm.one_term(op)
    d1 = face = cxm.face_map(sys, 2, 1)
    x = (2, 0, 1)
    col = column(d1, cxm.all_tuples(3, 3).tolist().index(list(x)))
    target = (op(2, 0), 1)
    expect = np.zeros(9, dtype=int)
    expect[target[0] * 3 + target[1]] = 1
    assert (col == expect).all()
    d0 = cxm.face_map(sys, 2, 0)
    assert column(d0, 2 * 9 + 0 * 3 + 1)[0 * 3 + 1] == 1


def test_presimplicial_random_shelves(rng):
    for _ in range(4):
        sys = cxm.one_term(random_shelf(3, rng))
        assert cxm.presimplicial_failures(lambda k, i: cxm.face_map(sys, k, i), 4) == []


def test_presimplicial_fails_for_non_shelf():
    op = BinOp([[1, 0], [0, 0]])
    assert not magma.is_shelf(op)
    sys = cxm.one_term(op, check=False)
    assert cxm.presimplicial_failures(lambda k, i: cxm.face_map(sys, k, i), 2)


def _weak_conditions(sys, n):
    """Conditions (2), (3), (4') of a weak simplicial module on degree n."""
    m = sys.n
    s = lambda k, i: cxm.degeneracy_map(m, k, i)
    d = lambda k, i: cxm.face_map(sys, k, i)
    two = all(cxm.equal(s(n + 1, i) @ s(n, j), s(n + 1, j + 1) @ s(n, i))
              for j in range(n + 1) for i in range(j + 1))
    three = True
    for j in range(n + 1):
        for i in range(n + 2):
            if i < j:
                three &= cxm.equal(d(n + 1, i) @ s(n, j), s(n - 1, j - 1) @ d(n, i)) if n >= 1 else True
            elif i > j + 1:
                three &= cxm.equal(d(n + 1, i) @ s(n, j), s(n - 1, j) @ d(n, i - 1)) if n >= 1 else True
    four = all(cxm.equal(d(n + 1, i) @ s(n, i), d(n + 1, i + 1) @ s(n, i)) for i in range(n + 1))
    return two, three, four


def test_very_weak_simplicial_any_op():
    rng = random.Random(9)
    for _ in range(8):
        op = BinOp([[rng.randrange(3) for _ in range(3)] for _ in range(3)])
        sys = cxm.one_term(op, check=False)
        for n in range(1, 3):
            two, three, four = _weak_conditions(sys, n)
            assert two and three
            assert four == magma.is_idempotent(op)
    two, three, four = _weak_conditions(cxm.one_term(magma.dihedral_quandle(3)), 2)
    assert two and three and four


def test_boundary_squares_to_zero():
    L = magma.make_lattice_ops(magma.chain_lattice(3))
    sys = cxm.MultiTermSystem([identity_op(3), L.join, L.meet, left_trivial_op(3)], [2, -1, 3, 1])
    cx = cxm.build_distributive_complex(sys, 4, augmented=True)
    for n in range(0, 5):
        assert cxm.is_zero(cx.boundary(n) @ cx.boundary(n + 1))


def test_anticommuting_boundaries():
    L = magma.make_lattice_ops(magma.boolean_lattice(2))
    for n in range(2, 5):
        a = cxm.distributive_boundary(cxm.one_term(L.join), n - 1) @ cxm.distributive_boundary(cxm.one_term(L.meet), n)
        b = cxm.distributive_boundary(cxm.one_term(L.meet), n - 1) @ cxm.distributive_boundary(cxm.one_term(L.join), n)
        assert cxm.is_zero(a + b)


def test_not_weakly_distributive_rejected():
    f = BinOp([[0, 0], [1, 1]])
    g = next(op for op in (BinOp([[1, 0], [0, 1]]), BinOp([[0, 1], [1, 1]]))
             if not magma.is_weakly_distributive_pair(f, op))
    with pytest.raises(WeakDistributivityViolated) as exc:
        cxm.MultiTermSystem([f, g], [1, 1])
    assert exc.value.witness is not None


def test_group_complex_ranks():
    Z2 = BinOp(magma.cyclic_group(2))
    cx = cxm.build_group_complex(Z2, 4)
    assert [cx.dim(n) for n in range(5)] == [1, 2, 4, 8, 16]
    cx.verify()


def test_group_complex_needs_associative():
    op = next(BinOp([[a, b], [c, d]]) for a, b, c, d in itertools.product(range(2), repeat=4)
              if magma.is_shelf(BinOp([[a, b], [c, d]])) and not magma.is_associative(BinOp([[a, b], [c, d]])))
    with pytest.raises(NotAssociative):
        cxm.build_group_complex(op, 3)


def test_group_homology_z3():
    cx = cxm.build_group_complex(BinOp(magma.cyclic_group(3)), 4)
    assert [str(homology(cx, n)) for n in range(4)] == ["Z", "Z_3", "0", "Z_3"]


def test_truncated_group_complexes_acyclic():
    left = cxm.build_group_complex(left_trivial_op(2), 4, variant="truncated-left")
    right = cxm.build_group_complex(identity_op(2), 4, variant="truncated-right")
    for cx in (left, right):
        assert all(homology(cx, n).is_trivial() for n in range(4))


def test_hochschild():
    Z2 = BinOp(magma.cyclic_group(2))
    cx = cxm.build_hochschild_complex(Z2, 3)
    cx.verify()
    assert cxm.presimplicial_failures(lambda k, i: cxm.hochschild_face_map(Z2, k, i), 3) == []
    bad = BinOp([[1, 0], [0, 0]])
    assert not magma.is_associative(bad)
    fails = cxm.presimplicial_failures(lambda k, i: cxm.hochschild_face_map(bad, k, i), 2)
    assert fails


def test_degenerate_subcomplex_closed():
    sys = cxm.one_term(magma.dihedral_quandle(3))
    cx = cxm.build_distributive_complex(sys, 3)
    sub = cxm.subcomplex(cx, "degenerate")
    sub.verify()
    assert sub.dim(0) == 0 and sub.dim(1) == 3


def test_point_subcomplex():
    sys = cxm.MultiTermSystem([identity_op(2), left_trivial_op(2)], [2, 1])
    cx = cxm.build_distributive_complex(sys, 4)
    pt = cxm.subcomplex(cx, "point", t=0)
    assert [pt.dim(n) for n in range(5)] == [1] * 5
    assert [int(pt.boundary(n).toarray()[0, 0]) for n in range(1, 5)] == [0, 3, 0, 3]


def test_sub_multishelf_image():
    op = magma.make_g_shelf([0, 0, 2])
    t = 1
    A = sorted({op(x, t) for x in range(3)})
    cx = cxm.build_distributive_complex(cxm.one_term(op), 3)
    sub = cxm.subcomplex(cx, "sub-multishelf", A=A)
    sub.verify()
    with pytest.raises(NotASubcomplex):
        cxm.subcomplex(cxm.build_distributive_complex(cxm.one_term(magma.dihedral_quandle(3)), 2),
                       "sub-multishelf", A=[0, 1])


def test_quotient_by_everything():
    sys = cxm.one_term(magma.dihedral_quandle(3))
    cx = cxm.build_distributive_complex(sys, 3)
    q = cxm.quotient(cx, cxm.subcomplex(cx, "sub-multishelf", A=[0, 1, 2]))
    assert all(q.dim(n) == 0 for n in q.degrees())


def test_span_subcomplexes():
    sys = cxm.one_term(magma.make_g_shelf([0, 0, 2]))
    cx = cxm.build_distributive_complex(sys, 3)
    for which in ("t", "tD", "t0", "t0D"):
        sub = cxm.subcomplex(cx, which)
        sub.verify()
        assert all(sub.dim(n) <= cx.dim(n) for n in sub.degrees())


def test_remarkable_map():
    assert cxm.equal(cxm.remarkable_map(identity_op(3), 2), cxm.identity_matrix(27))
    q = magma.dihedral_quandle(3)
    f = cxm.remarkable_map(q, 2).toarray()
    assert (f.sum(axis=0) == 1).all() and (f.sum(axis=1) == 1).all()


def test_remarkable_map_chain_map():
    # f intertwines the composite boundary with the original: f d^(* *1) = d^(*1) f
    L = magma.make_lattice_ops(magma.chain_lattice(3))
    star, one = L.join, L.meet
    composite = magma.compose(star, one)
    for n in range(1, 4):
        lhs = cxm.remarkable_map(star, n - 1) @ cxm.distributive_boundary(cxm.one_term(composite, check=False), n)
        rhs = cxm.distributive_boundary(cxm.one_term(one), n) @ cxm.remarkable_map(star, n)
        assert cxm.equal(lhs, rhs)


def test_degeneracy_and_t_maps():
    s = cxm.degeneracy_map(2, 1, 0).toarray()
    assert s.shape == (8, 4)
    assert s[0b001, 0b01] == 1
    assert cxm.degeneracy_map(2, 1, 1).toarray()[0b011, 0b01] == 1
    with pytest.raises(InputError):
        cxm.degeneracy_map(2, 1, 2)


def test_chain_vector_coordinates():
    sys = cxm.one_term(magma.dihedral_quandle(3))
    cx = cxm.build_distributive_complex(sys, 2)
    v = cxm.ChainVector(1, {(0, 1): 2, (2, 2): -1})
    y = cx.coordinates(v)
    assert y[1] == 2 and y[8] == -1
    assert cxm.ChainVector.from_array(1, y, cx.bases[1]) == v
    norm = cxm.normalized_complex(cx)
    assert len(norm.coordinates(v)) == 6


def test_json_export_deterministic():
    cx = cxm.build_distributive_complex(cxm.one_term(magma.dihedral_quandle(3)), 2)
    assert cx.dumps() == cxm.build_distributive_complex(cxm.one_term(magma.dihedral_quandle(3)), 2).dumps()
