"""Four-term homology of distributive lattices against the closed-form answer."""
from disthom import complex as cxm
from disthom import magma, oracles
from disthom.homology import homology

for name, leq in (("B1", magma.boolean_lattice(1)), ("B2", magma.boolean_lattice(2)),
                  ("3-chain", magma.chain_lattice(3))):
    lat = magma.make_lattice_ops(leq)
    L, J = lat.size, lat.join_irreducibles
    weights = (2, 1, 4, 1)
    ops = [magma.identity_op(L), lat.join, lat.meet, magma.left_trivial_op(L)]
    cx = cxm.build_distributive_complex(cxm.MultiTermSystem(ops, list(weights)), 4)
    print(f"{name}: L={L} J={J} weights={weights}")
    for n in range(4):
        direct = homology(cx, n)
        formula = oracles.formula_oracle("lattice", dict(zip("abcd", weights), L=L, J=J), n, n)[n]
        flag = "ok" if direct == formula else "MISMATCH"
        print(f"  n={n}  computed {direct}  formula {formula}  {flag}")
