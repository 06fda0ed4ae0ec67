"""Maximal distributive monoids on two and three elements."""
from disthom import magma, search

rep = search.find_maximal_distributive_sets(search.SearchSpec(2, "idempotent-only"))
print("idempotent, |X| = 2:", [len(s) for s in rep.maximal_sets])
for op in sorted(rep.maximal_sets[0].ops):
    print("  ", op.to_list())

rep = search.find_maximal_distributive_sets(search.SearchSpec(3, "all-ops"))
print(f"all ops, |X| = 3: {len(rep.maximal_sets)} maximal monoids, sizes",
      sorted({len(s) for s in rep.maximal_sets}))

mr = magma.mroczkowski_monoid(3, (1, 2))
f, g = mr.commutativity_witness()
print("Mroczkowski monoid is noncommutative:")
print("  f =", f.to_list(), " g =", g.to_list())
print("  fg =", magma.compose(f, g).to_list(), " gf =", magma.compose(g, f).to_list())
hosts = [s for s in rep.maximal_sets if search.contains_up_to_isomorphism(s, mr, 3)]
print(f"  contained in {len(hosts)} of the maximal monoids found")
