"""Fox 3-colorings of the trefoil and figure-eight, and the cycles they define."""
from disthom import knots, magma

r3 = magma.dihedral_quandle(3)
cx = knots.rack_complex(r3, 3)

for name, text in (("trefoil", knots.TREFOIL), ("figure-eight", knots.FIGURE_EIGHT)):
    D = knots.parse_diagram(text)
    cols = knots.enumerate_colorings(D, r3)
    print(f"{name}: {len(D.crossings)} crossings, {D.arc_count} arcs, {D.region_count} regions, "
          f"{len(cols)} colorings")
    for col in cols[:4]:
        c1 = knots.cycle_c1(col)
        shadow = knots.shadow_colorings(col)[0]
        c2 = knots.cycle_c2(shadow)
        print(f"  arcs {col.arc_colors}: c = {c1!r}")
        print(f"    c2 = {c2!r}, p0(c2) == c: {knots.p0_chain(c2) == c1}")

# a Reidemeister II move keeps the count and the homology class
D = knots.parse_diagram(knots.TREFOIL)
site = knots.reidemeister_sites(D, "R2")[0]
D2 = knots.apply_reidemeister(D, "R2", site)
col = knots.enumerate_colorings(D, r3)[4]
(new,) = knots.transfer_coloring(col, D2)
print("after R2:", len(D2.crossings), "crossings,", knots.count_colorings(D2, r3), "colorings;",
      "class unchanged:", knots.homologous(knots.cycle_c1(col), knots.cycle_c1(new), cx))
