"""Rack homology of small quandles, and why one-term homology of a rack is acyclic."""
from disthom import complex as cxm
from disthom import magma
from disthom.homology import homology_table


def show(title, cx):
    print(title)
    for n, g in sorted(homology_table(cx).groups.items()):
        print(f"  H_{n} = {g}")


r3 = magma.dihedral_quandle(3)

# one-term: the remarkable map turns d^(*) into d^(*0), whose augmented complex is contractible
show("one-term R3, augmented", cxm.build_distributive_complex(cxm.one_term(r3), 4, augmented=True))

# two-term rack boundary d^(*0) - d^(*)
rack = cxm.MultiTermSystem([magma.identity_op(3), r3], [1, -1])
full = cxm.build_distributive_complex(rack, 4)
show("rack complex of R3", full)
show("normalized (quandle) complex of R3", cxm.normalized_complex(full))
show("degenerate part", cxm.degenerate_complex(full))
