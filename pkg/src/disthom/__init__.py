"""Multi-term distributive homology of finite magmas, with knot-diagram invariants."""
from .errors import DisthomError, InputError
from .magma import BinOp, OpSet, classify, identity_op, left_trivial_op
from .complex import MultiTermSystem, build_distributive_complex, subcomplex, quotient
from .homology import AbelianGroup, HomologyTable, homology_table

__all__ = [
    "DisthomError", "InputError", "BinOp", "OpSet", "classify", "identity_op", "left_trivial_op",
    "MultiTermSystem", "build_distributive_complex", "subcomplex", "quotient",
    "AbelianGroup", "HomologyTable", "homology_table",
]
__version__ = "0.1.0"
