"""Homology obstructions to asymptotic stability of compact sets.

Discretize a punctured neighborhood ``U minus A`` as a simplicial
2-complex, sample candidate vector fields in a 2-dimensional frame, and
test the necessary conditions: matching induced maps on H_1 for any two
stabilizing fields, inclusion of ``Y_* H_1`` in a control system's image
lattice, and index 1 for a stable planar point.
"""
__version__ = "0.1.0"

from .abelian import (  # noqa: E402
    BACKEND,
    FgAbGroup,
    IntMatrix,
    SmithForm,
    cokernel,
    hermite_normal_form,
    lattice_member,
    lattice_subset,
    smith_normal_form,
)
from .complex import (  # noqa: E402
    Chain,
    Cycle,
    HomologyGroup,
    SimplicialComplex,
    boundary_matrix,
    edge_loop,
    express_in_homology,
    homology,
    validate,
)
from .field import (  # noqa: E402
    FramedField,
    ImageLattice,
    ProductClass,
    induced_map_h0,
    induced_map_h1,
    single_input_image,
    winding_number,
)
from .stabilize import check_stabilizability, compare_vector_fields, index_test  # noqa: E402

__all__ = [
    "BACKEND", "FgAbGroup", "IntMatrix", "SmithForm", "cokernel", "hermite_normal_form",
    "lattice_member", "lattice_subset", "smith_normal_form",
    "Chain", "Cycle", "HomologyGroup", "SimplicialComplex", "boundary_matrix", "edge_loop",
    "express_in_homology", "homology", "validate",
    "FramedField", "ImageLattice", "ProductClass", "induced_map_h0", "induced_map_h1",
    "single_input_image", "winding_number",
    "check_stabilizability", "compare_vector_fields", "index_test",
]
