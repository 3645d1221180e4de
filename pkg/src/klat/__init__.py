"""Exact-arithmetic toolkit for even integral lattices, their finite
isometry groups, primitive embeddings, and the prime-order automorphism
classification of generalised Kummer fourfolds.

Everything runs on arbitrary-precision integers and fractions; there is no
floating point anywhere in the computational kernels.
"""

__version__ = "0.1.0"

from .lattices import (Lattice, LatticeError, Sublattice, direct_sum,
                       discriminant_group, divisibility, lattice_from_file,
                       make_lattice, orthogonal_complement, rescale,
                       saturate, signature, span)
from .genus import (exists_2elementary_hyperbolic,
                    exists_pelementary_hyperbolic, p_elementary_invariants,
                    splits_off_U, unique_in_genus)
from .discform import FiniteQuadraticForm, genus_equal
from .isometry import (Isometry, are_isometric, invariant_coinvariant,
                       orthogonal_group, restricted_group, short_vectors)
from .embeddings import (find_primitive_embeddings, iter_embeddings,
                         represent_primitive, vectors_with_norm)
from .kummer import (ClassificationRow, is_monodromy, is_wall_divisor,
                     load_pinned_expectations, make_context,
                     unexplained_cells, verify_tables)

__all__ = [
    "__version__",
    "Lattice", "LatticeError", "Sublattice", "direct_sum",
    "discriminant_group", "divisibility", "lattice_from_file",
    "make_lattice", "orthogonal_complement", "rescale", "saturate",
    "signature", "span",
    "exists_2elementary_hyperbolic", "exists_pelementary_hyperbolic",
    "p_elementary_invariants", "splits_off_U", "unique_in_genus",
    "FiniteQuadraticForm", "genus_equal",
    "Isometry", "are_isometric", "invariant_coinvariant",
    "orthogonal_group", "restricted_group", "short_vectors",
    "find_primitive_embeddings", "iter_embeddings", "represent_primitive",
    "vectors_with_norm",
    "ClassificationRow", "is_monodromy", "is_wall_divisor",
    "load_pinned_expectations", "make_context", "unexplained_cells",
    "verify_tables",
]
