"""Workbench for finitely presented unary-binary nonsymmetric operads.

Construct linearly compatible, matching, and totally compatible operads over
a finite color set, compute Koszul duals of quadratic presentations, form
Manin square products, and compare everything by exact rational linear
algebra over canonical decorated-tree bases.
"""

from .catalog import builtin, catalog_keys, default_grid
from .compat import (
    build_compatible,
    build_lin,
    build_mat,
    build_tot,
    expand_formal,
    support,
    transposition_relations,
    verify_lin_encoding,
)
from .duality import check_dual_identity, is_self_dual, koszul_dual, pairing_form
from .linalg import (
    DiagonalForm,
    RationalMatrix,
    nullspace,
    orthogonal_complement,
    rank,
    rref,
    span_contains,
    span_equal,
)
from .manin import black_square, check_product_duality, white_square
from .presentation import (
    ColorSet,
    Presentation,
    Relation,
    Term,
    color_relation,
    elementwise_sum,
    presentation_span_contains,
    presentation_span_equal,
    rename_generators,
    replicate,
    tensor_generators,
    validate,
)
from .trees import (
    Generator,
    GradedComponent,
    Tree,
    compare,
    compose,
    corolla,
    enumerate_basis,
    graft,
    leaf,
    tree_text,
)

__version__ = "0.1.0"
