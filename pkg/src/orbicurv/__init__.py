"""orbicurv: combinatorial curvature on angled 2-complexes and orbihedra.

Exact-arithmetic tools for Gauss-Bonnet auditing, sectional-curvature
certification, (p, q, r) classification, equivariant folding and pushouts,
disk-diagram search, and bounded cocompact-core construction.
"""

__version__ = "0.1.0"

from .complex2 import (  # noqa: F401
    AngledGraph,
    CellularMap,
    TwoComplex,
    classify_pqr,
    girth,
    identity_map,
    is_immersion,
    is_internal_vertex,
    is_near_immersion,
    link,
    validate_complex,
)
