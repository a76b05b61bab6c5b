"""Kernel selection: compiled extension when available, pure otherwise.

Set ``ORBICURV_PURE=1`` to force the pure-Python kernel (used by the
benchmark and by tests that compare the two implementations).
"""

import os

if os.environ.get("ORBICURV_PURE"):
    from . import pure as impl
else:
    try:
        from . import _fast as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as impl

BACKEND = impl.BACKEND
regular_edge_masks = impl.regular_edge_masks
subgraph_curvature_extrema = impl.subgraph_curvature_extrema
