"""Hot-loop kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imports; set
``KRESLING_PURE_PYTHON=1`` to force the fallback.  Both backends expose

``module_state(a, b, n, theta) -> (h, volume, theta_QM, theta_QR, theta_RM)``
    fused height / chamber volume / fold-angle evaluation, and

``winding_sum(tris, pts) -> int``
    summed winding number of a closed triangle mesh over sample points.
"""
import os

from . import _pycore

python_backend = _pycore

compiled_backend = None
if not os.environ.get("KRESLING_PURE_PYTHON"):
    try:
        from . import _core as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend or python_backend
BACKEND = backend.NAME

module_state = backend.module_state
winding_sum = backend.winding_sum
