"""Central differences with Richardson verification."""
from __future__ import annotations

import numpy as np

from .errors import SingularConfigurationError


def central_difference(f, x: float, h: float) -> np.ndarray:
    return (np.asarray(f(x + h), dtype=float) - np.asarray(f(x - h), dtype=float)) / (2.0 * h)


def richardson_derivative(f, x, h=1e-3, rtol=1e-6, atol=0.0, max_halvings=10):
    """Derivative of a scalar- or vector-valued ``f`` at ``x``.

    Central differences at steps ``h`` and ``h/2`` are combined by one
    Richardson step.  The step is halved until the two estimates agree to
    ``rtol`` (componentwise, with absolute floor ``atol``); the extrapolated
    value is returned together with the step that was accepted.

    Raises :class:`SingularConfigurationError` if agreement is never reached,
    which happens at kinks of ``f``.
    """
    coarse = central_difference(f, x, h)
    for _ in range(max_halvings):
        fine = central_difference(f, x, h / 2.0)
        gap = np.abs(fine - coarse)
        extrapolated = fine + (fine - coarse) / 3.0
        if np.all(gap / 3.0 <= rtol * np.abs(extrapolated) + atol):
            return extrapolated, h / 2.0
        h /= 2.0
        coarse = fine
    raise SingularConfigurationError(
        f"derivative at x={x!r} not resolved (step {h:.3g}, gap {np.max(gap):.3g}); "
        "function not smooth here")
