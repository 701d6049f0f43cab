"""Kernel backend selection.

The numba backend is used when numba imports cleanly, unless the
``AMRKIT_DISABLE_NUMBA`` environment variable is set to a truthy value,
in which case the pure-numpy backend is used.
"""

import os

from . import _numpy

BACKEND = "numpy"
if os.environ.get("AMRKIT_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes", "on"):
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _impl = _numpy
else:
    _impl = _numpy

mapping_scores = _impl.mapping_scores
hill_climb = _impl.hill_climb

__all__ = ["BACKEND", "mapping_scores", "hill_climb"]
