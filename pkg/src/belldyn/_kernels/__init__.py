"""Backend selection for the sweep hot loop.

The compiled Cython kernel is preferred; when the extension was not built
(no compiler, no Cython) the pure-numpy implementation takes over with
identical semantics. `BACKENDS` keeps every available implementation
importable for parity tests and benchmarks.
"""

from . import _sweep_py

BACKENDS = {"python": _sweep_py}

try:
    from . import _sweep_cy
except ImportError:
    BACKEND = "python"
else:
    BACKENDS["cython"] = _sweep_cy
    BACKEND = "cython"

measurement_residual_norms = BACKENDS[BACKEND].measurement_residual_norms
hermitian_eigenvalues_4 = BACKENDS[BACKEND].hermitian_eigenvalues_4
