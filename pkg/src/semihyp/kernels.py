"""Kernel backend selection.

Prefers the compiled extension; falls back to the pure-Python module when
the extension was not built.  Set SEMIHYP_PURE=1 to force the fallback
(used by the test suite and the benchmark to compare both paths).
"""

import os

if os.environ.get("SEMIHYP_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

convolve_coeffs = _impl.convolve_coeffs
assoc_witness = _impl.assoc_witness
pivot_step = _impl.pivot_step
