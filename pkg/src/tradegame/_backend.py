"""Selects the compiled linear-DP kernel, falling back to pure Python.

Set TRADEGAME_BACKEND=python to force the fallback (used by the parity tests
and the benchmark).
"""

import os

import numpy as np

if os.environ.get("TRADEGAME_BACKEND", "").lower() == "python":
    from tradegame._dpcore_py import minimize_linear as _kernel

    BACKEND = "python"
else:
    try:
        from tradegame._dpcore import minimize_linear as _kernel  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        from tradegame._dpcore_py import minimize_linear as _kernel  # type: ignore[no-redef]

        BACKEND = "python"


def minimize_linear(V, T, tl, tu, kappa, w):
    # the compiled kernel wants a contiguous double buffer
    return _kernel(V, T, tl, tu, kappa, np.ascontiguousarray(w, dtype=np.float64))


__all__ = ["minimize_linear", "BACKEND"]
