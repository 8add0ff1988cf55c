"""Backend selection for the coherence residual kernel.

The compiled extension is preferred; set ``FUSIONCHECK_PURE_PYTHON=1`` to
force the Python implementation.  ``BACKEND`` names the one in use.
"""
import os

import numpy as np

from . import _kernels_py

if os.environ.get("FUSIONCHECK_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"


class SumProductSystem:
    """A batch of equations ``prod(values[lhs[i]]) == sum_t prod(values[rhs[t]])``.

    Index arrays are frozen at construction; only the value array changes
    between evaluations.
    """

    __slots__ = ("lhs", "rhs_ptr", "rhs", "tags")

    def __init__(self, lhs, rhs_ptr, rhs, tags=()):
        self.lhs = np.ascontiguousarray(np.asarray(lhs, dtype=np.intp).reshape(-1, 3))
        self.rhs_ptr = np.ascontiguousarray(np.asarray(rhs_ptr, dtype=np.intp))
        self.rhs = np.ascontiguousarray(np.asarray(rhs, dtype=np.intp).reshape(-1, 3))
        self.tags = tuple(tags)
        for arr in (self.lhs, self.rhs_ptr, self.rhs):
            arr.setflags(write=False)

    def __len__(self):
        return self.lhs.shape[0]

    def deviations(self, values, impl=None):
        impl = impl or _impl
        values = np.ascontiguousarray(values, dtype=np.complex128)
        return impl.sum_product_deviations(values, self.lhs, self.rhs_ptr, self.rhs)

    def max_deviation(self, values, impl=None):
        if len(self) == 0:
            return 0.0
        impl = impl or _impl
        values = np.ascontiguousarray(values, dtype=np.complex128)
        return float(impl.max_abs_deviation(values, self.lhs, self.rhs_ptr, self.rhs))


def implementations():
    """Available kernel implementations keyed by name (for benchmarks and tests)."""
    impls = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        impls["cython"] = _kernels
    return impls
