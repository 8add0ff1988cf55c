"""Pure-Python twin of the compiled kernel in ``_kernels.pyx``.

Same algorithm, same argument layout; used when the extension is not built
or when ``FUSIONCHECK_PURE_PYTHON=1``.
"""
import math

import numpy as np


def sum_product_deviations(values, lhs, rhs_ptr, rhs):
    v = np.asarray(values, dtype=np.complex128).tolist()
    lhs = np.asarray(lhs).tolist()
    ptr = np.asarray(rhs_ptr).tolist()
    rhs = np.asarray(rhs).tolist()
    out = []
    for i, (p, q, r) in enumerate(lhs):
        acc = v[p] * v[q] * v[r]
        for t in range(ptr[i], ptr[i + 1]):
            x, y, z = rhs[t]
            acc -= v[x] * v[y] * v[z]
        out.append(acc)
    return np.array(out, dtype=np.complex128)


def max_abs_deviation(values, lhs, rhs_ptr, rhs):
    worst = 0.0
    for dev in sum_product_deviations(values, lhs, rhs_ptr, rhs).tolist():
        mag = abs(dev)
        if mag > worst or math.isnan(mag):
            worst = mag
    return worst
