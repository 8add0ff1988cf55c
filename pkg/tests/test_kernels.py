import os
import subprocess
import sys

import numpy as np
import pytest

from fusioncheck import kernels
from fusioncheck.catalog import CATALOG_NAMES, catalog_get
from fusioncheck.kernels import SumProductSystem, implementations


def _random_system(rng, m=40, nvals=30):
    lhs = rng.integers(0, nvals, size=(m, 3))
    counts = rng.integers(0, 4, size=m)
    ptr = np.concatenate([[0], np.cumsum(counts)])
    rhs = rng.integers(0, nvals, size=(ptr[-1], 3))
    values = rng.normal(size=nvals) + 1j * rng.normal(size=nvals)
    return SumProductSystem(lhs, ptr, rhs), values, lhs, ptr, rhs


def test_deviation_matches_direct_formula(kernel_impl, rng):
    system, values, lhs, ptr, rhs = _random_system(rng)
    got = system.deviations(values, impl=kernel_impl)
    want = [np.prod(values[lhs[i]]) - sum(np.prod(values[rhs[t]]) for t in range(ptr[i], ptr[i + 1]))
            for i in range(len(lhs))]
    np.testing.assert_allclose(got, want, rtol=1e-13, atol=1e-13)
    assert system.max_deviation(values, impl=kernel_impl) == pytest.approx(np.max(np.abs(want)), rel=1e-13)


def test_backends_agree_on_catalog_systems():
    impls = implementations()
    if len(impls) < 2:
        pytest.skip("compiled kernel not built")
    for name in CATALOG_NAMES:
        ring = catalog_get(name).ring
        for system, size in ((ring.pentagon_system, len(ring.sextuples) + 2),
                             (ring.hexagon_system, len(ring.sextuples) + 2 * len(ring.triples) + 2)):
            values = np.random.default_rng(5).normal(size=size) + 0j
            a = system.deviations(values, impl=impls["python"])
            b = system.deviations(values, impl=impls["cython"])
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_empty_system():
    system = SumProductSystem(np.zeros((0, 3)), [0], np.zeros((0, 3)))
    assert system.max_deviation(np.ones(2)) == 0.0
    assert len(system.deviations(np.ones(2))) == 0


def test_nan_propagates_to_max(kernel_impl):
    system = SumProductSystem([[0, 1, 1]], [0, 0], np.zeros((0, 3)))
    assert np.isnan(system.max_deviation(np.array([np.nan, 1.0]), impl=kernel_impl))


def test_pure_python_switch():
    env = dict(os.environ, FUSIONCHECK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import fusioncheck; print(fusioncheck.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")


def test_benchmark_script_runs():
    script = os.path.join(os.path.dirname(__file__), os.pardir, "benchmarks", "bench_kernels.py")
    out = subprocess.run([sys.executable, script, "--repeat", "1", "--models", "fibonacci"],
                         capture_output=True, text=True, check=True)
    lines = out.stdout.splitlines()
    assert lines[0].startswith("model")
    assert [line.split()[1] for line in lines[1:]] == ["pentagon", "hexagon"]
