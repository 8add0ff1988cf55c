"""Compare the compiled and pure-Python coherence residual kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--models fibonacci ising ...]

For each catalog model the pentagon and hexagon sum-product systems are
evaluated with every available backend; both backends must agree to 1e-12.
"""
import argparse
import timeit

import numpy as np

from fusioncheck.braiding import _hexagon_values
from fusioncheck.catalog import CATALOG_NAMES, catalog_get
from fusioncheck.kernels import implementations


def systems(name):
    m = catalog_get(name)
    ring = m.ring
    yield "pentagon", ring.pentagon_system, np.concatenate([m.F.values, [1.0, 0.0]])
    if m.R is not None:
        yield "hexagon", ring.hexagon_system, _hexagon_values(m.F, m.R.values)


def bench(system, values, impl, repeat):
    number = max(1, int(2000 / max(1, len(system))))
    best = min(timeit.repeat(lambda: system.deviations(values, impl), number=number, repeat=repeat))
    return best / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--models", nargs="*", default=list(CATALOG_NAMES))
    args = parser.parse_args(argv)

    impls = implementations()
    if "cython" not in impls:
        print("compiled extension not built; only the Python backend is available")
    names = sorted(impls)
    header = f"{'model':<12} {'system':<9} {'eqs':>6}" + "".join(f" {n + ' us':>12}" for n in names)
    if len(names) == 2:
        header += f" {'speedup':>9}"
    print(header)
    for model in args.models:
        for kind, system, values in systems(model):
            ref = system.deviations(values, impls["python"])
            times = {}
            for n in names:
                got = system.deviations(values, impls[n])
                if np.max(np.abs(got - ref), initial=0.0) > 1e-12:
                    raise SystemExit(f"{n} backend disagrees on {model} {kind}")
                times[n] = bench(system, values, impls[n], args.repeat)
            row = f"{model:<12} {kind:<9} {len(system):>6}" + "".join(f" {times[n] * 1e6:>12.2f}" for n in names)
            if len(names) == 2:
                row += f" {times['python'] / times['cython']:>8.1f}x"
            print(row)


if __name__ == "__main__":
    main()
