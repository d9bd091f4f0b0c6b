"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--points N] [--repeat R]
"""
import argparse
import math
import timeit

import numpy as np

from kresling import geometry, kernels
from kresling.geometry import ModulePattern


def bench(backend, tris, pts, repeat):
    pattern = ModulePattern(20.0, 40.0, 44.7, 53.0)
    thetas = np.linspace(0.1, 3.0, 1000)

    def states():
        for t in thetas:
            backend.module_state(pattern.a, pattern.b, pattern.n_sides, float(t))

    t_state = min(timeit.repeat(states, number=1, repeat=repeat)) / thetas.size
    t_wind = min(timeit.repeat(lambda: backend.winding_sum(tris, pts), number=1, repeat=repeat))
    return t_state, t_wind


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    pattern = ModulePattern(20.0, 40.0, 44.7, 53.0)
    tris = geometry.triangles(pattern, math.radians(90.0))
    rng = np.random.default_rng(0)
    pts = rng.uniform(-20.0, 40.0, size=(args.points, 3))

    backends = [kernels.python_backend]
    if kernels.compiled_backend is not None:
        backends.append(kernels.compiled_backend)
    else:
        print("compiled extension not built; timing the fallback only")

    print(f"{'backend':<8} {'module_state [us]':>18} {'winding_sum [s]':>16}   ({args.points} points)")
    results = {}
    for b in backends:
        results[b.NAME] = bench(b, tris, pts, args.repeat)
        t_state, t_wind = results[b.NAME]
        print(f"{b.NAME:<8} {t_state * 1e6:18.2f} {t_wind:16.4f}")
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"speedup  {py[0] / cy[0]:17.1f}x {py[1] / cy[1]:15.1f}x")
        assert kernels.python_backend.winding_sum(tris, pts[:10000]) == \
            kernels.compiled_backend.winding_sum(tris, pts[:10000])


if __name__ == "__main__":
    main()
