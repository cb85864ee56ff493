"""Compare the compiled and numpy pair-sum kernels.

    python3 benchmarks/bench_kernels.py [--points 3000] [--repeat 3]
"""

import argparse
import importlib
import timeit

import numpy as np

from hopflambda.hopf import _kernels_py


def _load_compiled():
    try:
        return importlib.import_module("hopflambda.hopf._kernels")
    except ImportError:
        return None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=3000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    n = args.points
    X, W = rng.standard_normal((n, 3)), rng.standard_normal((n, 3))
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    c1 = np.stack([np.cos(t), np.sin(t), 0 * t], 1)
    c2 = np.stack([1 + np.cos(t), 0 * t, np.sin(t)], 1)

    backends = {"numpy": _kernels_py}
    compiled = _load_compiled()
    if compiled is not None:
        backends["cython"] = compiled
    else:
        print("compiled extension not built; timing numpy only")

    print(f"{'kernel':<22}{'backend':<10}{'best of ' + str(args.repeat):>14}  result")
    base = {}
    for name, mod in backends.items():
        for kernel, call in (("helicity_pair_sums", lambda m=mod: m.helicity_pair_sums(X, W, 1e-2)),
                             ("gauss_linking_sum", lambda m=mod: m.gauss_linking_sum(c1, c2))):
            best = min(timeit.repeat(call, number=1, repeat=args.repeat))
            val = call()
            speed = ""
            if kernel in base:
                speed = f"  ({base[kernel] / best:.1f}x vs numpy)"
            else:
                base[kernel] = best
            val = np.atleast_1d(val)[0]
            print(f"{kernel:<22}{name:<10}{best * 1e3:11.1f} ms  {val:+.6e}{speed}")


if __name__ == "__main__":
    main()
