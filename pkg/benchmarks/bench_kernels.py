"""Compiled vs NumPy fallback timings for the inclusion-exclusion kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--max-m 16]

Prints one row per (kernel, shape) with the best-of-repeat time per backend
and the speedup. Results are also checked for bitwise agreement.
"""
import argparse
import time

import numpy as np

from permstab import _backend


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--max-m", type=int, default=16)
    args = ap.parse_args(argv)

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available")
    mods = {name: _backend.get_backend(name) for name in backends}
    rng = np.random.default_rng(0)

    print(f"{'kernel':<18}{'shape':>8}" + "".join(f"{b:>12}" for b in backends)
          + f"{'speedup':>10}{'bitwise':>9}")
    for m in range(4, args.max_m + 1, 4):
        n = 2 * m
        A = np.ascontiguousarray(rng.random((m, n)))
        lam = rng.random(n)
        zim = rng.random(n)
        cases = {
            "ie_poly_real": lambda k: k.ie_poly_real(A, lam, 0, 1 << m),
            "ie_poly_complex": lambda k: k.ie_poly_complex(A, lam, zim, 0, 1 << m),
            "ie_companion_real": lambda k: k.ie_companion_real(A, lam, 0, 1 << m),
            "permanent_ryser": lambda k: k.permanent_ryser(np.ascontiguousarray(A[:, :m])),
        }
        for kernel, call in cases.items():
            times, outs = [], []
            for name in backends:
                t, out = best_time(lambda: call(mods[name]), args.repeat)
                times.append(t)
                outs.append(out)
            speedup = f"{times[-1] / times[0]:>9.1f}x" if len(times) > 1 else f"{'-':>10}"
            same = all(o == outs[0] for o in outs)
            print(f"{kernel:<18}{f'{m}x{n}':>8}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
                  + f"{speedup}{str(same):>9}")


if __name__ == "__main__":
    main()
