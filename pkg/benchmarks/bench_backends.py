#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the NumPy fallback.

Micro-benchmarks call both kernel modules directly; the end-to-end rows time
representative purity evaluations in subprocesses so the backend selection
happens at import, exactly as users get it.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from fockchannel import _kernels_py

try:
    from fockchannel import _kernels
except ImportError:
    _kernels = None

END_TO_END = """
import time
import fockchannel as fc
ch = fc.BathSpec(0.5, 1.0, 0.0).to_channel()
t0 = time.perf_counter()
for _ in range({repeat}):
    {expr}
print((time.perf_counter() - t0) / {repeat})
"""

E2E_CASES = {
    "purity_squeezed(n=3, gt=0.5)":
        "fc.purity_squeezed(3, ch.N, abs(ch.M), 0.5)",
    "purity_2d(number n=2, gt=0.5)":
        "fc.purity_2d(fc.propagate(fc.chi_number(2), ch, 0.5))",
}


def time_call(fn, *args, repeat=5):
    best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
    return best


def micro_rows(repeat):
    rng = np.random.default_rng(7)
    x = rng.uniform(0.0, 60.0, size=200_000)
    z = rng.uniform(0.0, 40.0, size=200_000)
    u = rng.uniform(0.0, 64.0, size=200_000)
    cases = [
        ("laguerre n=20, 2e5 pts", "laguerre_values", (20, x)),
        ("legendre n=20, 2e5 pts", "legendre_values", (20, x)),
        ("i0_scaled, 2e5 pts", "i0_scaled_values", (z,)),
        ("squeezed integrand n=3", "squeezed_integrand", (u, 3, 0.7, 0.9)),
    ]
    for label, name, args in cases:
        t_py = time_call(getattr(_kernels_py, name), *args, repeat=repeat)
        if _kernels is not None:
            t_cy = time_call(getattr(_kernels, name), *args, repeat=repeat)
            ref = np.asarray(getattr(_kernels_py, name)(*args))
            got = np.asarray(getattr(_kernels, name)(*args))
            np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-300)
        else:
            t_cy = None
        yield label, t_py, t_cy


def e2e_rows(repeat):
    for label, expr in E2E_CASES.items():
        times = {}
        for backend, env_val in (("numpy", "1"), ("cython", "0")):
            if backend == "cython" and _kernels is None:
                times[backend] = None
                continue
            env = dict(os.environ, FOCKCHANNEL_PURE=env_val)
            code = END_TO_END.format(repeat=repeat, expr=expr)
            out = subprocess.run([sys.executable, "-c", code], env=env,
                                 capture_output=True, text=True, check=True)
            times[backend] = float(out.stdout.strip())
        yield label, times["numpy"], times["cython"]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled kernels not built; timing the NumPy backend only\n")

    print(f"{'case':<28} {'numpy':>10} {'cython':>10} {'speedup':>8}")
    print("-" * 60)
    rows = list(micro_rows(args.repeat)) + list(e2e_rows(args.repeat))
    for label, t_py, t_cy in rows:
        if t_cy is None:
            print(f"{label:<28} {t_py * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
        else:
            print(f"{label:<28} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms "
                  f"{t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
