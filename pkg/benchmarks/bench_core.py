"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_core.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from opuclab import _pycore
from opuclab.coeffs import VerblunskySequence

try:
    from opuclab import _core
except ImportError:
    _core = None


def cases():
    dense = VerblunskySequence.random(1, radius=0.3)
    sparse = VerblunskySequence.sparse([0.5, 0.4, 0.3], [10, 1334, 227225])
    z = np.exp(1j * np.linspace(0.0, 6.0, 256))
    w = z * np.exp(0.01j)
    th = np.linspace(0.0, 6.0, 4096)
    for label, seq, n in (("dense n=2000", dense, 2000), ("sparse n=5e7", sparse, 50_000_000)):
        pos, val = seq.compressed(n)
        yield label, "final_state", lambda m: m.final_state(pos, val, n, z, True)
        yield label, "kernel_sum", lambda m: m.kernel_sum(pos, val, n, z, w)
        yield label, "norm_sums", lambda m: m.norm_sums(pos, val, n, z, False, True)
        yield label, "lifted_phase", lambda m: m.lifted_phase(pos, val, n, th)
    pos, val = dense.compressed(2000)
    yield "dense n=2000", "trajectory", lambda m: m.trajectory(pos, val, 2000, 0.3 + 0.9j)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _core is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'case':<14} {'kernel':<13} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, name, fn in cases():
        t_py = min(timeit.repeat(lambda: fn(_pycore), number=1, repeat=args.repeat)) * 1e3
        if _core is None:
            print(f"{label:<14} {name:<13} {t_py:10.2f}")
            continue
        t_c = min(timeit.repeat(lambda: fn(_core), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<14} {name:<13} {t_py:10.2f} {t_c:10.2f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
