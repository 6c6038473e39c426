"""Thread fan-out for grid sweeps; the compiled kernels release the GIL."""
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_threads = 1


def set_threads(n: int) -> None:
    global _threads
    _threads = max(1, int(n))


def get_threads() -> int:
    return _threads


def chunked(fn, *arrays, min_chunk=256):
    """Apply ``fn`` to aligned slices of 1-D ``arrays`` and concatenate
    along the last axis.  Chunk results are merged in order, so the output
    does not depend on the thread count."""
    size = len(arrays[0])
    if _threads == 1 or size < 2 * min_chunk:
        return fn(*arrays)
    bounds = np.linspace(0, size, min(_threads, size // min_chunk) + 1).astype(int)
    parts = [tuple(a[lo:hi] for a in arrays) for lo, hi in zip(bounds[:-1], bounds[1:])]
    with ThreadPoolExecutor(_threads) as pool:
        results = list(pool.map(lambda p: fn(*p), parts))
    return np.concatenate(results, axis=-1)
