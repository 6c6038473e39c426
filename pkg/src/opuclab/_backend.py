"""Select the compiled kernels when available, else the numpy fallback.

Set ``OPUCLAB_PURE=1`` in the environment to force the fallback.
"""
import os

from . import _pycore

if os.environ.get("OPUCLAB_PURE", "") not in ("", "0"):
    _impl = _pycore
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _pycore

NAME = "cython" if _impl is not _pycore else "numpy"

final_state = _impl.final_state
kernel_sum = _impl.kernel_sum
norm_sums = _impl.norm_sums
trajectory = _impl.trajectory
lifted_phase = _impl.lifted_phase
