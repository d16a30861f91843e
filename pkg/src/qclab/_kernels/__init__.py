"""Amplitude kernels with a compiled fast lane and a numpy fallback.

The compiled extension is preferred when importable; set
``QCLAB_BACKEND=numpy`` or ``QCLAB_BACKEND=cython`` to force a lane.
Both lanes implement identical in-place contracts on C-contiguous
complex128 2-D arrays (see pure.py for the reference semantics).
"""

import os

_requested = os.environ.get("QCLAB_BACKEND", "auto").strip().lower()

if _requested in ("auto", ""):
    try:
        from . import _ckern as _impl
    except ImportError:
        from . import pure as _impl
elif _requested == "cython":
    from . import _ckern as _impl
elif _requested == "numpy":
    from . import pure as _impl
else:
    raise ImportError(
        f"QCLAB_BACKEND={_requested!r} not recognised (use 'auto', 'cython' or 'numpy')"
    )

BACKEND = _impl.BACKEND
walsh_axis0 = _impl.walsh_axis0
walsh_axis1 = _impl.walsh_axis1
fourier_axis0 = _impl.fourier_axis0
shift_rows = _impl.shift_rows


def available_backends():
    """Names of the kernel lanes importable in this environment."""
    names = ["numpy"]
    try:
        from . import _ckern  # noqa: F401

        names.insert(0, "cython")
    except ImportError:
        pass
    return names
