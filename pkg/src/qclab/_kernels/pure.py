"""Numpy implementations of the amplitude kernels.

Selected when the compiled extension is unavailable (or forced via
``QCLAB_BACKEND=numpy``).  Every function mutates its 2-D complex128
array in place and must stay numerically interchangeable with the
compiled lane to 1e-10.
"""

import numpy as np

BACKEND = "numpy"


def _bit_reversed(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def walsh_axis0(a: np.ndarray) -> None:
    """Normalized Hadamard transform of every column (axis-0 index)."""
    n = a.shape[0]
    m = a.shape[1]
    h = 1
    while h < n:
        pairs = a.reshape(-1, 2, h, m)
        upper = pairs[:, 0].copy()
        lower = pairs[:, 1]
        pairs[:, 0] = upper + lower
        pairs[:, 1] = upper - lower
        h *= 2
    a *= 1.0 / np.sqrt(n)


def walsh_axis1(a: np.ndarray) -> None:
    """Normalized Hadamard transform of every row (axis-1 index)."""
    n = a.shape[0]
    m = a.shape[1]
    h = 1
    while h < m:
        pairs = a.reshape(n, -1, 2, h)
        upper = pairs[:, :, 0].copy()
        lower = pairs[:, :, 1]
        pairs[:, :, 0] = upper + lower
        pairs[:, :, 1] = upper - lower
        h *= 2
    a *= 1.0 / np.sqrt(m)


def fourier_axis0(a: np.ndarray, sign: int) -> None:
    """Radix-2 butterfly Fourier transform along axis 0, in place.

    sign=+1 applies x -> sum_y exp(+2*pi*i*x*y/n)|y> / sqrt(n); sign=-1
    is its inverse.  n must be a power of two.
    """
    n = a.shape[0]
    if n == 1:
        return
    a[:] = a[_bit_reversed(n)]
    h = 1
    while h < n:
        angles = (sign * np.pi / h) * np.arange(h)
        twiddle = np.exp(1j * angles)[:, np.newaxis]
        pairs = a.reshape(-1, 2, h, a.shape[1])
        upper = pairs[:, 0].copy()
        lower = pairs[:, 1] * twiddle
        pairs[:, 0] = upper + lower
        pairs[:, 1] = upper - lower
        h *= 2
    a *= 1.0 / np.sqrt(n)


def shift_rows(a: np.ndarray, shifts: np.ndarray) -> None:
    """Cyclically shift row x right by shifts[x]: new[y+s mod m] = old[y]."""
    m = a.shape[1]
    src = (np.arange(m)[np.newaxis, :] - shifts[:, np.newaxis]) % m
    a[:] = np.take_along_axis(a, src, axis=1)
