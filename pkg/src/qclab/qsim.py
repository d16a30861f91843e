"""Dense state-vector simulator for two abutting qubit registers.

The machine model is deliberately small: a first register of l qubits
and a second of k qubits, stored as a single array of 2^(l+k) complex
amplitudes where basis index x*2^k + y encodes |x>|y>.  Exactly four
primitives act on it — Hadamard layers, reversible function oracles
|x>|y> -> |x>|y + f(x) mod 2^k>, the Fourier transform of the first
register, and projective measurement.  All transformations are pure:
they return a new StateVector and never mutate their input.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import (
    CapacityError,
    ContractViolationError,
    DomainError,
    InternalInvariantError,
)

MAX_QUBITS = 24
NORM_TOL = 1e-12

# Oracle evaluations are buffered in slabs of this many amplitudes so
# that large registers never tabulate f over the whole domain at once.
_CHUNK_AMPLITUDES = 1 << 16


@dataclass(frozen=True)
class RegisterLayout:
    """Widths (l, k) of the two registers."""

    l: int
    k: int = 0

    def __post_init__(self):
        if self.l < 1 or self.k < 0:
            raise ValueError(f"invalid register widths l={self.l}, k={self.k}")
        if self.l + self.k > MAX_QUBITS:
            raise CapacityError(
                f"l + k = {self.l + self.k} exceeds the {MAX_QUBITS}-qubit cap"
            )

    @property
    def first_size(self) -> int:
        return 1 << self.l

    @property
    def second_size(self) -> int:
        return 1 << self.k

    @property
    def dim(self) -> int:
        return 1 << (self.l + self.k)


@dataclass(frozen=True)
class StateVector:
    layout: RegisterLayout
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.amplitudes.shape != (self.layout.dim,):
            raise ValueError("amplitude count does not match the layout")
        if self.amplitudes.dtype != np.complex128:
            raise ValueError("amplitudes must be complex128")

    def matrix(self) -> np.ndarray:
        """(2^l, 2^k) view; rows index the first register."""
        return self.amplitudes.reshape(self.layout.first_size, self.layout.second_size)

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self, register: str = "both") -> np.ndarray:
        """Born probabilities of the selected register's marginal."""
        dens = np.abs(self.amplitudes) ** 2
        if register == "both":
            return dens
        view = dens.reshape(self.layout.first_size, self.layout.second_size)
        if register == "first":
            return view.sum(axis=1)
        if register == "second":
            return view.sum(axis=0)
        raise ValueError(f"unknown register {register!r}")


@dataclass(frozen=True)
class MeasurementResult:
    register: str
    value: int
    collapsed: StateVector


class Oracle:
    """A total function {0..2^l-1} -> {0..2^k-1} plus a display name.

    The rule is validated at construction on an exhaustive sweep when
    the domain is small, otherwise on an evenly spaced sample; every
    value is re-checked when the oracle is applied.
    """

    _VALIDATION_SWEEP = 4096

    def __init__(self, fn: Callable[[int], int], name: str, in_bits: int, out_bits: int):
        if in_bits < 1 or out_bits < 1:
            raise ValueError("oracle register widths must be positive")
        self.fn = fn
        self.name = name
        self.in_bits = in_bits
        self.out_bits = out_bits
        domain = 1 << in_bits
        if domain <= self._VALIDATION_SWEEP:
            probe = range(domain)
        else:
            probe = range(0, domain, domain // self._VALIDATION_SWEEP)
        limit = 1 << out_bits
        for x in probe:
            value = fn(x)
            if not isinstance(value, (int, np.integer)) or not 0 <= value < limit:
                raise ContractViolationError(
                    f"oracle {name!r} returned {value!r} at x={x}, "
                    f"outside 0..{limit - 1}"
                )

    def __repr__(self):
        return f"Oracle({self.name!r}, {self.in_bits}->{self.out_bits} bits)"

    def evaluate_block(self, start: int, stop: int) -> np.ndarray:
        return np.array([self.fn(x) for x in range(start, stop)], dtype=np.int64)

    @classmethod
    def modexp(cls, base: int, modulus: int, in_bits: int) -> "Oracle":
        """The repeated-squaring oracle x -> base^x mod modulus."""
        out_bits = max(1, int(modulus - 1).bit_length())
        return cls(
            lambda x: pow(base, x, modulus),
            name=f"{base}^x mod {modulus}",
            in_bits=in_bits,
            out_bits=out_bits,
        )


def _checked(layout: RegisterLayout, amplitudes: np.ndarray) -> StateVector:
    norm_sq = float(np.vdot(amplitudes, amplitudes).real)
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise InternalInvariantError(f"norm drifted to {norm_sq!r}")
    return StateVector(layout, amplitudes)


def basis_state(layout: RegisterLayout, x: int, y: int = 0) -> StateVector:
    """The computational basis state |x>|y>."""
    if not 0 <= x < layout.first_size:
        raise DomainError(f"x={x} outside the first register")
    if not 0 <= y < layout.second_size:
        raise DomainError(f"y={y} outside the second register")
    amplitudes = np.zeros(layout.dim, dtype=np.complex128)
    amplitudes[x * layout.second_size + y] = 1.0
    return StateVector(layout, amplitudes)


def uniform_superposition(layout: RegisterLayout) -> StateVector:
    """Equal superposition of the first register, second register |0>.

    Equivalent to a Hadamard on every first-register qubit of |0..0>.
    """
    amplitudes = np.zeros(layout.dim, dtype=np.complex128)
    view = amplitudes.reshape(layout.first_size, layout.second_size)
    view[:, 0] = 2.0 ** (-layout.l / 2.0)
    return _checked(layout, amplitudes)


def hadamard_register(state: StateVector, register: str) -> StateVector:
    """Hadamard layer on every qubit of one register."""
    amplitudes = state.amplitudes.copy()
    view = amplitudes.reshape(state.layout.first_size, state.layout.second_size)
    if register == "first":
        _kernels.walsh_axis0(view)
    elif register == "second":
        if state.layout.k == 0:
            raise DomainError("second register is empty")
        _kernels.walsh_axis1(view)
    else:
        raise ValueError(f"unknown register {register!r}")
    return _checked(state.layout, amplitudes)


def apply_oracle(state: StateVector, oracle: Oracle) -> StateVector:
    """|x>|y> -> |x>|y + f(x) mod 2^k>: a permutation of basis states."""
    layout = state.layout
    if layout.k < 1:
        raise DomainError("oracle application needs a second register (k >= 1)")
    if oracle.in_bits != layout.l or oracle.out_bits > layout.k:
        raise ContractViolationError(
            f"oracle {oracle.name!r} is {oracle.in_bits}->{oracle.out_bits} bits, "
            f"state is l={layout.l}, k={layout.k}"
        )
    amplitudes = state.amplitudes.copy()
    view = amplitudes.reshape(layout.first_size, layout.second_size)
    rows_per_chunk = max(1, _CHUNK_AMPLITUDES // layout.second_size)
    limit = layout.second_size
    for start in range(0, layout.first_size, rows_per_chunk):
        stop = min(start + rows_per_chunk, layout.first_size)
        values = oracle.evaluate_block(start, stop)
        if values.size and (values.min() < 0 or values.max() >= limit):
            bad = int(np.argmax((values < 0) | (values >= limit)))
            raise ContractViolationError(
                f"oracle {oracle.name!r} returned {values[bad]} at x={start + bad}, "
                f"outside 0..{limit - 1}"
            )
        _kernels.shift_rows(view[start:stop], values)
    return _checked(layout, amplitudes)


def qft_first_register(state: StateVector, inverse: bool = False) -> StateVector:
    """Fourier transform |x> -> sum_y exp(2*pi*i*x*y/2^l)|y> / 2^(l/2).

    Acts linearly on the first register; the second is untouched.
    """
    amplitudes = state.amplitudes.copy()
    view = amplitudes.reshape(state.layout.first_size, state.layout.second_size)
    _kernels.fourier_axis0(view, -1 if inverse else +1)
    return _checked(state.layout, amplitudes)


def measure(
    state: StateVector, register: str, rng: np.random.Generator
) -> MeasurementResult:
    """Projective measurement of one register (or both).

    The outcome is drawn from the marginal Born distribution; the
    collapsed state is the renormalized projection onto it.
    """
    probs = state.probabilities(register)
    total = probs.sum()
    if not total > 0.5:  # normalized states have total ~1
        raise InternalInvariantError(f"degenerate marginal (mass {total!r})")
    cumulative = np.cumsum(probs)
    value = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    value = min(value, len(probs) - 1)
    return MeasurementResult(register, value, collapse(state, register, value))


def collapse(state: StateVector, register: str, value: int) -> StateVector:
    """Renormalized projection of ``state`` onto ``register == value``."""
    layout = state.layout
    amplitudes = state.amplitudes.copy()
    view = amplitudes.reshape(layout.first_size, layout.second_size)
    if register == "first":
        keep = view[value, :].copy()
        view[:] = 0.0
        view[value, :] = keep
    elif register == "second":
        keep = view[:, value].copy()
        view[:] = 0.0
        view[:, value] = keep
    elif register == "both":
        keep = amplitudes[value]
        amplitudes[:] = 0.0
        amplitudes[value] = keep
    else:
        raise ValueError(f"unknown register {register!r}")
    norm = np.linalg.norm(amplitudes)
    if norm == 0.0:
        raise DomainError(f"outcome {value} has zero probability")
    amplitudes /= norm
    return _checked(layout, amplitudes)


def dump_amplitudes(state: StateVector, cutoff: float = 1e-14) -> str:
    """Debug listing: one ``index real imag`` line per non-negligible amplitude."""
    lines = []
    for index in np.flatnonzero(np.abs(state.amplitudes) >= cutoff):
        amp = state.amplitudes[index]
        lines.append(f"{index} {amp.real:.17g} {amp.imag:.17g}")
    return "\n".join(lines)


def load_amplitudes(layout: RegisterLayout, text: str) -> StateVector:
    """Inverse of dump_amplitudes (amplitudes below the cutoff stay zero)."""
    amplitudes = np.zeros(layout.dim, dtype=np.complex128)
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        index_s, real_s, imag_s = line.split()
        amplitudes[int(index_s)] = complex(float(real_s), float(imag_s))
    return StateVector(layout, amplitudes)
