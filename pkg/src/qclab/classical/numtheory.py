"""Integer arithmetic underpinning the ciphers and the attacks.

Everything works on Python's arbitrary-precision ints.  The factoring
and order-finding routines are intentionally the slow classical
baselines (trial division, iterated multiplication) that the quantum
module is later measured against.
"""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

import numpy as np

from .._rng import derive_stream
from ..errors import DomainError, NotCoprimeError, WorkCapError

_MR_ROUNDS = 40
_MR_FIXED_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    if a < 0 or b < 0:
        raise DomainError("extended_gcd needs nonnegative inputs")
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    return old_r, old_x, old_y


def mod_inverse(a: int, modulus: int) -> int:
    """The x in 0 < x < modulus with a*x = 1 (mod modulus)."""
    if modulus < 2:
        raise DomainError("modulus must be at least 2")
    g, x, _ = extended_gcd(a % modulus, modulus)
    if g != 1:
        raise NotCoprimeError(a, modulus, g)
    return x % modulus


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Square-and-multiply base^exponent mod modulus."""
    if modulus < 2:
        raise DomainError("modulus must be at least 2")
    if exponent < 0:
        raise DomainError("exponent must be nonnegative")
    result = 1
    base %= modulus
    while exponent:
        if exponent & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        exponent >>= 1
    return result


def is_probable_prime(n: int, rounds: int = _MR_ROUNDS) -> bool:
    """Miller-Rabin with fixed small bases, then seeded random ones.

    The random bases are derived from n itself, so the verdict for a
    given n is reproducible.
    """
    if n < 2:
        return False
    for p in _MR_FIXED_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witnesses(a: int) -> bool:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                return False
        return True

    bases = list(_MR_FIXED_BASES[:rounds])
    if rounds > len(bases):
        rng = derive_stream(n % 2**64, "miller-rabin")
        extra = rounds - len(bases)
        bases += [2 + int(v) % (n - 3) for v in rng.integers(0, 2**63, size=extra)]
    return not any(witnesses(a % n) for a in bases if a % n not in (0, 1, n - 1))


def random_prime(bits: int, rng: np.random.Generator) -> int:
    """A random probable prime with exactly ``bits`` bits."""
    if bits < 3:
        raise DomainError("primes need at least 3 bits here")
    nbytes = (bits + 7) // 8
    while True:
        raw = int.from_bytes(rng.bytes(nbytes), "big")
        candidate = (raw & ((1 << bits) - 1)) | (1 << (bits - 1)) | 1
        if is_probable_prime(candidate):
            return candidate


@dataclass(frozen=True)
class TrialDivisionResult:
    """Outcome of a bounded trial-division factoring run."""

    n: int
    status: str  # "factored" | "prime" | "refused"
    factor: Optional[int] = None
    cofactor: Optional[int] = None
    divisions: int = 0
    estimated_divisions: Optional[int] = None


def trial_division_factor(n: int, work_cap: int = 2**64) -> TrialDivisionResult:
    """Factor n by dividing by 2, 3, 5, ... up to sqrt(n).

    Numbers above ``work_cap`` are refused with a division-count
    estimate instead of an open-ended search.
    """
    if n < 2:
        raise DomainError("nothing to factor below 2")
    if n > work_cap:
        return TrialDivisionResult(
            n, "refused", estimated_divisions=max(1, isqrt(n) // 2)
        )
    divisions = 1
    if n % 2 == 0:
        return TrialDivisionResult(n, "factored", 2, n // 2, divisions)
    candidate = 3
    limit = isqrt(n)
    while candidate <= limit:
        divisions += 1
        if n % candidate == 0:
            return TrialDivisionResult(n, "factored", candidate, n // candidate, divisions)
        candidate += 2
    return TrialDivisionResult(n, "prime", divisions=divisions)


def multiplicative_order(a: int, n: int, max_steps: int = 10**7) -> int:
    """Least r >= 1 with a^r = 1 (mod n), found by iteration."""
    if n < 2:
        raise DomainError("modulus must be at least 2")
    a %= n
    g = gcd(a, n)
    if g != 1:
        raise NotCoprimeError(a, n, g)
    power = a
    for r in range(1, max_steps + 1):
        if power == 1:
            return r
        power = (power * a) % n
    raise WorkCapError(f"order of {a} mod {n} not found within {max_steps} steps")


def integer_kth_root(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0, k >= 1, by Newton iteration."""
    if n < 0 or k < 1:
        raise DomainError("integer_kth_root needs n >= 0, k >= 1")
    if n in (0, 1) or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def as_perfect_power(n: int) -> Optional[tuple[int, int]]:
    """(base, exponent >= 2) if n is a perfect power, else None."""
    if n < 4:
        return None
    for k in range(2, n.bit_length() + 1):
        root = integer_kth_root(n, k)
        if root**k == n:
            return root, k
    return None
