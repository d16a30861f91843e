"""RSA at desk scale: key generation, block ciphering, and the
classical ways of breaking it (factoring the modulus, or decrypting a
single block via the multiplicative order of the cryptogram).

Messages are sequences of fixed-width decimal blocks, leading zeros
preserved; every block must be strictly below the modulus.
"""

import json
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import numpy as np

from ..errors import BlockingError, DomainError, KeygenError, PrimalityError
from . import codec
from .numtheory import (
    is_probable_prime,
    mod_inverse,
    mod_pow,
    multiplicative_order,
    random_prime,
)


@dataclass(frozen=True)
class RsaKeyPair:
    n: int
    e: int
    p: int
    q: int
    d: int

    @property
    def public(self) -> tuple[int, int]:
        return self.n, self.e


@dataclass(frozen=True)
class BlockedMessage:
    """Decimal blocks of a fixed rendered width."""

    block_width: int
    blocks: tuple[int, ...]

    def __post_init__(self):
        if self.block_width < 1:
            raise BlockingError("block width must be positive")
        for b in self.blocks:
            if b < 0 or len(str(b)) > self.block_width:
                raise BlockingError(
                    f"block {b} does not fit in {self.block_width} digits"
                )

    def render(self) -> str:
        return " ".join(f"{b:0{self.block_width}d}" for b in self.blocks)

    @classmethod
    def parse(cls, text: str, block_width: Optional[int] = None) -> "BlockedMessage":
        parts = text.split()
        if not parts:
            raise BlockingError("no blocks given")
        width = block_width if block_width is not None else len(parts[0])
        for part in parts:
            if not part.isdigit():
                raise BlockingError(f"block {part!r} is not decimal")
            if block_width is None and len(part) != width:
                raise BlockingError("blocks have inconsistent widths")
        return cls(width, tuple(int(p) for p in parts))


def rsa_generate(p: int, q: int, e: int) -> RsaKeyPair:
    """Key pair from explicit primes; validates every precondition."""
    for value, name in ((p, "p"), (q, "q")):
        if not is_probable_prime(value):
            raise PrimalityError(f"{name} = {value} is not prime")
    if p == q:
        raise KeygenError("p and q must be distinct primes")
    phi = (p - 1) * (q - 1)
    if e < 2 or gcd(e, phi) != 1:
        raise KeygenError(f"e = {e} is not coprime to (p-1)(q-1) = {phi}")
    return RsaKeyPair(n=p * q, e=e, p=p, q=q, d=mod_inverse(e, phi))


def rsa_generate_random(
    prime_bits: int, rng: np.random.Generator, e: Optional[int] = None
) -> RsaKeyPair:
    """Key pair with two fresh ``prime_bits``-bit primes.

    When ``e`` is not given, 65537 is tried first and then random odd
    exponents until one is coprime to (p-1)(q-1).
    """
    if prime_bits < 4:
        raise KeygenError("prime_bits must be at least 4")
    p = random_prime(prime_bits, rng)
    q = random_prime(prime_bits, rng)
    while q == p:
        q = random_prime(prime_bits, rng)
    phi = (p - 1) * (q - 1)
    if e is not None:
        return rsa_generate(p, q, e)
    for candidate in (65537, 257, 17, 5, 3):
        if candidate < phi and gcd(candidate, phi) == 1:
            return rsa_generate(p, q, candidate)
    while True:
        candidate = int(rng.integers(3, max(4, min(phi, 2**31)))) | 1
        if gcd(candidate, phi) == 1:
            return rsa_generate(p, q, candidate)


def default_block_width(n: int) -> int:
    """floor(log10 n) digits, so that every block is below n."""
    return len(str(n)) - 1


def cipher_block_width(n: int) -> int:
    """Digits needed to render any residue mod n."""
    return len(str(n - 1))


def text_to_blocks(text: str, n: int, block_width: Optional[int] = None) -> BlockedMessage:
    """Encode text with the 30-symbol alphabet and group the digits.

    The width must be even (each symbol is two digits); the text is
    padded with trailing spaces to fill the last block.
    """
    width = block_width if block_width is not None else default_block_width(n)
    if width % 2 != 0:
        raise BlockingError(f"text blocking needs an even width, got {width}")
    symbols_per_block = width // 2
    codes = codec.encode_text(text)
    remainder = len(codes) % symbols_per_block
    if remainder:
        codes += [codec.CODE_OF[" "]] * (symbols_per_block - remainder)
    digits = "".join(f"{c:02d}" for c in codes)
    blocks = tuple(
        int(digits[i : i + width]) for i in range(0, len(digits), width)
    )
    message = BlockedMessage(width, blocks)
    _check_blocks_fit(message, n)
    return message


def blocks_to_text(message: BlockedMessage) -> str:
    if message.block_width % 2 != 0:
        raise BlockingError("cannot decode text from odd-width blocks")
    digits = "".join(f"{b:0{message.block_width}d}" for b in message.blocks)
    codes = [int(digits[i : i + 2]) for i in range(0, len(digits), 2)]
    return codec.decode_text(codes)


def _check_blocks_fit(message: BlockedMessage, n: int) -> None:
    for b in message.blocks:
        if b >= n:
            raise BlockingError(f"block {b} is not below the modulus {n}")


def rsa_encrypt(message: BlockedMessage, n: int, e: int) -> BlockedMessage:
    """Per-block c = p^e mod n; ciphertext width covers any residue."""
    _check_blocks_fit(message, n)
    return BlockedMessage(
        cipher_block_width(n), tuple(mod_pow(b, e, n) for b in message.blocks)
    )


def rsa_decrypt(
    message: BlockedMessage, key: RsaKeyPair, block_width: Optional[int] = None
) -> BlockedMessage:
    """Per-block p = c^d mod n, rendered at the plaintext width."""
    _check_blocks_fit(message, key.n)
    width = block_width if block_width is not None else default_block_width(key.n)
    return BlockedMessage(width, tuple(mod_pow(b, key.d, key.n) for b in message.blocks))


def rsa_order_attack(cipher_block: int, n: int, e: int) -> int:
    """Recover one plaintext block from (c, n, e) alone.

    Uses the multiplicative order r of the cryptogram: because the
    plaintext's order equals r and gcd(e, r) = 1, the exponent
    e^-1 mod r decrypts the block without ever factoring n.
    """
    if not 0 <= cipher_block < n:
        raise DomainError(f"cipher block {cipher_block} outside 0..{n - 1}")
    if cipher_block in (0, 1):
        return cipher_block
    shared = gcd(cipher_block, n)
    if shared != 1:
        # the cryptogram itself leaks a factor; decrypt the ordinary way
        p, q = shared, n // shared
        d = mod_inverse(e, (p - 1) * (q - 1))
        return mod_pow(cipher_block, d, n)
    r = multiplicative_order(cipher_block, n)
    d_prime = mod_inverse(e, r)
    plain = mod_pow(cipher_block, d_prime, n)
    if mod_pow(plain, e, n) != cipher_block:
        raise DomainError(
            f"order attack failed verification for block {cipher_block}"
        )
    return plain


def public_key_dict(key: RsaKeyPair) -> dict:
    return {"n": str(key.n), "e": str(key.e)}


def private_key_dict(key: RsaKeyPair) -> dict:
    return {
        "n": str(key.n),
        "e": str(key.e),
        "p": str(key.p),
        "q": str(key.q),
        "d": str(key.d),
    }


def key_from_dict(data: dict) -> RsaKeyPair:
    """Rebuild a key pair from a key file; private fields may be absent.

    Missing private components are stored as 0 (public-only key).
    """
    try:
        n = int(data["n"])
        e = int(data["e"])
    except (KeyError, ValueError) as exc:
        raise KeygenError(f"malformed key data: {exc}") from exc
    p = int(data.get("p", 0))
    q = int(data.get("q", 0))
    d = int(data.get("d", 0))
    return RsaKeyPair(n=n, e=e, p=p, q=q, d=d)


def write_key_file(path, key: RsaKeyPair, private: bool) -> None:
    payload = private_key_dict(key) if private else public_key_dict(key)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_key_file(path) -> RsaKeyPair:
    with open(path, "r", encoding="utf-8") as fh:
        return key_from_dict(json.load(fh))
