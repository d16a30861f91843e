"""30-symbol alphabet and the mod-30 one-time pad.

Symbols A..Z, space, '?', ',' and '.' map to codes 1..30 (rendered as
two decimal digits, "01".."30").  Pad encryption adds key to plaintext
modulo 30 with representatives chosen in {1..30}, so a residue of 0
renders as 30 and every ciphertext code stays printable.
"""

from typing import Iterable, Sequence

import numpy as np

from ..errors import CodecError, DomainError, KeyExhaustedError

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ ?,."
CODE_OF = {symbol: i + 1 for i, symbol in enumerate(ALPHABET)}
SYMBOL_OF = {i + 1: symbol for i, symbol in enumerate(ALPHABET)}


def encode_text(text: str) -> list[int]:
    """Map text (case-folded) to its code sequence."""
    codes = []
    for position, char in enumerate(text.upper()):
        code = CODE_OF.get(char)
        if code is None:
            raise CodecError(
                f"unsupported character {char!r} at position {position}", position
            )
        codes.append(code)
    return codes


def decode_text(codes: Iterable[int]) -> str:
    symbols = []
    for position, code in enumerate(codes):
        symbol = SYMBOL_OF.get(int(code))
        if symbol is None:
            raise CodecError(f"invalid code {code!r} at position {position}", position)
        symbols.append(symbol)
    return "".join(symbols)


def render_codes(codes: Iterable[int]) -> str:
    """Two-digit rendering, e.g. [8, 5] -> '08 05'."""
    return " ".join(f"{int(c):02d}" for c in codes)


def parse_codes(text: str) -> list[int]:
    parts = text.replace(",", " ").split()
    try:
        codes = [int(p) for p in parts]
    except ValueError as exc:
        raise CodecError(f"cannot parse code sequence: {exc}") from exc
    for position, code in enumerate(codes):
        if not 1 <= code <= 30:
            raise CodecError(f"code {code} out of range at position {position}", position)
    return codes


def generate_pad(length: int, rng: np.random.Generator) -> list[int]:
    """A fresh random pad: ``length`` codes drawn uniformly from 1..30."""
    if length < 0:
        raise DomainError("pad length must be nonnegative")
    return [int(v) for v in rng.integers(1, 31, size=length)]


def _check_codes(codes: Sequence[int], what: str) -> None:
    for position, code in enumerate(codes):
        if not 1 <= int(code) <= 30:
            raise CodecError(
                f"{what} code {code} out of range at position {position}", position
            )


def vernam_encrypt(plain_codes: Sequence[int], key: Sequence[int]) -> list[int]:
    """c = (p + k) mod 30, representative in 1..30."""
    if len(key) < len(plain_codes):
        raise KeyExhaustedError(
            f"pad has {len(key)} codes but the message needs {len(plain_codes)}; "
            "a pad is never reused"
        )
    _check_codes(plain_codes, "plaintext")
    _check_codes(key[: len(plain_codes)], "key")
    return [
        (int(p) + int(k) - 1) % 30 + 1 for p, k in zip(plain_codes, key)
    ]


def vernam_decrypt(cipher_codes: Sequence[int], key: Sequence[int]) -> list[int]:
    """Exact inverse of vernam_encrypt under the same pad."""
    if len(key) < len(cipher_codes):
        raise KeyExhaustedError(
            f"pad has {len(key)} codes but the cryptogram needs {len(cipher_codes)}"
        )
    _check_codes(cipher_codes, "ciphertext")
    _check_codes(key[: len(cipher_codes)], "key")
    return [
        (int(c) - int(k) - 1) % 30 + 1 for c, k in zip(cipher_codes, key)
    ]
