"""Classical cryptography: the 30-symbol pad cipher, RSA, and the
classical attacks on both."""

from .codec import (
    ALPHABET,
    decode_text,
    encode_text,
    generate_pad,
    parse_codes,
    render_codes,
    vernam_decrypt,
    vernam_encrypt,
)
from .numtheory import (
    TrialDivisionResult,
    extended_gcd,
    integer_kth_root,
    is_probable_prime,
    mod_inverse,
    mod_pow,
    multiplicative_order,
    as_perfect_power,
    random_prime,
    trial_division_factor,
)
from .rsa import (
    BlockedMessage,
    RsaKeyPair,
    blocks_to_text,
    cipher_block_width,
    default_block_width,
    read_key_file,
    rsa_decrypt,
    rsa_encrypt,
    rsa_generate,
    rsa_generate_random,
    rsa_order_attack,
    text_to_blocks,
    write_key_file,
)

__all__ = [
    "ALPHABET",
    "BlockedMessage",
    "RsaKeyPair",
    "TrialDivisionResult",
    "as_perfect_power",
    "blocks_to_text",
    "cipher_block_width",
    "decode_text",
    "default_block_width",
    "encode_text",
    "extended_gcd",
    "generate_pad",
    "integer_kth_root",
    "is_probable_prime",
    "mod_inverse",
    "mod_pow",
    "multiplicative_order",
    "parse_codes",
    "random_prime",
    "read_key_file",
    "render_codes",
    "rsa_decrypt",
    "rsa_encrypt",
    "rsa_generate",
    "rsa_generate_random",
    "rsa_order_attack",
    "text_to_blocks",
    "trial_division_factor",
    "vernam_decrypt",
    "vernam_encrypt",
    "write_key_file",
]
