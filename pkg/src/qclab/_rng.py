"""Deterministic random-stream derivation.

A single 64-bit root seed is expanded into independent per-purpose
streams by hashing string labels into the seed material.  Adding a new
labelled stream never perturbs draws from existing ones, and the same
(seed, labels) pair yields the same stream on every platform.
"""

import hashlib

import numpy as np


def derive_stream(seed: int, *labels: str) -> np.random.Generator:
    """Return a Generator for ``seed`` specialised by ``labels``."""
    if not 0 <= int(seed) < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    words = [int(seed)]
    for label in labels:
        digest = hashlib.sha256(label.encode("utf-8")).digest()
        words.append(int.from_bytes(digest[:8], "little"))
    return np.random.default_rng(np.random.SeedSequence(words))
