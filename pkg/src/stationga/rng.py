"""Seeded random streams.

Every stochastic routine takes an explicit ``random.Random``. Streams are
derived from a master seed and a stream index so independent workers never
share state:

    child seed = first 8 bytes (big-endian) of BLAKE2b("<master>:<index>")

and the child stream is CPython's MT19937 seeded with that 64-bit integer.
"""

import hashlib
import random

MASK64 = (1 << 64) - 1


def derive_seed(master: int, index: int = 0) -> int:
    digest = hashlib.blake2b(f"{master & MASK64}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def make_rng(master: int, index: int = 0) -> random.Random:
    return random.Random(derive_seed(master, index))
