"""Named, seed-derived random streams.

Every random draw in the toolkit comes from numpy's PCG64 generator seeded
through a ``SeedSequence`` built from the user seed plus stable 64-bit
BLAKE2b hashes of stream names (operation name, document id, ...). Streams
for different names are independent, and results do not depend on Python's
per-process ``hash`` randomization.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def stable_hash(*parts: object) -> int:
    h = hashlib.blake2b(digest_size=8)
    for p in parts:
        h.update(str(p).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")


def make_rng(seed: int, *names: object) -> np.random.Generator:
    entropy = [seed & _MASK64] + [stable_hash(n) for n in names]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *names: object) -> int:
    return stable_hash(seed & _MASK64, *names) & ((1 << 63) - 1)
