"""Seeded random streams.

Every randomized operation draws from its own stream so that, for example,
partitioning a graph never consumes numbers from the stream that generated
it. Streams are PCG64 generators keyed by ``SeedSequence(seed,
spawn_key=(stream, *subkeys))``; the mapping is fixed by numpy's documented
seeding algorithm and is therefore reproducible across platforms.
"""

from __future__ import annotations

import random

import numpy as np

GENERATE = 1
PARTITION = 2
SEARCH = 3
SAMPLING = 4
PIPELINE = 5
EXPERIMENT = 6
PROCESS = 7

_MASK64 = (1 << 64) - 1


def seed_sequence(seed: int, stream: int, *subkeys: int) -> np.random.SeedSequence:
    keys = tuple(int(k) & _MASK64 for k in (stream, *subkeys))
    return np.random.SeedSequence(int(seed) & _MASK64, spawn_key=keys)


def generator(seed: int, stream: int, *subkeys: int) -> np.random.Generator:
    """Return a numpy ``Generator`` for the given stream."""
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, stream, *subkeys)))


def derive_seed(seed: int, stream: int, *subkeys: int) -> int:
    """A 64-bit integer seed derived from ``(seed, stream, subkeys)``."""
    state = seed_sequence(seed, stream, *subkeys).generate_state(1, np.uint64)
    return int(state[0])


def python_random(seed: int, stream: int, *subkeys: int) -> random.Random:
    """A stdlib ``Random`` for scalar-heavy loops, seeded from the stream."""
    return random.Random(derive_seed(seed, stream, *subkeys))
