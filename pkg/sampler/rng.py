"""
Random Streams
splitmix64 seed mixing and counter-based (Philox) generators
"""

import numpy as np

MASK64 = (1 << 64) - 1
SEED_GRID_PERIOD = 8


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer"""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, grid_index: int, replicate: int) -> int:
    """
    Per-trial seed

    seed = mix64(master_seed XOR mix64(grid_index * 2^61 + replicate)), all mod 2^64.

    grid_index * 2^61 wraps mod 2^64, so grid indices g and g + 8 share seeds.
    Callers with more than SEED_GRID_PERIOD independent streams fold the extra
    index into master_seed instead.
    """
    inner = mix64((grid_index * (1 << 61) + replicate) & MASK64)
    return mix64((master_seed & MASK64) ^ inner)


def substream_seed(seed: int, stream: int) -> int:
    """Independent seed for a named side stream (e.g. the Haar basis) of one trial"""
    return mix64((seed ^ mix64(stream + 1)) & MASK64)


def make_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed & MASK64))
