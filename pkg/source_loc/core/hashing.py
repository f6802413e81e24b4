"""Counter-based 64-bit hashing.

All randomness in simulation is derived from ``hash_pair(key, entity_id)``
so outcomes never depend on iteration order or worker count. Scalar helpers
operate on Python ints, the ``*_array`` variants on numpy uint64 arrays, and
both produce identical bits.
"""

import numpy as np

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

# Stream salts keep independent draws of one run key uncorrelated.
SEED_STREAM = 0x5EED5EED5EED5EED
SPLIT_STREAM = int.from_bytes(b"split", "little")

_UNIT = 2.0 ** -53


def mix64(value: int) -> int:
    """SplitMix64 finalizer on a 64-bit unsigned integer."""
    z = (value + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def hash_pair(key: int, counter: int) -> int:
    """Hash of (key, counter); a bijection in ``counter`` for a fixed key."""
    return mix64(mix64(key & MASK64) ^ (counter & MASK64))


def uniform(h: int) -> float:
    """Map a 64-bit hash to a float in [0, 1)."""
    return (h >> 11) * _UNIT


def run_key(master_seed: int, index: int) -> int:
    """Run key of the ``index``-th run under ``master_seed``."""
    return hash_pair(master_seed, index)


def mix64_array(values) -> np.ndarray:
    """Vectorized :func:`mix64`."""
    z = np.atleast_1d(np.asarray(values, dtype=np.uint64))
    with np.errstate(over="ignore"):
        z = z + np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


def hash_pair_array(key: int, counters) -> np.ndarray:
    """Vectorized :func:`hash_pair` for one key and many counters."""
    counters = np.atleast_1d(np.asarray(counters, dtype=np.uint64))
    return mix64_array(np.uint64(mix64(key & MASK64)) ^ counters)


def hash_grid(keys, counters) -> np.ndarray:
    """``hash_pair(keys[r], counters[c])`` as a (len(keys), len(counters)) array."""
    mixed = mix64_array(np.asarray(keys, dtype=np.uint64))
    counters = np.atleast_1d(np.asarray(counters, dtype=np.uint64))
    return mix64_array(mixed[:, None] ^ counters[None, :])


def uniform_array(hashes: np.ndarray) -> np.ndarray:
    """Vectorized :func:`uniform`."""
    return (hashes >> np.uint64(11)).astype(np.float64) * _UNIT


def run_keys(master_seed: int, start: int, stop: int) -> np.ndarray:
    """Run keys for indices ``start..stop-1`` as a uint64 array."""
    return hash_pair_array(master_seed, np.arange(start, stop, dtype=np.uint64))
