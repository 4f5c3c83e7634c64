"""Deterministic RNG streams.

Every stochastic draw in the library goes through a stream derived from
(seed, purpose, indices).  Streams are independent of each other and of
execution order, so parallel workers cannot reorder draws.
"""

from __future__ import annotations

import numpy as np

# Stable small codes per purpose; never renumber, only append.
_PURPOSE_CODES = {
    "stratify": 1,
    "smo": 2,
    "forest_tree": 3,
    "forest_tie": 4,
    "boost_resample": 5,
    "synthetic": 6,
}

_MASK = (1 << 63) - 1


def derive_rng(seed: int, purpose: str, *indices: int) -> np.random.Generator:
    """Return a Generator for the stream (seed, purpose, *indices)."""
    code = _PURPOSE_CODES[purpose]
    entropy = [seed & _MASK, code] + [int(i) & _MASK for i in indices]
    return np.random.default_rng(np.random.SeedSequence(entropy))
