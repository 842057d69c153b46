"""Deterministic random streams.

Every stochastic component in this package draws from a counter-based
Philox generator named by a 64-bit seed, so the same seed always yields
the same stream on every platform.  Consumers document the order in
which they take draws from their stream; nothing else shares it.
"""

from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1

# Seed type: any integer in [0, 2**64).  Kept as a plain int throughout;
# this alias only marks intent in signatures.
RngSeed = int


def check_seed(seed: int) -> int:
    """Validate a 64-bit unsigned seed and return it as a plain int."""
    seed = int(seed)
    if not 0 <= seed <= SEED_MASK:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def make_rng(seed: RngSeed) -> np.random.Generator:
    """Create the deterministic stream named by ``seed``."""
    return np.random.Generator(np.random.Philox(check_seed(seed)))


def round_half_up(x: float) -> int:
    """Round a non-negative real half-up (0.5 -> 1), used for proportion counts."""
    return int(np.floor(x + 0.5))
