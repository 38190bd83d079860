"""Named random streams.

All randomness comes from Philox-4x64 (a counter-based generator) keyed through numpy's
SeedSequence, so a stream is fully identified by (seed, spawn key) on every platform.
"""

import numpy as np

MAX_SEED = 2**64 - 1
SCENARIO_STREAM = 2**32 - 1


def stream(seed: int, *spawn_key: int) -> np.random.Generator:
    """Return the Philox stream identified by a seed and an optional spawn key."""
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(spawn_key))
    return np.random.Generator(np.random.Philox(sequence))


def agent_stream(run_seed: int, agent_id: int) -> np.random.Generator:
    """Independent stream of one agent inside one run."""
    return stream(run_seed, agent_id)
