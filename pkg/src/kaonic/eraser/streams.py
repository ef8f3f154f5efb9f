"""Counter-based random substreams for event generation.

Event ``e`` under master seed ``s`` owns ``DRAWS_PER_EVENT`` uniforms taken
from a Philox4x64 stream keyed by ``s``.  Events are grouped in fixed blocks
of ``BLOCK_SIZE``; block ``k`` starts at counter word ``[0, 0, k, 0]`` and
event ``e`` reads doubles ``DRAWS_PER_EVENT * (e % BLOCK_SIZE)`` onward.
A block consumes far fewer than 2**64 counter increments, so blocks never
overlap, and every event's numbers depend only on ``(s, e)``: how events are
split into shards cannot change them.
"""

from __future__ import annotations

import numpy as np

BLOCK_SIZE = 4096
DRAWS_PER_EVENT = 8

# uniform slots within an event
SLOT_ASSIGN = 0  # which side carries K_S
SLOT_TIME_LEFT = 1
SLOT_TIME_RIGHT = 2
SLOT_MODE_LEFT = 3
SLOT_MODE_RIGHT = 4
SLOT_OUTCOME = 5
SLOT_METER = 6

_KEY_TAG = 0x6B616F6E  # separates these streams from other uses of the same seed


def _key(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return (_KEY_TAG << 64) | seed


def block_uniforms(seed: int, block: int, n: int = BLOCK_SIZE) -> np.ndarray:
    """Uniforms for the first ``n`` events of ``block``, shape (n, DRAWS_PER_EVENT)."""
    bitgen = np.random.Philox(key=_key(seed), counter=np.array([0, 0, block, 0], dtype=np.uint64))
    return np.random.Generator(bitgen).random((n, DRAWS_PER_EVENT))


def event_uniforms(seed: int, start: int, stop: int) -> np.ndarray:
    """Uniforms for events ``start`` (inclusive) to ``stop`` (exclusive)."""
    out = np.empty((stop - start, DRAWS_PER_EVENT))
    pos = start
    while pos < stop:
        block, offset = divmod(pos, BLOCK_SIZE)
        take = min(stop - pos, BLOCK_SIZE - offset)
        out[pos - start : pos - start + take] = block_uniforms(seed, block, offset + take)[offset:]
        pos += take
    return out


def block_ranges(n_events: int) -> list[tuple[int, int, int]]:
    """(block index, start, stop) for every block touched by n_events."""
    return [
        (k, k * BLOCK_SIZE, min(n_events, (k + 1) * BLOCK_SIZE))
        for k in range((n_events + BLOCK_SIZE - 1) // BLOCK_SIZE)
    ]
