"""Sortable unique identifiers for records and extractions.

Ids are ULID-shaped: a millisecond timestamp prefix followed by random
bits, both Crockford base32 encoded, so lexicographic order is creation
order. A seeded generator yields a reproducible sequence for
deterministic pipeline runs.
"""

from __future__ import annotations

import random
import threading
import time

_CROCKFORD = "0123456789ABCDEFGHJKMNPQRSTVWXYZ"


def _b32(value: int, width: int) -> str:
    chars = []
    for _ in range(width):
        chars.append(_CROCKFORD[value & 31])
        value >>= 5
    return "".join(reversed(chars))


class IdGenerator:
    """Generates 26-character sortable ids.

    With a seed the timestamp component becomes a counter from a fixed
    epoch and the random component comes from a seeded PRNG, so the id
    stream is fully reproducible.
    """

    def __init__(self, seed: int | None = None):
        self._lock = threading.Lock()
        self._seeded = seed is not None
        self._rng = random.Random(seed)
        self._counter = 0

    def new_id(self, prefix: str = "") -> str:
        with self._lock:
            if self._seeded:
                self._counter += 1
                ts = self._counter
            else:
                ts = time.time_ns() // 1_000_000
            rand = self._rng.getrandbits(80)
        return prefix + _b32(ts, 10) + _b32(rand, 16)


_default = IdGenerator()


def new_id(prefix: str = "") -> str:
    return _default.new_id(prefix)
