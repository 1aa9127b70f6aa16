"""Per-source request rate limiting.

Uses a sliding one-second window rather than a token bucket: the
contract is that no source ever sees more than its configured number of
requests in *any* one-second window, which burst-friendly buckets do
not guarantee. Clock and sleep are injectable for fake-clock tests.
"""

from __future__ import annotations

import threading
import time
from collections import deque
from typing import Callable


class SlidingWindowRateLimiter:
    """Blocks callers so at most ``rate_per_sec`` acquisitions happen in
    any sliding one-second window. Thread-safe."""

    def __init__(self, rate_per_sec: float,
                 clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        if rate_per_sec <= 0:
            raise ValueError("rate_per_sec must be positive")
        self.rate = rate_per_sec
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._sent: deque[float] = deque()

    def acquire(self) -> float:
        """Block until a slot is free; returns the acquisition timestamp."""
        while True:
            with self._lock:
                now = self._clock()
                while self._sent and self._sent[0] <= now - 1.0:
                    self._sent.popleft()
                if len(self._sent) < self.rate:
                    self._sent.append(now)
                    return now
                wait = self._sent[0] + 1.0 - now
            self._sleep(max(wait, 1e-6))


class FakeClock:
    """Deterministic clock for limiter tests. sleep() advances time."""

    def __init__(self, start: float = 0.0):
        self.now = start

    def __call__(self) -> float:
        return self.now

    def sleep(self, seconds: float) -> None:
        self.now += seconds
