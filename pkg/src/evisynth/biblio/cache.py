"""On-disk key-value cache keyed by normalised identifiers.

Retrieval runs span hours and must survive restarts, so lookups
(resolved PDF URLs, identifier conversions) are cached to a directory
of JSON files. Negative results are stored too, as explicit markers,
to eliminate redundant API calls. Safe for concurrent access: writes
go through a temp file + atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from pathlib import Path

_MISS = object()
NEGATIVE = {"__negative__": True}


class DiskCache:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._mem: dict[str, object] = {}

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()[:32]
        return self.root / f"{digest}.json"

    def get(self, key: str, default=None):
        with self._lock:
            if key in self._mem:
                value = self._mem[key]
                return default if value is _MISS else value
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as f:
                value = json.load(f)["value"]
        except (OSError, ValueError, KeyError):
            with self._lock:
                self._mem[key] = _MISS
            return default
        with self._lock:
            self._mem[key] = value
        return value

    def __contains__(self, key: str) -> bool:
        sentinel = object()
        return self.get(key, sentinel) is not sentinel

    def set(self, key: str, value) -> None:
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump({"key": key, "value": value}, f, ensure_ascii=False)
        os.replace(tmp, path)
        with self._lock:
            self._mem[key] = value

    def set_negative(self, key: str) -> None:
        self.set(key, NEGATIVE)

    @staticmethod
    def is_negative(value) -> bool:
        return isinstance(value, dict) and value.get("__negative__") is True
