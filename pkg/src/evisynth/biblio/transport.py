"""Minimal HTTP transport abstraction.

All network-facing code takes a transport object exposing
``request(method, url, ...) -> response`` where the response has
``status``, ``headers``, ``content``, ``json()``, and
``iter_content(chunk_size)``. Production uses RequestsTransport; tests
inject fakes to script the wire without sockets.
"""

from __future__ import annotations

import time
from typing import Callable, Iterable, Iterator


class TransportError(Exception):
    """Transport-level failure (connection refused, timeout, ...)."""


class FakeResponse:
    """In-memory response for fakes and adapters."""

    def __init__(self, status: int = 200, body: bytes | Iterable[bytes] = b"",
                 headers: dict | None = None):
        self.status = status
        self.headers = {k.lower(): v for k, v in (headers or {}).items()}
        self._body = body

    def iter_content(self, chunk_size: int = 65536) -> Iterator[bytes]:
        if isinstance(self._body, bytes):
            for i in range(0, len(self._body), chunk_size):
                yield self._body[i:i + chunk_size]
        else:
            yield from self._body

    @property
    def content(self) -> bytes:
        if not isinstance(self._body, bytes):
            self._body = b"".join(self._body)
        return self._body

    def json(self):
        import json

        return json.loads(self.content.decode("utf-8"))


class RequestsTransport:
    def __init__(self, timeout: float = 30.0, user_agent: str = "evisynth/0.1"):
        import requests

        self._session = requests.Session()
        self._session.headers["User-Agent"] = user_agent
        self._timeout = timeout
        self._requests = requests

    def request(self, method: str, url: str, params: dict | None = None,
                headers: dict | None = None, stream: bool = False):
        try:
            resp = self._session.request(method, url, params=params,
                                         headers=headers, stream=stream,
                                         timeout=self._timeout)
        except self._requests.RequestException as exc:
            raise TransportError(str(exc)) from exc
        return _RequestsResponse(resp)


class _RequestsResponse:
    def __init__(self, resp):
        self._resp = resp
        self.status = resp.status_code
        self.headers = {k.lower(): v for k, v in resp.headers.items()}

    def iter_content(self, chunk_size: int = 65536):
        return self._resp.iter_content(chunk_size=chunk_size)

    @property
    def content(self) -> bytes:
        return self._resp.content

    def json(self):
        return self._resp.json()


def request_with_retries(transport, method: str, url: str, *,
                         params: dict | None = None,
                         headers: dict | None = None,
                         stream: bool = False,
                         attempts: int = 3,
                         backoff: float = 0.5,
                         sleep: Callable[[float], None] = time.sleep):
    """Bounded retry on transport errors and retryable status codes.

    3 attempts with exponential backoff starting at 500 ms.
    """
    last_error: Exception | None = None
    for attempt in range(attempts):
        try:
            resp = transport.request(method, url, params=params,
                                     headers=headers, stream=stream)
        except TransportError as exc:
            last_error = exc
        else:
            if resp.status in (429, 500, 502, 503, 504) and attempt < attempts - 1:
                last_error = TransportError(f"HTTP {resp.status}")
            else:
                return resp
        if attempt < attempts - 1:
            sleep(backoff * (2 ** attempt))
    raise TransportError(f"request failed after {attempts} attempts: {last_error}")
