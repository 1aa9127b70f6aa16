"""Gateway to OpenAI-compatible chat endpoints.

Provides plain completions, the schema-validated tool-calling loop with
correction feedback, and per-call token accounting. The backend is any
object with ``chat(payload) -> response dict`` in the Chat Completions
wire shape, so tests and mock pipelines swap in scripted backends.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from ..extraction.schema import FieldSchema, tool_parameters_schema

MAX_OUTPUT_TOKENS = 65536


class GatewayError(Exception):
    pass


class TransportFailure(GatewayError):
    pass


class RefusalError(GatewayError):
    """The provider refused to generate (content filter / refusal stream)."""


class TokenLimitExceeded(GatewayError):
    pass


class RoundsExhausted(GatewayError):
    def __init__(self, message: str, validated: list[dict]):
        super().__init__(message)
        self.validated = validated


@dataclass
class ToolDefinition:
    name: str
    parameter_schema: Sequence[FieldSchema]
    description: str = ""

    def to_wire(self) -> dict:
        return {
            "type": "function",
            "function": {
                "name": self.name,
                "description": self.description,
                "parameters": tool_parameters_schema(self.parameter_schema),
            },
        }


@dataclass
class ChatRequest:
    model_name: str
    system_text: str
    user_text: str
    tools: list[ToolDefinition] | None = None
    reasoning_effort: str = "high"
    max_output_tokens: int = MAX_OUTPUT_TOKENS

    def __post_init__(self):
        if self.reasoning_effort not in ("low", "medium", "high"):
            raise ValueError(f"reasoning_effort {self.reasoning_effort!r}")


@dataclass
class UsageRecord:
    input_tokens: int
    output_tokens: int
    stage_label: str = ""
    article_id: str = ""

    def __post_init__(self):
        if self.input_tokens < 0 or self.output_tokens < 0:
            raise ValueError("token counts must be non-negative")


class UsageLedger:
    """Append-only JSONL usage log; appends are atomic under a lock."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path else None
        self._lock = threading.Lock()
        self.records: list[UsageRecord] = []

    def add(self, record: UsageRecord) -> None:
        with self._lock:
            self.records.append(record)
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as f:
                    f.write(json.dumps({
                        "input_tokens": record.input_tokens,
                        "output_tokens": record.output_tokens,
                        "stage_label": record.stage_label,
                        "article_id": record.article_id,
                    }) + "\n")


class HttpBackend:
    """Chat Completions over HTTPS; endpoint/key from config or env."""

    def __init__(self, base_url: str, api_key: str | None = None,
                 timeout: float = 180.0, max_in_flight: int = 16):
        import requests

        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self._session = requests.Session()
        self._timeout = timeout
        self._semaphore = threading.Semaphore(max_in_flight)
        self._requests = requests

    def chat(self, payload: dict) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        with self._semaphore:
            try:
                resp = self._session.post(f"{self.base_url}/chat/completions",
                                          json=payload, headers=headers,
                                          timeout=self._timeout)
            except self._requests.RequestException as exc:
                raise TransportFailure(str(exc)) from exc
        if resp.status_code in (401, 403) or resp.status_code == 400 and \
                "content_filter" in resp.text:
            raise RefusalError(f"HTTP {resp.status_code}: {resp.text[:300]}")
        if resp.status_code >= 400:
            raise TransportFailure(f"HTTP {resp.status_code}: {resp.text[:300]}")
        return resp.json()


class Gateway:
    def __init__(self, backend, *, ledger: UsageLedger | None = None,
                 retry_attempts: int = 3, backoff: float = 0.5,
                 sleep: Callable[[float], None] = time.sleep):
        self.backend = backend
        self.ledger = ledger or UsageLedger()
        self.retry_attempts = retry_attempts
        self.backoff = backoff
        self._sleep = sleep

    # ------------------------------------------------------------ plumbing

    def _chat(self, payload: dict) -> dict:
        last: Exception | None = None
        for attempt in range(self.retry_attempts):
            try:
                return self.backend.chat(payload)
            except TransportFailure as exc:
                last = exc
                if attempt < self.retry_attempts - 1:
                    self._sleep(self.backoff * (2 ** attempt))
        raise TransportFailure(f"backend failed after {self.retry_attempts} "
                               f"attempts: {last}")

    def _build_payload(self, request: ChatRequest, messages: list[dict]) -> dict:
        payload = {
            "model": request.model_name,
            "messages": messages,
            "max_tokens": request.max_output_tokens,
            "reasoning_effort": request.reasoning_effort,
        }
        if request.tools:
            payload["tools"] = [t.to_wire() for t in request.tools]
        return payload

    def _usage(self, response: dict, request: ChatRequest, stage_label: str,
               article_id: str) -> UsageRecord:
        usage = response.get("usage") or {}
        record = UsageRecord(
            input_tokens=int(usage.get("prompt_tokens", 0)),
            output_tokens=int(usage.get("completion_tokens", 0)),
            stage_label=stage_label, article_id=article_id)
        self.ledger.add(record)
        return record

    @staticmethod
    def _message(response: dict) -> dict:
        try:
            return response["choices"][0]["message"]
        except (KeyError, IndexError) as exc:
            raise TransportFailure(f"malformed response: {exc}") from exc

    @staticmethod
    def _check_refusal(response: dict, message: dict, had_tools: bool) -> None:
        choice = response["choices"][0]
        if message.get("refusal"):
            raise RefusalError(str(message["refusal"]))
        if choice.get("finish_reason") == "content_filter":
            raise RefusalError("provider returned finish_reason=content_filter")
        # refusal streams deliver null content with a stop reason; a
        # generated-but-blank string is the caller's problem, not a refusal
        if not had_tools and message.get("content") is None \
                and not message.get("tool_calls") \
                and choice.get("finish_reason") == "stop":
            raise RefusalError("empty completion with stop finish reason")

    # ------------------------------------------------------------ operations

    def complete(self, request: ChatRequest, *, stage_label: str = "",
                 article_id: str = "") -> tuple[str, UsageRecord]:
        """One-shot completion returning the full assistant text."""
        if request.max_output_tokens > MAX_OUTPUT_TOKENS:
            raise TokenLimitExceeded(
                f"max_output_tokens {request.max_output_tokens} exceeds the "
                f"{MAX_OUTPUT_TOKENS} generation limit")
        messages = [{"role": "system", "content": request.system_text},
                    {"role": "user", "content": request.user_text}]
        response = self._chat(self._build_payload(request, messages))
        message = self._message(response)
        self._check_refusal(response, message, had_tools=False)
        usage = self._usage(response, request, stage_label, article_id)
        return message.get("content") or "", usage

    def call_with_tools(self, request: ChatRequest,
                        validator: Callable[[dict], list[str]],
                        max_rounds: int = 3, *, stage_label: str = "",
                        article_id: str = "") -> list[dict]:
        """Conversational tool loop with validation feedback.

        Each returned payload passed ``validator``; invalid payloads are
        fed back as tool responses asking for correction, up to
        ``max_rounds`` model calls. The loop ends when the model stops
        calling tools. Raises RoundsExhausted when the cap is hit while
        some payload still failed validation.
        """
        if not request.tools:
            raise ValueError("call_with_tools requires request.tools")
        if request.max_output_tokens > MAX_OUTPUT_TOKENS:
            raise TokenLimitExceeded(
                f"max_output_tokens {request.max_output_tokens} exceeds the "
                f"{MAX_OUTPUT_TOKENS} generation limit")

        messages = [{"role": "system", "content": request.system_text},
                    {"role": "user", "content": request.user_text}]
        validated: list[dict] = []
        pending_invalid = False

        for round_number in range(max_rounds):
            response = self._chat(self._build_payload(request, messages))
            message = self._message(response)
            self._check_refusal(response, message, had_tools=True)
            self._usage(response, request, stage_label, article_id)

            tool_calls = message.get("tool_calls") or []
            if not tool_calls:
                return validated

            messages.append({"role": "assistant",
                             "content": message.get("content"),
                             "tool_calls": tool_calls})
            pending_invalid = False
            for call in tool_calls:
                call_id = call.get("id", "call_0")
                raw = call.get("function", {}).get("arguments", "")
                try:
                    payload = json.loads(raw) if isinstance(raw, str) else raw
                    errors = validator(payload)
                except (ValueError, TypeError) as exc:
                    payload = None
                    errors = [f"arguments are not valid JSON: {exc}"]
                if errors:
                    pending_invalid = True
                    feedback = ("Validation failed; please correct the tool "
                                "call and try again:\n- " + "\n- ".join(errors))
                else:
                    validated.append(payload)
                    feedback = "ok: recorded"
                messages.append({"role": "tool", "tool_call_id": call_id,
                                 "content": feedback})

        if pending_invalid:
            raise RoundsExhausted(
                f"{max_rounds} rounds consumed with unvalidated payloads "
                "outstanding", validated)
        return validated


def tally_usage(records: Sequence[UsageRecord],
                prices_per_million: tuple[float, float] | None = None) -> dict:
    """Group token usage by stage label and estimate cost.

    ``prices_per_million`` is the (input, output) USD price pair per
    million tokens; without it the cost fields are omitted but token
    totals are still reported.
    """
    stages: dict[str, dict] = {}
    for rec in records:
        row = stages.setdefault(rec.stage_label or "unlabelled",
                                {"input_tokens": 0, "output_tokens": 0,
                                 "calls": 0})
        row["input_tokens"] += rec.input_tokens
        row["output_tokens"] += rec.output_tokens
        row["calls"] += 1
    totals = {"input_tokens": sum(r["input_tokens"] for r in stages.values()),
              "output_tokens": sum(r["output_tokens"] for r in stages.values()),
              "calls": sum(r["calls"] for r in stages.values())}
    if prices_per_million is not None:
        p_in, p_out = prices_per_million
        for row in list(stages.values()) + [totals]:
            row["cost_usd"] = (row["input_tokens"] / 1e6 * p_in
                               + row["output_tokens"] / 1e6 * p_out)
    return {"stages": stages, "total": totals}
