"""Uniform client for OpenAI-compatible chat/tool-calling endpoints."""

from .gateway import (
    ChatRequest,
    Gateway,
    GatewayError,
    RefusalError,
    RoundsExhausted,
    TokenLimitExceeded,
    ToolDefinition,
    TransportFailure,
    UsageLedger,
    UsageRecord,
    tally_usage,
)
from .mock import ScriptedBackend, ScriptError

__all__ = [
    "ChatRequest",
    "Gateway",
    "GatewayError",
    "RefusalError",
    "RoundsExhausted",
    "TokenLimitExceeded",
    "ToolDefinition",
    "TransportFailure",
    "UsageLedger",
    "UsageRecord",
    "tally_usage",
    "ScriptedBackend",
    "ScriptError",
]
