"""Scripted chat backend for tests and fully mocked pipeline runs.

Rules live in memory or in a directory of JSON files (the CLI's
``--mock-llm <dir>``). Each rule matches on substrings of the system
and user text and yields either plain text or tool calls:

    {"name": "r0-screen",
     "when": {"system_contains": "expert epidemiologist",
              "user_contains": ["Lassa fever dynamics"]},
     "text": "...\\n<decision>INCLUDE</decision>"}

    {"when": {"user_contains": "reproduction number"},
     "tool_calls": [{"name": "extract_parameter_values",
                     "arguments": {"value": 1.3}}]}

Within one tool conversation the scripted calls are emitted once; on
the next round the backend stops (returns no tool calls) unless a rule
with ``when_tool_error_contains`` matches the latest validation
feedback, which scripts the correction behaviour. Token usage is
fabricated deterministically from text lengths.
"""

from __future__ import annotations

import json
from pathlib import Path


class ScriptError(Exception):
    pass


def _as_list(value) -> list[str]:
    if value is None:
        return []
    return [value] if isinstance(value, str) else list(value)


class ScriptedBackend:
    def __init__(self, rules: list[dict]):
        self.rules = rules
        self.calls: list[dict] = []

    @classmethod
    def from_dir(cls, directory: str | Path) -> "ScriptedBackend":
        rules: list[dict] = []
        for path in sorted(Path(directory).glob("*.json")):
            with open(path, encoding="utf-8") as f:
                loaded = json.load(f)
            rules.extend(loaded if isinstance(loaded, list) else [loaded])
        if not rules:
            raise ScriptError(f"no rule files found in {directory}")
        return cls(rules)

    # ------------------------------------------------------------------

    @staticmethod
    def _texts(messages: list[dict]) -> tuple[str, str]:
        system = "\n".join(m.get("content") or "" for m in messages
                           if m["role"] == "system")
        user = "\n".join(m.get("content") or "" for m in messages
                         if m["role"] == "user")
        return system, user

    def _match(self, rule: dict, system: str, user: str) -> bool:
        when = rule.get("when", {})
        return (all(n in system for n in _as_list(when.get("system_contains")))
                and all(n in user for n in _as_list(when.get("user_contains"))))

    def _respond(self, rule: dict, prompt_chars: int) -> dict:
        message: dict = {"role": "assistant", "content": rule.get("text", "")}
        finish = "stop"
        out_chars = len(rule.get("text") or "")
        if rule.get("tool_calls"):
            message["content"] = rule.get("text")
            message["tool_calls"] = []
            for i, call in enumerate(rule["tool_calls"]):
                arguments = call.get("arguments", {})
                message["tool_calls"].append({
                    "id": f"call_{i}",
                    "type": "function",
                    "function": {"name": call["name"],
                                 "arguments": json.dumps(arguments)},
                })
                out_chars += len(json.dumps(arguments))
            finish = "tool_calls"
        if rule.get("refusal"):
            message["refusal"] = rule["refusal"]
        return {
            "choices": [{"message": message, "finish_reason": finish}],
            "usage": {"prompt_tokens": max(prompt_chars // 4, 1),
                      "completion_tokens": max(out_chars // 4, 1)},
        }

    def chat(self, payload: dict) -> dict:
        messages = payload["messages"]
        self.calls.append(payload)
        system, user = self._texts(messages)
        prompt_chars = sum(len(m.get("content") or "") for m in messages)

        in_tool_conversation = any(m["role"] == "assistant" and m.get("tool_calls")
                                   for m in messages)
        if in_tool_conversation:
            last_assistant = max(i for i, m in enumerate(messages)
                                 if m["role"] == "assistant")
            tool_feedback = "\n".join(m.get("content") or ""
                                      for m in messages[last_assistant + 1:]
                                      if m["role"] == "tool")
            for rule in self.rules:
                needles = _as_list(rule.get("when_tool_error_contains"))
                if needles and all(n in tool_feedback for n in needles) \
                        and self._match(rule, system, user):
                    return self._respond(rule, prompt_chars)
            # scripted calls already emitted; stop the loop
            return {"choices": [{"message": {"role": "assistant",
                                             "content": "done"},
                                 "finish_reason": "stop"}],
                    "usage": {"prompt_tokens": max(prompt_chars // 4, 1),
                              "completion_tokens": 1}}

        for rule in self.rules:
            if rule.get("when_tool_error_contains"):
                continue
            if self._match(rule, system, user):
                return self._respond(rule, prompt_chars)
        raise ScriptError(
            "no scripted rule matches this prompt; system starts: "
            f"{system[:120]!r}; user starts: {user[:120]!r}")
