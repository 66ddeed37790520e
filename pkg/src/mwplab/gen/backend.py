"""Completion backends.

The wire protocol is a plain JSON POST: {"prompt", "temperature",
"max_tokens", "stop", "model"} in, and either {"text": "..."} or an
OpenAI-style {"choices": [{"text": "..."}]} out. Transient transport
failures retry with capped exponential backoff; authentication failures and
refusals surface immediately.

A file-backed stub (``stub:`` URLs) replays canned completions by request
index, which keeps the whole pipeline runnable offline and byte-for-byte
reproducible.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import requests

DEFAULT_STOP_MARKERS = ["\nQuestion:"]

API_KEY_ENV = "MWPLAB_API_KEY"

RETRY_ATTEMPTS = 3
BACKOFF_BASE_SECONDS = 0.5
BACKOFF_CAP_SECONDS = 4.0


class BackendError(RuntimeError):
    pass


class AuthenticationError(BackendError):
    pass


class BackendRefusalError(BackendError):
    pass


class TransportError(BackendError):
    pass


@dataclass(frozen=True)
class SamplingConfig:
    temperature: float = 1.0
    sampling_enabled: bool = True
    max_tokens: int = 512
    stop_markers: list[str] = field(default_factory=lambda: list(DEFAULT_STOP_MARKERS))

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")


class CompletionBackend(Protocol):
    def complete(self, prompt: str, cfg: SamplingConfig, index: int) -> str:
        """Return the completion text for one request."""


@dataclass
class HttpCompletionBackend:
    endpoint_url: str
    model_id: str = ""
    api_key: str | None = None
    timeout_seconds: float = 120.0
    _sleep: object = time.sleep  # injectable for tests

    def complete(self, prompt: str, cfg: SamplingConfig, index: int) -> str:
        payload = {
            "model": self.model_id,
            "prompt": prompt,
            "temperature": cfg.temperature if cfg.sampling_enabled else 0.0,
            "max_tokens": cfg.max_tokens,
            "stop": cfg.stop_markers,
        }
        headers = {"Content-Type": "application/json"}
        key = self.api_key or os.environ.get(API_KEY_ENV)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        last_error: Exception | None = None
        for attempt in range(RETRY_ATTEMPTS):
            try:
                response = requests.post(self.endpoint_url, json=payload,
                                         headers=headers,
                                         timeout=self.timeout_seconds)
            except requests.RequestException as err:
                last_error = err
            else:
                if response.status_code in (401, 403):
                    raise AuthenticationError(
                        f"backend rejected credentials ({response.status_code})")
                if 400 <= response.status_code < 500:
                    raise BackendRefusalError(
                        f"backend refused request ({response.status_code}): "
                        f"{response.text[:200]}")
                if response.status_code >= 500:
                    last_error = TransportError(
                        f"server error {response.status_code}")
                else:
                    return _extract_text(response.json())
            if attempt < RETRY_ATTEMPTS - 1:
                self._sleep(min(BACKOFF_BASE_SECONDS * 2**attempt,
                                BACKOFF_CAP_SECONDS))
        raise TransportError(f"giving up after {RETRY_ATTEMPTS} attempts: {last_error}")


def _extract_text(body: dict) -> str:
    if isinstance(body, dict):
        if isinstance(body.get("text"), str):
            return body["text"]
        choices = body.get("choices")
        if isinstance(choices, list) and choices:
            text = choices[0].get("text")
            if isinstance(text, str):
                return text
    raise BackendRefusalError(f"unrecognized completion response: {str(body)[:200]}")


@dataclass
class StubBackend:
    """Replays canned completions; request ``index`` picks the line."""

    completions: list[str]

    def complete(self, prompt: str, cfg: SamplingConfig, index: int) -> str:
        if not self.completions:
            raise BackendError("stub has no completions")
        return self.completions[index % len(self.completions)]

    @classmethod
    def from_file(cls, path: str | Path) -> "StubBackend":
        """Load a stub corpus: JSONL lines of {"text": ...}."""
        completions = []
        for line in Path(path).read_text("utf-8").splitlines():
            if line.strip():
                completions.append(json.loads(line)["text"])
        return cls(completions)


def make_backend(endpoint_url: str, model_id: str = "",
                 api_key: str | None = None) -> CompletionBackend:
    """Backend factory; ``stub:PATH`` URLs build a file-backed stub."""
    if endpoint_url.startswith("stub:"):
        return StubBackend.from_file(endpoint_url[len("stub:"):])
    return HttpCompletionBackend(endpoint_url=endpoint_url, model_id=model_id,
                                 api_key=api_key)
