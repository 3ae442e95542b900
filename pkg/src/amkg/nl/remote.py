"""Remote translation through a chat-completions-compatible HTTP endpoint.

The endpoint receives the prompt document as two messages (system with
schema + exemplars, user with the normalized question) at temperature 0 and
must reply with a single Cypher query or the refusal token. All transport
failures surface as typed errors; nothing is ever fabricated locally.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import requests

from .prompt import PromptDocument
from .rules import UNSUPPORTED

ENV_BASE_URL = "AMKG_LLM_BASE_URL"
ENV_API_KEY = "AMKG_LLM_API_KEY"
ENV_MODEL = "AMKG_LLM_MODEL"

DEFAULT_TIMEOUT_S = 30.0

_REFUSALS = {"unsupported", "unsupported query", "unsupported query."}


class TranslatorError(Exception):
    """Base class for remote-translation failures."""


class TranslatorTimeout(TranslatorError):
    """The endpoint did not reply within the timeout."""


class TransportError(TranslatorError):
    """Connection failure or non-success HTTP status."""


class MalformedReply(TranslatorError):
    """Reply was empty or did not carry choices[0].message.content."""


@dataclass(frozen=True)
class RemoteConfig:
    base_url: str
    api_key: str | None = None
    model: str = "default"
    timeout_s: float = DEFAULT_TIMEOUT_S

    @classmethod
    def from_env(cls) -> "RemoteConfig | None":
        base_url = os.environ.get(ENV_BASE_URL)
        if not base_url:
            return None
        return cls(
            base_url=base_url,
            api_key=os.environ.get(ENV_API_KEY),
            model=os.environ.get(ENV_MODEL, "default"),
        )


def _strip_code_fences(text: str) -> str:
    text = text.strip()
    if text.startswith("```"):
        first_newline = text.find("\n")
        if first_newline != -1:
            text = text[first_newline + 1 :]
        if text.rstrip().endswith("```"):
            text = text.rstrip()[:-3]
    return text.strip()


def translate_remote(prompt: PromptDocument, config: RemoteConfig) -> str:
    """The endpoint's reply, fence-stripped; refusals map to UNSUPPORTED.

    Raises TranslatorTimeout, TransportError, or MalformedReply.
    """
    url = config.base_url.rstrip("/") + "/v1/chat/completions"
    headers = {"Content-Type": "application/json"}
    if config.api_key:
        headers["Authorization"] = f"Bearer {config.api_key}"
    body = {
        "model": config.model,
        "messages": prompt.messages(),
        "temperature": 0,
    }
    try:
        response = requests.post(url, json=body, headers=headers, timeout=config.timeout_s)
    except requests.Timeout as exc:
        raise TranslatorTimeout(f"no reply within {config.timeout_s}s") from exc
    except requests.RequestException as exc:
        raise TransportError(str(exc)) from exc
    if response.status_code != 200:
        raise TransportError(f"endpoint returned HTTP {response.status_code}")
    try:
        content = response.json()["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise MalformedReply("reply is missing choices[0].message.content") from exc
    if not isinstance(content, str):
        raise MalformedReply("reply content is not text")
    text = _strip_code_fences(content)
    if not text:
        raise MalformedReply("reply content is empty")
    if text.lower() in _REFUSALS or text.upper() == UNSUPPORTED:
        return UNSUPPORTED
    return text
