import hashlib
import json
from dataclasses import dataclass

from litera.common.errors import InputError

DEFAULT_TEMPERATURE = 0.7
DEFAULT_TOP_P = 1.0
DEFAULT_FREQUENCY_PENALTY = 0.0
DEFAULT_PRESENCE_PENALTY = 0.0


@dataclass(frozen=True)
class ChatRequest:
    """
    A chat request is one system + user exchange sent to a single model with its sampling parameters.

    :param model: the model id of the stage sending the request
    :param system: the system prompt
    :param user: the user message
    :param temperature: sampling temperature in [0, 2]
    :param top_p: nucleus sampling mass in (0, 1]
    :param frequency_penalty: the frequency penalty
    :param presence_penalty: the presence penalty
    """

    model: str
    system: str
    user: str
    temperature: float = DEFAULT_TEMPERATURE
    top_p: float = DEFAULT_TOP_P
    frequency_penalty: float = DEFAULT_FREQUENCY_PENALTY
    presence_penalty: float = DEFAULT_PRESENCE_PENALTY

    def __post_init__(self):
        if not self.model:
            raise InputError("model must be a non-empty string")
        if not self.system:
            raise InputError("system prompt must be a non-empty string")
        if not self.user:
            raise InputError("user message must be a non-empty string")
        if not 0.0 <= self.temperature <= 2.0:
            raise InputError(f"temperature must be within [0, 2], got {self.temperature}")
        if not 0.0 < self.top_p <= 1.0:
            raise InputError(f"top_p must be within (0, 1], got {self.top_p}")

    def to_payload(self) -> dict:
        """
        Returns the chat-completions JSON body for this request.
        """
        return {
            "model": self.model,
            "messages": [
                {"role": "system", "content": self.system},
                {"role": "user", "content": self.user},
            ],
            "temperature": self.temperature,
            "top_p": self.top_p,
            "frequency_penalty": self.frequency_penalty,
            "presence_penalty": self.presence_penalty,
        }


def cache_key(request: ChatRequest) -> str:
    """
    Returns a stable content hash of every field that influences a completion.

    :param request: the request to hash
    :return: a hex sha256 digest
    """
    fields = [
        request.model,
        request.system,
        request.user,
        repr(float(request.temperature)),
        repr(float(request.top_p)),
        repr(float(request.frequency_penalty)),
        repr(float(request.presence_penalty)),
    ]
    encoded = json.dumps(fields, ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(encoded.encode("utf-8")).hexdigest()
