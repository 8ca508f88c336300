from dataclasses import dataclass
from datetime import timedelta


@dataclass(frozen=True)
class ChatResponse:
    """
    The assistant message a provider returned for one chat request.

    :param content: the assistant message with trailing newlines removed
    :param model: the model id the provider reported
    :param latency: wall-clock time spent on the request, retries and backoff included
    :param attempt_count: how many attempts it took, at least 1
    :param cached: whether the response was served from the response cache
    """

    content: str
    model: str
    latency: timedelta
    attempt_count: int = 1
    cached: bool = False

    def __post_init__(self):
        if self.attempt_count < 1:
            raise ValueError(f"attempt_count must be at least 1, got {self.attempt_count}")

    def to_dict(self) -> dict:
        return {
            "content": self.content,
            "model": self.model,
            "latency": self.latency.total_seconds(),
            "attempt_count": self.attempt_count,
            "cached": self.cached,
        }


def normalize_content(content: str) -> str:
    """
    Removes trailing newlines from an assistant message and nothing else.
    """
    return content.rstrip("\r\n")
