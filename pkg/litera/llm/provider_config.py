from datetime import timedelta
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from litera.common.litera_enum import LiteraEnum

DEFAULT_API_KEY_ENV = "LITERA_API_KEY"


class ProviderKind(LiteraEnum):
    """
    The backends a chat client can talk to.
    """

    HTTP = "http"
    MOCK = "mock"


class ProviderConfig(BaseModel):
    """
    How to reach a chat-completions provider and how hard to try.
    Durations accept seconds as numbers.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ProviderKind = ProviderKind.HTTP
    base_url: str = "http://localhost:8000/v1"
    api_key_env: str = DEFAULT_API_KEY_ENV
    timeout: timedelta = timedelta(seconds=60)
    max_retries: int = Field(default=3, ge=0)
    backoff_base: timedelta = timedelta(milliseconds=500)
    backoff_max: timedelta = timedelta(seconds=30)
    cache_enabled: bool = False
    mock_script: Optional[Path] = None

    @field_validator("timeout")
    @classmethod
    def timeout_must_be_positive(cls, timeout: timedelta) -> timedelta:
        if timeout <= timedelta(0):
            raise ValueError("timeout must be positive")
        return timeout

    @field_validator("backoff_base", "backoff_max")
    @classmethod
    def backoff_must_not_be_negative(cls, value: timedelta) -> timedelta:
        if value < timedelta(0):
            raise ValueError("backoff durations cannot be negative")
        return value
