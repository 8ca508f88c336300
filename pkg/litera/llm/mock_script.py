import re
from pathlib import Path
from typing import List, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from litera.common.errors import ConfigurationError
from litera.llm.chat_request import ChatRequest

CALL_NUMBER_PLACEHOLDER = "{n}"
USER_PLACEHOLDER = "{user}"
MODEL_PLACEHOLDER = "{model}"


def substitute(template: str, request: ChatRequest, call_number: int) -> str:
    return (
        template.replace(CALL_NUMBER_PLACEHOLDER, str(call_number))
        .replace(MODEL_PLACEHOLDER, request.model)
        .replace(USER_PLACEHOLDER, request.user)
    )


class MockRule(BaseModel):
    """
    One scripted behavior of the mock provider. A rule applies to a request when every matcher
    that is set matches. The content may contain {n} (the 1-based number of the call), {user}
    and {model}, which are substituted literally.
    """

    model_config = ConfigDict(extra="forbid")

    model: Optional[str] = None
    system_prefix: Optional[str] = None
    user_contains: Optional[str] = None
    content: str = ""
    echo: bool = False
    strip_pattern: Optional[str] = None
    fail_transient_n_times: int = Field(default=0, ge=0)
    fail_permanently: bool = False
    latency: Tuple[float, float] = (0.0, 0.0)

    def matches(self, request: ChatRequest) -> bool:
        if self.model is not None and request.model != self.model:
            return False
        if self.system_prefix is not None and not request.system.startswith(self.system_prefix):
            return False
        if self.user_contains is not None and self.user_contains not in request.user:
            return False
        return True

    def render(self, request: ChatRequest, call_number: int) -> str:
        """
        Produces the canned content for a request.

        :param request: the matched request
        :param call_number: the 1-based number of this call across the whole mock
        """
        if self.echo:
            text = request.user
            if self.strip_pattern:
                text = re.sub(self.strip_pattern, "", text, flags=re.DOTALL).rstrip()
            return text

        return substitute(self.content, request, call_number)


class MockScript(BaseModel):
    """
    An ordered list of rules; the first matching rule answers, otherwise the default content does.
    The default takes the same placeholders as rule content.
    """

    model_config = ConfigDict(extra="forbid")

    rules: List[MockRule] = Field(default_factory=list)
    default: str = "OK"
    seed: int = 0

    def find_rule(self, request: ChatRequest) -> Optional[MockRule]:
        for rule in self.rules:
            if rule.matches(request):
                return rule
        return None

    def render_default(self, request: ChatRequest, call_number: int) -> str:
        return substitute(self.default, request, call_number)

    @classmethod
    def from_file(cls, path: Path | str) -> "MockScript":
        """
        Loads a mock script from a YAML (or JSON) file.

        :raises ConfigurationError: if the file is missing or does not describe a mock script
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            return cls.model_validate(data)
        except OSError as error:
            raise ConfigurationError(f"Cannot read mock script {path}: {error}") from None
        except (yaml.YAMLError, ValidationError) as error:
            raise ConfigurationError(f"Invalid mock script {path}: {error}") from None
