import logging
import os
import random
import threading
import time
from typing import List, Mapping, Optional, Protocol, Tuple

import httpx

from litera.common.errors import ConfigurationError, PermanentProviderError, TransientProviderError
from litera.llm.chat_request import ChatRequest
from litera.llm.mock_script import MockScript
from litera.llm.provider_config import ProviderConfig, ProviderKind

logger = logging.getLogger(__name__)

COMPLETIONS_PATH = "/chat/completions"
RATE_LIMITED = 429
REQUEST_TIMEOUT = 408


class ChatBackend(Protocol):
    """
    A transport that sends one chat request once and returns the assistant content and the reported
    model id. Backends classify their failures as transient or permanent; retrying is not their job.
    """

    def send(self, request: ChatRequest) -> Tuple[str, str]: ...

    def close(self) -> None: ...


def _is_transient_status(status_code: int) -> bool:
    return status_code in (RATE_LIMITED, REQUEST_TIMEOUT) or status_code >= 500


class HttpBackend:
    """
    A backend for any chat-completions compatible endpoint.
    """

    def __init__(
        self,
        config: ProviderConfig,
        transport: Optional[httpx.BaseTransport] = None,
        environ: Optional[Mapping[str, str]] = None,
    ):
        """
        :param config: the provider configuration
        :param transport: an optional httpx transport, used by tests
        :param environ: where to look up the API key, defaults to the process environment
        :raises ConfigurationError: if the API key variable is unset, before any request is made
        """
        environ = os.environ if environ is None else environ
        api_key = environ.get(config.api_key_env)
        if not api_key:
            raise ConfigurationError(
                f"Environment variable {config.api_key_env} holding the provider API key is not set"
            )

        self.config = config
        self.__client = httpx.Client(
            base_url=config.base_url,
            timeout=config.timeout.total_seconds(),
            transport=transport,
            headers={"Authorization": f"Bearer {api_key}"},
        )

    def send(self, request: ChatRequest) -> Tuple[str, str]:
        try:
            response = self.__client.post(COMPLETIONS_PATH, json=request.to_payload())
        except httpx.TimeoutException as error:
            raise TransientProviderError(f"Request to {self.config.base_url} timed out: {error}") from error
        except httpx.TransportError as error:
            raise TransientProviderError(f"Transport failure talking to {self.config.base_url}: {error}") from error

        if response.status_code >= 400:
            message = f"Provider answered {response.status_code}: {response.text[:200]}"
            if _is_transient_status(response.status_code):
                raise TransientProviderError(message)
            raise PermanentProviderError(message)

        try:
            data = response.json()
            content = data["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError):
            raise PermanentProviderError(f"Malformed chat-completions response: {response.text[:200]}") from None

        if not isinstance(content, str):
            raise PermanentProviderError("Chat-completions response carried no text content")

        return content, data.get("model") or request.model

    def close(self) -> None:
        self.__client.close()


class MockBackend:
    """
    A deterministic scripted backend. It records every request it receives, in arrival order, and the
    highest number of requests it ever saw in flight at once.
    """

    def __init__(self, script: Optional[MockScript] = None):
        self.script = script or MockScript()
        self.__lock = threading.Lock()
        self.__random = random.Random(self.script.seed)
        self.__failures: dict = {}
        self.__requests: List[ChatRequest] = []
        self.__in_flight = 0
        self.max_in_flight = 0

    @property
    def requests(self) -> List[ChatRequest]:
        with self.__lock:
            return list(self.__requests)

    @property
    def call_count(self) -> int:
        with self.__lock:
            return len(self.__requests)

    def send(self, request: ChatRequest) -> Tuple[str, str]:
        rule = self.script.find_rule(request)

        with self.__lock:
            self.__requests.append(request)
            call_number = len(self.__requests)
            self.__in_flight += 1
            self.max_in_flight = max(self.max_in_flight, self.__in_flight)

            delay = 0.0
            fail_transient = False
            if rule is not None:
                low, high = rule.latency
                delay = self.__random.uniform(low, high) if high > 0 else 0.0
                failed = self.__failures.get(id(rule), 0)
                if failed < rule.fail_transient_n_times:
                    self.__failures[id(rule)] = failed + 1
                    fail_transient = True

        try:
            if delay:
                time.sleep(delay)
            if rule is None:
                return self.script.render_default(request, call_number), request.model
            if rule.fail_permanently:
                raise PermanentProviderError(f"Scripted permanent failure for model {request.model}")
            if fail_transient:
                raise TransientProviderError(f"Scripted transient failure for model {request.model}")
            return rule.render(request, call_number), request.model
        finally:
            with self.__lock:
                self.__in_flight -= 1

    def close(self) -> None:
        pass


def create_backend(config: ProviderConfig, environ: Optional[Mapping[str, str]] = None) -> ChatBackend:
    """
    Builds the backend a provider configuration names.

    :raises ConfigurationError: if a mock backend has no script or the http backend has no key
    """
    if config.kind == ProviderKind.MOCK:
        script = MockScript.from_file(config.mock_script) if config.mock_script else MockScript()
        logger.info("Using the mock provider%s", f" scripted by {config.mock_script}" if config.mock_script else "")
        return MockBackend(script)
    return HttpBackend(config, environ=environ)
