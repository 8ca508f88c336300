import logging
import time
from dataclasses import dataclass, field
from datetime import timedelta
from typing import Callable, Dict, List, Optional, Sequence

from tenacity import (
    RetryCallState,
    RetryError,
    Retrying,
    retry_if_exception_type,
    stop_after_attempt,
    wait_random_exponential,
)

from litera.common.errors import RetryExhaustedError, TransientProviderError
from litera.llm.backends import ChatBackend
from litera.llm.bounded import run_bounded
from litera.llm.chat_request import ChatRequest, cache_key
from litera.llm.chat_response import ChatResponse, normalize_content
from litera.llm.provider_config import ProviderConfig
from litera.llm.response_cache import ResponseCache

logger = logging.getLogger(__name__)


@dataclass
class CompletionBatch:
    """
    The outcome of complete_many: a response or an error for every request index.
    """

    responses: List[Optional[ChatResponse]]
    errors: Dict[int, Exception] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors

    def successes(self) -> List[ChatResponse]:
        return [response for response in self.responses if response is not None]


class ChatClient:
    """
    Sends chat requests through a backend with retries, exponential backoff with full jitter and an
    optional response cache. Safe to share between threads.
    """

    def __init__(
        self,
        backend: ChatBackend,
        config: Optional[ProviderConfig] = None,
        cache: Optional[ResponseCache] = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        """
        :param backend: the transport
        :param config: retry and cache settings
        :param cache: the response cache; one is created when the config enables caching
        :param sleep: how to wait between attempts
        """
        self.backend = backend
        self.config = config or ProviderConfig()
        if cache is None and self.config.cache_enabled:
            cache = ResponseCache()
        self.cache = cache
        self.__sleep = sleep

    def __retrying(self) -> Retrying:
        return Retrying(
            stop=stop_after_attempt(self.config.max_retries + 1),
            wait=wait_random_exponential(
                multiplier=self.config.backoff_base.total_seconds(),
                max=self.config.backoff_max.total_seconds(),
            ),
            retry=retry_if_exception_type(TransientProviderError),
            sleep=self.__sleep,
            before_sleep=self.__log_retry,
        )

    @staticmethod
    def __log_retry(retry_state: RetryCallState) -> None:
        logger.warning(
            "Attempt %d failed: %s",
            retry_state.attempt_number,
            retry_state.outcome.exception() if retry_state.outcome else "unknown",
        )

    def complete(self, request: ChatRequest) -> ChatResponse:
        """
        Sends one request, retrying transient failures up to max_retries times.

        :param request: the request
        :return: the provider's answer
        :raises RetryExhaustedError: if every attempt failed transiently
        :raises PermanentProviderError: on the first non-retryable failure
        """
        key = cache_key(request) if self.cache is not None else None
        if key is not None:
            cached = self.cache.get(key)
            if cached is not None:
                return ChatResponse(cached.content, cached.model, timedelta(0), 1, cached=True)

        started = time.monotonic()
        attempts = 0
        try:
            for attempt in self.__retrying():
                with attempt:
                    attempts = attempt.retry_state.attempt_number
                    content, model = self.backend.send(request)
        except RetryError as error:
            last_error = error.last_attempt.exception()
            logger.error("Giving up on model %s after %d attempts: %s", request.model, attempts, last_error)
            raise RetryExhaustedError(attempts, last_error) from last_error

        content = normalize_content(content)
        if key is not None:
            self.cache.put(key, content, model)

        return ChatResponse(
            content, model, timedelta(seconds=time.monotonic() - started), attempts
        )

    def complete_many(self, requests: Sequence[ChatRequest], max_in_flight: int) -> CompletionBatch:
        """
        Sends requests concurrently with at most max_in_flight outstanding.

        :param requests: the requests
        :param max_in_flight: the concurrency limit, at least 1
        :return: responses in request order; failures are reported by index and do not stop the others
        """
        results = run_bounded([lambda request=request: self.complete(request) for request in requests], max_in_flight)

        batch = CompletionBatch([None] * len(results))
        for index, result in enumerate(results):
            if isinstance(result, Exception):
                batch.errors[index] = result
            else:
                batch.responses[index] = result
        return batch

    def close(self) -> None:
        self.backend.close()
