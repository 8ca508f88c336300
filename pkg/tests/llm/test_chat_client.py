import random
from datetime import timedelta

import pytest

from litera.common.errors import PermanentProviderError, RetryExhaustedError, TransientProviderError
from litera.llm.backends import MockBackend
from litera.llm.chat_client import ChatClient
from litera.llm.chat_request import ChatRequest
from litera.llm.mock_script import MockRule, MockScript
from litera.llm.provider_config import ProviderConfig
from litera.llm.response_cache import ResponseCache
from tests.conftest import make_client


def ask(user: str = "Gallia est") -> ChatRequest:
    return ChatRequest("aggregator", "You translate.", user)


def test_scripted_answer():
    response = make_client(MockScript(default="OK")).complete(ask())
    assert response.content == "OK"
    assert response.attempt_count == 1
    assert response.model == "aggregator"
    assert not response.cached


def test_transient_failures_are_retried():
    sleeps = []
    script = MockScript(rules=[MockRule(content="OK", fail_transient_n_times=2)])
    client = ChatClient(MockBackend(script), ProviderConfig(max_retries=3), sleep=sleeps.append)

    response = client.complete(ask())

    assert response.content == "OK"
    assert response.attempt_count == 3
    assert len(sleeps) == 2
    assert all(0 <= seconds <= 30 for seconds in sleeps)


def test_retries_are_exhausted_after_max_retries_plus_one_attempts():
    client = make_client(MockScript(rules=[MockRule(content="OK", fail_transient_n_times=5)]), max_retries=3)

    with pytest.raises(RetryExhaustedError) as raised:
        client.complete(ask())

    assert raised.value.attempts == 4
    assert isinstance(raised.value.last_error, TransientProviderError)
    assert client.backend.call_count == 4


def test_no_retries_when_max_retries_is_zero():
    client = make_client(MockScript(rules=[MockRule(content="OK", fail_transient_n_times=1)]), max_retries=0)
    with pytest.raises(RetryExhaustedError):
        client.complete(ask())
    assert client.backend.call_count == 1


def test_permanent_failures_are_not_retried():
    client = make_client(MockScript(rules=[MockRule(fail_permanently=True)]))
    with pytest.raises(PermanentProviderError):
        client.complete(ask())
    assert client.backend.call_count == 1


def test_trailing_newlines_are_normalized():
    assert make_client(MockScript(default="Gaul is divided.\n\n")).complete(ask()).content == "Gaul is divided."


def test_complete_many_keeps_request_order():
    script = MockScript(rules=[MockRule(echo=True, latency=(0.0, 0.01))])
    client = make_client(script)
    requests = [ask(f"segment {i}") for i in range(5)]

    batch = client.complete_many(requests, max_in_flight=5)

    assert batch.ok
    assert [response.content for response in batch.responses] == [f"segment {i}" for i in range(5)]


def test_complete_many_order_under_random_latencies():
    rng = random.Random(11)
    for trial in range(20):
        script = MockScript(rules=[MockRule(echo=True, latency=(0.0, 0.004))], seed=rng.randint(0, 10_000))
        requests = [ask(f"trial {trial} request {i}") for i in range(8)]
        batch = make_client(script).complete_many(requests, max_in_flight=8)
        assert [response.content for response in batch.responses] == [request.user for request in requests]


def test_complete_many_bounds_concurrency():
    client = make_client(MockScript(rules=[MockRule(echo=True, latency=(0.01, 0.02))]))
    batch = client.complete_many([ask(f"r{i}") for i in range(5)], max_in_flight=2)

    assert batch.ok
    assert client.backend.max_in_flight <= 2


def test_complete_many_reports_failures_by_index():
    script = MockScript(
        rules=[MockRule(user_contains="request 3", fail_permanently=True), MockRule(echo=True)]
    )
    batch = make_client(script).complete_many([ask(f"request {i}") for i in range(1, 6)], max_in_flight=3)

    assert list(batch.errors) == [2]
    assert isinstance(batch.errors[2], PermanentProviderError)
    assert batch.responses[2] is None
    assert [response.content for response in batch.successes()] == ["request 1", "request 2", "request 4", "request 5"]


def test_complete_many_needs_a_positive_limit():
    with pytest.raises(ValueError):
        make_client(MockScript()).complete_many([ask()], max_in_flight=0)


def test_cache_bypasses_the_backend():
    client = make_client(MockScript(default="answer {n}"), cache_enabled=True)

    first = client.complete(ask())
    second = client.complete(ask())
    third = client.complete(ask("Roma"))

    assert first.content == second.content == "answer 1"
    assert second.cached and second.latency == timedelta(0)
    assert third.content == "answer 2"
    assert client.backend.call_count == 2


def test_cache_persists_to_a_directory(tmp_path):
    first = ChatClient(MockBackend(MockScript(default="first")), cache=ResponseCache(tmp_path))
    first.complete(ask())

    second = ChatClient(MockBackend(MockScript(default="second")), cache=ResponseCache(tmp_path))
    response = second.complete(ask())

    assert response.content == "first"
    assert response.cached
    assert second.backend.call_count == 0
