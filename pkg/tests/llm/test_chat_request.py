from dataclasses import replace

import pytest

from litera.common.errors import InputError
from litera.llm.chat_request import ChatRequest, cache_key
from litera.llm.chat_response import normalize_content


def request(**overrides) -> ChatRequest:
    return replace(ChatRequest("proposer-fine-tuned", "You translate.", "Gallia est"), **overrides)


def test_sampling_defaults():
    r = request()
    assert (r.temperature, r.top_p, r.frequency_penalty, r.presence_penalty) == (0.7, 1.0, 0.0, 0.0)


def test_payload_has_chat_completions_shape():
    assert request().to_payload() == {
        "model": "proposer-fine-tuned",
        "messages": [
            {"role": "system", "content": "You translate."},
            {"role": "user", "content": "Gallia est"},
        ],
        "temperature": 0.7,
        "top_p": 1.0,
        "frequency_penalty": 0.0,
        "presence_penalty": 0.0,
    }


@pytest.mark.parametrize(
    "overrides",
    [{"system": ""}, {"user": ""}, {"model": ""}, {"temperature": 2.5}, {"temperature": -0.1}, {"top_p": 0.0}],
)
def test_invalid_requests(overrides):
    with pytest.raises(InputError):
        request(**overrides)


def test_cache_key_is_stable():
    assert cache_key(request()) == cache_key(request())


@pytest.mark.parametrize(
    "overrides",
    [
        {"temperature": 0.0},
        {"user": "Gallia esT"},
        {"system": "You translate!"},
        {"model": "aggregator"},
        {"top_p": 0.9},
        {"frequency_penalty": 0.1},
        {"presence_penalty": 0.1},
    ],
)
def test_cache_key_changes_with_every_field(overrides):
    assert cache_key(request(**overrides)) != cache_key(request())


def test_only_trailing_newlines_are_normalized():
    assert normalize_content("  Gaul is divided.  \n\r\n") == "  Gaul is divided.  "
    assert normalize_content("a\nb") == "a\nb"
