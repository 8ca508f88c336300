from pathlib import Path

import pytest

from litera.corpus.corpus import Corpus
from litera.corpus.demo import load_demo_corpus
from litera.corpus.era import Era
from litera.corpus.parallel_segment import ParallelSegment
from litera.llm.backends import MockBackend
from litera.llm.chat_client import ChatClient
from litera.llm.mock_script import MockScript
from litera.llm.provider_config import ProviderConfig, ProviderKind
from litera.prompts.registry import PromptRegistry

FIXTURES = Path(__file__).parent / "fixtures"


def no_sleep(seconds: float) -> None:
    pass


def make_client(script: MockScript, **provider) -> ChatClient:
    """
    A client over a fresh mock backend that never waits between retries.
    """
    config = ProviderConfig(kind=ProviderKind.MOCK, **provider)
    return ChatClient(MockBackend(script), config, sleep=no_sleep)


def make_corpus(count: int, name: str = "synthetic") -> Corpus:
    return Corpus(
        name,
        tuple(
            ParallelSegment(
                f"s{i:03d}", f"Latin sentence number {i} est.", f"English sentence number {i} is.", Era.CLASSICAL
            )
            for i in range(1, count + 1)
        ),
    )


@pytest.fixture(scope="session")
def prompts() -> PromptRegistry:
    return PromptRegistry()


@pytest.fixture
def pipeline_script() -> MockScript:
    return MockScript.from_file(FIXTURES / "mock_pipeline.yaml")


@pytest.fixture
def client(pipeline_script) -> ChatClient:
    return make_client(pipeline_script)


@pytest.fixture
def backend(client) -> MockBackend:
    return client.backend


@pytest.fixture
def demo_corpus() -> Corpus:
    return load_demo_corpus()
