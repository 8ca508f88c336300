from datetime import timedelta
from pathlib import Path

import pytest

from litera.cli.app_config import AppConfig, load_app_config
from litera.cli.exit_code import ExitCode, exit_code_for
from litera.cli.trace_store import TraceStore
from litera.common.errors import (
    ConfigurationError,
    CorpusError,
    InputError,
    PipelineError,
    PromptIntegrityError,
    RetryExhaustedError,
    ScorerConfigurationError,
    ScorerRuntimeError,
)
from litera.llm.provider_config import ProviderKind
from litera.pipeline.translation_trace import TranslationTrace
from litera.pipeline.variant import Variant


def write_config(tmp_path, text: str) -> Path:
    path = tmp_path / "litera.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_without_any_source():
    config = load_app_config(environ={})

    assert config == AppConfig()
    assert config.provider.kind == ProviderKind.HTTP
    assert config.provider.max_retries == 3
    assert config.pipeline.k == 5
    assert config.scorer is None
    assert config.service.port == 8080


def test_file_values(tmp_path):
    path = write_config(
        tmp_path,
        "provider:\n"
        "  base_url: https://llm.example/v1\n"
        "  timeout: 12.5\n"
        "pipeline:\n"
        "  variant: no_final_revision\n"
        "  k: 3\n"
        "scorer:\n"
        "  command: bleurt-score --checkpoint BLEURT-20\n"
        "prompt_override_dir: prompts\n",
    )
    config = load_app_config(path, environ={})

    assert config.provider.base_url == "https://llm.example/v1"
    assert config.provider.timeout == timedelta(seconds=12.5)
    assert config.pipeline.variant == Variant.NO_FINAL_REVISION
    assert config.pipeline.k == 3
    assert config.scorer.name == "BLEURT"
    assert config.prompt_override_dir == Path("prompts")


def test_environment_overrides_the_file(tmp_path):
    path = write_config(tmp_path, "pipeline:\n  k: 3\n  aggregator_model: from-file\n")
    environ = {
        "LITERA_PIPELINE__K": "7",
        "LITERA_PROVIDER__CACHE_ENABLED": "true",
        "LITERA_PIPELINE__PROPOSER_MODEL": "ft:tuned:123",
        "LITERA_CACHE_DIR": str(tmp_path / "cache"),
        "LITERA_API_KEY": "not configuration",
        "PATH": "/usr/bin",
    }
    config = load_app_config(path, environ=environ)

    assert config.pipeline.k == 7
    assert config.pipeline.aggregator_model == "from-file"
    assert config.pipeline.proposer_model == "ft:tuned:123"
    assert config.provider.cache_enabled is True
    assert config.cache_dir == tmp_path / "cache"


def test_overrides_win(tmp_path):
    path = write_config(tmp_path, "provider:\n  base_url: http://file\n")
    config = load_app_config(
        path,
        environ={"LITERA_PROVIDER__BASE_URL": "http://env"},
        overrides={"provider": {"base_url": "http://flag"}},
    )
    assert config.provider.base_url == "http://flag"


def test_config_path_from_environment(tmp_path):
    path = write_config(tmp_path, "service:\n  port: 9000\n")
    assert load_app_config(environ={"LITERA_CONFIG": str(path)}).service.port == 9000


@pytest.mark.parametrize(
    "text, message",
    [
        ("pipeline:\n  k: 0\n", "Invalid configuration"),
        ("provider:\n  timeout: 0\n", "Invalid configuration"),
        ("pipeline:\n  colour: blue\n", "Invalid configuration"),
        ("- just\n- a list\n", "must hold a mapping"),
        ("pipeline: [unclosed\n", "not valid YAML"),
    ],
)
def test_invalid_files(tmp_path, text, message):
    with pytest.raises(ConfigurationError, match=message):
        load_app_config(write_config(tmp_path, text), environ={})


def test_missing_file(tmp_path):
    with pytest.raises(ConfigurationError, match="Cannot read"):
        load_app_config(tmp_path / "absent.yaml", environ={})


def test_invalid_environment_value():
    with pytest.raises(ConfigurationError):
        load_app_config(environ={"LITERA_PIPELINE__MAX_IN_FLIGHT": "many"})


@pytest.mark.parametrize(
    "error, code",
    [
        (ConfigurationError("x"), ExitCode.CONFIGURATION),
        (ScorerConfigurationError("x"), ExitCode.CONFIGURATION),
        (PromptIntegrityError("x"), ExitCode.CONFIGURATION),
        (InputError("x"), ExitCode.INPUT),
        (CorpusError("x", line_number=3), ExitCode.INPUT),
        (RetryExhaustedError(4, None), ExitCode.PROVIDER),
        (PipelineError("x"), ExitCode.PROVIDER),
        (ScorerRuntimeError("x"), ExitCode.PROVIDER),
    ],
)
def test_exit_codes(error, code):
    assert exit_code_for(error) == code


def test_trace_store_keeps_the_newest():
    store = TraceStore(2)
    traces = [TranslationTrace("Roma", Variant.FULL, 5) for _ in range(3)]
    for trace in traces:
        store.put(trace)

    assert len(store) == 2
    assert store.get(traces[0].trace_id) is None
    assert store.get(traces[2].trace_id) is traces[2]
    with pytest.raises(ValueError):
        TraceStore(0)
