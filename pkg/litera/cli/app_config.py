import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from litera.common.errors import ConfigurationError
from litera.llm.provider_config import ProviderConfig
from litera.metrics.external_scorer import ExternalScorerConfig
from litera.pipeline.pipeline_config import PipelineConfig

logger = logging.getLogger(__name__)

CONFIG_PATH_ENV = "LITERA_CONFIG"
ENV_PREFIX = "LITERA_"
ENV_SECTION_SEPARATOR = "__"
TOP_LEVEL_ENV_FIELDS = ("prompt_override_dir", "cache_dir")


class ServiceConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    host: str = "127.0.0.1"
    port: int = Field(default=8080, ge=1, le=65535)
    trace_capacity: int = Field(default=256, ge=1)


class AppConfig(BaseModel):
    """
    Everything a litera command needs. Every field has a default; the provider API key is read
    from the environment variable the provider section names.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    provider: ProviderConfig = Field(default_factory=ProviderConfig)
    pipeline: PipelineConfig = Field(default_factory=PipelineConfig)
    scorer: Optional[ExternalScorerConfig] = None
    service: ServiceConfig = Field(default_factory=ServiceConfig)
    prompt_override_dir: Optional[Path] = None
    cache_dir: Optional[Path] = None


def __merge(base: Dict[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    for key, value in overrides.items():
        if isinstance(value, Mapping) and isinstance(base.get(key), dict):
            __merge(base[key], value)
        elif isinstance(value, Mapping):
            base[key] = __merge({}, value)
        else:
            base[key] = value
    return base


def __env_value(raw: str):
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError:
        return raw
    if isinstance(value, (bool, int, float)):
        return value
    return raw


def __environment_overrides(environ: Mapping[str, str]) -> Dict[str, Any]:
    """
    Collects LITERA_<SECTION>__<FIELD> variables, plus LITERA_PROMPT_OVERRIDE_DIR and LITERA_CACHE_DIR.
    """
    overrides: Dict[str, Any] = {}
    for name, raw in environ.items():
        if not name.startswith(ENV_PREFIX):
            continue
        key = name[len(ENV_PREFIX) :].lower()

        if ENV_SECTION_SEPARATOR in key:
            section, field = key.split(ENV_SECTION_SEPARATOR, 1)
            if section and field:
                overrides.setdefault(section, {})[field] = __env_value(raw)
        elif key in TOP_LEVEL_ENV_FIELDS:
            overrides[key] = raw
    return overrides


def __read_file(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as error:
        raise ConfigurationError(f"Cannot read config file {path}: {error}") from None
    except yaml.YAMLError as error:
        raise ConfigurationError(f"Config file {path} is not valid YAML: {error}") from None

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {path} must hold a mapping, found {type(data).__name__}")
    return data


def load_app_config(
    path: Optional[Path | str] = None,
    environ: Optional[Mapping[str, str]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> AppConfig:
    """
    Resolves the configuration: the YAML file, then environment variables, then explicit overrides.

    :param path: the config file; defaults to $LITERA_CONFIG, and no file at all when that is unset
    :param environ: the environment to read, defaults to the process environment
    :param overrides: nested values from command line flags
    :raises ConfigurationError: if the file is unreadable or any value is invalid
    """
    environ = os.environ if environ is None else environ
    path = path or environ.get(CONFIG_PATH_ENV)

    data: Dict[str, Any] = __read_file(Path(path)) if path else {}
    __merge(data, __environment_overrides(environ))
    __merge(data, overrides or {})

    try:
        config = AppConfig.model_validate(data)
    except ValidationError as error:
        raise ConfigurationError(f"Invalid configuration: {error}") from None

    logger.debug("Resolved configuration from %s", path or "defaults")
    return config
