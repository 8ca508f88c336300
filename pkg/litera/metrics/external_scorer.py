import logging
import shlex
import subprocess
from datetime import timedelta
from statistics import fmean
from typing import List, Optional, Sequence, Tuple

import httpx
from pydantic import BaseModel, ConfigDict

from litera.common.errors import InputError, ScorerConfigurationError, ScorerProtocolError, ScorerRuntimeError
from litera.common.litera_enum import LiteraEnum

logger = logging.getLogger(__name__)

SCORE_PATH = "/score"
FLATTEN = str.maketrans({"\t": " ", "\r": " ", "\n": " "})


class ScorerMode(LiteraEnum):
    SUBPROCESS = "subprocess"
    HTTP = "http"


class ExternalScorerConfig(BaseModel):
    """
    Where a learned metric runs. In subprocess mode the command reads candidate<TAB>reference lines on
    standard input and writes one score per line; in http mode the url serves POST /score.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "BLEURT"
    mode: ScorerMode = ScorerMode.SUBPROCESS
    command: Optional[str] = None
    url: Optional[str] = None
    timeout: timedelta = timedelta(minutes=10)
    parallel: bool = False


def __flatten(text: str) -> str:
    return text.translate(FLATTEN)


def __check_config(config: ExternalScorerConfig) -> None:
    if config.mode == ScorerMode.SUBPROCESS and not (config.command and config.command.strip()):
        raise ScorerConfigurationError(f"No command configured for the {config.name} scorer")
    if config.mode == ScorerMode.HTTP and not config.url:
        raise ScorerConfigurationError(f"No url configured for the {config.name} scorer")


def __parse_score(value, line_number: int) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ScorerProtocolError(f"expected a decimal score, got {value!r}", line_number) from None


def __score_subprocess(
    config: ExternalScorerConfig, candidates: Sequence[str], references: Sequence[str]
) -> List[float]:
    lines = "".join(
        f"{__flatten(candidate)}\t{__flatten(reference)}\n" for candidate, reference in zip(candidates, references)
    )
    try:
        completed = subprocess.run(
            shlex.split(config.command),
            input=lines,
            capture_output=True,
            text=True,
            encoding="utf-8",
            timeout=config.timeout.total_seconds(),
        )
    except (FileNotFoundError, PermissionError) as error:
        raise ScorerConfigurationError(f"Cannot launch the {config.name} scorer: {error}") from None
    except subprocess.TimeoutExpired:
        raise ScorerRuntimeError(
            f"The {config.name} scorer did not finish within {config.timeout.total_seconds():g}s"
        ) from None

    if completed.returncode != 0:
        raise ScorerRuntimeError(
            f"The {config.name} scorer exited with status {completed.returncode}: {completed.stderr.strip()[:500]}"
        )

    output = completed.stdout.split("\n")
    while output and not output[-1].strip():
        output.pop()

    scores = [__parse_score(line.strip(), line_number) for line_number, line in enumerate(output, start=1)]
    if len(scores) != len(candidates):
        raise ScorerProtocolError(f"expected {len(candidates)} scores, the scorer wrote {len(scores)} lines")
    return scores


def __score_http(
    config: ExternalScorerConfig,
    candidates: Sequence[str],
    references: Sequence[str],
    transport: Optional[httpx.BaseTransport],
) -> List[float]:
    payload = {
        "pairs": [
            {"candidate": candidate, "reference": reference} for candidate, reference in zip(candidates, references)
        ]
    }
    try:
        with httpx.Client(transport=transport, timeout=config.timeout.total_seconds()) as client:
            response = client.post(config.url.rstrip("/") + SCORE_PATH, json=payload)
    except httpx.HTTPError as error:
        raise ScorerRuntimeError(f"The {config.name} scorer at {config.url} is unreachable: {error}") from None

    if response.status_code != 200:
        raise ScorerRuntimeError(f"The {config.name} scorer answered {response.status_code}: {response.text[:500]}")

    try:
        raw_scores = response.json()["scores"]
    except (ValueError, KeyError, TypeError):
        raise ScorerProtocolError(f"expected a JSON object with a scores list, got {response.text[:200]!r}") from None

    if not isinstance(raw_scores, list) or len(raw_scores) != len(candidates):
        count = len(raw_scores) if isinstance(raw_scores, list) else "no"
        raise ScorerProtocolError(f"expected {len(candidates)} scores, the scorer returned {count}")
    return [__parse_score(value, index) for index, value in enumerate(raw_scores, start=1)]


def score_external(
    config: ExternalScorerConfig,
    candidates: Sequence[str],
    references: Sequence[str],
    transport: Optional[httpx.BaseTransport] = None,
) -> Tuple[List[float], float]:
    """
    Scores candidate/reference pairs with an external learned metric.

    :param config: how to reach the scorer
    :param candidates: system outputs
    :param references: one reference per candidate
    :param transport: an optional httpx transport for http mode
    :return: one score per pair and their unweighted mean; scores may be negative
    :raises ScorerConfigurationError: if the scorer is not configured or cannot be launched
    :raises ScorerRuntimeError: if the scorer fails while running
    :raises ScorerProtocolError: naming the offending line of malformed output
    """
    __check_config(config)
    if len(candidates) != len(references):
        raise InputError(f"got {len(candidates)} candidates for {len(references)} references")
    if not candidates:
        return [], 0.0

    if config.mode == ScorerMode.HTTP:
        scores = __score_http(config, candidates, references, transport)
    else:
        scores = __score_subprocess(config, candidates, references)

    logger.debug("Scored %d pairs with %s", len(scores), config.name)
    return scores, fmean(scores)
