import logging
from dataclasses import dataclass, field
from datetime import timedelta
from typing import Dict, List, Sequence

from litera.common.descriptive_stats import DescriptiveStatsFloat, DescriptiveStatsTimedelta
from litera.common.errors import InputError, LiteraError
from litera.corpus.corpus import Corpus
from litera.llm.chat_client import ChatClient
from litera.pipeline.pipeline_config import PipelineConfig
from litera.pipeline.translator import translate
from litera.pipeline.variant import Variant
from litera.prompts.registry import PromptRegistry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AblationRow:
    segment_id: str
    final: str
    summary: dict


@dataclass
class VariantOutcome:
    """
    Everything one variant produced over a corpus: a row per translated segment and the error of every
    segment that failed.
    """

    variant: Variant
    rows: List[AblationRow] = field(default_factory=list)
    failures: Dict[str, str] = field(default_factory=dict)
    call_count: int = 0
    latencies: List[timedelta] = field(default_factory=list)

    @property
    def latency(self) -> DescriptiveStatsTimedelta:
        return DescriptiveStatsTimedelta.of(self.latencies)

    @property
    def calls_per_segment(self) -> DescriptiveStatsFloat:
        return DescriptiveStatsFloat.of([float(row.summary["calls"]) for row in self.rows])

    def hypotheses(self) -> Dict[str, str]:
        return {row.segment_id: row.final for row in self.rows}

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "display_name": self.variant.display_name,
            "rows": [
                {"segment_id": row.segment_id, "final": row.final, "summary": row.summary} for row in self.rows
            ],
            "failures": dict(self.failures),
            "call_count": self.call_count,
            "latency": self.latency.to_dict(),
        }


def run_ablation(
    client: ChatClient,
    prompts: PromptRegistry,
    base_config: PipelineConfig,
    corpus: Corpus,
    variants: Sequence[Variant | str],
) -> Dict[Variant, VariantOutcome]:
    """
    Translates every segment of a corpus once per variant. Variants share nothing but the base
    configuration; a failing segment is recorded and the run moves on.

    :param base_config: the configuration each variant is applied to
    :param corpus: a non-empty corpus
    :param variants: the variants to run, in report order
    :return: the outcome of each variant
    """
    if len(corpus) == 0:
        raise InputError("cannot run an ablation over an empty corpus")

    outcomes: Dict[Variant, VariantOutcome] = {}
    for variant in (Variant.parse(variant) for variant in variants):
        config = base_config.with_variant(variant)
        outcome = VariantOutcome(variant)

        for segment in corpus:
            try:
                trace = translate(client, prompts, config, segment.latin)
            except LiteraError as error:
                outcome.failures[segment.id] = str(error)
                outcome.call_count += len(getattr(error, "calls", []) or [])
                logger.warning("Variant %s failed on segment %s: %s", variant.value, segment.id, error)
                continue

            outcome.rows.append(AblationRow(segment.id, trace.final, trace.summary()))
            outcome.call_count += trace.call_count
            outcome.latencies.append(trace.total_latency)

        outcomes[variant] = outcome
        logger.info(
            "Variant %s: %d translated, %d failed, %d calls, latency %s",
            variant.value,
            len(outcome.rows),
            len(outcome.failures),
            outcome.call_count,
            outcome.latency,
        )

    return outcomes
