import hashlib
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, List, Mapping, Optional, Sequence

from litera.common.errors import CorpusError, InputError
from litera.common.json_helpers import json_litera_encoder
from litera.corpus.corpus import Corpus
from litera.llm.bounded import run_bounded
from litera.metrics.bleu import bleu_corpus
from litera.metrics.bleu_score import BleuScore
from litera.metrics.external_scorer import ExternalScorerConfig, score_external

logger = logging.getLogger(__name__)

MODEL_HEADER = "Model"
BLEU_HEADER = "BLEU"
MISSING = "-"


@dataclass(frozen=True)
class ReportRow:
    system: str
    bleu: BleuScore
    external: Optional[float] = None


@dataclass
class EvalReport:
    """
    An evaluation report holds one row per system scored on one corpus.
    """

    corpus_name: str
    segment_count: int
    rows: List[ReportRow] = field(default_factory=list)
    metric_name: Optional[str] = None
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))
    config_hash: Optional[str] = None

    def row(self, system: str) -> ReportRow:
        for row in self.rows:
            if row.system == system:
                return row
        raise KeyError(system)

    def format_table(self) -> str:
        """
        Renders the rows as an aligned plain-text table.
        """
        headers = [MODEL_HEADER, BLEU_HEADER]
        if self.metric_name:
            headers.append(self.metric_name)

        lines = [headers]
        for row in self.rows:
            cells = [row.system, f"{row.bleu.score:.2f}"]
            if self.metric_name:
                cells.append(MISSING if row.external is None else f"{row.external:.4f}")
            lines.append(cells)

        widths = [max(len(line[column]) for line in lines) for column in range(len(headers))]
        rendered = []
        for line in lines:
            first, *numbers = line
            rendered.append(
                "  ".join([first.ljust(widths[0])] + [cell.rjust(width) for cell, width in zip(numbers, widths[1:])])
            )
        return "\n".join(rendered)

    def to_dict(self) -> dict:
        return {
            "corpus": self.corpus_name,
            "segment_count": self.segment_count,
            "metric_name": self.metric_name,
            "timestamp": self.timestamp,
            "config_hash": self.config_hash,
            "rows": [
                {"system": row.system, "bleu": row.bleu.to_dict(), "external": row.external} for row in self.rows
            ],
        }


def config_hash(config: Mapping) -> str:
    """
    A short stable hash of a run configuration, recorded in reports.
    """
    encoded = json.dumps(config, sort_keys=True, default=json_litera_encoder)
    return hashlib.sha256(encoded.encode("utf-8")).hexdigest()[:12]


def __external_scores(
    external_scorer: ExternalScorerConfig, systems: Mapping[str, Sequence[str]], references: List[str]
) -> Dict[str, float]:
    names = list(systems)
    tasks = [lambda name=name: score_external(external_scorer, systems[name], references)[1] for name in names]
    results = run_bounded(tasks, len(tasks) if external_scorer.parallel else 1)

    scores = {}
    for name, result in zip(names, results):
        if isinstance(result, Exception):
            raise result
        scores[name] = result
    return scores


def build_report(
    corpus: Corpus,
    systems: Mapping[str, Sequence[str]],
    external_scorer: Optional[ExternalScorerConfig] = None,
    run_config: Optional[Mapping] = None,
    sort_rows: bool = True,
) -> EvalReport:
    """
    Scores every system against the corpus references.

    :param corpus: the corpus the hypotheses translate, every segment with a reference
    :param systems: system name to one hypothesis per segment, in corpus order
    :param external_scorer: an optional learned metric to score with as well
    :param run_config: the configuration of the run, hashed into the report
    :param sort_rows: sort rows by BLEU descending rather than keeping the order of systems
    :return: the report
    :raises InputError: naming a system whose hypothesis count does not match the corpus
    """
    for name, hypotheses in systems.items():
        if len(hypotheses) != len(corpus):
            raise InputError(f"system '{name}' has {len(hypotheses)} hypotheses for {len(corpus)} segments")

    report = EvalReport(
        corpus.name,
        len(corpus),
        metric_name=external_scorer.name if external_scorer else None,
        config_hash=config_hash(run_config) if run_config is not None else None,
    )
    if not systems:
        return report

    missing = [segment.id for segment in corpus if not segment.has_reference]
    if missing:
        raise CorpusError("cannot evaluate without an english reference", segment_id=missing[0])

    references = corpus.references()
    external = __external_scores(external_scorer, systems, references) if external_scorer else {}

    for name, hypotheses in systems.items():
        report.rows.append(ReportRow(name, bleu_corpus(list(hypotheses), references), external.get(name)))
        logger.info("%s: %s", name, report.rows[-1].bleu)

    if sort_rows:
        report.rows.sort(key=lambda row: row.bleu.score, reverse=True)
    return report
