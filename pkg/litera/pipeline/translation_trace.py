import uuid
from dataclasses import dataclass, field
from datetime import timedelta
from typing import List, Optional

from litera.pipeline.stage import Stage
from litera.pipeline.stage_call import StageCall
from litera.pipeline.variant import Variant


@dataclass
class TranslationTrace:
    """
    A translation trace is the full record of one pipeline run: every call in execution order, the
    candidates the filter compared, the filter's choice and the final output.
    """

    latin: str
    variant: Variant
    k: int
    candidates: List[str] = field(default_factory=list)
    selected: str = ""
    final: str = ""
    calls: List[StageCall] = field(default_factory=list)
    total_latency: timedelta = timedelta(0)
    nearest_candidate_index: Optional[int] = None
    non_literal: Optional[str] = None
    trace_id: str = field(default_factory=lambda: uuid.uuid4().hex)

    @property
    def call_count(self) -> int:
        return len(self.calls)

    @property
    def complete(self) -> bool:
        return bool(self.final)

    def calls_for(self, stage: Stage) -> List[StageCall]:
        return [call for call in self.calls if call.stage == stage]

    def summary(self) -> dict:
        """
        Returns the compact form stored per segment by the ablation runner.
        """
        return {
            "trace_id": self.trace_id,
            "variant": self.variant.value,
            "calls": self.call_count,
            "attempts": sum(call.response.attempt_count for call in self.calls),
            "total_latency": self.total_latency.total_seconds(),
            "nearest_candidate_index": self.nearest_candidate_index,
        }

    def to_dict(self, verbose: bool = False) -> dict:
        """
        Mirrors the trace field for field. System prompts are exported by name unless verbose.
        """
        return {
            "trace_id": self.trace_id,
            "latin": self.latin,
            "variant": self.variant.value,
            "k": self.k,
            "candidates": list(self.candidates),
            "selected": self.selected,
            "final": self.final,
            "nearest_candidate_index": self.nearest_candidate_index,
            "non_literal": self.non_literal,
            "calls": [call.to_dict(verbose) for call in self.calls],
            "total_latency": self.total_latency.total_seconds(),
        }
