from litera.common.litera_enum import LiteraEnum


class Variant(LiteraEnum):
    """
    The pipeline configurations compared by the ablation runner, in report order.
    """

    FULL = "full"
    NO_MIDDLE_REVISION = "no_middle_revision"
    NO_FINAL_REVISION = "no_final_revision"
    BASE_CANDIDATE_AGGREGATOR = "base_candidate_aggregator"
    SINGLE_AGGREGATOR_MINI = "single_aggregator_mini"
    SINGLE_FINE_TUNED = "single_fine_tuned"
    SINGLE_BASELINE = "single_baseline"

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @property
    def is_single(self) -> bool:
        return self in (Variant.SINGLE_AGGREGATOR_MINI, Variant.SINGLE_FINE_TUNED, Variant.SINGLE_BASELINE)

    @property
    def runs_middle_revision(self) -> bool:
        return not self.is_single and self != Variant.NO_MIDDLE_REVISION

    @property
    def runs_final_revision(self) -> bool:
        return not self.is_single and self != Variant.NO_FINAL_REVISION

    def expected_calls(self, k: int) -> int:
        """
        Returns how many provider calls one translation makes with k candidates.
        """
        if self.is_single:
            return 1
        per_candidate = 2 if self.runs_middle_revision else 1
        return k * per_candidate + 1 + (1 if self.runs_final_revision else 0)

    @classmethod
    def ablation_variants(cls) -> list:
        """
        The six variants of the standard ablation table.
        """
        return [variant for variant in cls.values() if variant != Variant.SINGLE_BASELINE]


_DISPLAY_NAMES = {
    Variant.FULL: "Full LITERA",
    Variant.NO_MIDDLE_REVISION: "No Middle Revision",
    Variant.NO_FINAL_REVISION: "No Final Revision",
    Variant.BASE_CANDIDATE_AGGREGATOR: "Base Candidate as GPT-4o",
    Variant.SINGLE_AGGREGATOR_MINI: "GPT-4o-mini Only",
    Variant.SINGLE_FINE_TUNED: "Fine-Tuned Only",
    Variant.SINGLE_BASELINE: "Baseline Prompt Only",
}
