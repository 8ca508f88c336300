from pydantic import BaseModel, ConfigDict, Field, field_validator

from litera.pipeline.variant import Variant
from litera.prompts.prompt_name import PromptName

MINI_PROMPT_CHOICES = (PromptName.FINE_TUNED_SYSTEM, PromptName.BASELINE_TRANSLATOR)


class PipelineConfig(BaseModel):
    """
    Which stages run and which models they call. Model ids are placeholders an operator maps onto
    real endpoints.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    variant: Variant = Variant.FULL
    k: int = Field(default=5, ge=1)
    proposer_model: str = Field(default="proposer-fine-tuned", min_length=1)
    aggregator_model: str = Field(default="aggregator", min_length=1)
    mini_model: str = Field(default="base-mini", min_length=1)
    mini_prompt: PromptName = PromptName.FINE_TUNED_SYSTEM
    max_in_flight: int = Field(default=5, ge=1)
    max_input_chars: int = Field(default=8000, ge=1)

    @field_validator("mini_prompt")
    @classmethod
    def mini_prompt_must_translate(cls, mini_prompt: PromptName) -> PromptName:
        if mini_prompt not in MINI_PROMPT_CHOICES:
            choices = ", ".join(choice.value for choice in MINI_PROMPT_CHOICES)
            raise ValueError(f"mini_prompt must be one of {choices}")
        return mini_prompt

    def with_variant(self, variant: Variant | str) -> "PipelineConfig":
        return self.model_copy(update={"variant": Variant.parse(variant)})

    @property
    def propose_model(self) -> str:
        if self.variant == Variant.BASE_CANDIDATE_AGGREGATOR:
            return self.aggregator_model
        return self.proposer_model
