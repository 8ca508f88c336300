from dataclasses import dataclass
from typing import Optional

from litera.llm.chat_request import ChatRequest
from litera.llm.chat_response import ChatResponse
from litera.pipeline.stage import Stage
from litera.prompts.prompt_name import PromptName


@dataclass(frozen=True)
class StageCall:
    """
    A stage call records one provider call made by a translation: the stage, the candidate it
    belongs to, the system prompt it used and the full request and response.
    """

    stage: Stage
    candidate_index: Optional[int]
    prompt_name: PromptName
    request: ChatRequest
    response: ChatResponse

    def __post_init__(self):
        if self.stage.per_candidate != (self.candidate_index is not None):
            raise ValueError(f"stage {self.stage.value} has an invalid candidate index {self.candidate_index}")

    @property
    def content(self) -> str:
        return self.response.content

    def to_dict(self, verbose: bool = False) -> dict:
        """
        :param verbose: include the full system prompt text rather than only its name
        """
        request = {
            "model": self.request.model,
            "system": self.prompt_name.value,
            "user": self.request.user,
            "temperature": self.request.temperature,
            "top_p": self.request.top_p,
            "frequency_penalty": self.request.frequency_penalty,
            "presence_penalty": self.request.presence_penalty,
        }
        if verbose:
            request["system_text"] = self.request.system

        return {
            "stage": self.stage.value,
            "candidate_index": self.candidate_index,
            "request": request,
            "response": self.response.to_dict(),
        }
