import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from litera.prompts.prompt_name import PromptName


def text_checksum(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class PromptTemplate:
    """
    A registered system prompt.

    :param name: the registry name
    :param text: the exact prompt text
    :param normative: whether the text is fixed by the published method (the cleaner prompt is not)
    :param overridden: whether an operator substituted the text from an override directory
    :param source: the file the text was read from
    """

    name: PromptName
    text: str
    normative: bool = True
    overridden: bool = False
    source: Optional[Path] = None

    @property
    def checksum(self) -> str:
        return text_checksum(self.text)

    def __str__(self):
        return self.text
