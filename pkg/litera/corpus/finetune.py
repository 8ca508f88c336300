import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List

from litera.common.errors import CorpusError, InputError
from litera.common.json_constants import INDENT
from litera.corpus.corpus import Corpus

logger = logging.getLogger(__name__)

JOB_SPEC_SUFFIX = ".job.json"


@dataclass(frozen=True)
class FineTuneRecord:
    """
    One chat-format training example: the fine-tuned system prompt, a Latin source as the user
    turn and its English reference as the assistant turn.
    """

    system: str
    user: str
    assistant: str

    def to_dict(self) -> dict:
        return {
            "messages": [
                {"role": "system", "content": self.system},
                {"role": "user", "content": self.user},
                {"role": "assistant", "content": self.assistant},
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FineTuneRecord":
        """
        Parses the chat-format object written by export_finetune.

        :param data: a decoded training line
        :raises ValueError: if the object is not a system/user/assistant triple
        """
        messages = data.get("messages") if isinstance(data, dict) else None
        roles = [message.get("role") for message in messages or [] if isinstance(message, dict)]
        if roles != ["system", "user", "assistant"]:
            raise ValueError(f"expected system, user and assistant messages, found {roles}")
        system, user, assistant = (message["content"] for message in messages)
        return cls(system, user, assistant)


@dataclass(frozen=True)
class FineTuneJobSpec:
    """
    The hyperparameters a fine-tuning job was (or is to be) run with. This is a metadata record only;
    litera never submits training jobs.

    :param epochs: passes over the training file
    :param batch_size: examples per optimizer step
    :param lr_multiplier: the provider's learning rate multiplier
    :param base_model: the model the job starts from
    :param notes: free text
    """

    epochs: int = 3
    batch_size: int = 1
    lr_multiplier: float = 1.8
    base_model: str = "proposer-base"
    notes: str = ""

    def __post_init__(self):
        for name in ("epochs", "batch_size", "lr_multiplier"):
            value = getattr(self, name)
            if value <= 0:
                raise InputError(f"{name} must be positive, got {value}")

    def to_dict(self) -> dict:
        return asdict(self)

    def write(self, path: Path | str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=INDENT)

    @classmethod
    def read(cls, path: Path | str) -> "FineTuneJobSpec":
        with open(path, "r", encoding="utf-8") as f:
            return cls(**json.load(f))


def job_spec_path(path: Path | str) -> Path:
    path = Path(path)
    return path.with_name(path.name + JOB_SPEC_SUFFIX)


def export_finetune(corpus: Corpus, system_prompt: str, path: Path | str) -> int:
    """
    Writes a chat-format fine-tuning file, one JSON object per line, in corpus order.

    :param corpus: the corpus to export; every segment needs an english reference
    :param system_prompt: the system prompt every example is trained with
    :param path: the destination file
    :return: the number of lines written
    :raises CorpusError: naming the first segment without a reference, before anything is written
    """
    for segment in corpus.segments:
        if not segment.english:
            raise CorpusError("cannot export a segment without an english reference", segment_id=segment.id)

    records = [FineTuneRecord(system_prompt, segment.latin, segment.english) for segment in corpus.segments]

    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for record in records:
                f.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")
    except OSError as error:
        raise CorpusError(f"cannot write fine-tune file {path}: {error}") from None

    logger.info("Exported %d fine-tune records to %s", len(records), path)
    return len(records)


def read_finetune(path: Path | str) -> List[FineTuneRecord]:
    """
    Reads a chat-format fine-tuning file back into records.

    :param path: a file written by export_finetune
    :return: the records in file order
    :raises CorpusError: naming the line of a malformed record
    """
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                records.append(FineTuneRecord.from_dict(json.loads(line)))
            except (ValueError, KeyError) as error:
                raise CorpusError(f"malformed fine-tune record: {error}", line_number=line_number) from None
    return records
