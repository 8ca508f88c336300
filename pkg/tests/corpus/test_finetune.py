import json

import pytest

from litera.common.errors import CorpusError, InputError
from litera.corpus.corpus import Corpus
from litera.corpus.finetune import (
    FineTuneJobSpec,
    FineTuneRecord,
    export_finetune,
    job_spec_path,
    read_finetune,
)
from litera.corpus.parallel_segment import ParallelSegment
from litera.prompts.prompt_name import PromptName
from tests.conftest import make_corpus


def test_export_200_segments_parses_back(tmp_path, prompts):
    corpus = make_corpus(200)
    system = prompts.text(PromptName.FINE_TUNED_SYSTEM)
    path = tmp_path / "train.jsonl"

    assert export_finetune(corpus, system, path) == 200

    records = read_finetune(path)
    assert len(records) == 200
    for record, segment in zip(records, corpus):
        assert record == FineTuneRecord(system, segment.latin, segment.english)


def test_export_uses_chat_message_shape(tmp_path, prompts):
    corpus = Corpus("c", (ParallelSegment("s1", "Gallia est", "Gaul is"),))
    path = tmp_path / "train.jsonl"
    export_finetune(corpus, prompts.text(PromptName.FINE_TUNED_SYSTEM), path)

    line = json.loads(path.read_text(encoding="utf-8"))
    assert [message["role"] for message in line["messages"]] == ["system", "user", "assistant"]
    assert line["messages"][0]["content"].startswith("You are an advanced Latin translator.")
    assert line["messages"][1]["content"] == "Gallia est"
    assert line["messages"][2]["content"] == "Gaul is"


def test_export_refuses_segments_without_reference(tmp_path):
    corpus = Corpus("c", (ParallelSegment("s1", "a", "A"), ParallelSegment("s2", "b")))
    path = tmp_path / "train.jsonl"

    with pytest.raises(CorpusError, match="segment 's2'"):
        export_finetune(corpus, "system", path)
    assert not path.exists()


def test_read_names_the_malformed_line(tmp_path):
    path = tmp_path / "train.jsonl"
    good = FineTuneRecord("s", "u", "a").to_dict()
    path.write_text(json.dumps(good) + "\n" + json.dumps({"messages": []}) + "\n", encoding="utf-8")

    with pytest.raises(CorpusError, match="line 2"):
        read_finetune(path)


def test_job_spec_defaults_and_round_trip(tmp_path):
    job = FineTuneJobSpec()
    assert (job.epochs, job.batch_size, job.lr_multiplier) == (3, 1, 1.8)

    path = job_spec_path(tmp_path / "train.jsonl")
    assert path.name == "train.jsonl.job.json"
    job.write(path)
    assert FineTuneJobSpec.read(path) == job


def test_job_spec_rejects_non_positive_values():
    with pytest.raises(InputError, match="epochs"):
        FineTuneJobSpec(epochs=0)
