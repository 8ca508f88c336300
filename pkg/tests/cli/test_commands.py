import json

import pytest
from click.testing import CliRunner

from litera.cli.commands import cli
from litera.corpus.corpus_io import save_corpus
from litera.corpus.finetune import read_finetune
from litera.llm.backends import MockBackend
from litera.llm.mock_script import MockScript
from tests.conftest import FIXTURES, make_corpus

MOCK = str(FIXTURES / "mock_pipeline.yaml")
LATIN = "Gallia est omnis divisa in partes tres."


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False, env={"LITERA_API_KEY": None, "LITERA_CONFIG": None})


@pytest.fixture
def mock_backend() -> MockBackend:
    return MockBackend(MockScript.from_file(MOCK))


def invoke(runner: CliRunner, args, backend=None):
    return runner.invoke(cli, args, obj={"backend": backend} if backend else None)


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "test.jsonl"
    save_corpus(make_corpus(5), path, "jsonl")
    return path


def write_lines(path, lines) -> str:
    path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
    return str(path)


def test_translate_text(runner, mock_backend):
    result = invoke(runner, ["translate", "--text", LATIN], mock_backend)

    assert result.exit_code == 0, result.stderr
    assert result.stdout == "revision 12\n"
    assert mock_backend.call_count == 12


def test_translate_with_a_mock_script(runner):
    result = invoke(runner, ["--mock", MOCK, "translate", "--text", LATIN, "--variant", "single_fine_tuned"])

    assert result.exit_code == 0, result.stderr
    assert result.stdout == "proposal 1\n"


def test_translate_file_with_non_literal(runner, mock_backend, tmp_path):
    source = write_lines(tmp_path / "in.txt", [LATIN, "", "Veni, vidi, vici."])
    trace_path = tmp_path / "traces.json"

    result = invoke(
        runner,
        ["translate", "--input", source, "--non-literal", "--k", "2", "--trace", str(trace_path)],
        mock_backend,
    )

    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    assert len(lines) == 4
    assert [line.split(":")[0] for line in lines] == ["Literal", "Non-literal", "Literal", "Non-literal"]
    assert lines[1].startswith("Non-literal: free rendering ")
    assert mock_backend.call_count == 2 * (2 * 2 + 2 + 1)

    traces = json.loads(trace_path.read_text(encoding="utf-8"))
    assert len(traces) == 2
    assert traces[0]["latin"] == LATIN
    assert traces[0]["non_literal"] == lines[1][len("Non-literal: ") :]
    assert "system_text" not in traces[0]["calls"][0]["request"]


def test_verbose_traces_carry_prompt_texts(runner, mock_backend, tmp_path):
    trace_path = tmp_path / "traces.json"
    result = invoke(runner, ["--verbose", "translate", "--text", LATIN, "--trace", str(trace_path)], mock_backend)

    assert result.exit_code == 0, result.stderr
    request = json.loads(trace_path.read_text(encoding="utf-8"))[0]["calls"][0]["request"]
    assert request["system_text"].startswith("You are an advanced Latin translator.")


def test_missing_api_key_is_a_configuration_error(runner):
    result = invoke(runner, ["translate", "--text", LATIN])

    assert result.exit_code == 1
    assert "LITERA_API_KEY" in result.stderr
    assert result.stdout == ""


@pytest.mark.parametrize(
    "args",
    [
        ["translate", "--text", LATIN, "--variant", "everything"],
        ["translate"],
        ["translate", "--text", LATIN, "--k", "0"],
        ["translate", "--text", "   "],
        ["translate", "--nonsense"],
    ],
)
def test_bad_usage_exits_with_input_status(runner, mock_backend, args):
    result = invoke(runner, args, mock_backend)

    assert result.exit_code == 3
    assert mock_backend.call_count == 0


def test_provider_failure_exits_with_provider_status(runner, tmp_path):
    script = tmp_path / "broken.yaml"
    script.write_text("rules:\n  - fail_permanently: true\n", encoding="utf-8")

    result = invoke(runner, ["--mock", str(script), "translate", "--text", LATIN])

    assert result.exit_code == 2
    assert "propose" in result.stderr


def test_invalid_config_file(runner, tmp_path):
    config = tmp_path / "litera.yaml"
    config.write_text("pipeline:\n  k: 0\n", encoding="utf-8")

    result = invoke(runner, ["--config", str(config), "--mock", MOCK, "translate", "--text", LATIN])

    assert result.exit_code == 1
    assert "Invalid configuration" in result.stderr


def test_eval_identity(runner, corpus_file, tmp_path):
    hypotheses = write_lines(tmp_path / "perfect.txt", make_corpus(5).references())
    report_path = tmp_path / "report.json"

    result = invoke(
        runner, ["eval", "--ref", str(corpus_file), "--hyp", f"perfect={hypotheses}", "--json", str(report_path)]
    )

    assert result.exit_code == 0, result.stderr
    assert result.stdout.splitlines()[1].split() == ["perfect", "100.00"]
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["segment_count"] == 5
    assert report["rows"][0]["bleu"]["score"] == pytest.approx(100.0)
    assert len(report["config_hash"]) == 12


def test_eval_sorts_systems(runner, corpus_file, tmp_path):
    weak = write_lines(tmp_path / "weak.txt", ["English sentence"] * 5)
    perfect = write_lines(tmp_path / "perfect.txt", make_corpus(5).references())

    result = invoke(runner, ["eval", "--ref", str(corpus_file), "--hyp", f"weak={weak}", "--hyp", f"perfect={perfect}"])

    assert result.exit_code == 0, result.stderr
    assert [line.split()[0] for line in result.stdout.splitlines()] == ["Model", "perfect", "weak"]


def test_eval_rejects_a_wrong_line_count(runner, corpus_file, tmp_path):
    short = write_lines(tmp_path / "short.txt", ["one", "two"])

    result = invoke(runner, ["eval", "--ref", str(corpus_file), "--hyp", f"short={short}"])

    assert result.exit_code == 3
    assert "system 'short' has 2 hypotheses for 5 segments" in result.stderr


def test_eval_external_needs_a_scorer(runner, corpus_file, tmp_path):
    perfect = write_lines(tmp_path / "perfect.txt", make_corpus(5).references())

    result = invoke(runner, ["eval", "--ref", str(corpus_file), "--hyp", f"p={perfect}", "--external"])

    assert result.exit_code == 1


def test_ablate_two_variants(runner, mock_backend, corpus_file, tmp_path):
    outputs = tmp_path / "outputs.json"

    result = invoke(
        runner,
        ["ablate", "--corpus", str(corpus_file), "--variants", "full,single_fine_tuned", "--outputs", str(outputs)],
        mock_backend,
    )

    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    assert [line.rsplit(maxsplit=1)[0] for line in lines] == ["Model", "Full LITERA", "Fine-Tuned Only"]
    assert mock_backend.call_count == 5 * 12 + 5
    exported = json.loads(outputs.read_text(encoding="utf-8"))
    assert [outcome["variant"] for outcome in exported] == ["full", "single_fine_tuned"]


def test_ablate_all_variants(runner, mock_backend, corpus_file):
    result = invoke(runner, ["ablate", "--corpus", str(corpus_file)], mock_backend)

    assert result.exit_code == 0, result.stderr
    rows = [line.rsplit(maxsplit=1)[0] for line in result.stdout.splitlines()[1:]]
    assert rows == [
        "Full LITERA",
        "No Middle Revision",
        "No Final Revision",
        "Base Candidate as GPT-4o",
        "GPT-4o-mini Only",
        "Fine-Tuned Only",
    ]
    assert mock_backend.call_count == 5 * (12 + 7 + 11 + 12 + 1 + 1)


def test_ablate_without_variants(runner, mock_backend, corpus_file):
    result = invoke(runner, ["ablate", "--corpus", str(corpus_file), "--variants", ""], mock_backend)

    assert result.exit_code == 3
    assert "Valid values" in result.stderr


def test_ablate_counts_failed_segments_as_empty(runner, corpus_file, tmp_path):
    script = tmp_path / "flaky.yaml"
    script.write_text(
        'rules:\n  - user_contains: "number 3 est"\n    fail_permanently: true\ndefault: "English sentence number"\n',
        encoding="utf-8",
    )

    result = invoke(
        runner, ["--mock", str(script), "ablate", "--corpus", str(corpus_file), "--variants", "single_baseline"]
    )

    assert result.exit_code == 0, result.stderr
    assert result.stdout.splitlines()[1].rsplit(maxsplit=1)[0] == "Baseline Prompt Only"


def test_missing_corpus_file(runner, mock_backend, tmp_path):
    result = invoke(runner, ["ablate", "--corpus", str(tmp_path / "absent.jsonl")], mock_backend)
    assert result.exit_code == 3


def test_export_finetune(runner, corpus_file, tmp_path):
    out = tmp_path / "train.jsonl"

    result = invoke(runner, ["export-finetune", "--corpus", str(corpus_file), "--out", str(out), "--epochs", "4"])

    assert result.exit_code == 0, result.stderr
    assert result.stdout == "5\n"
    records = read_finetune(out)
    assert [record.user for record in records] == make_corpus(5).sources()
    assert records[0].system.startswith("You are an advanced Latin translator.")
    job = json.loads((tmp_path / "train.jsonl.job.json").read_text(encoding="utf-8"))
    assert job["epochs"] == 4
    assert job["lr_multiplier"] == 1.8


def test_help_lists_the_commands(runner):
    result = invoke(runner, ["--help"])

    assert result.exit_code == 0
    for command in ("translate", "eval", "ablate", "export-finetune", "serve"):
        assert command in result.stdout
