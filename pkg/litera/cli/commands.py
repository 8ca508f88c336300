import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import click
import uvicorn

from litera.cli.app_config import AppConfig, load_app_config
from litera.cli.exit_code import ExitCode, exit_code_for
from litera.cli.service import DrainingServer, create_app
from litera.common.errors import InputError, LiteraError, ScorerConfigurationError
from litera.common.json_constants import INDENT
from litera.common.json_helpers import json_litera_encoder
from litera.common.logging_setup import configure_logging
from litera.corpus.corpus import Corpus
from litera.corpus.corpus_format import CorpusFormat
from litera.corpus.corpus_io import load_corpus
from litera.corpus.finetune import FineTuneJobSpec, export_finetune, job_spec_path
from litera.llm.backends import ChatBackend, create_backend
from litera.llm.chat_client import ChatClient
from litera.llm.response_cache import ResponseCache
from litera.metrics.eval_report import EvalReport, build_report
from litera.metrics.external_scorer import ExternalScorerConfig
from litera.pipeline.ablation import run_ablation
from litera.pipeline.translator import translate, translate_non_literal
from litera.pipeline.variant import Variant
from litera.prompts.prompt_name import PromptName
from litera.prompts.registry import PromptRegistry

logger = logging.getLogger(__name__)

LITERAL_LABEL = "Literal: "
NON_LITERAL_LABEL = "Non-literal: "


class LiteraContext:
    """
    State shared by the subcommands of one invocation. The client is built on first use so that
    commands which never call a provider do not need credentials.
    """

    def __init__(self, config: AppConfig, verbose: bool, backend: Optional[ChatBackend] = None):
        self.config = config
        self.verbose = verbose
        self.__backend = backend
        self.__client: Optional[ChatClient] = None
        self.__prompts: Optional[PromptRegistry] = None

    @property
    def prompts(self) -> PromptRegistry:
        if self.__prompts is None:
            self.__prompts = PromptRegistry(self.config.prompt_override_dir)
        return self.__prompts

    @property
    def client(self) -> ChatClient:
        if self.__client is None:
            backend = self.__backend or create_backend(self.config.provider)
            cache = ResponseCache(self.config.cache_dir) if self.config.provider.cache_enabled else None
            self.__client = ChatClient(backend, self.config.provider, cache)
        return self.__client

    def scorer(self, external: bool) -> Optional[ExternalScorerConfig]:
        if not external:
            return None
        if self.config.scorer is None:
            raise ScorerConfigurationError("--external needs a scorer section in the configuration")
        return self.config.scorer


class LiteraGroup(click.Group):
    """
    A click group that turns litera errors into the documented exit codes, with the message on standard
    error.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as error:
            error.show()
            code = ExitCode.INPUT.value
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = ExitCode.CONFIGURATION.value
        except LiteraError as error:
            click.echo(f"Error: {error}", err=True)
            code = exit_code_for(error).value

        if not standalone_mode:
            return code
        sys.exit(code if isinstance(code, int) else ExitCode.OK.value)


def __load(path: str, format: Optional[str]) -> Corpus:
    return load_corpus(path, CorpusFormat.parse(format) if format else CorpusFormat.from_path(path))


def __read_lines(path: str) -> List[str]:
    """
    Reads one segment per line. A final newline does not start another segment.
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            lines = f.read().split("\n")
    except OSError as error:
        raise InputError(f"cannot read {path}: {error}") from None

    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def __parse_variants(value: str) -> List[Variant]:
    names = [name.strip() for name in value.split(",") if name.strip()]
    if not names:
        valid = ", ".join(variant.value for variant in Variant.values())
        raise InputError(f"no variants given. Valid values: {valid}")
    return [Variant.parse(name) for name in names]


def __write_json(path: str, data) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=INDENT, default=json_litera_encoder, ensure_ascii=False)
    except OSError as error:
        raise InputError(f"cannot write {path}: {error}") from None


def __emit_report(report: EvalReport, json_path: Optional[str]) -> None:
    click.echo(report.format_table())
    if json_path:
        __write_json(json_path, report.to_dict())


@click.group(cls=LiteraGroup)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="YAML configuration file")
@click.option("--provider-url", help="Base URL of a chat-completions endpoint")
@click.option("--mock", "mock_script", type=click.Path(dir_okay=False), help="Answer from a scripted mock provider")
@click.option("--verbose", is_flag=True, help="Log debug output and export full prompt texts in traces")
@click.pass_context
def cli(ctx: click.Context, config_path, provider_url, mock_script, verbose):
    """
    Multi-layered Latin to English translation and its evaluation.
    """
    configure_logging(verbose)

    provider: Dict[str, str] = {}
    if provider_url:
        provider["base_url"] = provider_url
    if mock_script:
        provider.update({"kind": "mock", "mock_script": mock_script})

    config = load_app_config(config_path, overrides={"provider": provider} if provider else None)
    backend = ctx.obj.get("backend") if isinstance(ctx.obj, dict) else None
    ctx.obj = LiteraContext(config, verbose, backend)


@cli.command("translate")
@click.option("--text", help="The Latin text to translate")
@click.option("--input", "input_path", type=click.Path(dir_okay=False), help="A file with one segment per line")
@click.option("--variant", help="The pipeline variant to run")
@click.option("--k", type=int, help="The number of candidates")
@click.option("--non-literal", is_flag=True, help="Also produce a non-literal translation")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), help="Write the traces as JSON")
@click.pass_obj
def translate_command(obj: LiteraContext, text, input_path, variant, k, non_literal, trace_path):
    """
    Translate Latin text, printing one translation per segment.
    """
    if (text is None) == (input_path is None):
        raise InputError("exactly one of --text and --input is required")

    segments = [text] if text is not None else [line for line in __read_lines(input_path) if line.strip()]
    if not segments:
        raise InputError(f"{input_path} holds no segments")

    updates = {}
    if variant is not None:
        updates["variant"] = Variant.parse(variant)
    if k is not None:
        if k < 1:
            raise InputError(f"--k must be at least 1, got {k}")
        updates["k"] = k
    config = obj.config.pipeline.model_copy(update=updates)

    traces = []
    for latin in segments:
        trace = translate(obj.client, obj.prompts, config, latin)
        traces.append(trace)
        if not non_literal:
            click.echo(trace.final)
            continue

        rendering = translate_non_literal(obj.client, obj.prompts, latin, trace.final, config.aggregator_model, trace)
        click.echo(f"{LITERAL_LABEL}{trace.final}")
        click.echo(f"{NON_LITERAL_LABEL}{rendering}")

    logger.info("Translated %d segments in %d calls", len(traces), sum(trace.call_count for trace in traces))
    if trace_path:
        __write_json(trace_path, [trace.to_dict(obj.verbose) for trace in traces])


@cli.command("eval")
@click.option("--ref", "ref_path", required=True, type=click.Path(dir_okay=False), help="The reference corpus")
@click.option("--format", "corpus_format", help="The corpus format, inferred from the suffix by default")
@click.option("--hyp", "hyps", multiple=True, required=True, help="A system as NAME=FILE, one hypothesis per line")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the report as JSON")
@click.option("--external", is_flag=True, help="Add the configured learned metric")
@click.pass_obj
def eval_command(obj: LiteraContext, ref_path, corpus_format, hyps, json_path, external):
    """
    Score system outputs against a reference corpus.
    """
    scorer = obj.scorer(external)
    corpus = __load(ref_path, corpus_format)

    systems: Dict[str, List[str]] = {}
    for hyp in hyps:
        name, separator, path = hyp.partition("=")
        if not separator or not name or not path:
            raise InputError(f"--hyp expects NAME=FILE, got '{hyp}'")
        if name in systems:
            raise InputError(f"system '{name}' is given twice")
        systems[name] = __read_lines(path)

    report = build_report(corpus, systems, scorer, run_config={"ref": ref_path, "systems": sorted(systems)})
    __emit_report(report, json_path)


@cli.command("ablate")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(dir_okay=False), help="The test corpus")
@click.option("--format", "corpus_format", help="The corpus format, inferred from the suffix by default")
@click.option(
    "--variants",
    default=",".join(variant.value for variant in Variant.ablation_variants()),
    show_default=True,
    help="Comma separated variants",
)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the report as JSON")
@click.option(
    "--outputs", "outputs_path", type=click.Path(dir_okay=False), help="Write every variant's outputs as JSON"
)
@click.option("--external", is_flag=True, help="Add the configured learned metric")
@click.pass_obj
def ablate_command(obj: LiteraContext, corpus_path, corpus_format, variants, json_path, outputs_path, external):
    """
    Run pipeline variants over a corpus and compare their scores.
    """
    variants = __parse_variants(variants)
    scorer = obj.scorer(external)
    corpus = __load(corpus_path, corpus_format)

    outcomes = run_ablation(obj.client, obj.prompts, obj.config.pipeline, corpus, variants)

    systems = {}
    for variant, outcome in outcomes.items():
        hypotheses = outcome.hypotheses()
        systems[variant.display_name] = [hypotheses.get(segment_id, "") for segment_id in corpus.ids()]

    logger.info("Ablation made %d calls", sum(outcome.call_count for outcome in outcomes.values()))
    report = build_report(
        corpus,
        systems,
        scorer,
        run_config=obj.config.pipeline.model_dump(mode="json"),
        sort_rows=False,
    )
    __emit_report(report, json_path)
    if outputs_path:
        __write_json(outputs_path, [outcome.to_dict() for outcome in outcomes.values()])


@cli.command("export-finetune")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(dir_okay=False), help="The training corpus")
@click.option("--format", "corpus_format", help="The corpus format, inferred from the suffix by default")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="The training file to write")
@click.option("--epochs", type=int, default=3, show_default=True)
@click.option("--batch-size", type=int, default=1, show_default=True)
@click.option("--lr-multiplier", type=float, default=1.8, show_default=True)
@click.option("--base-model", default="proposer-base", show_default=True)
@click.pass_obj
def export_finetune_command(
    obj: LiteraContext, corpus_path, corpus_format, out_path, epochs, batch_size, lr_multiplier, base_model
):
    """
    Write a chat-format fine-tuning file and the job's hyperparameters.
    """
    job = FineTuneJobSpec(epochs, batch_size, lr_multiplier, base_model)
    corpus = __load(corpus_path, corpus_format)

    count = export_finetune(corpus, obj.prompts.text(PromptName.FINE_TUNED_SYSTEM), out_path)
    job.write(job_spec_path(out_path))
    click.echo(count)


@cli.command("serve")
@click.option("--host", help="Interface to bind, overriding the configuration")
@click.option("--port", type=int, help="Port to bind, overriding the configuration")
@click.pass_obj
def serve_command(obj: LiteraContext, host, port):
    """
    Serve translations over HTTP until interrupted.
    """
    app = create_app(obj.config, obj.client, obj.prompts)
    server_config = uvicorn.Config(
        app,
        host=host or obj.config.service.host,
        port=port or obj.config.service.port,
        log_config=None,
    )
    DrainingServer(server_config, app).run()
