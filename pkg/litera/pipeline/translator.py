import logging
import re
import time
from datetime import timedelta
from functools import partial
from typing import List, Optional, Sequence, Tuple

from litera.common.errors import InputError, InputTooLongError, PipelineError, ProviderError
from litera.llm.bounded import run_bounded
from litera.llm.chat_client import ChatClient
from litera.llm.chat_request import ChatRequest
from litera.pipeline.pipeline_config import PipelineConfig
from litera.pipeline.selection import nearest_candidate_index
from litera.pipeline.stage import Stage
from litera.pipeline.stage_call import StageCall
from litera.pipeline.translation_trace import TranslationTrace
from litera.pipeline.variant import Variant
from litera.prompts.assembly import (
    assemble_comparison_message,
    assemble_non_literal_message,
    assemble_revision_message,
)
from litera.prompts.prompt_name import PromptName
from litera.prompts.registry import PromptRegistry

logger = logging.getLogger(__name__)

TRANSLATION_LABEL = re.compile(r"^\s*Translation:[ \t]*\n?", re.IGNORECASE)


def __check_latin(latin: str, config: PipelineConfig) -> None:
    if not isinstance(latin, str) or not latin.strip():
        raise InputError("latin text must be a non-empty string")
    if len(latin) > config.max_input_chars:
        raise InputTooLongError(len(latin), config.max_input_chars)


def __call_stage(
    client: ChatClient,
    prompts: PromptRegistry,
    stage: Stage,
    prompt_name: PromptName,
    model: str,
    user: str,
    candidate_index: Optional[int] = None,
    completed: Sequence[StageCall] = (),
) -> StageCall:
    """
    Sends one stage request and records it.

    :param completed: calls already made by the caller, handed to the error on failure
    :raises PipelineError: if the provider fails or answers with nothing
    """
    request = ChatRequest(model, prompts.text(prompt_name), user)
    try:
        response = client.complete(request)
    except ProviderError as error:
        raise PipelineError(str(error), stage, candidate_index, calls=completed) from error

    call = StageCall(stage, candidate_index, prompt_name, request, response)
    if not response.content.strip():
        raise PipelineError("provider returned an empty message", stage, candidate_index, calls=[*completed, call])
    return call


def generate_candidate(
    client: ChatClient,
    prompts: PromptRegistry,
    config: PipelineConfig,
    latin: str,
    index: int,
) -> Tuple[str, List[StageCall]]:
    """
    Proposes one candidate translation and, when the variant runs it, revises it.

    :param index: the candidate index in [0, k)
    :return: the candidate and the calls made for it
    :raises PipelineError: annotated with the failing stage and the candidate index
    """
    if not 0 <= index < config.k:
        raise InputError(f"candidate index must be in [0, {config.k}), got {index}")

    calls = [
        __call_stage(client, prompts, Stage.PROPOSE, PromptName.FINE_TUNED_SYSTEM, config.propose_model, latin, index)
    ]

    if config.variant.runs_middle_revision:
        calls.append(
            __call_stage(
                client,
                prompts,
                Stage.MIDDLE_REVISE,
                PromptName.REVISION,
                config.aggregator_model,
                assemble_revision_message(latin, calls[-1].content),
                index,
                calls,
            )
        )

    return calls[-1].content, calls


def __gather_candidates(
    client: ChatClient, prompts: PromptRegistry, config: PipelineConfig, latin: str, trace: TranslationTrace
) -> None:
    tasks = [partial(generate_candidate, client, prompts, config, latin, index) for index in range(config.k)]
    results = run_bounded(tasks, config.max_in_flight)

    failure: Optional[PipelineError] = None
    for index, result in enumerate(results):
        if isinstance(result, PipelineError):
            trace.calls.extend(result.calls)
            failure = failure or result
        elif isinstance(result, Exception):
            failure = failure or PipelineError(str(result), Stage.PROPOSE, index)
        else:
            candidate, calls = result
            trace.candidates.append(candidate)
            trace.calls.extend(calls)

    if failure is not None:
        raise failure


def translate(
    client: ChatClient, prompts: PromptRegistry, config: PipelineConfig, latin: str
) -> TranslationTrace:
    """
    Translates one Latin text with the configured variant: k candidates generated concurrently,
    the filter's selection among them, then the final revision.

    :return: the trace of the run
    :raises InputError: if the text is empty or longer than the configured limit
    :raises PipelineError: carrying the partial trace when any stage fails
    """
    if config.variant.is_single:
        return translate_single(client, prompts, config, latin)
    __check_latin(latin, config)

    started = time.monotonic()
    trace = TranslationTrace(latin, config.variant, config.k)

    try:
        __gather_candidates(client, prompts, config, latin, trace)

        comparison = assemble_comparison_message(latin, trace.candidates, config.k)
        call = __call_stage(
            client, prompts, Stage.FILTER, PromptName.FINAL_FILTER, config.aggregator_model, comparison
        )
        trace.calls.append(call)
        selected = call.content
        trace.nearest_candidate_index = nearest_candidate_index(selected, trace.candidates)

        final = selected
        if config.variant.runs_final_revision:
            call = __call_stage(
                client,
                prompts,
                Stage.FINAL_REVISE,
                PromptName.REVISION,
                config.aggregator_model,
                assemble_revision_message(latin, selected),
            )
            trace.calls.append(call)
            final = call.content
    except PipelineError as error:
        if error.stage is not None and not error.stage.per_candidate:
            trace.calls.extend(error.calls)
        trace.total_latency = timedelta(seconds=time.monotonic() - started)
        error.trace = trace
        error.calls = list(trace.calls)
        logger.warning("Translation failed after %d calls: %s", trace.call_count, error)
        raise

    trace.selected = selected
    trace.final = final
    trace.total_latency = timedelta(seconds=time.monotonic() - started)
    logger.info(
        "Translated with %s in %d calls (%.2fs)",
        config.variant.value,
        trace.call_count,
        trace.total_latency.total_seconds(),
    )
    return trace


def __single_route(config: PipelineConfig) -> Tuple[PromptName, str]:
    if config.variant == Variant.SINGLE_FINE_TUNED:
        return PromptName.FINE_TUNED_SYSTEM, config.proposer_model
    if config.variant == Variant.SINGLE_AGGREGATOR_MINI:
        return config.mini_prompt, config.mini_model
    return PromptName.BASELINE_TRANSLATOR, config.aggregator_model


def translate_single(
    client: ChatClient, prompts: PromptRegistry, config: PipelineConfig, latin: str
) -> TranslationTrace:
    """
    Translates with exactly one call, for the single-model variants.

    :raises InputError: if the variant is not a single-model one or the text is invalid
    :raises PipelineError: carrying the empty trace when the call fails
    """
    if not config.variant.is_single:
        raise InputError(f"variant {config.variant.value} is not a single-model variant")
    __check_latin(latin, config)

    started = time.monotonic()
    trace = TranslationTrace(latin, config.variant, config.k)
    prompt_name, model = __single_route(config)

    try:
        call = __call_stage(client, prompts, Stage.PROPOSE, prompt_name, model, latin, 0)
    except PipelineError as error:
        trace.calls.extend(error.calls)
        trace.total_latency = timedelta(seconds=time.monotonic() - started)
        error.trace = trace
        raise

    trace.calls.append(call)
    trace.candidates = [call.content]
    trace.selected = call.content
    trace.final = call.content
    trace.total_latency = timedelta(seconds=time.monotonic() - started)
    return trace


def strip_translation_label(text: str) -> str:
    """
    Removes a leading "Translation:" label, leaving unlabeled text unchanged.
    """
    return TRANSLATION_LABEL.sub("", text, count=1)


def translate_non_literal(
    client: ChatClient,
    prompts: PromptRegistry,
    latin: str,
    literal: str,
    model: str = "aggregator",
    trace: Optional[TranslationTrace] = None,
) -> str:
    """
    Produces a lightly interpreted rendering from a literal translation of the same text.

    :param literal: a literal translation, normally the final output of translate
    :param model: the model to ask
    :param trace: when given, the call is appended to it and its non_literal field is set
    :return: the non-literal translation without its output label
    """
    user = assemble_non_literal_message(latin, literal)
    request = ChatRequest(model, prompts.text(PromptName.NON_LITERAL), user)
    response = client.complete(request)
    result = strip_translation_label(response.content)

    if trace is not None:
        trace.calls.append(StageCall(Stage.NON_LITERAL, None, PromptName.NON_LITERAL, request, response))
        trace.non_literal = result
    return result


def clean_output(client: ChatClient, prompts: PromptRegistry, raw: str, model: str = "aggregator") -> str:
    """
    Asks a model to strip notes, labels and other noise from a raw model translation.

    :param raw: the raw output of a translation model
    :return: the cleaned translation
    """
    if not isinstance(raw, str) or not raw.strip():
        raise InputError("raw output must be a non-empty string")
    request = ChatRequest(model, prompts.text(PromptName.OUTPUT_CLEANER), raw)
    return client.complete(request).content
