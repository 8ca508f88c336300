import logging
from contextlib import asynccontextmanager
from types import FrameType
from typing import Optional

import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from litera.cli.app_config import AppConfig
from litera.cli.trace_store import TraceStore
from litera.common.errors import InputError, InputTooLongError, PipelineError, ProviderError
from litera.llm.chat_client import ChatClient
from litera.pipeline.stage import Stage
from litera.pipeline.translator import translate, translate_non_literal
from litera.pipeline.variant import Variant
from litera.prompts.registry import PromptRegistry

logger = logging.getLogger(__name__)

API_PREFIX = "/v1"


class TranslateBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    text: str = Field(min_length=1)
    variant: Optional[Variant] = None
    non_literal: bool = False


def error_response(status_code: int, detail: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"detail": detail, **extra})


def create_app(
    config: AppConfig,
    client: ChatClient,
    prompts: Optional[PromptRegistry] = None,
) -> FastAPI:
    """
    Builds the translation service. Requests are served synchronously, each by its own pipeline run.

    :param config: the resolved application configuration
    :param client: the chat client every request translates with
    :param prompts: the prompt registry, loaded from the configuration when omitted
    """
    prompts = prompts or PromptRegistry(config.prompt_override_dir)
    traces = TraceStore(config.service.trace_capacity)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        logger.info("Serving translations with variant %s", config.pipeline.variant.value)
        yield
        begin_draining(app)

    app = FastAPI(title="litera", lifespan=lifespan)
    app.state.draining = False
    app.state.traces = traces

    @app.middleware("http")
    async def refuse_while_draining(request: Request, call_next):
        if request.app.state.draining:
            return error_response(503, "service is shutting down")
        return await call_next(request)

    @app.exception_handler(RequestValidationError)
    async def invalid_body(request: Request, error: RequestValidationError):
        return error_response(400, "invalid request body", errors=jsonable_errors(error))

    @app.get(f"{API_PREFIX}/health")
    def health():
        return {"status": "ok"}

    @app.get(f"{API_PREFIX}/trace/{{trace_id}}")
    def get_trace(trace_id: str, verbose: bool = False):
        trace = traces.get(trace_id)
        if trace is None:
            return error_response(404, f"no trace with id {trace_id}")
        return trace.to_dict(verbose)

    @app.post(f"{API_PREFIX}/translate")
    def post_translate(body: TranslateBody):
        pipeline_config = config.pipeline
        if body.variant is not None:
            pipeline_config = pipeline_config.with_variant(body.variant)

        try:
            trace = translate(client, prompts, pipeline_config, body.text)
        except InputTooLongError as error:
            return error_response(422, str(error))
        except InputError as error:
            return error_response(400, str(error))
        except PipelineError as error:
            trace_id = None
            if error.trace is not None:
                traces.put(error.trace)
                trace_id = error.trace.trace_id
            stage = error.stage.value if error.stage is not None else None
            return error_response(502, str(error), stage=stage, trace_id=trace_id)

        response = {"literal": trace.final, "trace_id": trace.trace_id}
        if body.non_literal:
            try:
                response["non_literal"] = translate_non_literal(
                    client, prompts, body.text, trace.final, config.pipeline.aggregator_model, trace
                )
            except ProviderError as error:
                traces.put(trace)
                return error_response(502, str(error), stage=Stage.NON_LITERAL.value, trace_id=trace.trace_id)

        traces.put(trace)
        return response

    return app


def jsonable_errors(error: RequestValidationError) -> list:
    return [{"loc": list(item.get("loc", ())), "msg": item.get("msg", "")} for item in error.errors()]


def begin_draining(app: FastAPI) -> None:
    if not app.state.draining:
        app.state.draining = True
        logger.info("Draining; new requests are refused")


class DrainingServer(uvicorn.Server):
    """
    A uvicorn server that marks the service as draining the moment an exit signal arrives, before
    listeners close, so requests still reaching it are refused with 503 while in-flight ones finish.
    """

    def __init__(self, config: uvicorn.Config, service: FastAPI):
        super().__init__(config)
        self.service = service

    def handle_exit(self, sig: int, frame: Optional[FrameType]) -> None:
        begin_draining(self.service)
        super().handle_exit(sig, frame)
