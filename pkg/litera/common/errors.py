from typing import Optional


class LiteraError(Exception):
    """
    Base class of every error raised on purpose by litera.
    """


class ConfigurationError(LiteraError):
    """
    Raised when litera is misconfigured, always before any provider or scorer is contacted.
    """


class InputError(LiteraError, ValueError):
    """
    Raised when caller supplied input violates a precondition.
    """


class InputTooLongError(InputError):
    """
    Raised when a Latin input exceeds the configured character limit.
    """

    def __init__(self, length: int, limit: int):
        super().__init__(
            f"Input of {length} characters exceeds the limit of {limit} characters"
        )
        self.length = length
        self.limit = limit


class CorpusError(InputError):
    """
    Raised when a corpus file or a corpus record is invalid.

    :param message: what is wrong
    :param line_number: the 1-based line the problem was found on, if any
    :param segment_id: the id of the offending segment, if known
    """

    def __init__(
        self,
        message: str,
        line_number: Optional[int] = None,
        segment_id: Optional[str] = None,
    ):
        location = []
        if line_number is not None:
            location.append(f"line {line_number}")
        if segment_id is not None:
            location.append(f"segment '{segment_id}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number
        self.segment_id = segment_id


class DuplicateSegmentIdError(CorpusError):
    def __init__(self, segment_id: str, first_line: int, second_line: int):
        super().__init__(
            f"duplicate segment id '{segment_id}' on lines {first_line} and {second_line}",
            line_number=second_line,
            segment_id=segment_id,
        )
        self.first_line = first_line
        self.second_line = second_line


class PromptError(LiteraError):
    pass


class UnknownPromptError(PromptError, LookupError):
    pass


class PromptIntegrityError(PromptError):
    """
    Raised when a registered prompt no longer byte-equals its recorded checksum.
    """


class ProviderError(LiteraError):
    """
    Base class of chat-completion failures.
    """


class TransientProviderError(ProviderError):
    """
    A failure worth retrying: rate limiting, a 5xx status, a timeout or a dropped connection.
    """


class PermanentProviderError(ProviderError):
    """
    A failure that retrying cannot fix, such as a rejected request or failed authentication.
    """


class RetryExhaustedError(ProviderError):
    def __init__(self, attempts: int, last_error: Optional[BaseException]):
        super().__init__(
            f"Gave up after {attempts} attempts; last error: {last_error}"
        )
        self.attempts = attempts
        self.last_error = last_error


class PipelineError(ProviderError):
    """
    Raised when a stage of a translation fails. Carries everything that completed before the failure.

    :param message: what went wrong
    :param stage: the stage that failed
    :param candidate_index: the candidate the failed stage belonged to, if any
    :param trace: the partial translation trace
    :param calls: completed stage calls when no trace has been assembled yet
    """

    def __init__(
        self,
        message: str,
        stage=None,
        candidate_index: Optional[int] = None,
        trace=None,
        calls=None,
    ):
        where = ""
        if stage is not None:
            stage_name = getattr(stage, "value", stage)
            where = f"[{stage_name}"
            if candidate_index is not None:
                where += f" #{candidate_index}"
            where += "] "
        super().__init__(f"{where}{message}")
        self.stage = stage
        self.candidate_index = candidate_index
        self.trace = trace
        self.calls = list(calls) if calls is not None else []


class ScorerError(LiteraError):
    pass


class ScorerConfigurationError(ScorerError, ConfigurationError):
    pass


class ScorerRuntimeError(ScorerError):
    pass


class ScorerProtocolError(ScorerError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number
