from litera.common.errors import (
    ConfigurationError,
    InputError,
    LiteraError,
    PromptError,
    ProviderError,
    ScorerError,
)
from litera.common.litera_enum import LiteraEnum


class ExitCode(LiteraEnum):
    """
    The exit statuses of the command line. Stable across releases.
    """

    OK = 0
    CONFIGURATION = 1
    PROVIDER = 2
    INPUT = 3


def exit_code_for(error: LiteraError) -> ExitCode:
    if isinstance(error, (ConfigurationError, PromptError)):
        return ExitCode.CONFIGURATION
    if isinstance(error, InputError):
        return ExitCode.INPUT
    if isinstance(error, (ProviderError, ScorerError)):
        return ExitCode.PROVIDER
    return ExitCode.CONFIGURATION
