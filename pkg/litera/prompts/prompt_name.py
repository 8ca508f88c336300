from litera.common.litera_enum import LiteraEnum


class PromptName(LiteraEnum):
    """
    The system prompts the translation pipeline and its evaluation flows send.
    """

    FINE_TUNED_SYSTEM = "fine_tuned_system"
    REVISION = "revision"
    FINAL_FILTER = "final_filter"
    NON_LITERAL = "non_literal"
    BASELINE_TRANSLATOR = "baseline_translator"
    OUTPUT_CLEANER = "output_cleaner"
