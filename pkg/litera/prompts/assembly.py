from typing import List, Sequence

from litera.common.errors import InputError

DEFAULT_CANDIDATE_COUNT = 5
REVISION_INSTRUCTION = "Return a corrected translation or the same if it is accurate:"
COMPARISON_HEADER = "Given these {count} translations, select the best one based on this Latin provided text: "
NON_LITERAL_LATIN_LABEL = "Latin Text: "
NON_LITERAL_LITERAL_LABEL = "Literal English Translation: "

# only the default count is spelled out
SPELLED_COUNTS = {DEFAULT_CANDIDATE_COUNT: "five"}


def __require(value: str, label: str) -> None:
    if not isinstance(value, str) or not value:
        raise InputError(f"{label} must be a non-empty string")


def assemble_revision_message(latin: str, translation: str) -> str:
    """
    Builds the user message of a revision call. Both texts are interpolated verbatim.

    :param latin: the Latin source
    :param translation: the translation to revise
    :return: the revision user message
    """
    __require(latin, "latin")
    __require(translation, "translation")
    return f"{REVISION_INSTRUCTION}\nLatin text: {latin}\nTranslation:\n{translation}"


def comparison_header(count: int) -> str:
    """
    Returns the comparison header for a number of candidates. Counts other than five are written as digits.
    """
    return COMPARISON_HEADER.format(count=SPELLED_COUNTS.get(count, str(count)))


def assemble_comparison_message(
    latin: str, candidates: Sequence[str], k: int = DEFAULT_CANDIDATE_COUNT
) -> str:
    """
    Builds the user message of the filter call: the Latin source followed by the candidates
    numbered from 1 in the order given. The space before the first newline is part of the format.

    :param latin: the Latin source
    :param candidates: the candidate translations in generation order
    :param k: the number of candidates the pipeline generated
    :return: the comparison user message
    """
    __require(latin, "latin")
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    if len(candidates) != k:
        raise InputError(f"expected {k} candidates, got {len(candidates)}")

    lines: List[str] = [comparison_header(k), f"\n{latin}"]
    for number, candidate in enumerate(candidates, start=1):
        lines.append(f"\n{number}. {candidate}")
    return "".join(lines)


def assemble_non_literal_message(latin: str, literal: str) -> str:
    """
    Builds the user message of the non-literal pass in the prompt's INPUT FORMAT.

    :param latin: the Latin source
    :param literal: the literal translation produced by the pipeline
    :return: the non-literal user message
    """
    __require(latin, "latin")
    __require(literal, "literal translation")
    return f"{NON_LITERAL_LATIN_LABEL}{latin}\n{NON_LITERAL_LITERAL_LABEL}{literal}"
