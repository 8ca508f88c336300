from typing import Optional, Sequence

from unidecode import unidecode

NEAREST_CANDIDATE_MAX_RATIO = 0.2


def fold(text: str) -> str:
    """
    Folds text for comparison: transliterated to ASCII, casefolded, whitespace collapsed.
    """
    return " ".join(unidecode(text).casefold().split())


def edit_distance(first: str, second: str) -> int:
    """
    The Levenshtein distance between two strings.
    """
    if len(first) < len(second):
        first, second = second, first

    previous = list(range(len(second) + 1))
    for i, a in enumerate(first, start=1):
        current = [i]
        for j, b in enumerate(second, start=1):
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (a != b)))
        previous = current
    return previous[-1]


def normalized_distance(first: str, second: str) -> float:
    """
    The edit distance of the folded texts relative to the longer of them, in [0, 1].
    """
    first, second = fold(first), fold(second)
    longest = max(len(first), len(second))
    if longest == 0:
        return 0.0
    return edit_distance(first, second) / longest


def nearest_candidate_index(selected: str, candidates: Sequence[str]) -> Optional[int]:
    """
    Finds the candidate the filter output most likely copied.

    :param selected: the filter output
    :param candidates: the candidates in index order
    :return: the index of the closest candidate, the lowest on ties, or None when even the closest
        differs by more than a fifth of its length
    """
    best_index, best_distance = None, None
    for index, candidate in enumerate(candidates):
        distance = normalized_distance(selected, candidate)
        if best_distance is None or distance < best_distance:
            best_index, best_distance = index, distance

    if best_distance is None or best_distance > NEAREST_CANDIDATE_MAX_RATIO:
        return None
    return best_index
