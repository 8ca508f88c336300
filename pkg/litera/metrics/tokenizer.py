import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Tuple

SKIPPED_MARKER = "<skipped>"
ENTITIES = (("&quot;", '"'), ("&amp;", "&"), ("&lt;", "<"), ("&gt;", ">"))

# applied in order, each over the output of the previous one
PATTERNS_13A = (
    (re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])"), r" \1 "),
    (re.compile(r"([^0-9])([\.,])"), r"\1 \2 "),
    (re.compile(r"([\.,])([^0-9])"), r" \1 \2"),
    (re.compile(r"([0-9])(-)"), r"\1 \2 "),
)


@dataclass(frozen=True)
class TokenSequence:
    """
    The tokens of one segment. No token is empty or contains whitespace.
    """

    tokens: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    def join(self) -> str:
        return " ".join(self.tokens)

    def ngrams(self, n: int) -> Counter:
        """
        Counts the n-grams of the sequence.
        """
        return Counter(tuple(self.tokens[i : i + n]) for i in range(len(self.tokens) - n + 1))


def tokenize_13a(text: str) -> TokenSequence:
    """
    Tokenizes text the way the mteval-v13a script does.

    :param text: one segment
    :return: its tokens
    """
    if not text:
        return TokenSequence(())

    text = text.replace(SKIPPED_MARKER, "").replace("-\n", "").replace("\n", " ")
    if "&" in text:
        for entity, character in ENTITIES:
            text = text.replace(entity, character)

    text = f" {text} "
    for pattern, replacement in PATTERNS_13A:
        text = pattern.sub(replacement, text)

    return TokenSequence(tuple(text.split()))
