from pathlib import Path

from litera.common.litera_enum import LiteraEnum


class CorpusFormat(LiteraEnum):
    """
    The on-disk formats a corpus can be read from and written to.
    """

    JSONL = "jsonl"
    TSV = "tsv"

    @classmethod
    def from_path(cls, path: Path | str) -> "CorpusFormat":
        """
        Infers the format from a file suffix.

        :param path: a path ending in .jsonl or .tsv
        :return: the matching format
        """
        suffix = Path(path).suffix.lower().lstrip(".")
        if suffix == "json":
            suffix = "jsonl"
        return cls.parse(suffix)
