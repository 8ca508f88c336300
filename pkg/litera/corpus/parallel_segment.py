from dataclasses import dataclass, field

from litera.common.errors import CorpusError
from litera.corpus.era import Era


@dataclass(frozen=True)
class ParallelSegment:
    """
    A parallel segment is one sentence-aligned Latin source with its English reference translation.
    Leading and trailing whitespace of every text field is trimmed on construction.

    :param id: the id of the segment, unique within its corpus
    :param latin: the Latin source text, never blank
    :param english: the reference translation, empty only in translation-only corpora
    :param era: the period of Latin the source belongs to
    """

    id: str
    latin: str
    english: str = ""
    era: Era = field(default=Era.UNSPECIFIED)

    def __post_init__(self):
        if isinstance(self.id, str):
            object.__setattr__(self, "id", self.id.strip())
        if isinstance(self.latin, str):
            object.__setattr__(self, "latin", self.latin.strip())
        if isinstance(self.english, str):
            object.__setattr__(self, "english", self.english.strip())

        if not isinstance(self.id, str) or not self.id:
            raise CorpusError("segment id must be a non-empty string")
        if not isinstance(self.latin, str) or not self.latin.strip():
            raise CorpusError("latin text is empty", segment_id=self.id)
        if not isinstance(self.english, str):
            raise CorpusError("english text must be a string", segment_id=self.id)
        object.__setattr__(self, "era", Era.parse(self.era))

    @property
    def has_reference(self) -> bool:
        return bool(self.english.strip())

    def to_dict(self) -> dict:
        """
        Returns the JSONL record of this segment. Empty english and an unspecified era are omitted.
        """
        record = {"id": self.id, "latin": self.latin}
        if self.english:
            record["english"] = self.english
        if self.era != Era.UNSPECIFIED:
            record["era"] = self.era.value
        return record
