from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Tuple

from litera.common.errors import CorpusError, DuplicateSegmentIdError
from litera.corpus.era import Era
from litera.corpus.parallel_segment import ParallelSegment

SEGMENT_COUNT_KEY = "segment_count"


@dataclass(frozen=True)
class Corpus:
    """
    A corpus is an ordered collection of parallel segments plus free-form string metadata
    such as provenance, license and counts.
    """

    name: str
    segments: Tuple[ParallelSegment, ...] = ()
    metadata: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "metadata", {str(k): str(v) for k, v in self.metadata.items()})

        seen = {}
        for position, segment in enumerate(self.segments, start=1):
            if segment.id in seen:
                raise DuplicateSegmentIdError(segment.id, seen[segment.id], position)
            seen[segment.id] = position

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self) -> Iterator[ParallelSegment]:
        return iter(self.segments)

    def __getitem__(self, index: int) -> ParallelSegment:
        return self.segments[index]

    def get(self, segment_id: str) -> ParallelSegment:
        """
        Returns the segment with the provided id.

        :param segment_id: the id to look up
        :raises KeyError: if no segment has that id
        """
        for segment in self.segments:
            if segment.id == segment_id:
                return segment
        raise KeyError(segment_id)

    def ids(self) -> List[str]:
        return [segment.id for segment in self.segments]

    def sources(self) -> List[str]:
        return [segment.latin for segment in self.segments]

    def references(self) -> List[str]:
        return [segment.english for segment in self.segments]

    def by_era(self, era: Era | str) -> "Corpus":
        """
        Returns a new corpus holding only the segments of the provided era, in order.
        """
        era = Era.parse(era)
        return Corpus(
            self.name,
            tuple(segment for segment in self.segments if segment.era == era),
            dict(self.metadata),
        )

    def check_counts(self) -> None:
        """
        Confirms the segment count recorded in the metadata, when there is one, matches the segments held.

        :raises CorpusError: if the recorded count disagrees
        """
        recorded = self.metadata.get(SEGMENT_COUNT_KEY)
        if recorded is None:
            return
        if not recorded.isdigit() or int(recorded) != len(self.segments):
            raise CorpusError(
                f"corpus '{self.name}' records {SEGMENT_COUNT_KEY}={recorded} but holds {len(self.segments)} segments"
            )

    def __str__(self):
        return f"Corpus(name='{self.name}', segments={len(self.segments)}, metadata={self.metadata})"
