import pytest

from litera.common.errors import CorpusError, DuplicateSegmentIdError
from litera.corpus.corpus import Corpus
from litera.corpus.era import Era
from litera.corpus.parallel_segment import ParallelSegment


def test_segment_rejects_blank_latin():
    with pytest.raises(CorpusError, match="segment 's1'"):
        ParallelSegment("s1", "  \t ")


def test_segment_trims_its_fields():
    segment = ParallelSegment(" s1\t", "  Gallia  est ", "\tAll Gaul \n")
    assert (segment.id, segment.latin, segment.english) == ("s1", "Gallia  est", "All Gaul")


def test_segment_parses_era_values():
    assert ParallelSegment("s1", "a", "b", "early_modern").era == Era.EARLY_MODERN


def test_corpus_rejects_duplicate_ids():
    with pytest.raises(DuplicateSegmentIdError):
        Corpus("c", (ParallelSegment("x", "a"), ParallelSegment("x", "b")))


def test_corpus_accessors():
    corpus = Corpus("c", [ParallelSegment("x", "a", "A"), ParallelSegment("y", "b", "B")])

    assert len(corpus) == 2
    assert corpus.get("y").latin == "b"
    assert corpus.sources() == ["a", "b"]
    assert corpus.references() == ["A", "B"]
    with pytest.raises(KeyError):
        corpus.get("z")


def test_by_era_keeps_order():
    corpus = Corpus(
        "c",
        (
            ParallelSegment("a", "1", era=Era.CLASSICAL),
            ParallelSegment("b", "2", era=Era.EARLY_MODERN),
            ParallelSegment("c", "3", era=Era.CLASSICAL),
        ),
    )
    assert corpus.by_era("classical").ids() == ["a", "c"]


def test_check_counts():
    segments = (ParallelSegment("a", "1"), ParallelSegment("b", "2"))
    Corpus("c", segments, {"segment_count": "2"}).check_counts()
    Corpus("c", segments).check_counts()
    with pytest.raises(CorpusError, match="segment_count=3"):
        Corpus("c", segments, {"segment_count": "3"}).check_counts()


def test_demo_corpus(demo_corpus):
    assert len(demo_corpus) == 1
    segment = demo_corpus[0]
    assert segment.latin.startswith("Magno ea fletu")
    assert segment.english.startswith("These things were heard with great weeping")
    assert segment.era == Era.CLASSICAL
