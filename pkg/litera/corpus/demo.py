from importlib import resources

from litera.corpus.corpus import Corpus
from litera.corpus.corpus_format import CorpusFormat
from litera.corpus.corpus_io import load_corpus

DEMO_FIXTURE = "tacitus.jsonl"


def load_demo_corpus() -> Corpus:
    """
    Loads the bundled one-sentence demo corpus (Tacitus, Annals 4.9).
    """
    with resources.as_file(resources.files("litera.fixtures") / DEMO_FIXTURE) as path:
        return load_corpus(path, CorpusFormat.JSONL)
