import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from litera.common.errors import CorpusError, DuplicateSegmentIdError, InputError
from litera.common.json_constants import INDENT
from litera.corpus.corpus import Corpus
from litera.corpus.corpus_format import CorpusFormat
from litera.corpus.era import Era
from litera.corpus.parallel_segment import ParallelSegment
from litera.corpus.tsv_column_indicie import (
    IdentifiedColumnIndicie,
    LatinEnglishColumnIndicie,
    TsvColumnLayout,
)

logger = logging.getLogger(__name__)

AUTO_ID_FORMAT = "{:06d}"
METADATA_SUFFIX = ".meta.json"
JSONL_KEYS = {"id", "latin", "english", "era"}


def metadata_path(path: Path) -> Path:
    """
    Returns the sidecar file holding a corpus's name and metadata.

    :param path: the corpus file
    """
    return path.with_name(path.name + METADATA_SUFFIX)


def __optional_string(record: dict, key: str, line_number: int) -> Optional[str]:
    value = record.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise CorpusError(f"'{key}' must be a string", line_number=line_number)
    return value


def __parse_jsonl_line(line: str, line_number: int) -> Tuple[Optional[str], str, str, str]:
    """
    Parses one JSONL corpus line into its raw fields.

    :param line: the line without its trailing newline
    :param line_number: the 1-based line number used in error messages
    :return: the id (None when absent), latin, english and era value
    """
    try:
        record = json.loads(line)
    except json.JSONDecodeError as error:
        raise CorpusError(f"malformed JSON ({error.msg})", line_number=line_number) from None

    if not isinstance(record, dict):
        raise CorpusError("expected a JSON object", line_number=line_number)

    unknown = set(record) - JSONL_KEYS
    if unknown:
        raise CorpusError(f"unexpected keys {sorted(unknown)}", line_number=line_number)

    if "latin" not in record:
        raise CorpusError("missing required key 'latin'", line_number=line_number)

    segment_id = __optional_string(record, "id", line_number)
    latin = __optional_string(record, "latin", line_number) or ""
    english = __optional_string(record, "english", line_number) or ""
    era = __optional_string(record, "era", line_number) or Era.UNSPECIFIED.value

    return segment_id, latin, english, era


def __parse_tsv_line(line: str, line_number: int) -> Tuple[Optional[str], str, str, str]:
    """
    Parses one TSV corpus line. The layout is chosen by the number of cells.

    :param line: the line without its trailing newline
    :param line_number: the 1-based line number used in error messages
    :return: the id (None when absent), latin, english and era value
    """
    cells = line.split("\t")

    try:
        layout = TsvColumnLayout(len(cells))
    except ValueError:
        raise CorpusError(
            f"expected 1 to {len(TsvColumnLayout.values())} tab separated columns, found {len(cells)}",
            line_number=line_number,
        ) from None

    if layout == TsvColumnLayout.LATIN_ONLY:
        return None, cells[0], "", Era.UNSPECIFIED.value
    if layout == TsvColumnLayout.LATIN_ENGLISH:
        return (
            None,
            cells[LatinEnglishColumnIndicie.LATIN.value],
            cells[LatinEnglishColumnIndicie.ENGLISH.value],
            Era.UNSPECIFIED.value,
        )

    era = Era.UNSPECIFIED.value
    if layout == TsvColumnLayout.ID_LATIN_ENGLISH_ERA:
        era = cells[IdentifiedColumnIndicie.ERA.value].strip() or era

    return (
        cells[IdentifiedColumnIndicie.ID.value].strip() or None,
        cells[IdentifiedColumnIndicie.LATIN.value],
        cells[IdentifiedColumnIndicie.ENGLISH.value],
        era,
    )


def __read_metadata(path: Path) -> Tuple[str, Dict[str, str]]:
    sidecar = metadata_path(path)
    if not sidecar.exists():
        return path.stem, {}

    try:
        with open(sidecar, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as error:
        raise CorpusError(f"unreadable corpus metadata {sidecar}: {error}") from None

    return data.get("name", path.stem), dict(data.get("metadata", {}))


def load_corpus(path: Path | str, format: CorpusFormat | str) -> Corpus:
    """
    Loads a parallel corpus, preserving the order of the file. Leading and trailing whitespace of
    every field is trimmed; interior whitespace is kept. Segments without an id are given their
    zero-padded ordinal as id, moving on to the next free ordinal when an explicit id already holds it.

    :param path: the corpus file
    :param format: jsonl or tsv
    :return: the loaded corpus
    :raises CorpusError: naming the line of a malformed record, both lines of a duplicated id,
        or the segment whose latin text is empty
    """
    path = Path(path)
    format = CorpusFormat.parse(format)
    parse_line = __parse_jsonl_line if format == CorpusFormat.JSONL else __parse_tsv_line

    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            lines = f.read().split("\n")
    except OSError as error:
        raise CorpusError(f"cannot read corpus {path}: {error}") from None

    records = []
    for line_number, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\r")
        if line.strip():
            segment_id, latin, english, era = parse_line(line, line_number)
            segment_id = segment_id.strip() if segment_id is not None else ""
            records.append((line_number, segment_id, latin, english, era))

    explicit_ids = {segment_id for _, segment_id, _, _, _ in records if segment_id}
    segments: List[ParallelSegment] = []
    first_seen: Dict[str, int] = {}
    ordinal = 0

    for line_number, segment_id, latin, english, era in records:
        if not segment_id:
            ordinal = max(ordinal, len(segments)) + 1
            while AUTO_ID_FORMAT.format(ordinal) in explicit_ids:
                ordinal += 1
            segment_id = AUTO_ID_FORMAT.format(ordinal)
        elif segment_id in first_seen:
            raise DuplicateSegmentIdError(segment_id, first_seen[segment_id], line_number)
        first_seen[segment_id] = line_number

        if not latin.strip():
            raise CorpusError("latin text is empty", line_number=line_number, segment_id=segment_id)

        try:
            segments.append(
                ParallelSegment(segment_id, latin.strip(), english.strip(), Era.parse(era))
            )
        except CorpusError as error:
            raise CorpusError(str(error), line_number=line_number) from None
        except InputError as error:
            raise CorpusError(str(error), line_number=line_number, segment_id=segment_id) from None

    name, metadata = __read_metadata(path)
    corpus = Corpus(name, tuple(segments), metadata)
    logger.debug("Loaded %d segments from %s", len(corpus), path)
    return corpus


def __tsv_cell(segment: ParallelSegment, value: str) -> str:
    if "\t" in value or "\n" in value or "\r" in value:
        raise CorpusError("text containing tabs or newlines cannot be written as TSV", segment_id=segment.id)
    return value


def __to_tsv_line(segment: ParallelSegment) -> str:
    cells = [
        __tsv_cell(segment, segment.id),
        __tsv_cell(segment, segment.latin),
        __tsv_cell(segment, segment.english),
    ]
    if segment.era != Era.UNSPECIFIED:
        cells.append(segment.era.value)
    return "\t".join(cells)


def __to_jsonl_line(segment: ParallelSegment) -> str:
    return json.dumps(segment.to_dict(), ensure_ascii=False)


def save_corpus(corpus: Corpus, path: Path | str, format: CorpusFormat | str) -> None:
    """
    Writes a corpus in UTF-8 with LF line endings, one segment per line, in corpus order. The name and
    metadata go to a sidecar file when the metadata is not empty so that loading the file again
    yields an equal corpus.

    :param corpus: the corpus to write
    :param path: the destination file
    :param format: jsonl or tsv
    :raises CorpusError: if the file cannot be written
    """
    path = Path(path)
    format = CorpusFormat.parse(format)
    to_line = __to_jsonl_line if format == CorpusFormat.JSONL else __to_tsv_line

    lines = [to_line(segment) for segment in corpus.segments]

    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for line in lines:
                f.write(line + "\n")

        sidecar = metadata_path(path)
        if corpus.metadata or corpus.name != path.stem:
            with open(sidecar, "w", encoding="utf-8", newline="\n") as f:
                json.dump(
                    {"name": corpus.name, "metadata": corpus.metadata},
                    f,
                    indent=INDENT,
                    ensure_ascii=False,
                )
        elif sidecar.exists():
            sidecar.unlink()
    except OSError as error:
        raise CorpusError(f"cannot write corpus {path}: {error}") from None

    logger.debug("Saved %d segments to %s", len(corpus), path)
