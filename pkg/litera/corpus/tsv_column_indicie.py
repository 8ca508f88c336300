from litera.common.litera_enum import LiteraEnum


class TsvColumnLayout(LiteraEnum):
    """
    The TSV layouts a corpus line may take, keyed by the number of tab separated cells.
    """

    LATIN_ONLY = 1
    LATIN_ENGLISH = 2
    ID_LATIN_ENGLISH = 3
    ID_LATIN_ENGLISH_ERA = 4


class LatinEnglishColumnIndicie(LiteraEnum):
    """
    Indicies for a two column latin<TAB>english line.
    """

    LATIN = 0
    ENGLISH = 1


class IdentifiedColumnIndicie(LiteraEnum):
    """
    Indicies for a three or four column id<TAB>latin<TAB>english[<TAB>era] line.
    """

    ID = 0
    LATIN = 1
    ENGLISH = 2
    ERA = 3
