from litera.common.litera_enum import LiteraEnum


class Era(LiteraEnum):
    """
    The period of Latin a segment was written in.
    """

    CLASSICAL = "classical"
    EARLY_MODERN = "early_modern"
    UNSPECIFIED = "unspecified"
