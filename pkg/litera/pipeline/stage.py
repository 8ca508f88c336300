from litera.common.litera_enum import LiteraEnum


class Stage(LiteraEnum):
    """
    One arrow of the translation call graph.
    """

    PROPOSE = "propose"
    MIDDLE_REVISE = "middle_revise"
    FILTER = "filter"
    FINAL_REVISE = "final_revise"
    NON_LITERAL = "non_literal"
    CLEAN = "clean"

    @property
    def per_candidate(self) -> bool:
        return self in (Stage.PROPOSE, Stage.MIDDLE_REVISE)
