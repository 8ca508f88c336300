from enum import Enum

from litera.common.errors import InputError


class LiteraEnum(Enum):
    """
    A custom enumeration for usage throughout litera to allow the generation of a list of the values contained in
    the enumeration.
    """

    @classmethod
    def values(cls):
        return list(cls.__members__.values())

    @classmethod
    def parse(cls, value):
        """
        Looks up a member by its value, accepting an existing member unchanged.

        :param value: a member or the string value of a member
        :return: the matching member
        :raises InputError: if no member has the provided value
        """
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            valid = ", ".join(str(member.value) for member in cls.values())
            raise InputError(
                f"Unknown {cls.__name__} '{value}'. Valid values: {valid}"
            ) from None
