from datetime import timedelta
from statistics import mean
from typing import List


class DescriptiveStats:
    """
    A descriptive stats object represents the minimum, average, and maximum measurements of something.
    """

    def __init__(self, minimum, average, maximum):
        self.minimum = minimum
        self.average = average
        self.maximum = maximum

    def __repr__(self):
        return f"{self.__class__.__name__}(minimum={self.minimum}, average={self.average}, maximum={self.maximum})"

    def __str__(self):
        return f"Min: {self.minimum}, Avg: {self.average}, Max: {self.maximum}"

    def to_dict(self) -> dict:
        return {"minimum": self.minimum, "average": self.average, "maximum": self.maximum}


class DescriptiveStatsFloat(DescriptiveStats):
    def __init__(self, minimum: float, average: float, maximum: float):
        super().__init__(minimum, average, maximum)

    @classmethod
    def of(cls, values: List[float]) -> "DescriptiveStatsFloat":
        """
        Summarizes a list of numbers. An empty list summarizes to all zeros.

        :param values: the measurements
        :return: the min, mean and max of the measurements
        """
        if not values:
            return cls(0.0, 0.0, 0.0)
        return cls(min(values), mean(values), max(values))


class DescriptiveStatsTimedelta(DescriptiveStats):
    def __init__(self, minimum: timedelta, average: timedelta, maximum: timedelta):
        super().__init__(minimum, average, maximum)

    @classmethod
    def of(cls, durations: List[timedelta]) -> "DescriptiveStatsTimedelta":
        """
        Summarizes a list of durations. An empty list summarizes to zero durations.

        :param durations: the measured durations
        :return: the shortest, average and longest duration
        """
        if not durations:
            zero = timedelta(0)
            return cls(zero, zero, zero)
        average = sum(durations, timedelta(0)) / len(durations)
        return cls(min(durations), average, max(durations))

    def to_dict(self) -> dict:
        return {
            "minimum": self.minimum.total_seconds(),
            "average": self.average.total_seconds(),
            "maximum": self.maximum.total_seconds(),
        }
