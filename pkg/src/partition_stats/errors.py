"""Exception hierarchy shared by every module."""
from __future__ import annotations


class PartitionStatsError(ValueError):
    """Base class for all domain errors raised by this package."""


class EmptyInput(PartitionStatsError):
    pass


class NonFiniteValue(PartitionStatsError):
    def __init__(self, index: int | None = None, value: float | None = None):
        self.index = index
        self.value = value
        where = "" if index is None else f" at index {index}"
        super().__init__(f"non-finite value{where}: {value!r}")


class ZeroSample(PartitionStatsError):
    pass


class TiedBoundaries(PartitionStatsError):
    pass


class InvalidTruncationBounds(PartitionStatsError):
    pass


class TooFewPoints(PartitionStatsError):
    pass


class OutOfRangeQuantile(PartitionStatsError):
    pass


class UninvertiblePolicy(PartitionStatsError):
    pass


class NotNormalized(PartitionStatsError):
    pass


class NegativeProbability(PartitionStatsError):
    pass


class MalformedDistribution(PartitionStatsError):
    pass


class InsufficientReplications(PartitionStatsError):
    pass


class IndexOutOfRange(PartitionStatsError):
    pass


class QuadratureFailure(PartitionStatsError):
    pass


class InputParseError(PartitionStatsError):
    def __init__(self, line: int, text: str):
        self.line = line
        self.text = text
        super().__init__(f"line {line}: cannot parse {text!r} as a number")


class ConfigError(PartitionStatsError):
    """Bad command line; ``flag`` names the offending option when known."""

    def __init__(self, message: str, flag: str | None = None):
        self.flag = flag
        super().__init__(message)


class UnknownFlag(ConfigError):
    pass


class MissingRequired(ConfigError):
    pass


class MalformedValue(ConfigError):
    pass
