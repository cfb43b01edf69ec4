"""Exception hierarchy for the threatgraph toolkit.

Every domain failure derives from ``ThreatGraphError`` so callers (notably the
CLI) can separate user/data problems from genuine bugs.
"""
from __future__ import annotations


class ThreatGraphError(Exception):
    """Base class for all domain errors raised by this package."""


class UnknownOperation(ThreatGraphError):
    def __init__(self, op_id: str):
        super().__init__(f"unknown operation id: {op_id!r}")
        self.op_id = op_id


class DslSyntaxError(ThreatGraphError):
    """Malformed attack-vector expression text."""

    def __init__(self, position: int, expected: tuple[str, ...], found: str):
        expected_text = " or ".join(expected)
        super().__init__(
            f"syntax error at position {position}: expected {expected_text}, found {found!r}"
        )
        self.position = position
        self.expected = expected
        self.found = found


class EmptyGroup(ThreatGraphError):
    def __init__(self, position: int):
        super().__init__(f"empty group at position {position}")
        self.position = position


class CycleIntroduced(ThreatGraphError):
    """Building or merging graphs would create a directed cycle."""

    def __init__(self, offender: str | tuple[str, str]):
        super().__init__(f"cycle introduced at {offender!r}")
        self.offender = offender


class MalformedInput(ThreatGraphError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NodeNotInGraph(ThreatGraphError):
    def __init__(self, op_id: str, domain: str):
        super().__init__(f"operation {op_id!r} is not a node of the {domain} graph")
        self.op_id = op_id
        self.domain = domain


class TooFewSamples(ThreatGraphError):
    pass


class OutOfRange(ThreatGraphError):
    pass


class SingleClassTraining(ThreatGraphError):
    def __init__(self, kind: str):
        super().__init__(f"{kind} requires both classes in the training set")
        self.kind = kind


class NonBinaryFeature(ThreatGraphError):
    pass


class WidthMismatch(ThreatGraphError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"feature width mismatch: model expects {expected}, got {got}")
        self.expected = expected
        self.got = got


class LengthMismatch(ThreatGraphError):
    pass


class VersionMismatch(ThreatGraphError):
    pass


class CorruptModel(ThreatGraphError):
    pass


class NoEligibleModel(ThreatGraphError):
    def __init__(self, group: str):
        super().__init__(f"no candidate model for group {group!r} clears the precision floor")
        self.group = group


class InvalidCount(ThreatGraphError):
    pass


class ConfigError(ThreatGraphError):
    pass
