"""Exception hierarchy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class OnePlaneError(Exception):
    """Base class for all errors raised by :mod:`onepl`."""


class InvalidEmbeddingError(OnePlaneError):
    """The input is not a valid connected 1-plane embedding."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "invalid embedding")


class XCrossingError(OnePlaneError):
    """The embedding contains a crossing with no edge between consecutive endpoints."""

    def __init__(self, crossing: int, endpoints):
        self.crossing = crossing
        self.endpoints = tuple(endpoints)
        super().__init__(
            f"crossing {crossing} (endpoints {' '.join(map(str, self.endpoints))}) is an x-crossing"
        )


class InternalInvariantError(OnePlaneError):
    """A property guaranteed by construction failed to hold."""


class WidthBlowupError(InternalInvariantError):
    """A window's decomposition exceeded the configured bag-size ceiling."""

    def __init__(self, bag_size: int, ceiling: int, window: int | None = None):
        self.bag_size = bag_size
        self.ceiling = ceiling
        self.window = window
        where = f" in window {window}" if window is not None else ""
        super().__init__(f"width blowup{where}: bag of size {bag_size} exceeds ceiling {ceiling}")


class FormatError(OnePlaneError):
    """A `.1pl` / `.pg` document could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
