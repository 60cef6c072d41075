"""Exception types shared across the package."""


class DevrolesError(Exception):
    """Base class for all errors raised by this package."""


class PatchFormatError(DevrolesError):
    """A patch-stream record header could not be parsed.

    Carries the byte offset of the offending header line so the input can
    be inspected directly.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ConfigError(DevrolesError):
    """Invalid run configuration or unusable input files (CLI exit code 2)."""


class DegenerateAnalysisError(DevrolesError):
    """An analysis is undefined for the given data (e.g. an empty block)."""


class PlantError(DevrolesError):
    """A synthetic fixture cannot satisfy its planted guarantees."""
