"""Exception types shared across the package."""


class CheckpointError(RuntimeError):
    """A resume file is corrupt or does not match the requested run."""


class PrecisionError(ArithmeticError):
    """Interval arithmetic could not separate two quantities; raise the truncation."""


class ResourceLimitError(RuntimeError):
    """A query exceeds the configured memory/compute cap."""
