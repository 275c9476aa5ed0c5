"""Exception types shared across the package."""


class SvgSmithError(Exception):
    """Base class for all package errors."""


class SvgParseError(SvgSmithError):
    """Malformed SVG/XML input."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class DisallowedElementError(SvgSmithError):
    """An element outside the allowed primitive set was encountered."""

    def __init__(self, tag):
        super().__init__(f"disallowed element: <{tag}>")
        self.tag = tag


class DegenerateShapeError(SvgSmithError):
    """A primitive or mask too degenerate to process (zero radius, empty mask, ...)."""


class RenderError(SvgSmithError):
    """Rasterization failure, usually non-finite geometry."""

    def __init__(self, message, path_id=None):
        if path_id:
            message = f"{message} [path id: {path_id}]"
        super().__init__(message)
        self.path_id = path_id


class OptimizationError(SvgSmithError):
    """Non-finite loss or other unrecoverable optimizer state."""

    def __init__(self, message, path_id=None):
        if path_id:
            message = f"{message} [path id: {path_id}]"
        super().__init__(message)
        self.path_id = path_id


class TransportError(SvgSmithError):
    """Chat/scorer/enhancer endpoint failure after retries."""


class ReplyFormatError(SvgSmithError):
    """LLM reply could not be parsed into the expected structure."""

    def __init__(self, message, raw_reply=""):
        super().__init__(message)
        self.raw_reply = raw_reply


class ConfigError(SvgSmithError):
    """Missing or invalid configuration (environment variables, flags)."""


class EnhanceError(SvgSmithError):
    """Detail-enhancement service or file ingestion failure."""


class SessionError(SvgSmithError):
    """Edit-session persistence failure (corrupt payload, version mismatch)."""
