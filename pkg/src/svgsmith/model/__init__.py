from .ids import renumber_ids
from .parse import parse_color, parse_svg, parse_transform
from .primitives import path_data_to_cubics, primitive_to_cubics
from .serialize import color_to_hex, serialize, serialize_primitives
from .types import (
    ALLOWED_TAGS,
    CANVAS_SIZE,
    CommandKind,
    PrimitiveElement,
    Rgba,
    Stroke,
    SvgCommand,
    SvgDocument,
    SvgPath,
    ValidationIssue,
    ValidationReport,
)
from .validate import validate_template

__all__ = [
    "ALLOWED_TAGS",
    "CANVAS_SIZE",
    "CommandKind",
    "PrimitiveElement",
    "Rgba",
    "Stroke",
    "SvgCommand",
    "SvgDocument",
    "SvgPath",
    "ValidationIssue",
    "ValidationReport",
    "color_to_hex",
    "parse_color",
    "parse_svg",
    "parse_transform",
    "path_data_to_cubics",
    "primitive_to_cubics",
    "renumber_ids",
    "serialize",
    "serialize_primitives",
    "validate_template",
]
