"""Template-constraint validation for parsed scripts."""

import re

from .parse import is_hex_color
from .primitives import count_path_commands
from .types import (
    ALLOWED_TAGS,
    MAX_RAW_PATH_COMMANDS,
    SvgDocument,
    ValidationReport,
)

_ID_RE = re.compile(r"^path_(\d+)$")

DISALLOWED_ELEMENT = "DISALLOWED_ELEMENT"
BAD_VIEWBOX = "BAD_VIEWBOX"
DUPLICATE_ID = "DUPLICATE_ID"
BAD_ID = "BAD_ID"
NONSEQUENTIAL_ID = "NONSEQUENTIAL_ID"
NON_HEX_COLOR = "NON_HEX_COLOR"
PATH_TOO_LONG = "PATH_TOO_LONG"
UNCLOSED_PATH = "UNCLOSED_PATH"
MISSING_LABEL = "MISSING_LABEL"


def validate_template(doc: SvgDocument, raw_elements) -> ValidationReport:
    """Check a parsed script against the template constraints.

    Errors: disallowed tags, non-512 viewBox, missing/duplicate/gapped ids,
    non-hex colors, raw paths over 5 commands, filled raw paths without Z.
    Missing per-element comments are warnings.
    """
    report = ValidationReport()

    if tuple(doc.viewbox) != (0.0, 0.0, 512.0, 512.0):
        report.add_error(
            BAD_VIEWBOX, f"viewBox must be '0 0 512 512', got {doc.viewbox}"
        )

    seen = set()
    for index, elem in enumerate(raw_elements):
        if elem.tag not in ALLOWED_TAGS:
            report.add_error(
                DISALLOWED_ELEMENT, f"element <{elem.tag}> is not allowed", elem.id
            )
            continue

        m = _ID_RE.match(elem.id or "")
        if not m:
            report.add_error(BAD_ID, f"id '{elem.id}' is not of the form path_<n>", elem.id)
        elif elem.id in seen:
            report.add_error(DUPLICATE_ID, f"duplicate id '{elem.id}'", elem.id)
        else:
            seen.add(elem.id)
            if int(m.group(1)) != index + 1:
                report.add_error(
                    NONSEQUENTIAL_ID,
                    f"id '{elem.id}' at position {index + 1} breaks path_1..path_M order",
                    elem.id,
                )

        for key in ("fill", "stroke"):
            value = elem.style.get(key)
            if value is None or value.strip().lower() == "none":
                continue
            if not is_hex_color(value):
                report.add_error(
                    NON_HEX_COLOR, f"{key} color '{value}' is not hexadecimal", elem.id
                )

        if elem.tag == "path":
            d = elem.attributes.get("d", "")
            n_cmds = count_path_commands(d)
            if n_cmds > MAX_RAW_PATH_COMMANDS:
                report.add_error(
                    PATH_TOO_LONG,
                    f"raw path has {n_cmds} commands (limit {MAX_RAW_PATH_COMMANDS})",
                    elem.id,
                )
            filled = elem.style.get("fill", "").strip().lower() not in ("", "none")
            if filled and not d.rstrip().lower().endswith("z"):
                report.add_error(
                    UNCLOSED_PATH, "filled raw path does not end with Z", elem.id
                )

        if not elem.semantic_label:
            report.add_warning(
                MISSING_LABEL, "element has no preceding semantic comment", elem.id
            )

    return report
