"""SvgDocument -> XML text. Round-trips exactly through parse_svg."""

import numpy as np

from .. import geom
from .types import CommandKind, SvgDocument


def _num(x):
    """Shortest exact decimal for a float (repr round-trips)."""
    f = float(x)
    if f == int(f) and abs(f) < 1e16:
        return str(int(f))
    return repr(f)


def color_to_hex(color):
    return "#{:02X}{:02X}{:02X}".format(
        int(round(color.r * 255)), int(round(color.g * 255)), int(round(color.b * 255))
    )


def _path_d(path):
    parts = []
    for cmd in path.commands:
        if cmd.kind is CommandKind.MOVE:
            parts.append(f"M {_num(cmd.points[0][0])} {_num(cmd.points[0][1])}")
        else:
            coords = " ".join(f"{_num(p[0])} {_num(p[1])}" for p in cmd.points)
            parts.append(f"C {coords}")
    if path.closed:
        parts.append("Z")
    return " ".join(parts)


def _sanitize_comment(text):
    return text.replace("--", "- -")


def serialize(doc: SvgDocument) -> str:
    """Serialize a normalized document; every path becomes a <path> element.

    Colors are emitted as hex (alpha as *-opacity when fractional, 'none'
    when zero); identity transforms are omitted.
    """
    vb = doc.viewbox
    lines = [
        f'<svg viewBox="{_num(vb[0])} {_num(vb[1])} {_num(vb[2])} {_num(vb[3])}" '
        'xmlns="http://www.w3.org/2000/svg">'
    ]
    for path in doc.paths:
        if path.semantic_label:
            lines.append(f"    <!-- {_sanitize_comment(path.semantic_label)} -->")
        attrs = [f'id="{path.id}"', f'd="{_path_d(path)}"']
        if path.fill.a == 0.0:
            attrs.append('fill="none"')
        else:
            attrs.append(f'fill="{color_to_hex(path.fill)}"')
            if path.fill.a < 1.0:
                attrs.append(f'fill-opacity="{_num(path.fill.a)}"')
        if path.stroke.width > 0.0 and path.stroke.color.a > 0.0:
            attrs.append(f'stroke="{color_to_hex(path.stroke.color)}"')
            attrs.append(f'stroke-width="{_num(path.stroke.width)}"')
            if path.stroke.color.a < 1.0:
                attrs.append(f'stroke-opacity="{_num(path.stroke.color.a)}"')
        if not np.array_equal(path.transform, geom.IDENTITY_2X3):
            m = path.transform
            vals = ",".join(
                _num(v) for v in (m[0, 0], m[1, 0], m[0, 1], m[1, 1], m[0, 2], m[1, 2])
            )
            attrs.append(f'transform="matrix({vals})"')
        lines.append(f"    <path {' '.join(attrs)}/>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def serialize_primitives(doc: SvgDocument, primitives) -> str:
    """Re-emit the raw template script from parsed primitives.

    Used when showing the current script back to the LLM; preserves the
    original primitive tags instead of normalized cubics.
    """
    vb = doc.viewbox
    lines = [
        f'<svg viewBox="{_num(vb[0])} {_num(vb[1])} {_num(vb[2])} {_num(vb[3])}" '
        'xmlns="http://www.w3.org/2000/svg">'
    ]
    for elem in primitives:
        if elem.semantic_label:
            lines.append(f"    <!-- {_sanitize_comment(elem.semantic_label)} -->")
        attrs = [f'id="{elem.id}"']
        attrs += [f'{k}="{v}"' for k, v in elem.attributes.items()]
        attrs += [f'{k}="{v}"' for k, v in elem.style.items()]
        lines.append(f"    <{elem.tag} {' '.join(attrs)}/>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
