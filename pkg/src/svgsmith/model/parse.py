"""SVG subset parsing: XML -> (SvgDocument, raw PrimitiveElements)."""

import re
import xml.etree.ElementTree as ET

import numpy as np

from .. import geom
from ..errors import DisallowedElementError, SvgParseError
from .primitives import primitive_to_cubics
from .types import ALLOWED_TAGS, PrimitiveElement, Rgba, Stroke, SvgDocument

# Small fallback table; template scripts are expected to use hex.
NAMED_COLORS = {
    "black": "#000000",
    "white": "#ffffff",
    "red": "#ff0000",
    "green": "#008000",
    "lime": "#00ff00",
    "blue": "#0000ff",
    "yellow": "#ffff00",
    "orange": "#ffa500",
    "pink": "#ffc0cb",
    "purple": "#800080",
    "brown": "#a52a2a",
    "gray": "#808080",
    "grey": "#808080",
}

_HEX_RE = re.compile(r"^#(?:[0-9a-fA-F]{3}|[0-9a-fA-F]{6})$")


def is_hex_color(text):
    return bool(_HEX_RE.match(text.strip()))


def parse_color(text, opacity=1.0):
    """Parse a fill/stroke color string into Rgba; returns None for 'none'."""
    s = (text or "").strip()
    if not s or s.lower() == "none":
        return None
    if s.lower() in NAMED_COLORS:
        s = NAMED_COLORS[s.lower()]
    if not _HEX_RE.match(s):
        raise SvgParseError(f"unknown color '{text}'")
    h = s[1:]
    if len(h) == 3:
        h = "".join(ch * 2 for ch in h)
    r, g, b = (int(h[i : i + 2], 16) / 255.0 for i in (0, 2, 4))
    return Rgba(r, g, b, float(opacity))


_TRANSFORM_RE = re.compile(r"(matrix|translate|scale|rotate)\s*\(([^)]*)\)")
_NUM_RE = re.compile(r"[-+]?(?:\d*\.\d+|\d+\.?)(?:[eE][-+]?\d+)?")


def parse_transform(text):
    """Compose matrix/translate/scale/rotate specs into one 2x3 affine."""
    result = geom.IDENTITY_2X3.copy()
    if not text:
        return result
    matched_len = 0
    for m in _TRANSFORM_RE.finditer(text):
        matched_len += len(m.group(0))
        kind = m.group(1)
        args = [float(v) for v in _NUM_RE.findall(m.group(2))]
        if kind == "matrix":
            if len(args) != 6:
                raise SvgParseError(f"matrix() needs 6 numbers, got {len(args)}")
            a, b, c, d, e, f = args
            t = np.array([[a, c, e], [b, d, f]])
        elif kind == "translate":
            tx = args[0] if args else 0.0
            ty = args[1] if len(args) > 1 else 0.0
            t = np.array([[1.0, 0.0, tx], [0.0, 1.0, ty]])
        elif kind == "scale":
            sx = args[0] if args else 1.0
            sy = args[1] if len(args) > 1 else sx
            t = np.array([[sx, 0.0, 0.0], [0.0, sy, 0.0]])
        else:  # rotate
            ang = np.deg2rad(args[0] if args else 0.0)
            cx = args[1] if len(args) > 1 else 0.0
            cy = args[2] if len(args) > 2 else 0.0
            c, s = np.cos(ang), np.sin(ang)
            rot = np.array([[c, -s, 0.0], [s, c, 0.0]])
            if cx or cy:
                to = np.array([[1.0, 0.0, cx], [0.0, 1.0, cy]])
                back = np.array([[1.0, 0.0, -cx], [0.0, 1.0, -cy]])
                rot = geom.affine_compose(geom.affine_compose(to, rot), back)
            t = rot
        result = geom.affine_compose(result, t)
    if not _TRANSFORM_RE.sub("", text).strip(" ,\t\n"):
        return result
    raise SvgParseError(f"unsupported transform '{text}'")


_STYLE_ATTRS = ("fill", "stroke", "stroke-width", "fill-opacity", "stroke-opacity")


def _local_tag(tag):
    return tag.rsplit("}", 1)[-1] if isinstance(tag, str) else tag


def parse_svg(text):
    """Parse an SVG subset script.

    Returns (SvgDocument, list[PrimitiveElement]). Every primitive is
    normalized to absolute cubics in the document; raw elements keep the
    original attributes for validation and re-serialization. The nearest
    preceding XML comment becomes the element's semantic label.
    """
    try:
        parser = ET.XMLParser(target=ET.TreeBuilder(insert_comments=True))
        root = ET.fromstring(text, parser=parser)
    except ET.ParseError as exc:
        line, col = getattr(exc, "position", (None, None))
        raise SvgParseError(f"malformed XML: {exc.msg.split(':')[0]}", line, col) from exc

    if _local_tag(root.tag) != "svg":
        raise SvgParseError(f"root element is <{_local_tag(root.tag)}>, expected <svg>")

    viewbox = None
    vb_attr = root.get("viewBox")
    if vb_attr:
        nums = [float(v) for v in _NUM_RE.findall(vb_attr)]
        if len(nums) != 4:
            raise SvgParseError(f"bad viewBox '{vb_attr}'")
        viewbox = tuple(nums)
    width = int(viewbox[2]) if viewbox else int(float(root.get("width", 512)))
    height = int(viewbox[3]) if viewbox else int(float(root.get("height", 512)))

    primitives = []
    paths = []
    pending_comment = ""
    for node in root:
        tag = _local_tag(node.tag)
        if callable(node.tag) or tag is ET.Comment or node.tag is ET.Comment:
            pending_comment = (node.text or "").strip()
            continue
        if tag not in ALLOWED_TAGS:
            raise DisallowedElementError(tag)

        attributes = {}
        style = {}
        transform_text = None
        for key, value in node.attrib.items():
            key = _local_tag(key)
            if key == "id":
                continue
            if key in _STYLE_ATTRS:
                style[key] = value
            elif key == "transform":
                transform_text = value
            else:
                attributes[key] = value
        elem = PrimitiveElement(
            tag=tag,
            attributes=attributes,
            style=style,
            id=node.get("id", ""),
            semantic_label=pending_comment,
        )
        if transform_text is not None:
            elem.style["transform"] = transform_text
        # pending_comment is kept: one comment labels every element up to the
        # next comment (the exemplar scripts share e.g. "Legs" over four rects).
        primitives.append(elem)

        path = primitive_to_cubics(elem)
        fill = parse_color(style.get("fill", "#000000"), float(style.get("fill-opacity", 1.0)))
        stroke_color = parse_color(
            style.get("stroke", "none"), float(style.get("stroke-opacity", 1.0))
        )
        width_attr = float(style.get("stroke-width", 1.0))
        if stroke_color is None:
            # stroke="none"/missing: normalized to black with zero width.
            path.stroke = Stroke(Rgba(0, 0, 0, 1.0), 0.0)
        else:
            path.stroke = Stroke(stroke_color, max(0.0, width_attr))
        path.fill = fill if fill is not None else Rgba(0, 0, 0, 0.0)
        if transform_text is not None:
            path.transform = parse_transform(transform_text)
        paths.append(path)

    doc = SvgDocument(paths=paths, width=width, height=height, viewbox=viewbox)
    return doc, primitives
