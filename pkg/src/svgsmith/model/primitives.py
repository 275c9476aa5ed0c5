"""Conversion of template primitives to normalized cubic-Bézier paths."""

import re

import numpy as np

from .. import geom
from ..errors import DegenerateShapeError, SvgParseError
from .types import CommandKind, PrimitiveElement, Rgba, Stroke, SvgCommand, SvgPath

_NUMBER_RE = re.compile(r"[-+]?(?:\d*\.\d+|\d+\.?)(?:[eE][-+]?\d+)?")


def _floats(text):
    return [float(m) for m in _NUMBER_RE.findall(text or "")]


def _attr(elem, name, default=None):
    if name in elem.attributes:
        return float(elem.attributes[name])
    if default is None:
        raise SvgParseError(f"<{elem.tag}> missing required attribute '{name}'")
    return float(default)


def _cubic_cmds(cubics):
    return [SvgCommand(CommandKind.CUBIC, ctrl[1:]) for ctrl in cubics]


def _polyline_cubics(points, close):
    pts = [np.asarray(p, dtype=float) for p in points]
    if close and not np.allclose(pts[0], pts[-1]):
        pts.append(pts[0])
    return [geom.line_as_cubic(a, b) for a, b in zip(pts[:-1], pts[1:])]


def rect_cubics(x, y, w, h):
    if w <= 0 or h <= 0:
        raise DegenerateShapeError(f"rect with non-positive size {w}x{h}")
    corners = [(x, y), (x + w, y), (x + w, y + h), (x, y + h)]
    return _polyline_cubics(corners, close=True)


def ellipse_cubics(cx, cy, rx, ry):
    if rx <= 0 or ry <= 0:
        raise DegenerateShapeError(f"ellipse with non-positive radius {rx},{ry}")
    k = geom.CIRCLE_KAPPA
    c = np.array([cx, cy])
    # Four tangent-matched quarter arcs, starting at (cx + rx, cy).
    p = [
        c + [rx, 0.0],
        c + [0.0, ry],
        c + [-rx, 0.0],
        c + [0.0, -ry],
    ]
    off = [
        (np.array([0.0, ry * k]), np.array([rx * k, 0.0])),
        (np.array([-rx * k, 0.0]), np.array([0.0, ry * k])),
        (np.array([0.0, -ry * k]), np.array([-rx * k, 0.0])),
        (np.array([rx * k, 0.0]), np.array([0.0, -ry * k])),
    ]
    cubics = []
    for i in range(4):
        a, b = p[i], p[(i + 1) % 4]
        d1, d2 = off[i]
        cubics.append(np.array([a, a + d1, b + d2, b]))
    return cubics


def primitive_to_cubics(elem: PrimitiveElement) -> SvgPath:
    """Normalize a raw primitive into a Move+Cubic SvgPath.

    Closed primitives (rect/circle/ellipse/polygon, Z-terminated paths) are
    marked closed. Style attributes are not interpreted here; the caller
    attaches fill/stroke.
    """
    tag = elem.tag
    closed = False
    if tag == "rect":
        x, y = _attr(elem, "x", 0.0), _attr(elem, "y", 0.0)
        w, h = _attr(elem, "width"), _attr(elem, "height")
        cubics = rect_cubics(x, y, w, h)
        closed = True
    elif tag == "circle":
        r = _attr(elem, "r")
        if r <= 0:
            raise DegenerateShapeError("circle with non-positive radius")
        cubics = ellipse_cubics(_attr(elem, "cx", 0.0), _attr(elem, "cy", 0.0), r, r)
        closed = True
    elif tag == "ellipse":
        cubics = ellipse_cubics(
            _attr(elem, "cx", 0.0),
            _attr(elem, "cy", 0.0),
            _attr(elem, "rx"),
            _attr(elem, "ry"),
        )
        closed = True
    elif tag == "line":
        p0 = (_attr(elem, "x1", 0.0), _attr(elem, "y1", 0.0))
        p1 = (_attr(elem, "x2", 0.0), _attr(elem, "y2", 0.0))
        if np.allclose(p0, p1):
            raise DegenerateShapeError("zero-length line")
        cubics = [geom.line_as_cubic(p0, p1)]
    elif tag in ("polyline", "polygon"):
        nums = _floats(elem.attributes.get("points", ""))
        if len(nums) < 4 or len(nums) % 2:
            raise DegenerateShapeError(f"{tag} needs at least 2 points")
        pts = np.array(nums, dtype=float).reshape(-1, 2)
        closed = tag == "polygon"
        if closed and pts.shape[0] < 3 and not np.allclose(pts[0], pts[-1]):
            raise DegenerateShapeError("polygon needs at least 3 points")
        cubics = _polyline_cubics(pts, close=closed)
        if not cubics:
            raise DegenerateShapeError(f"degenerate {tag}")
    elif tag == "path":
        cmds, closed = path_data_to_cubics(elem.attributes.get("d", ""))
        return SvgPath(
            id=elem.id,
            commands=cmds,
            closed=closed,
            semantic_label=elem.semantic_label,
        )
    else:
        raise SvgParseError(f"cannot convert <{tag}> to cubics")

    commands = [SvgCommand(CommandKind.MOVE, cubics[0][:1])] + _cubic_cmds(cubics)
    return SvgPath(
        id=elem.id, commands=commands, closed=closed, semantic_label=elem.semantic_label
    )


_PATH_CMD_RE = re.compile(r"([MmLlHhVvCcSsQqTtAaZz])|" + _NUMBER_RE.pattern)


def tokenize_path_data(d):
    tokens = []
    for m in _PATH_CMD_RE.finditer(d or ""):
        if m.group(1):
            tokens.append(m.group(1))
        else:
            tokens.append(float(m.group(0)))
    return tokens


def count_path_commands(d):
    """Number of command letters in raw path data, Z excluded."""
    return sum(
        1 for m in _PATH_CMD_RE.finditer(d or "") if m.group(1) and m.group(1) not in "Zz"
    )


def path_data_to_cubics(d):
    """Parse SVG path data into SvgCommands, normalizing everything to
    absolute Move + Cubic. Returns (commands, closed).

    Supports M L H V C S Q T A Z in absolute and relative form. Arcs and
    quadratics are converted to cubics; lines are degree-elevated.
    """
    tokens = tokenize_path_data(d)
    if not tokens:
        raise SvgParseError("empty path data")
    commands = []
    pos = np.zeros(2)
    start = np.zeros(2)
    last_cubic_ctrl = None
    last_quad_ctrl = None
    closed = False
    i = 0
    cmd = None

    def take(n):
        nonlocal i
        if i + n > len(tokens) or any(isinstance(t, str) for t in tokens[i : i + n]):
            raise SvgParseError(f"path data: not enough arguments for '{cmd}'")
        vals = tokens[i : i + n]
        i += n
        return vals

    def emit_cubic(ctrl):
        commands.append(SvgCommand(CommandKind.CUBIC, np.asarray(ctrl)[1:]))

    while i < len(tokens):
        if isinstance(tokens[i], str):
            cmd = tokens[i]
            i += 1
        elif cmd is None:
            raise SvgParseError("path data must start with a command letter")
        elif cmd in "Mm":
            # Implicit lineto after moveto.
            cmd = "L" if cmd == "M" else "l"
        elif cmd in "Zz":
            raise SvgParseError("numeric arguments after Z")
        rel = cmd.islower()
        op = cmd.upper()

        if op == "M":
            x, y = take(2)
            pos = pos + [x, y] if rel else np.array([x, y], dtype=float)
            start = pos.copy()
            commands.append(SvgCommand(CommandKind.MOVE, pos[None, :]))
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "L":
            x, y = take(2)
            target = pos + [x, y] if rel else np.array([x, y], dtype=float)
            emit_cubic(geom.line_as_cubic(pos, target))
            pos = target
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "H":
            (x,) = take(1)
            target = np.array([pos[0] + x if rel else x, pos[1]])
            emit_cubic(geom.line_as_cubic(pos, target))
            pos = target
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "V":
            (y,) = take(1)
            target = np.array([pos[0], pos[1] + y if rel else y])
            emit_cubic(geom.line_as_cubic(pos, target))
            pos = target
            last_cubic_ctrl = last_quad_ctrl = None
        elif op in ("C", "S"):
            if op == "C":
                x1, y1, x2, y2, x, y = take(6)
                c1 = pos + [x1, y1] if rel else np.array([x1, y1], dtype=float)
            else:
                x2, y2, x, y = take(4)
                c1 = 2 * pos - last_cubic_ctrl if last_cubic_ctrl is not None else pos
            c2 = pos + [x2, y2] if rel else np.array([x2, y2], dtype=float)
            target = pos + [x, y] if rel else np.array([x, y], dtype=float)
            emit_cubic(np.array([pos, c1, c2, target]))
            pos = target
            last_cubic_ctrl = c2
            last_quad_ctrl = None
        elif op in ("Q", "T"):
            if op == "Q":
                x1, y1, x, y = take(4)
                q1 = pos + [x1, y1] if rel else np.array([x1, y1], dtype=float)
            else:
                x, y = take(2)
                q1 = 2 * pos - last_quad_ctrl if last_quad_ctrl is not None else pos
            target = pos + [x, y] if rel else np.array([x, y], dtype=float)
            emit_cubic(geom.quadratic_as_cubic(pos, q1, target))
            pos = target
            last_quad_ctrl = q1
            last_cubic_ctrl = None
        elif op == "A":
            rx, ry, rot, laf, sf, x, y = take(7)
            target = pos + [x, y] if rel else np.array([x, y], dtype=float)
            params = geom.endpoint_to_center_arc(
                pos, target, rx, ry, rot, bool(laf), bool(sf)
            )
            if params is None:
                emit_cubic(geom.line_as_cubic(pos, target))
            else:
                for ctrl in geom.arc_as_cubics(*params):
                    emit_cubic(ctrl)
            pos = target
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "Z":
            if not np.allclose(pos, start):
                emit_cubic(geom.line_as_cubic(pos, start))
            pos = start.copy()
            closed = True
            last_cubic_ctrl = last_quad_ctrl = None
        else:
            raise SvgParseError(f"unsupported path command '{cmd}'")

    if not commands or commands[0].kind is not CommandKind.MOVE:
        raise SvgParseError("path data must start with a moveto")
    if len(commands) < 2:
        raise DegenerateShapeError("path with no drawable segment")
    return commands, closed
