"""Data model for the SVG subset: documents, paths, commands, primitives."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .. import geom

ALLOWED_TAGS = ("rect", "circle", "ellipse", "line", "polyline", "polygon", "path")
CANVAS_SIZE = 512
MAX_RAW_PATH_COMMANDS = 5


class CommandKind(Enum):
    MOVE = "M"
    CUBIC = "C"


@dataclass
class SvgCommand:
    """One path command: a Move (1 point) or a cubic Bézier (3 points).

    Cubic points are [control1, control2, endpoint]; the start point is the
    previous command's endpoint.
    """

    kind: CommandKind
    points: np.ndarray  # (1, 2) for MOVE, (3, 2) for CUBIC

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)
        expected = 1 if self.kind is CommandKind.MOVE else 3
        if self.points.shape[0] != expected:
            raise ValueError(
                f"{self.kind.name} carries {self.points.shape[0]} points, expected {expected}"
            )
        if not np.all(np.isfinite(self.points)):
            raise ValueError("non-finite command coordinates")

    def copy(self):
        return SvgCommand(self.kind, self.points.copy())

    def __eq__(self, other):
        if not isinstance(other, SvgCommand):
            return NotImplemented
        return self.kind is other.kind and np.array_equal(self.points, other.points)


@dataclass
class Rgba:
    r: float = 0.0
    g: float = 0.0
    b: float = 0.0
    a: float = 1.0

    def __post_init__(self):
        for ch in (self.r, self.g, self.b, self.a):
            if not (0.0 <= ch <= 1.0):
                raise ValueError(f"color channel {ch} outside [0, 1]")

    def as_array(self):
        return np.array([self.r, self.g, self.b, self.a])

    def copy(self):
        return Rgba(self.r, self.g, self.b, self.a)


@dataclass
class Stroke:
    color: Rgba = field(default_factory=Rgba)
    width: float = 0.0

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("stroke width must be >= 0")

    def copy(self):
        return Stroke(self.color.copy(), self.width)


@dataclass
class SvgPath:
    """A normalized path: one Move followed by cubic Bézier commands."""

    id: str
    commands: list  # list[SvgCommand], first is MOVE
    fill: Rgba = field(default_factory=Rgba)
    stroke: Stroke = field(default_factory=Stroke)
    transform: np.ndarray = None  # 2x3 affine
    closed: bool = False
    semantic_label: str = ""

    def __post_init__(self):
        if self.transform is None:
            self.transform = geom.IDENTITY_2X3.copy()
        self.transform = np.asarray(self.transform, dtype=float).reshape(2, 3)
        if self.commands and self.commands[0].kind is not CommandKind.MOVE:
            raise ValueError("first command must be Move")

    def cubics(self, apply_transform=True):
        """Control polygons of every cubic, list of (4, 2) arrays.

        Subpaths after a mid-path Move restart at the new point.
        """
        out = []
        current = None
        for cmd in self.commands:
            if cmd.kind is CommandKind.MOVE:
                current = cmd.points[0]
            else:
                ctrl = np.vstack([current[None, :], cmd.points])
                out.append(ctrl)
                current = cmd.points[2]
        if apply_transform and not np.array_equal(self.transform, geom.IDENTITY_2X3):
            out = [geom.affine_apply(self.transform, c) for c in out]
        return out

    def control_points(self):
        """Flattened ordered control-point sequence: Move point then each
        cubic's three points. Shape (N, 2), untransformed."""
        if not self.commands:
            return np.zeros((0, 2))
        return np.concatenate([c.points for c in self.commands], axis=0)

    def copy(self):
        return SvgPath(
            id=self.id,
            commands=[c.copy() for c in self.commands],
            fill=self.fill.copy(),
            stroke=self.stroke.copy(),
            transform=self.transform.copy(),
            closed=self.closed,
            semantic_label=self.semantic_label,
        )

    def __eq__(self, other):
        if not isinstance(other, SvgPath):
            return NotImplemented
        return (
            self.id == other.id
            and self.commands == other.commands
            and self.fill == other.fill
            and self.stroke == other.stroke
            and np.array_equal(self.transform, other.transform)
            and self.closed == other.closed
            and self.semantic_label == other.semantic_label
        )


@dataclass
class SvgDocument:
    """Ordered paths (painter's order) plus canvas size."""

    paths: list = field(default_factory=list)  # list[SvgPath]
    width: int = CANVAS_SIZE
    height: int = CANVAS_SIZE
    viewbox: tuple = None  # as parsed, (min_x, min_y, w, h)

    def __post_init__(self):
        if self.viewbox is None:
            self.viewbox = (0.0, 0.0, float(self.width), float(self.height))

    def path_by_id(self, path_id):
        for p in self.paths:
            if p.id == path_id:
                return p
        raise KeyError(path_id)

    def ids(self):
        return [p.id for p in self.paths]

    def copy(self):
        return SvgDocument(
            paths=[p.copy() for p in self.paths],
            width=self.width,
            height=self.height,
            viewbox=self.viewbox,
        )

    def __eq__(self, other):
        if not isinstance(other, SvgDocument):
            return NotImplemented
        return (
            self.paths == other.paths
            and self.width == other.width
            and self.height == other.height
            and self.viewbox == other.viewbox
        )


@dataclass
class PrimitiveElement:
    """A raw template element as written by the script author."""

    tag: str
    attributes: dict  # tag-specific numeric/string attributes
    style: dict = field(default_factory=dict)  # raw fill/stroke/etc strings
    id: str = ""
    semantic_label: str = ""

    def copy(self):
        return PrimitiveElement(
            tag=self.tag,
            attributes=dict(self.attributes),
            style=dict(self.style),
            id=self.id,
            semantic_label=self.semantic_label,
        )


@dataclass
class ValidationIssue:
    code: str
    message: str
    path_id: str = None

    def as_dict(self):
        return {"code": self.code, "message": self.message, "path_id": self.path_id}


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def add_error(self, code, message, path_id=None):
        self.errors.append(ValidationIssue(code, message, path_id))

    def add_warning(self, code, message, path_id=None):
        self.warnings.append(ValidationIssue(code, message, path_id))

    def summary(self):
        lines = [f"{len(self.errors)} error(s), {len(self.warnings)} warning(s)"]
        for issue in self.errors:
            where = f" [{issue.path_id}]" if issue.path_id else ""
            lines.append(f"error {issue.code}{where}: {issue.message}")
        for issue in self.warnings:
            where = f" [{issue.path_id}]" if issue.path_id else ""
            lines.append(f"warning {issue.code}{where}: {issue.message}")
        return "\n".join(lines)
