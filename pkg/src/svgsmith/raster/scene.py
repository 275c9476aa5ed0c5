"""SvgDocument -> torch parameter tensors and back."""

from dataclasses import dataclass

import numpy as np
import torch

from ..model import CommandKind, Rgba, Stroke, SvgCommand, SvgPath
from .core import DTYPE, PathTensors


def cubic_gather_indices(commands):
    """Index matrix (K, 4) into the flattened control-point sequence.

    Row k selects [start, c1, c2, end] for cubic k; starts chain through
    subpaths restarted by Move commands.
    """
    rows = []
    subpath_sizes = []
    pos = 0
    anchor = None
    count_in_subpath = 0
    for cmd in commands:
        if cmd.kind is CommandKind.MOVE:
            if count_in_subpath:
                subpath_sizes.append(count_in_subpath)
            anchor = pos
            count_in_subpath = 0
            pos += 1
        else:
            rows.append([anchor, pos, pos + 1, pos + 2])
            anchor = pos + 2  # endpoint feeds the next cubic
            count_in_subpath += 1
            pos += 3
    if count_in_subpath:
        subpath_sizes.append(count_in_subpath)
    return np.array(rows, dtype=np.int64), tuple(subpath_sizes)


@dataclass
class ScenePath:
    """Leaf tensors for one path plus the structure to rebuild an SvgPath."""

    path_id: str
    points: torch.Tensor  # (N, 2) flattened control points (untransformed)
    transform: torch.Tensor  # (2, 3)
    fill_rgb: torch.Tensor  # (3,)
    fill_alpha: float
    stroke_rgb: torch.Tensor  # (3,)
    stroke_alpha: float
    stroke_width: torch.Tensor  # scalar
    gather_idx: torch.Tensor  # (K, 4) int64
    closed: bool
    subpath_sizes: tuple
    kinds: tuple  # CommandKind sequence
    semantic_label: str = ""

    def to_path_tensors(self):
        pts = self.points @ self.transform[:, :2].T + self.transform[:, 2]
        cubics = pts[self.gather_idx]  # (K, 4, 2)
        fill = torch.cat([self.fill_rgb, torch.tensor([self.fill_alpha], dtype=DTYPE)])
        stroke = torch.cat(
            [self.stroke_rgb, torch.tensor([self.stroke_alpha], dtype=DTYPE)]
        )
        return PathTensors(
            cubics=cubics,
            closed=self.closed,
            fill=fill,
            stroke_color=stroke,
            stroke_width=self.stroke_width,
            subpath_sizes=self.subpath_sizes,
            path_id=self.path_id,
        )

    def parameters(self):
        return [self.points, self.transform, self.fill_rgb, self.stroke_rgb, self.stroke_width]


def scene_path_from_svg(path: SvgPath, requires_grad=False) -> ScenePath:
    idx, subpath_sizes = cubic_gather_indices(path.commands)
    if idx.size == 0:
        idx = np.zeros((0, 4), dtype=np.int64)
    sp = ScenePath(
        path_id=path.id,
        points=torch.tensor(path.control_points(), dtype=DTYPE, requires_grad=requires_grad),
        transform=torch.tensor(path.transform, dtype=DTYPE, requires_grad=requires_grad),
        fill_rgb=torch.tensor(
            [path.fill.r, path.fill.g, path.fill.b], dtype=DTYPE, requires_grad=requires_grad
        ),
        fill_alpha=path.fill.a,
        stroke_rgb=torch.tensor(
            [path.stroke.color.r, path.stroke.color.g, path.stroke.color.b],
            dtype=DTYPE,
            requires_grad=requires_grad,
        ),
        stroke_alpha=path.stroke.color.a,
        stroke_width=torch.tensor(path.stroke.width, dtype=DTYPE, requires_grad=requires_grad),
        gather_idx=torch.from_numpy(idx),
        closed=path.closed,
        subpath_sizes=subpath_sizes,
        kinds=tuple(c.kind for c in path.commands),
        semantic_label=path.semantic_label,
    )
    return sp


def build_scene(doc, requires_grad=False):
    return [scene_path_from_svg(p, requires_grad) for p in doc.paths if len(p.commands) > 1]


def _clip01(x):
    return float(min(1.0, max(0.0, x)))


def scene_path_to_svg(sp: ScenePath) -> SvgPath:
    """Rebuild an SvgPath from (possibly optimized) scene tensors."""
    pts = sp.points.detach().numpy()
    commands = []
    pos = 0
    for kind in sp.kinds:
        if kind is CommandKind.MOVE:
            commands.append(SvgCommand(CommandKind.MOVE, pts[pos : pos + 1]))
            pos += 1
        else:
            commands.append(SvgCommand(CommandKind.CUBIC, pts[pos : pos + 3]))
            pos += 3
    fill = sp.fill_rgb.detach().numpy()
    stroke = sp.stroke_rgb.detach().numpy()
    return SvgPath(
        id=sp.path_id,
        commands=commands,
        fill=Rgba(_clip01(fill[0]), _clip01(fill[1]), _clip01(fill[2]), sp.fill_alpha),
        stroke=Stroke(
            Rgba(_clip01(stroke[0]), _clip01(stroke[1]), _clip01(stroke[2]), sp.stroke_alpha),
            max(0.0, float(sp.stroke_width.detach())),
        ),
        transform=sp.transform.detach().numpy(),
        closed=sp.closed,
        semantic_label=sp.semantic_label,
    )
