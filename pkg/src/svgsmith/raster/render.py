"""Public rendering API: images, gradients, per-path masks."""

import numpy as np
import torch

from ..errors import RenderError
from .core import hard_mask, render_scene
from .scene import build_scene, scene_path_from_svg
from .types import BinaryMask, ParamGradients, PathGradients, RasterImage, RenderConfig


def _check_finite(doc):
    for path in doc.paths:
        pts = path.control_points()
        if pts.size and not np.all(np.isfinite(pts)):
            raise RenderError("non-finite control points", path_id=path.id)
        if not np.all(np.isfinite(path.transform)):
            raise RenderError("non-finite transform", path_id=path.id)


def render(doc, config=None) -> RasterImage:
    """Rasterize a document; paths composite in document order."""
    config = config or RenderConfig()
    _check_finite(doc)
    with torch.no_grad():
        scene = build_scene(doc, requires_grad=False)
        img = render_scene([sp.to_path_tensors() for sp in scene], doc.height, doc.width, config)
    return RasterImage(img.numpy())


def render_with_grad(doc, config, loss_fn):
    """Differentiable render. loss_fn maps the (H, W, 3) torch image to a
    scalar tensor (torch ops only). Returns (loss value, ParamGradients).

    Alpha channels never receive gradient.
    """
    config = config or RenderConfig()
    _check_finite(doc)
    scene = build_scene(doc, requires_grad=True)
    img = render_scene([sp.to_path_tensors() for sp in scene], doc.height, doc.width, config)
    loss = loss_fn(img)
    if not torch.is_tensor(loss) or loss.dim() != 0:
        raise ValueError("loss_fn must return a scalar tensor")
    loss.backward()

    grads = ParamGradients()
    for sp in scene:
        def grad_of(t, like=None):
            if t.grad is None:
                return np.zeros(like if like is not None else t.shape)
            return t.grad.detach().numpy().copy()

        grads.by_path[sp.path_id] = PathGradients(
            points=grad_of(sp.points),
            fill_rgb=grad_of(sp.fill_rgb),
            stroke_rgb=grad_of(sp.stroke_rgb),
            stroke_width=float(sp.stroke_width.grad) if sp.stroke_width.grad is not None else 0.0,
            transform=grad_of(sp.transform),
        )
    if not grads.finite():
        raise RenderError("non-finite gradients")
    return float(loss.detach()), grads


def render_path_mask(path, canvas) -> BinaryMask:
    """Occupancy of one path at pixel centers: filled region when closed,
    stroke band when open (empty at width 0)."""
    height, width = canvas if isinstance(canvas, tuple) else (canvas, canvas)
    pts = path.control_points()
    if pts.size and not np.all(np.isfinite(pts)):
        raise RenderError("non-finite control points", path_id=path.id)
    if len(path.commands) < 2:
        return BinaryMask(np.zeros((height, width), dtype=bool))
    sp = scene_path_from_svg(path)
    mask = hard_mask(sp.to_path_tensors(), height, width)
    return BinaryMask(mask.numpy())


def document_masks(doc, config=None):
    """Hard per-path masks for a whole document, in path order."""
    return [render_path_mask(p, (doc.height, doc.width)) for p in doc.paths]


def mse_vs_target(target: RasterImage):
    """Convenience loss_fn factory for render_with_grad."""
    tgt = torch.tensor(target.pixels, dtype=torch.float64)

    def loss_fn(img):
        return ((img - tgt) ** 2).mean()

    return loss_fn
