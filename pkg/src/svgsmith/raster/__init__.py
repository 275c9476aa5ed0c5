from .png import (
    image_to_png_bytes,
    load_image,
    load_mask,
    mask_to_png_bytes,
    png_bytes_to_image,
    png_bytes_to_mask,
    save_image,
    save_mask,
)
from .render import (
    document_masks,
    mse_vs_target,
    render,
    render_path_mask,
    render_with_grad,
)
from .types import BinaryMask, ParamGradients, PathGradients, RasterImage, RenderConfig

__all__ = [
    "BinaryMask",
    "ParamGradients",
    "PathGradients",
    "RasterImage",
    "RenderConfig",
    "document_masks",
    "image_to_png_bytes",
    "load_image",
    "load_mask",
    "mask_to_png_bytes",
    "mse_vs_target",
    "png_bytes_to_image",
    "png_bytes_to_mask",
    "render",
    "render_path_mask",
    "render_with_grad",
    "save_image",
    "save_mask",
]
