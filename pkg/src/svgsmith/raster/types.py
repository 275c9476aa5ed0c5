"""Raster-side value types."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RasterImage:
    """RGB pixel grid, values in [0, 1], row-major, shape (H, W, 3)."""

    pixels: np.ndarray

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.float64)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ValueError(f"expected (H, W, 3) pixels, got {self.pixels.shape}")

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]

    def copy(self):
        return RasterImage(self.pixels.copy())


@dataclass
class BinaryMask:
    """Per-pixel occupancy, shape (H, W) bool."""

    bits: np.ndarray

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=bool)
        if self.bits.ndim != 2:
            raise ValueError(f"expected (H, W) bits, got {self.bits.shape}")

    @property
    def height(self):
        return self.bits.shape[0]

    @property
    def width(self):
        return self.bits.shape[1]

    @property
    def area(self):
        return int(self.bits.sum())


@dataclass
class RenderConfig:
    supersampling: int = 2
    smoothing_width: float = 1.0
    background: tuple = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.supersampling not in (1, 2, 4):
            raise ValueError("supersampling must be 1, 2 or 4")
        if not (0.0 < self.smoothing_width <= 2.0):
            raise ValueError("smoothing_width must be in (0, 2]")


@dataclass
class PathGradients:
    """Gradients for one path's optimizable parameters."""

    points: np.ndarray  # matches SvgPath.control_points() shape
    fill_rgb: np.ndarray  # (3,)
    stroke_rgb: np.ndarray  # (3,)
    stroke_width: float
    transform: np.ndarray  # (2, 3)


@dataclass
class ParamGradients:
    """Per-path gradients of a scalar loss, keyed by path id."""

    by_path: dict = field(default_factory=dict)

    def __getitem__(self, path_id):
        return self.by_path[path_id]

    def finite(self):
        for g in self.by_path.values():
            for arr in (g.points, g.fill_rgb, g.stroke_rgb, g.transform):
                if not np.all(np.isfinite(arr)):
                    return False
            if not np.isfinite(g.stroke_width):
                return False
        return True
