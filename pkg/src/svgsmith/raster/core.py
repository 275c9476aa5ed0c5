"""Torch rasterization core.

Coverage model: per-boundary smoothed signed distance. Each path is
flattened to a dense polyline; a pixel sample's coverage is a C²
compact-support step (smootherstep) of its signed distance, positive
inside by the nonzero winding rule. Paths composite in order with
standard alpha-over. Everything is differentiable through torch, so
gradients w.r.t. control points, colors, stroke width and transform
entries come from autograd.
"""

from dataclasses import dataclass

import numpy as np
import torch

DTYPE = torch.float64
_PIXEL_CHUNK = 16384
_EPS = 1e-12
_SOFTMIN_TAU = 0.05  # px; smoothing of the min-distance field across segments


@dataclass
class PathTensors:
    """One path prepared for rendering; every field may carry gradients."""

    cubics: torch.Tensor  # (K, 4, 2), transform already applied
    closed: bool
    fill: torch.Tensor  # (4,) rgba
    stroke_color: torch.Tensor  # (4,) rgba
    stroke_width: torch.Tensor  # scalar
    subpath_sizes: tuple = None  # cubics per subpath; None = single subpath
    path_id: str = ""


def smootherstep(u):
    """C² step: 0 below 0, 1 above 1, 6u^5-15u^4+10u^3 between."""
    u = torch.clamp(u, 0.0, 1.0)
    return u * u * u * (u * (u * 6.0 - 15.0) + 10.0)


def flatten_cubics_torch(cubics, samples_per_cubic):
    """(K, 4, 2) control polygons -> (K * S, 2, 2) line segments.

    Consecutive cubics need not be contiguous; each cubic contributes its
    own S segments.
    """
    k = cubics.shape[0]
    ts = torch.linspace(0.0, 1.0, samples_per_cubic + 1, dtype=DTYPE)
    u = 1.0 - ts
    basis = torch.stack(
        [u**3, 3.0 * u**2 * ts, 3.0 * u * ts**2, ts**3], dim=1
    )  # (S+1, 4)
    pts = torch.einsum("sb,kbc->ksc", basis, cubics)  # (K, S+1, 2)
    a = pts[:, :-1, :].reshape(k * samples_per_cubic, 2)
    b = pts[:, 1:, :].reshape(k * samples_per_cubic, 2)
    return torch.stack([a, b], dim=1)


def path_segments(path: PathTensors, samples_per_cubic):
    """All polyline segments of a path, with per-subpath closing segments
    appended when the path is closed."""
    segs = flatten_cubics_torch(path.cubics, samples_per_cubic)
    if not path.closed:
        return segs
    sizes = path.subpath_sizes or (path.cubics.shape[0],)
    closing = []
    offset = 0
    for size in sizes:
        first = path.cubics[offset, 0]
        last = path.cubics[offset + size - 1, 3]
        # Skip when the contour already returns to its start: a zero-length
        # segment is redundant and its projection gradient degenerates.
        if float((last - first).detach().abs().max()) > 1e-9:
            closing.append(torch.stack([last, first], dim=0))
        offset += size
    if not closing:
        return segs
    return torch.cat([segs, torch.stack(closing, dim=0)], dim=0)


def segment_distance(points, segs, soft_tau=None):
    """Distance from each point to the segment set. points (P,2), segs (S,2,2).

    With soft_tau set, returns a smooth soft-min (logsumexp) of the per-
    segment distances instead of the exact min. The soft-min differs from
    the true distance by at most tau*log(S) and only matters near corner
    bisectors, where it makes the field differentiable (the exact min has
    kinks that finite differences straddle).
    """
    a = segs[:, 0, :]  # (S, 2)
    ab = segs[:, 1, :] - a  # (S, 2)
    denom = (ab * ab).sum(dim=1) + _EPS  # (S,)
    ap = points[:, None, :] - a[None, :, :]  # (P, S, 2)
    t = torch.clamp((ap * ab[None, :, :]).sum(dim=2) / denom[None, :], 0.0, 1.0)
    nearest = a[None, :, :] + t[:, :, None] * ab[None, :, :]
    d2 = ((points[:, None, :] - nearest) ** 2).sum(dim=2)
    d = torch.sqrt(d2 + _EPS)
    if soft_tau is None:
        return d.min(dim=1).values
    return -soft_tau * torch.logsumexp(-d / soft_tau, dim=1)


def winding_number(points, segs):
    """Nonzero-rule winding counts (no gradient). points (P,2) -> (P,) int."""
    with torch.no_grad():
        a = segs[:, 0, :]
        b = segs[:, 1, :]
        py = points[:, 1][:, None]
        ya, yb = a[:, 1][None, :], b[:, 1][None, :]
        upward = (ya <= py) & (yb > py)
        downward = (yb <= py) & (ya > py)
        crossing = upward | downward
        dy = yb - ya
        t = torch.where(crossing, (py - ya) / torch.where(dy == 0, torch.ones_like(dy), dy), torch.zeros_like(dy))
        x_int = a[:, 0][None, :] + t * (b[:, 0] - a[:, 0])[None, :]
        right = x_int > points[:, 0][:, None]
        wind = (upward & right).to(torch.int64) - (downward & right).to(torch.int64)
        return wind.sum(dim=1)


def _sample_grid(height, width, ss):
    """Supersampled pixel-sample coordinates; pixel (r, c) center is
    (c + 0.5, r + 0.5) in canvas units."""
    xs = (torch.arange(width * ss, dtype=DTYPE) + 0.5) / ss
    ys = (torch.arange(height * ss, dtype=DTYPE) + 0.5) / ss
    return ys, xs


def _bbox_indices(segs, pad, n_rows, n_cols, ss):
    with torch.no_grad():
        pts = segs.reshape(-1, 2)
        lo = pts.min(dim=0).values - pad
        hi = pts.max(dim=0).values + pad
        c0 = max(0, int(torch.floor(lo[0] * ss - 0.5).item()) - 1)
        r0 = max(0, int(torch.floor(lo[1] * ss - 0.5).item()) - 1)
        c1 = min(n_cols - 1, int(torch.ceil(hi[0] * ss - 0.5).item()) + 1)
        r1 = min(n_rows - 1, int(torch.ceil(hi[1] * ss - 0.5).item()) + 1)
    return r0, r1, c0, c1


def path_coverage(path: PathTensors, ys, xs, smoothing, samples_per_cubic):
    """Fill and stroke coverage of one path over the sample grid.

    Returns (rows slice, cols slice, cov_fill, cov_stroke); coverages are
    (R, C) tensors limited to the path's padded bounding box, or None when
    that layer is inert.
    """
    segs = path_segments(path, samples_per_cubic)
    if not torch.isfinite(segs).all():
        from ..errors import RenderError

        raise RenderError("non-finite path geometry", path_id=path.path_id)
    b = smoothing
    with torch.no_grad():
        w_now = float(torch.clamp(path.stroke_width, min=0.0))
    pad = b + w_now / 2.0 + 1.0
    n_rows, n_cols = ys.shape[0], xs.shape[0]
    ss = round(n_cols / float(xs[-1] + xs[0]))  # samples per canvas unit
    r0, r1, c0, c1 = _bbox_indices(segs, pad, n_rows, n_cols, ss)
    if r1 < r0 or c1 < c0:
        return None

    want_fill = path.closed and float(path.fill[3].detach()) > 0.0
    want_stroke = float(path.stroke_color[3].detach()) > 0.0 and w_now > 0.0

    sub_y = ys[r0 : r1 + 1]
    sub_x = xs[c0 : c1 + 1]
    grid = torch.stack(
        [sub_x[None, :].expand(sub_y.shape[0], -1), sub_y[:, None].expand(-1, sub_x.shape[0])],
        dim=2,
    ).reshape(-1, 2)

    cov_fill = None
    cov_stroke = None
    n = grid.shape[0]
    fill_chunks = []
    stroke_chunks = []
    width = torch.clamp(path.stroke_width, min=0.0)
    for i in range(0, n, _PIXEL_CHUNK):
        chunk = grid[i : i + _PIXEL_CHUNK]
        # The soft-min can dip below zero right on the curve (multiple
        # near-equal segments); clamping keeps the signed field continuous
        # when the winding side flips.
        d = torch.clamp(segment_distance(chunk, segs, soft_tau=_SOFTMIN_TAU), min=0.0)
        if want_fill:
            inside = winding_number(chunk, segs) != 0
            sd = torch.where(inside, d, -d)
            fill_chunks.append(smootherstep((sd + b) / (2.0 * b)))
        if want_stroke:
            hw = width / 2.0
            band = smootherstep((hw - d + b) / (2.0 * b)) - smootherstep(
                (-hw - d + b) / (2.0 * b)
            )
            stroke_chunks.append(band)
    shape = (sub_y.shape[0], sub_x.shape[0])
    if want_fill:
        cov_fill = torch.cat(fill_chunks).reshape(shape)
    if want_stroke:
        cov_stroke = torch.cat(stroke_chunks).reshape(shape)
    if cov_fill is None and cov_stroke is None:
        return None
    return (slice(r0, r1 + 1), slice(c0, c1 + 1), cov_fill, cov_stroke)


def render_scene(paths, height, width, config, freeze_alpha=True):
    """Composite paths over the background. Returns an (H, W, 3) tensor.

    freeze_alpha detaches every alpha channel so transparency never
    receives gradient.
    """
    ss = config.supersampling
    ys, xs = _sample_grid(height, width, ss)
    bg = torch.tensor(config.background, dtype=DTYPE)
    img = bg[None, None, :].expand(height * ss, width * ss, 3).clone()
    smoothing = config.smoothing_width

    for path in paths:
        result = path_coverage(path, ys, xs, smoothing, samples_per_cubic=_samples(path))
        if result is None:
            continue
        rows, cols, cov_fill, cov_stroke = result
        region = img[rows, cols, :]
        if cov_fill is not None:
            alpha = path.fill[3].detach() if freeze_alpha else path.fill[3]
            a = (cov_fill * alpha)[:, :, None]
            region = region * (1.0 - a) + path.fill[:3][None, None, :] * a
        if cov_stroke is not None:
            alpha = path.stroke_color[3].detach() if freeze_alpha else path.stroke_color[3]
            a = (cov_stroke * alpha)[:, :, None]
            region = region * (1.0 - a) + path.stroke_color[:3][None, None, :] * a
        img = img.clone()
        img[rows, cols, :] = region

    if ss > 1:
        img = img.reshape(height, ss, width, ss, 3).mean(dim=(1, 3))
    return img


def _samples(path: PathTensors):
    # Fewer samples per cubic when the path has many cubics; keeps the
    # segment count (cost driver) roughly constant per path.
    k = max(1, path.cubics.shape[0])
    return max(8, min(24, int(256 / k)))


def soft_fill_maps(paths, height, width, config):
    """Full-canvas soft fill coverage per path (supersampling 1).

    Used by the composition-preserving loss; returns a list of (H, W)
    tensors aligned with `paths` (zeros where a path has no fill).
    """
    ys, xs = _sample_grid(height, width, 1)
    out = []
    for path in paths:
        forced = PathTensors(
            cubics=path.cubics,
            closed=path.closed,
            fill=torch.cat([path.fill[:3].detach(), torch.ones(1, dtype=DTYPE)]),
            stroke_color=torch.zeros(4, dtype=DTYPE),
            stroke_width=torch.zeros((), dtype=DTYPE),
            subpath_sizes=path.subpath_sizes,
            path_id=path.path_id,
        )
        result = path_coverage(forced, ys, xs, config.smoothing_width, _samples(path))
        canvas = torch.zeros(height, width, dtype=DTYPE)
        if result is not None and result[2] is not None:
            rows, cols, cov_fill, _ = result
            canvas = canvas.clone()
            canvas[rows, cols] = cov_fill
        out.append(canvas)
    return out


def hard_mask(path: PathTensors, height, width):
    """Pixel-center occupancy: filled region for closed paths, stroke band
    for open ones. No gradient."""
    with torch.no_grad():
        segs = path_segments(path, _samples(path))
        ys, xs = _sample_grid(height, width, 1)
        w = float(torch.clamp(path.stroke_width, min=0.0))
        pad = w / 2.0 + 1.0
        r0, r1, c0, c1 = _bbox_indices(segs, pad, height, width, 1)
        mask = torch.zeros(height, width, dtype=torch.bool)
        if r1 < r0 or c1 < c0:
            return mask
        sub_y = ys[r0 : r1 + 1]
        sub_x = xs[c0 : c1 + 1]
        grid = torch.stack(
            [
                sub_x[None, :].expand(sub_y.shape[0], -1),
                sub_y[:, None].expand(-1, sub_x.shape[0]),
            ],
            dim=2,
        ).reshape(-1, 2)
        vals = []
        for i in range(0, grid.shape[0], _PIXEL_CHUNK):
            chunk = grid[i : i + _PIXEL_CHUNK]
            if path.closed:
                vals.append(winding_number(chunk, segs) != 0)
            elif w > 0.0:
                vals.append(segment_distance(chunk, segs) <= w / 2.0)
            else:
                vals.append(torch.zeros(chunk.shape[0], dtype=torch.bool))
        mask[r0 : r1 + 1, c0 : c1 + 1] = torch.cat(vals).reshape(
            sub_y.shape[0], sub_x.shape[0]
        )
        return mask
