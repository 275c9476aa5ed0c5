"""Rendering, compositing, masks, and gradient correctness."""

import numpy as np
import pytest
import torch

from svgsmith.errors import RenderError
from svgsmith.model import parse_svg
from svgsmith.raster import (
    RenderConfig,
    mse_vs_target,
    png_bytes_to_image,
    image_to_png_bytes,
    render,
    render_path_mask,
    render_with_grad,
)


def doc_from(body, size=64):
    return parse_svg(f'<svg viewBox="0 0 {size} {size}">{body}</svg>')[0]


def random_scene(rng, size=64, n_paths=3):
    """Random small document: mix of rects, ellipses and wobbly cubics."""
    parts = []
    for i in range(n_paths):
        kind = rng.integers(0, 3)
        color = "#{:02x}{:02x}{:02x}".format(*rng.integers(30, 225, 3))
        if kind == 0:
            x, y = rng.uniform(5, size - 30, 2)
            w, h = rng.uniform(10, 25, 2)
            parts.append(
                f'<rect id="path_{i+1}" x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" fill="{color}"/>'
            )
        elif kind == 1:
            cx, cy = rng.uniform(15, size - 15, 2)
            rx, ry = rng.uniform(6, 14, 2)
            parts.append(
                f'<ellipse id="path_{i+1}" cx="{cx:.2f}" cy="{cy:.2f}" rx="{rx:.2f}" ry="{ry:.2f}" fill="{color}"/>'
            )
        else:
            p = rng.uniform(10, size - 10, (4, 2))
            d = (
                f"M {p[0,0]:.2f} {p[0,1]:.2f} "
                f"C {p[1,0]:.2f} {p[1,1]:.2f} {p[2,0]:.2f} {p[2,1]:.2f} {p[3,0]:.2f} {p[3,1]:.2f} Z"
            )
            parts.append(f'<path id="path_{i+1}" d="{d}" fill="{color}"/>')
    return doc_from("".join(parts), size)


class TestRender:
    def test_full_cover_black_rect(self):
        doc = doc_from('<rect id="path_1" x="-8" y="-8" width="80" height="80" fill="#000000"/>')
        img = render(doc)
        assert np.allclose(img.pixels, 0.0)

    def test_later_path_overlaps_earlier(self):
        doc = doc_from(
            '<rect id="path_1" x="8" y="8" width="30" height="30" fill="#ff0000"/>'
            '<rect id="path_2" x="20" y="20" width="30" height="30" fill="#0000ff"/>'
        )
        img = render(doc)
        assert np.allclose(img.pixels[30, 30], [0, 0, 1])
        assert np.allclose(img.pixels[12, 12], [1, 0, 0])

    def test_stroke_only_path_visible_interior_untouched(self):
        doc = doc_from(
            '<circle id="path_1" cx="32" cy="32" r="20" fill="none" stroke="#000000" stroke-width="0.8"/>'
        )
        img = render(doc)
        # contour darker than white, interior untouched
        assert img.pixels[32, 12, 0] < 0.7
        assert np.allclose(img.pixels[32, 32], [1, 1, 1])

    def test_determinism(self):
        rng = np.random.default_rng(7)
        doc = random_scene(rng)
        a = render(doc).pixels
        b = render(doc).pixels
        assert np.array_equal(a, b)

    def test_determinism_across_thread_counts(self):
        rng = np.random.default_rng(8)
        doc = random_scene(rng)
        before = torch.get_num_threads()
        try:
            torch.set_num_threads(1)
            a = render(doc).pixels
            torch.set_num_threads(max(2, before))
            b = render(doc).pixels
        finally:
            torch.set_num_threads(before)
        assert np.array_equal(a, b)

    def test_translation_equivariance(self):
        rng = np.random.default_rng(9)
        doc = random_scene(rng, size=64)
        shifted = doc.copy()
        for p in shifted.paths:
            p.transform[0, 2] += 4.0
            p.transform[1, 2] += 3.0
        a = render(doc, RenderConfig(supersampling=2)).pixels
        b = render(shifted, RenderConfig(supersampling=2)).pixels
        # compare interiors (crop the wrap-in region)
        assert np.allclose(a[:-3, :-4], b[3:, 4:], atol=1e-8)

    def test_swap_changes_only_overlap(self):
        doc = doc_from(
            '<rect id="path_1" x="10" y="10" width="24" height="24" fill="#ff0000"/>'
            '<rect id="path_2" x="22" y="22" width="24" height="24" fill="#0000ff"/>'
        )
        swapped = doc.copy()
        swapped.paths = swapped.paths[::-1]
        a = render(doc).pixels
        b = render(swapped).pixels
        changed = np.abs(a - b).max(axis=2) > 1e-9
        ys, xs = np.nonzero(changed)
        # overlap box is [22,34) x [22,34); allow the smoothing band
        assert ys.min() >= 20 and ys.max() <= 35
        assert xs.min() >= 20 and xs.max() <= 35
        assert changed[26, 26]

    def test_nonfinite_coordinates_error(self):
        doc = doc_from('<rect id="path_1" x="1" y="1" width="9" height="9" fill="#102030"/>')
        doc.paths[0].commands[1].points[0, 0] = np.nan
        with pytest.raises(RenderError) as err:
            render(doc)
        assert "path_1" in str(err.value)

    def test_png_round_trip(self):
        rng = np.random.default_rng(10)
        doc = random_scene(rng)
        img = render(doc)
        back = png_bytes_to_image(image_to_png_bytes(img))
        assert np.abs(back.pixels - img.pixels).max() <= 0.5 / 255 + 1e-9


class TestMask:
    def test_rect_exact_coverage(self):
        doc = doc_from('<rect id="path_1" x="0" y="0" width="10" height="10" fill="#000000"/>', size=512)
        mask = render_path_mask(doc.paths[0], (512, 512))
        assert mask.area == 100

    def test_circle_area(self):
        doc = doc_from('<circle id="path_1" cx="100" cy="100" r="50" fill="#000000"/>', size=512)
        mask = render_path_mask(doc.paths[0], (512, 512))
        assert abs(mask.area - np.pi * 50**2) < 0.01 * np.pi * 50**2

    def test_zero_width_open_polyline_empty(self):
        doc = doc_from('<polyline id="path_1" points="1,1 20,20 40,1" fill="none"/>')
        mask = render_path_mask(doc.paths[0], (64, 64))
        assert mask.area == 0


def _flat_params(doc):
    """Yield (label, getter, setter) triples over every optimizable scalar."""
    for path in doc.paths:
        pts = path.control_points()
        for cmd_i, cmd in enumerate(path.commands):
            for pt_i in range(cmd.points.shape[0]):
                for axis in range(2):
                    yield (
                        f"{path.id}.cmd{cmd_i}.p{pt_i}.{axis}",
                        lambda c=cmd, i=pt_i, a=axis: c.points[i, a],
                        lambda v, c=cmd, i=pt_i, a=axis: c.points.__setitem__((i, a), v),
                    )
        for axis, name in ((0, "r"), (1, "g"), (2, "b")):
            yield (
                f"{path.id}.fill.{name}",
                lambda p=path, a=axis: getattr(p.fill, "rgb a"[0]) if False else (p.fill.r, p.fill.g, p.fill.b)[a],
                lambda v, p=path, a=axis: setattr(p.fill, ("r", "g", "b")[a], v),
            )
        for r in range(2):
            for c in range(3):
                yield (
                    f"{path.id}.T{r}{c}",
                    lambda p=path, rr=r, cc=c: p.transform[rr, cc],
                    lambda v, p=path, rr=r, cc=c: p.transform.__setitem__((rr, cc), v),
                )


def gradient_check(doc, target, h=1e-3):
    """Central finite differences against autograd for every parameter.

    Returns (n_checked, n_failed) over coordinates with |grad| > 1e-6.
    """
    cfg = RenderConfig(supersampling=1, smoothing_width=1.0)
    loss_fn = mse_vs_target(target)
    _, grads = render_with_grad(doc, cfg, loss_fn)

    def loss_at():
        img = render(doc, cfg)
        return float(((img.pixels - target.pixels) ** 2).mean())

    checked = failed = 0
    for label, get, set_ in _flat_params(doc):
        path_id = label.split(".")[0]
        g = grads[path_id]
        if ".cmd" in label:
            parts = label.split(".")
            cmd_i, pt_i, axis = int(parts[1][3:]), int(parts[2][1:]), int(parts[3])
            path = doc.path_by_id(path_id)
            flat_i = sum(c.points.shape[0] for c in path.commands[:cmd_i]) + pt_i
            analytic = g.points[flat_i, axis]
        elif ".fill." in label:
            analytic = g.fill_rgb[("r", "g", "b").index(label.split(".")[-1])]
        else:
            r, c = int(label[-2]), int(label[-1])
            analytic = g.transform[r, c]
        if abs(analytic) <= 1e-6:
            continue
        old = float(get())
        set_(old + h)
        up = loss_at()
        set_(old - h)
        down = loss_at()
        set_(old)
        fd = (up - down) / (2 * h)
        checked += 1
        if abs(fd - analytic) > 1e-2 * max(abs(fd), abs(analytic)):
            failed += 1
    return checked, failed


class TestGradients:
    def test_translation_descent_direction(self):
        doc = doc_from('<rect id="path_1" x="20" y="20" width="16" height="16" fill="#000000"/>')
        target = render(doc)
        moved = doc.copy()
        moved.paths[0].transform[0, 2] += 2.0
        _, grads = render_with_grad(moved, RenderConfig(), mse_vs_target(target))
        assert grads["path_1"].transform[0, 2] > 0  # descending reduces the offset

    def test_zero_loss_zero_grads(self):
        doc = doc_from('<rect id="path_1" x="20" y="20" width="16" height="16" fill="#3366aa"/>')
        target = render(doc)
        loss, grads = render_with_grad(doc, RenderConfig(), mse_vs_target(target))
        assert loss < 1e-16
        g = grads["path_1"]
        assert np.abs(g.points).max() < 1e-8
        assert np.abs(g.fill_rgb).max() < 1e-8
        assert np.abs(g.transform).max() < 1e-8

    def test_finite_differences_random_scene(self):
        rng = np.random.default_rng(1234)
        doc = random_scene(rng, size=64, n_paths=3)
        target = render(random_scene(rng, size=64, n_paths=3), RenderConfig(supersampling=1))
        checked, failed = gradient_check(doc, target)
        assert checked > 20
        assert failed <= 0.05 * checked, f"{failed}/{checked} gradient mismatches"
