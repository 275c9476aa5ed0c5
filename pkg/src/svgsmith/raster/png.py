"""PNG import/export for images and masks."""

import io

import numpy as np
from PIL import Image

from .types import BinaryMask, RasterImage


def image_to_png_bytes(img: RasterImage) -> bytes:
    arr = np.clip(np.round(img.pixels * 255.0), 0, 255).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(arr, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def png_bytes_to_image(data: bytes) -> RasterImage:
    with Image.open(io.BytesIO(data)) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float64) / 255.0
    return RasterImage(arr)


def save_image(img: RasterImage, path):
    with open(path, "wb") as fh:
        fh.write(image_to_png_bytes(img))


def load_image(path) -> RasterImage:
    with open(path, "rb") as fh:
        return png_bytes_to_image(fh.read())


def mask_to_png_bytes(mask: BinaryMask) -> bytes:
    arr = np.where(mask.bits, 255, 0).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(arr, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def png_bytes_to_mask(data: bytes) -> BinaryMask:
    with Image.open(io.BytesIO(data)) as im:
        arr = np.asarray(im.convert("L"))
    return BinaryMask(arr >= 128)


def save_mask(mask: BinaryMask, path):
    with open(path, "wb") as fh:
        fh.write(mask_to_png_bytes(mask))


def load_mask(path) -> BinaryMask:
    with open(path, "rb") as fh:
        return png_bytes_to_mask(fh.read())
