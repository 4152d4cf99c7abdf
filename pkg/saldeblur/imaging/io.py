"""Image, mask and kernel file I/O."""

import logging
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..exceptions import ImageIOError
from .types import BinaryMask, BlurKernel, PlanarImage, as_image

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FORMATS = {".png": "PNG", ".pgm": "PPM", ".ppm": "PPM", ".pnm": "PPM"}


def _format_for(path: Path) -> str:
    fmt = FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise ImageIOError(path, f"unsupported format '{path.suffix}' (use .png, .pgm or .ppm)")
    return fmt


def load(path: PathLike) -> PlanarImage:
    """Read an 8-bit PNG/PGM/PPM file into a float image in [0, 1]."""
    path = Path(path)
    _format_for(path)
    try:
        with Image.open(path) as img:
            if img.mode in ("RGBA", "P", "LA"):
                img = img.convert("RGB" if img.mode != "LA" else "L")
            if img.mode not in ("L", "RGB", "1"):
                raise ImageIOError(path, f"unsupported pixel mode '{img.mode}' (8-bit gray or RGB only)")
            data = np.asarray(img.convert("L") if img.mode == "1" else img, dtype=np.float64)
    except (OSError, UnidentifiedImageError) as e:
        raise ImageIOError(path, f"cannot read image: {e}") from e
    logger.debug(f"Loaded {path} with shape {data.shape}")
    return data / 255.0


def to_uint8(image: PlanarImage) -> np.ndarray:
    return np.round(np.clip(image, 0.0, 1.0) * 255.0).astype(np.uint8)


def save(image, path: PathLike) -> None:
    """Write an image as 8-bit PNG, PGM (gray) or PPM (color)."""
    path = Path(path)
    fmt = _format_for(path)
    image = as_image(image)
    if path.suffix.lower() == ".pgm" and image.ndim == 3:
        raise ImageIOError(path, "PGM holds single-channel images only")
    if path.suffix.lower() == ".ppm" and image.ndim == 2:
        image = np.repeat(image[:, :, None], 3, axis=2)
    try:
        Image.fromarray(to_uint8(image)).save(path, format=fmt)
    except OSError as e:
        raise ImageIOError(path, f"cannot write image: {e}") from e


def load_mask(path: PathLike) -> BinaryMask:
    """Read a mask image; pixels at or above mid-gray are foreground."""
    data = load(path)
    if data.ndim == 3:
        data = data.mean(axis=2)
    return data >= 0.5


def save_mask(mask: BinaryMask, path: PathLike) -> None:
    save(np.asarray(mask, dtype=np.float64), path)


def load_kernel(path: PathLike) -> BlurKernel:
    """Read the kernel text format: ``ksize N`` then N rows of N reals."""
    path = Path(path)
    try:
        lines = [line.split() for line in path.read_text().splitlines() if line.strip()]
    except OSError as e:
        raise ImageIOError(path, f"cannot read kernel: {e}") from e
    try:
        if len(lines[0]) != 2 or lines[0][0] != "ksize":
            raise ValueError("first line must be 'ksize N'")
        size = int(lines[0][1])
        rows = [[float(v) for v in row] for row in lines[1:]]
        kernel = np.array(rows, dtype=np.float64)
        if kernel.shape != (size, size):
            raise ValueError(f"expected {size}x{size} weights, got shape {kernel.shape}")
    except (IndexError, ValueError) as e:
        raise ImageIOError(path, f"malformed kernel file: {e}") from e
    return kernel


def save_kernel(kernel: BlurKernel, path: PathLike) -> None:
    path = Path(path)
    lines = [f"ksize {kernel.shape[0]}"]
    lines += [" ".join(f"{v:.17g}" for v in row) for row in kernel]
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as e:
        raise ImageIOError(path, f"cannot write kernel: {e}") from e


def kernel_to_image(kernel: BlurKernel) -> PlanarImage:
    """Kernel scaled by its maximum for viewing."""
    peak = kernel.max()
    return kernel / peak if peak > 0 else np.zeros_like(kernel)


def save_kernel_image(kernel: BlurKernel, path: PathLike) -> None:
    """Write a kernel as text (``.txt``) or as a max-normalized image."""
    path = Path(path)
    if path.suffix.lower() == ".txt":
        save_kernel(kernel, path)
    else:
        save(kernel_to_image(kernel), path)


def edge_map_to_image(edge_map: PlanarImage) -> PlanarImage:
    """Signed map rescaled around mid-gray by its largest magnitude."""
    peak = np.abs(edge_map).max()
    if peak == 0:
        return np.full(edge_map.shape, 0.5)
    return 0.5 + edge_map / (2.0 * peak)
