"""Array conventions shared by every module.

Images are float64 numpy arrays of shape (H, W) or (H, W, 3) with values
nominally in [0, 1]. Kernels are square, odd-sized, non-negative float64
arrays summing to one. Masks are boolean (H, W) arrays.
"""

from typing import Callable, NamedTuple

import numpy as np
from numpy.typing import NDArray

from ..exceptions import ChannelError, DegenerateKernelError, DimensionError

PlanarImage = NDArray[np.float64]
BlurKernel = NDArray[np.float64]
BinaryMask = NDArray[np.bool_]


class GradientField(NamedTuple):
    """Horizontal and vertical components of a gradient, same shape as the source."""
    dx: NDArray[np.float64]
    dy: NDArray[np.float64]


def as_image(image) -> PlanarImage:
    """Convert to a float64 image and validate its shape."""
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.ndim == 2:
        return arr
    if arr.ndim == 3 and arr.shape[2] == 3:
        return arr
    raise ChannelError(f"Expected an (H, W) or (H, W, 3) image, got shape {arr.shape}")


def require_gray(image, operation: str) -> PlanarImage:
    arr = as_image(image)
    if arr.ndim != 2:
        raise ChannelError(f"{operation} needs a single-channel image, got {arr.shape[2]} channels")
    return arr


def require_color(image, operation: str) -> PlanarImage:
    arr = as_image(image)
    if arr.ndim != 3:
        raise ChannelError(f"{operation} needs a 3-channel image, got a single channel")
    return arr


def require_same_shape(*arrays, operation: str = "operation") -> None:
    shapes = {a.shape[:2] for a in arrays}
    if len(shapes) > 1:
        raise DimensionError(f"{operation}: dimension mismatch {sorted(shapes)}")


def per_channel(func: Callable[[PlanarImage], PlanarImage], image: PlanarImage) -> PlanarImage:
    """Apply a single-channel operation to every channel of an image."""
    if image.ndim == 2:
        return func(image)
    return np.stack([func(image[:, :, c]) for c in range(image.shape[2])], axis=2)


def delta_kernel(size: int) -> BlurKernel:
    kernel = np.zeros((size, size))
    kernel[size // 2, size // 2] = 1.0
    return kernel


def normalize_kernel(kernel) -> BlurKernel:
    """Clamp negative weights to zero and scale to unit sum."""
    k = np.clip(np.asarray(kernel, dtype=np.float64), 0.0, None)
    total = k.sum()
    if not np.isfinite(total) or total <= 0.0:
        raise DegenerateKernelError("Kernel has no positive weight")
    return k / total


def broadcast_mask(mask: BinaryMask, image: PlanarImage) -> NDArray[np.bool_]:
    """Return the mask shaped to broadcast against ``image``."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != image.shape[:2]:
        raise DimensionError(f"Mask shape {mask.shape} does not match image shape {image.shape[:2]}")
    return mask[:, :, None] if image.ndim == 3 else mask
