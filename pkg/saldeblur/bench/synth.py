"""Ground-truth blur generation for benchmarks."""

import math
from typing import Optional

import numpy as np
from skimage.draw import line_aa

from ..exceptions import ParameterError
from ..imaging.convolution import convolve
from ..imaging.pyramid import round_to_odd
from ..imaging.types import BlurKernel, PlanarImage, as_image, normalize_kernel
from ..models.data import SynthSpec


def _odd_at_least(value: float) -> int:
    size = int(math.ceil(value))
    return size if size % 2 else size + 1


def _line_kernel(length: float, angle: float, size: int) -> BlurKernel:
    """Anti-aliased segment through the center between the nearest whole-pixel endpoints.

    The raster is averaged with its point reflection so the segment stays centered.
    """
    kernel = np.zeros((size, size))
    center = size // 2
    half = (length - 1.0) / 2.0
    theta = math.radians(angle)
    dc = int(np.rint(half * math.cos(theta)))
    dr = int(np.rint(half * math.sin(theta)))
    rr, cc, val = line_aa(center + dr, center - dc, center - dr, center + dc)
    inside = (rr >= 0) & (rr < size) & (cc >= 0) & (cc < size)
    kernel[rr[inside], cc[inside]] = val[inside]
    return 0.5 * (kernel + kernel[::-1, ::-1])


def synth_kernel(spec: SynthSpec) -> BlurKernel:
    """Normalized kernel of the requested family, centered in an odd square."""
    if spec.family == "line":
        if spec.length <= 0:
            raise ParameterError(f"Line length must be positive, got {spec.length}")
        size = spec.kernel_size or _odd_at_least(spec.length + 2 if spec.length > 1 else 1)
        if spec.length > size:
            raise ParameterError(f"Line of length {spec.length} does not fit a {size}x{size} kernel")
        kernel = _line_kernel(spec.length, spec.angle, size)
    elif spec.family == "gaussian":
        if spec.sigma <= 0:
            raise ParameterError(f"Gaussian sigma must be positive, got {spec.sigma}")
        size = spec.kernel_size or max(round_to_odd(6.0 * spec.sigma + 1.0), 3)
        r = size // 2
        y, x = np.mgrid[-r:r + 1, -r:r + 1]
        kernel = np.exp(-(x * x + y * y) / (2.0 * spec.sigma ** 2))
    else:
        if spec.radius < 0:
            raise ParameterError(f"Disk radius must be non-negative, got {spec.radius}")
        size = spec.kernel_size or 2 * int(math.ceil(spec.radius)) + 1
        if 2 * spec.radius + 1 > size + 1e-9:
            raise ParameterError(f"Disk of radius {spec.radius} does not fit a {size}x{size} kernel")
        r = size // 2
        y, x = np.mgrid[-r:r + 1, -r:r + 1]
        kernel = (x * x + y * y <= spec.radius ** 2 + 1e-9).astype(np.float64)

    if size % 2 == 0:
        raise ParameterError(f"Kernel size must be odd, got {size}")
    return normalize_kernel(kernel)


def synth_blur(sharp, spec: SynthSpec, kernel: Optional[BlurKernel] = None) -> PlanarImage:
    """kernel * sharp plus seeded Gaussian noise, clamped to [0, 1]; no noise when sigma is zero."""
    sharp = as_image(sharp)
    kernel = synth_kernel(spec) if kernel is None else kernel
    blurred = convolve(sharp, kernel, mode='fft')
    if spec.noise == 0:
        return blurred
    rng = np.random.default_rng(spec.seed)
    return np.clip(blurred + rng.normal(0.0, spec.noise, size=blurred.shape), 0.0, 1.0)
