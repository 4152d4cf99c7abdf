"""Image containers, derivatives, convolution, pyramids and file I/O."""

from .types import (
    PlanarImage,
    BlurKernel,
    BinaryMask,
    GradientField,
    as_image,
    delta_kernel,
    normalize_kernel,
)
from .convolution import convolve, convolve_circular, psf2otf, pad_image
from .derivatives import derivative, gradient, derivative_otf
from .pyramid import build_pyramid
from .color import resize, rgb_to_gray, rgb_to_lab
from .io import load, save, load_mask, save_mask, load_kernel, save_kernel

__all__ = [
    "PlanarImage",
    "BlurKernel",
    "BinaryMask",
    "GradientField",
    "as_image",
    "delta_kernel",
    "normalize_kernel",
    "convolve",
    "convolve_circular",
    "psf2otf",
    "pad_image",
    "derivative",
    "gradient",
    "derivative_otf",
    "build_pyramid",
    "resize",
    "rgb_to_gray",
    "rgb_to_lab",
    "load",
    "save",
    "load_mask",
    "save_mask",
    "load_kernel",
    "save_kernel",
]
