"""Blur-kernel estimation, denoising and alignment."""

from .gradients import (
    GradientPairs,
    direction_bins,
    select_by_direction,
    threshold_gradients,
    gradient_pairs,
)
from .estimation import estimate_kernel_spectrum, estimate_kernel, kernel_energy
from .denoise import denoise_kernel
from .align import align_kernel, centroid

__all__ = [
    "GradientPairs",
    "direction_bins",
    "select_by_direction",
    "threshold_gradients",
    "gradient_pairs",
    "estimate_kernel_spectrum",
    "estimate_kernel",
    "kernel_energy",
    "denoise_kernel",
    "align_kernel",
    "centroid",
]
