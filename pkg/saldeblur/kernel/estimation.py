"""Closed-form kernel estimation in the Fourier domain."""

import logging

import numpy as np

from ..exceptions import DimensionError, NoStructureError
from ..imaging.convolution import convolve_circular
from ..imaging.types import BlurKernel, normalize_kernel
from ..models.config import KernelEstParams
from .gradients import GradientPairs

logger = logging.getLogger(__name__)


def estimate_kernel_spectrum(pairs: GradientPairs, gamma: float) -> np.ndarray:
    """Image-sized minimizer of sum_i w_i |K * P_i - dB_i|^2 + gamma |K|^2 under periodic boundaries.

    The result is in origin-centered layout: the zero-shift tap sits at [0, 0].
    """
    numerator = np.zeros(pairs.shape, dtype=np.complex128)
    denominator = np.full(pairs.shape, float(gamma), dtype=np.float64)
    for weight, latent, observed in pairs:
        fp = np.fft.fft2(latent)
        numerator += weight * np.conj(fp) * np.fft.fft2(observed)
        denominator += weight * np.real(np.conj(fp) * fp)
    return np.real(np.fft.ifft2(numerator / denominator))


def crop_centered(full: np.ndarray, kernel_size: int) -> np.ndarray:
    """Cut a ``kernel_size`` square around the zero-shift position of an origin-centered array."""
    r = kernel_size // 2
    return np.roll(full, (r, r), axis=(0, 1))[:kernel_size, :kernel_size].copy()


def estimate_kernel(pairs: GradientPairs, params: KernelEstParams = None, kernel_size: int = 15) -> BlurKernel:
    """Solve for the kernel, crop it, clamp negatives and normalize to unit sum."""
    params = params or KernelEstParams()
    h, w = pairs.shape
    if kernel_size > min(h, w):
        raise DimensionError(f"Kernel size {kernel_size} exceeds gradient grid {w}x{h}")
    if pairs.is_empty():
        raise NoStructureError("All thresholded gradients are zero; nothing to estimate a kernel from")

    full = estimate_kernel_spectrum(pairs, params.gamma)
    kernel = normalize_kernel(crop_centered(full, kernel_size))
    logger.debug(f"Estimated {kernel_size}x{kernel_size} kernel, peak weight {kernel.max():.4f}")
    return kernel


def kernel_energy(kernel: BlurKernel, pairs: GradientPairs, theta: float = 5.0) -> float:
    """Weighted data misfit of ``kernel`` on the pairs plus theta |K|^2, periodic boundaries."""
    energy = theta * float(np.sum(kernel ** 2))
    for weight, latent, observed in pairs:
        residual = convolve_circular(latent, kernel) - observed
        energy += weight * float(np.sum(residual ** 2))
    return energy
