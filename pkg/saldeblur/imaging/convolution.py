"""Spatial and FFT-domain convolution."""

import logging
from typing import Literal

import numpy as np
from scipy import ndimage
from scipy.signal import windows

from ..exceptions import DimensionError
from .types import BlurKernel, PlanarImage, as_image, per_channel

logger = logging.getLogger(__name__)

ConvolutionMode = Literal['spatial', 'fft']
Boundary = Literal['replicate', 'taper']


def psf2otf(kernel: BlurKernel, shape) -> np.ndarray:
    """Transfer function of ``kernel`` with its center moved to the origin."""
    kh, kw = kernel.shape
    padded = np.zeros(shape, dtype=np.float64)
    padded[:kh, :kw] = kernel
    padded = np.roll(padded, (-(kh // 2), -(kw // 2)), axis=(0, 1))
    return np.fft.fft2(padded)


def taper_window(length: int, pad: int) -> np.ndarray:
    """1D Tukey window: flat over ``length`` samples, Hann ramps of ``pad`` on both sides."""
    if pad <= 0:
        return np.ones(length)
    ramp = windows.hann(2 * pad + 1)[:pad]
    return np.concatenate([ramp, np.ones(length), ramp[::-1]])


def pad_image(image: PlanarImage, pad: int, taper: bool = False) -> PlanarImage:
    """Replicate-pad a single-channel image; optionally fade the pad toward the image mean.

    The faded frame makes opposite borders meet at the same value, which keeps
    the circular wraparound of the FFT from injecting a step edge.
    """
    if pad <= 0:
        return image.copy()
    padded = np.pad(image, pad, mode="edge")
    if taper:
        h, w = image.shape
        window = np.outer(taper_window(h, pad), taper_window(w, pad))
        mean = image.mean()
        padded = mean + window * (padded - mean)
    return padded


def _check_kernel(image: PlanarImage, kernel: BlurKernel) -> None:
    if kernel.ndim != 2 or kernel.shape[0] != kernel.shape[1] or kernel.shape[0] % 2 == 0:
        raise DimensionError(f"Kernel must be square with odd side, got shape {kernel.shape}")
    if kernel.shape[0] > min(image.shape[:2]):
        raise DimensionError(
            f"Kernel side {kernel.shape[0]} exceeds image dimensions {image.shape[1]}x{image.shape[0]}")


def _convolve_fft(channel: PlanarImage, kernel: BlurKernel, boundary: Boundary) -> PlanarImage:
    pad = kernel.shape[0] // 2
    padded = pad_image(channel, pad, taper=(boundary == 'taper'))
    spectrum = np.fft.fft2(padded) * psf2otf(kernel, padded.shape)
    result = np.real(np.fft.ifft2(spectrum))
    h, w = channel.shape
    return result[pad:pad + h, pad:pad + w]


def convolve(image, kernel, mode: ConvolutionMode = 'fft', boundary: Boundary = 'replicate') -> PlanarImage:
    """Convolve every channel of ``image`` with ``kernel``.

    ``spatial`` is the direct double sum with replicated borders. ``fft`` pads
    by half a kernel width before the transform and crops back, so under
    ``replicate`` it reproduces the spatial result; ``taper`` additionally
    fades the pad and only differs within half a kernel of the border.
    """
    image = as_image(image)
    kernel = np.asarray(kernel, dtype=np.float64)
    _check_kernel(image, kernel)

    if mode == 'spatial':
        return per_channel(lambda c: ndimage.convolve(c, kernel, mode="nearest"), image)
    if mode == 'fft':
        return per_channel(lambda c: _convolve_fft(c, kernel, boundary), image)
    raise ValueError(f"Unknown convolution mode '{mode}'")


def convolve_circular(image: PlanarImage, kernel: BlurKernel) -> PlanarImage:
    """Periodic-boundary convolution of a single channel."""
    return np.real(np.fft.ifft2(np.fft.fft2(image) * psf2otf(kernel, image.shape)))
