"""Adaptive non-blind deconvolution.

Alternates a closed-form Fourier update of the latent image L with the
shrinkage update of v, while the gradient-similarity weight alpha decays
geometrically.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..imaging.convolution import pad_image, psf2otf
from ..imaging.derivatives import DERIVATIVES, circular_gradient, derivative_otf
from ..imaging.types import BlurKernel, GradientField, PlanarImage, as_image, require_gray
from ..models.config import DeconvParams
from .shrinkage import update_v

logger = logging.getLogger(__name__)

SolveBoundary = Literal['taper', 'circular']
DENOMINATOR_FLOOR = 1e-12


class AlphaSchedule(BaseModel):
    """alpha_n = alpha0 * mu ** n."""
    alpha0: float = Field(default=0.2, gt=0.0)
    mu: float = Field(default=0.9, gt=0.0, lt=1.0)
    index: int = Field(default=0, ge=0)

    def alpha_at(self, n: int) -> float:
        return self.alpha0 * self.mu ** n

    @property
    def alpha(self) -> float:
        return self.alpha_at(self.index)

    def advanced(self, steps: int = 1) -> "AlphaSchedule":
        return self.model_copy(update={"index": self.index + steps})


@dataclass
class _Spectra:
    kernel: np.ndarray
    delta: np.ndarray
    dx: np.ndarray
    dy: np.ndarray


def _spectra(shape, kernel: BlurKernel, weights) -> _Spectra:
    delta = np.zeros(shape, dtype=np.float64)
    for weight, which in zip(weights, DERIVATIVES):
        otf = derivative_otf(which, shape)
        delta += weight * np.real(np.conj(otf) * otf)
    return _Spectra(
        kernel=psf2otf(kernel, shape),
        delta=delta,
        dx=derivative_otf('dx', shape),
        dy=derivative_otf('dy', shape),
    )


def _solve(blurry: PlanarImage, v: GradientField, alpha: float, spectra: _Spectra) -> PlanarImage:
    fk = spectra.kernel
    numerator = (np.conj(fk) * np.fft.fft2(blurry) * spectra.delta
                 + alpha * (np.conj(spectra.dx) * np.fft.fft2(v.dx) + np.conj(spectra.dy) * np.fft.fft2(v.dy)))
    denominator = (np.real(np.conj(fk) * fk) * spectra.delta
                   + alpha * np.real(np.conj(spectra.dx) * spectra.dx + np.conj(spectra.dy) * spectra.dy))
    denominator = np.where(denominator < DENOMINATOR_FLOOR, denominator + DENOMINATOR_FLOOR, denominator)
    return np.real(np.fft.ifft2(numerator / denominator))


def solve_L(blurry, kernel: BlurKernel, v: GradientField, params: Optional[DeconvParams] = None,
            boundary: SolveBoundary = 'taper', clamp: bool = True) -> PlanarImage:
    """Minimize sum_i w_i |d_i(K * L - B)|^2 + alpha |grad L - v|^2 over L in closed form.

    ``taper`` pads B by a kernel width with a faded replicate frame and v
    with zeros, solves on the padded grid and crops back. ``circular``
    solves on the image grid with periodic boundaries.
    """
    blurry = require_gray(blurry, "solve_L")
    params = params or DeconvParams()
    kernel = np.asarray(kernel, dtype=np.float64)

    if boundary == 'circular':
        result = _solve(blurry, v, params.alpha, _spectra(blurry.shape, kernel, params.weights))
    elif boundary == 'taper':
        pad = kernel.shape[0]
        padded = pad_image(blurry, pad, taper=True)
        v_padded = GradientField(np.pad(v.dx, pad), np.pad(v.dy, pad))
        full = _solve(padded, v_padded, params.alpha, _spectra(padded.shape, kernel, params.weights))
        h, w = blurry.shape
        result = full[pad:pad + h, pad:pad + w]
    else:
        raise ValueError(f"Unknown boundary '{boundary}'")

    return np.clip(result, 0.0, 1.0) if clamp else result


def _deconvolve_channel(blurry: PlanarImage, kernel: BlurKernel, schedule: AlphaSchedule,
                        params: DeconvParams, boundary: SolveBoundary) -> PlanarImage:
    latent = blurry.copy()
    gradient_boundary = 'circular' if boundary == 'circular' else 'replicate'
    for n in range(params.inner_iterations):
        alpha = schedule.alpha_at(schedule.index + n)
        v = update_v(latent, alpha, params.beta, boundary=gradient_boundary)
        latent = solve_L(blurry, kernel, v, params.model_copy(update={"alpha": alpha}), boundary=boundary)
    return latent


def deconvolve(blurry, kernel: BlurKernel, schedule: Optional[AlphaSchedule] = None,
               params: Optional[DeconvParams] = None, boundary: SolveBoundary = 'taper',
               threads: int = 1) -> PlanarImage:
    """Run ``inner_iterations`` (v, L) alternations starting from L = B.

    Color images are restored channel by channel with the same kernel; with
    ``threads`` > 1 the channels run concurrently and the result is the same.
    """
    blurry = as_image(blurry)
    params = params or DeconvParams()
    schedule = schedule or AlphaSchedule(alpha0=params.alpha)
    kernel = np.asarray(kernel, dtype=np.float64)

    if blurry.ndim == 2:
        return _deconvolve_channel(blurry, kernel, schedule, params, boundary)

    channels = [blurry[:, :, c] for c in range(blurry.shape[2])]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            restored = list(pool.map(
                lambda ch: _deconvolve_channel(ch, kernel, schedule, params, boundary), channels))
    else:
        restored = [_deconvolve_channel(ch, kernel, schedule, params, boundary) for ch in channels]
    return np.stack(restored, axis=2)


def latent_energy(latent, blurry, kernel: BlurKernel, v: GradientField, alpha: float, beta: float,
                  weights=(50.0, 25.0, 25.0, 12.5, 12.5, 12.5)) -> float:
    """Deconvolution objective under periodic boundaries.

    sum_i w_i |d_i(K * L - B)|^2 + alpha |grad L - v|^2 + beta sum |v|
    """
    latent = require_gray(latent, "latent_energy")
    blurry = require_gray(blurry, "latent_energy")
    shape = latent.shape
    residual = np.fft.fft2(latent) * psf2otf(kernel, shape) - np.fft.fft2(blurry)

    energy = 0.0
    for weight, which in zip(weights, DERIVATIVES):
        term = np.real(np.fft.ifft2(derivative_otf(which, shape) * residual))
        energy += weight * float(np.sum(term ** 2))

    gx, gy = circular_gradient(latent)
    energy += alpha * float(np.sum((gx - v.dx) ** 2 + (gy - v.dy) ** 2))
    energy += beta * float(np.sum(np.hypot(v.dx, v.dy)))
    return energy
