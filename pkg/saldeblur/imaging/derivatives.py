"""Finite-difference derivative operators and their transfer functions."""

from typing import Literal, Tuple

import numpy as np

from .types import GradientField, PlanarImage, require_gray

Derivative = Literal['d0', 'dx', 'dy', 'dxx', 'dyy', 'dxy']

DERIVATIVES: Tuple[str, ...] = ('d0', 'dx', 'dy', 'dxx', 'dyy', 'dxy')


def _forward_x(image: PlanarImage) -> PlanarImage:
    out = np.zeros_like(image)
    out[:, :-1] = image[:, 1:] - image[:, :-1]
    return out


def _forward_y(image: PlanarImage) -> PlanarImage:
    out = np.zeros_like(image)
    out[:-1, :] = image[1:, :] - image[:-1, :]
    return out


def derivative(image, which: Derivative) -> PlanarImage:
    """Forward difference [-1, 1] derivatives with replicated borders.

    Second derivatives are compositions of the first differences, so
    ``derivative(derivative(I, 'dx'), 'dx')`` equals ``derivative(I, 'dxx')``.
    """
    image = require_gray(image, "derivative")
    if which == 'd0':
        return image
    if which == 'dx':
        return _forward_x(image)
    if which == 'dy':
        return _forward_y(image)
    if which == 'dxx':
        return _forward_x(_forward_x(image))
    if which == 'dyy':
        return _forward_y(_forward_y(image))
    if which == 'dxy':
        return _forward_y(_forward_x(image))
    raise ValueError(f"Unknown derivative '{which}'")


def gradient(image) -> GradientField:
    image = require_gray(image, "gradient")
    return GradientField(_forward_x(image), _forward_y(image))


def circular_gradient(image: PlanarImage) -> GradientField:
    """Forward differences with periodic wraparound, matching :func:`derivative_otf`."""
    return GradientField(np.roll(image, -1, axis=1) - image, np.roll(image, -1, axis=0) - image)


def central_gradient(image: PlanarImage) -> GradientField:
    padded = np.pad(image, 1, mode="edge")
    gx = (padded[1:-1, 2:] - padded[1:-1, :-2]) / 2.0
    gy = (padded[2:, 1:-1] - padded[:-2, 1:-1]) / 2.0
    return GradientField(gx, gy)


def hessian(image: PlanarImage) -> Tuple[PlanarImage, PlanarImage, PlanarImage]:
    """Central-difference Hessian entries (Ixx, Ixy, Iyy) with replicated borders."""
    p = np.pad(image, 1, mode="edge")
    center = p[1:-1, 1:-1]
    ixx = p[1:-1, 2:] - 2.0 * center + p[1:-1, :-2]
    iyy = p[2:, 1:-1] - 2.0 * center + p[:-2, 1:-1]
    ixy = (p[2:, 2:] - p[2:, :-2] - p[:-2, 2:] + p[:-2, :-2]) / 4.0
    return ixx, ixy, iyy


def derivative_otf(which: Derivative, shape) -> np.ndarray:
    """Transfer function of the forward-difference operator under periodic boundaries."""
    h, w = shape
    fx = np.zeros((h, w))
    fx[0, 0] = -1.0
    fx[0, -1] = 1.0
    fy = np.zeros((h, w))
    fy[0, 0] = -1.0
    fy[-1, 0] = 1.0
    otf_x = np.fft.fft2(fx)
    otf_y = np.fft.fft2(fy)

    if which == 'd0':
        return np.ones((h, w), dtype=np.complex128)
    if which == 'dx':
        return otf_x
    if which == 'dy':
        return otf_y
    if which == 'dxx':
        return otf_x * otf_x
    if which == 'dyy':
        return otf_y * otf_y
    if which == 'dxy':
        return otf_x * otf_y
    raise ValueError(f"Unknown derivative '{which}'")
