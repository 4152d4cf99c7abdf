"""Shock-filter sharpening, the prediction baseline."""

import numpy as np

from ..exceptions import ParameterError
from ..imaging.types import PlanarImage, require_gray
from ..models.config import ShockParams
from .bilateral import bilateral_filter


def _minmod(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.where(a * b > 0, np.sign(a) * np.minimum(np.abs(a), np.abs(b)), 0.0)


def _upwind_magnitude(image: PlanarImage) -> PlanarImage:
    p = np.pad(image, 1, mode="edge")
    center = p[1:-1, 1:-1]
    gx = _minmod(p[1:-1, 2:] - center, center - p[1:-1, :-2])
    gy = _minmod(p[2:, 1:-1] - center, center - p[:-2, 1:-1])
    return np.hypot(gx, gy)


def _five_point_laplacian(image: PlanarImage) -> PlanarImage:
    p = np.pad(image, 1, mode="edge")
    return p[1:-1, 2:] + p[1:-1, :-2] + p[2:, 1:-1] + p[:-2, 1:-1] - 4.0 * p[1:-1, 1:-1]


def shock_filter(image, dt: float = 0.5, iterations: int = 1) -> PlanarImage:
    """Iterate I <- clamp(I - sign(lap I) * |grad I| * dt).

    The gradient uses minmod-limited one-sided differences, so a pixel next
    to an ideal step sees zero gradient and the step is a fixed point.
    """
    image = require_gray(image, "shock_filter")
    if not 0.0 < dt <= 1.0:
        raise ParameterError(f"Shock filter time step must lie in (0, 1], got {dt}")
    current = image.copy()
    for _ in range(iterations):
        update = np.sign(_five_point_laplacian(current)) * _upwind_magnitude(current) * dt
        current = np.clip(current - update, 0.0, 1.0)
    return current


def predict_shock(image, params: ShockParams = None) -> PlanarImage:
    """Bilateral pre-smoothing followed by the shock filter."""
    image = require_gray(image, "predict_shock")
    params = params or ShockParams()
    smoothed = bilateral_filter(image, params.sigma_spatial, params.sigma_range)
    return shock_filter(smoothed, params.dt, params.iterations)
