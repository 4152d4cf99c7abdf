"""Per-pixel shrinkage of the auxiliary gradient variable."""

from typing import Literal

import numpy as np

from ..exceptions import ParameterError
from ..imaging.derivatives import circular_gradient, gradient
from ..imaging.types import GradientField, PlanarImage, require_gray

GradientBoundary = Literal['replicate', 'circular']


def shrink(field: GradientField, threshold: float) -> GradientField:
    """Soft-threshold gradient vectors by magnitude; zero vectors stay zero."""
    gx, gy = field
    magnitude = np.hypot(gx, gy)
    safe = np.where(magnitude > 0, magnitude, 1.0)
    scale = np.where(magnitude > 0, np.maximum(magnitude - threshold, 0.0) / safe, 0.0)
    return GradientField(gx * scale, gy * scale)


def update_v(latent, alpha: float, beta: float, boundary: GradientBoundary = 'replicate') -> GradientField:
    """v = (g / |g|) * max(|g| - beta / (2 alpha), 0) with g the gradient of ``latent``."""
    latent = require_gray(latent, "update_v")
    if alpha <= 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    field = circular_gradient(latent) if boundary == 'circular' else gradient(latent)
    return shrink(field, beta / (2.0 * alpha))
