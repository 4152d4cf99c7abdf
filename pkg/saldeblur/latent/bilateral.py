"""Edge-preserving bilateral pre-smoothing."""

import math

import numpy as np

from ..exceptions import ParameterError
from ..imaging.types import PlanarImage, require_gray


def bilateral_filter(image, sigma_spatial: float, sigma_range: float) -> PlanarImage:
    """Bilateral filter over a square window of radius ceil(2 * sigma_spatial).

    Borders are replicated. Each output pixel is the average of its window
    weighted by exp(-d^2 / 2 sigma_spatial^2) * exp(-(I_q - I_p)^2 / 2 sigma_range^2),
    renormalized per pixel.
    """
    image = require_gray(image, "bilateral_filter")
    if sigma_spatial <= 0 or sigma_range <= 0:
        raise ParameterError(
            f"Bilateral sigmas must be positive, got spatial={sigma_spatial}, range={sigma_range}")

    radius = int(math.ceil(2.0 * sigma_spatial))
    h, w = image.shape
    padded = np.pad(image, radius, mode="edge")

    numerator = np.zeros_like(image)
    denominator = np.zeros_like(image)
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            neighbor = padded[radius + dy:radius + dy + h, radius + dx:radius + dx + w]
            spatial = math.exp(-(dx * dx + dy * dy) / (2.0 * sigma_spatial ** 2))
            weight = spatial * np.exp(-((neighbor - image) ** 2) / (2.0 * sigma_range ** 2))
            numerator += weight * neighbor
            denominator += weight
    return numerator / denominator
