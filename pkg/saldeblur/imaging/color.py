"""Resizing and color-space conversion."""

import numpy as np
from skimage import color, transform

from ..exceptions import ParameterError
from .types import PlanarImage, as_image, require_color

GRAY_WEIGHTS = np.array([0.299, 0.587, 0.114])


def resize(image, new_width: int, new_height: int) -> PlanarImage:
    """Bilinear resize; same-size requests return an unchanged copy.

    Shrinking applies a Gaussian pre-filter so coarse pyramid levels carry less noise.
    """
    image = as_image(image)
    if new_width <= 0 or new_height <= 0:
        raise ParameterError(f"Target dimensions must be positive, got {new_width}x{new_height}")
    if image.shape[:2] == (new_height, new_width):
        return image.copy()
    shape = (new_height, new_width) + image.shape[2:]
    shrinking = new_height < image.shape[0] or new_width < image.shape[1]
    return transform.resize(image, shape, order=1, mode="edge", anti_aliasing=shrinking, preserve_range=True)


def rgb_to_gray(image) -> PlanarImage:
    image = as_image(image)
    if image.ndim == 2:
        return image
    return image @ GRAY_WEIGHTS


def rgb_to_lab(image) -> PlanarImage:
    """CIE Lab under the D65 white point."""
    image = require_color(image, "rgb_to_lab")
    return color.rgb2lab(np.clip(image, 0.0, 1.0), illuminant="D65")
