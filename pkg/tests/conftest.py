"""Shared seeded fixtures."""

import numpy as np
import pytest


def rectangles_scene(size: int = 64, seed: int = 0, count: int = 12, border: int = 0) -> np.ndarray:
    """Piecewise-constant gray scene of random rectangles; ``border`` pixels of zeros on every side."""
    rng = np.random.default_rng(seed)
    image = np.full((size, size), 0.5)
    for _ in range(count):
        x, y = rng.integers(0, size - 8, size=2)
        w, h = rng.integers(4, max(size // 3, 5), size=2)
        image[y:y + h, x:x + w] = rng.uniform(0.05, 0.95)
    if border:
        image[:border, :] = 0.0
        image[-border:, :] = 0.0
        image[:, :border] = 0.0
        image[:, -border:] = 0.0
    return image


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def scene():
    return rectangles_scene


@pytest.fixture
def color_scene():
    def build(size: int = 64, seed: int = 0) -> np.ndarray:
        return np.stack([rectangles_scene(size, seed + c) for c in range(3)], axis=2)
    return build
