"""Largest all-background rectangle in a binary mask."""

import logging
from typing import Iterator, Tuple

import numpy as np

from ..exceptions import BackgroundTooSmallError
from ..imaging.types import BinaryMask
from ..models.data import Rect

logger = logging.getLogger(__name__)


def _row_extents(heights: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """For each bar, the widest span [left, right) where all bars are at least as tall."""
    n = len(heights)
    left = np.zeros(n, dtype=int)
    right = np.full(n, n, dtype=int)

    stack = []
    for i in range(n):
        while stack and heights[stack[-1]] >= heights[i]:
            stack.pop()
        left[i] = stack[-1] + 1 if stack else 0
        stack.append(i)

    stack = []
    for i in range(n - 1, -1, -1):
        while stack and heights[stack[-1]] >= heights[i]:
            stack.pop()
        right[i] = stack[-1] if stack else n
        stack.append(i)

    return left, right


def maximal_rectangles(background: np.ndarray) -> Iterator[Tuple[int, int, int, int]]:
    """Yield one candidate per (bottom row, column) from the histogram-stack sweep.

    Every rectangle that cannot grow in any direction appears among the
    candidates, so any maximum-area rectangle does too.
    """
    rows, cols = background.shape
    heights = np.zeros(cols, dtype=int)
    for bottom in range(rows):
        heights = np.where(background[bottom], heights + 1, 0)
        left, right = _row_extents(heights)
        for j in range(cols):
            h = int(heights[j])
            if h == 0:
                continue
            yield int(left[j]), bottom - h + 1, int(right[j] - left[j]), h


def _rank(x: int, y: int, w: int, h: int) -> Tuple[int, int, int, int]:
    # largest area, then smallest (y, x), then the widest
    return (-w * h, y, x, h)


def largest_background_rectangle(mask: BinaryMask, min_side: int = 1) -> Rect:
    """Maximum-area rectangle of zero bits with both sides at least ``min_side``."""
    background = ~np.asarray(mask, dtype=bool)
    if not background.any():
        raise BackgroundTooSmallError("Mask has no background pixels")

    best = None
    for x, y, w, h in maximal_rectangles(background):
        if w < min_side or h < min_side:
            continue
        rank = _rank(x, y, w, h)
        if best is None or rank < best[0]:
            best = (rank, Rect(x=x, y=y, w=w, h=h))

    if best is None:
        raise BackgroundTooSmallError(
            f"No background rectangle with sides >= {min_side} in a {mask.shape[1]}x{mask.shape[0]} mask")
    logger.debug(f"Largest background rectangle: {best[1]}")
    return best[1]
