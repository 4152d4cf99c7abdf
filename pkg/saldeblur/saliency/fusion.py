"""Separation and compensate-fusion arithmetic for masked regions.

Masks are binary, so every blend ``m * a + (1 - m) * b`` is evaluated as a
selection; pixels taken from an input are copied bit for bit.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..exceptions import DisjointnessError
from ..imaging.convolution import convolve
from ..imaging.types import BinaryMask, BlurKernel, PlanarImage, as_image, broadcast_mask, require_same_shape


def separate(image, mask: BinaryMask) -> Tuple[PlanarImage, PlanarImage]:
    """Split into (mask * image, (1 - mask) * image)."""
    image = as_image(image)
    m = broadcast_mask(mask, image)
    saliency_part = np.where(m, image, 0.0)
    background_part = np.where(m, 0.0, image)
    return saliency_part, background_part


def fuse_compensate(image, mask: BinaryMask, kernel: BlurKernel) -> PlanarImage:
    """Blur the masked part with ``kernel`` so the whole image carries one uniform blur."""
    image = as_image(image)
    m = broadcast_mask(mask, image)
    return np.where(m, convolve(image, kernel), image)


def fuse_final(original, deblurred, mask: BinaryMask) -> PlanarImage:
    """Keep the original on the mask and the deblurred image elsewhere."""
    original = as_image(original)
    deblurred = as_image(deblurred)
    require_same_shape(original, deblurred, operation="fuse_final")
    m = broadcast_mask(mask, original)
    return np.where(m, original, deblurred)


@dataclass
class RegionPlan:
    """One blurred region of a multi-region image and its complement-fusion recipe."""
    image: PlanarImage
    mask: BinaryMask

    @property
    def region(self) -> PlanarImage:
        return np.where(broadcast_mask(self.mask, self.image), self.image, 0.0)

    def fuse(self, kernel: BlurKernel) -> PlanarImage:
        """Blur everything outside the region with the region's kernel."""
        m = broadcast_mask(self.mask, self.image)
        return np.where(m, self.image, convolve(self.image, kernel))


def check_disjoint(masks: Sequence[BinaryMask]) -> None:
    coverage = None
    for index, mask in enumerate(masks):
        mask = np.asarray(mask, dtype=bool)
        if coverage is None:
            coverage = np.zeros(mask.shape, dtype=bool)
        elif mask.shape != coverage.shape:
            raise DisjointnessError(f"Mask {index} has shape {mask.shape}, expected {coverage.shape}")
        if np.any(coverage & mask):
            raise DisjointnessError(f"Mask {index} overlaps an earlier mask")
        coverage |= mask


def multi_region_plan(image, masks: Sequence[BinaryMask]) -> List[RegionPlan]:
    image = as_image(image)
    check_disjoint(masks)
    return [RegionPlan(image=image, mask=np.asarray(mask, dtype=bool)) for mask in masks]


def compose_regions(image, masks: Sequence[BinaryMask], deblurred: Sequence[PlanarImage]) -> PlanarImage:
    """Deblurred regions on their masks, the original everywhere else."""
    image = as_image(image)
    check_disjoint(masks)
    result = image.copy()
    for mask, restored in zip(masks, deblurred):
        result = np.where(broadcast_mask(mask, image), as_image(restored), result)
    return result
