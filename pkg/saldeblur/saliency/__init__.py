"""Saliency segmentation, background rectangles and compensate fusion."""

from .detection import saliency_map, saliency_from_lab, binarize_and_dilate
from .rectangle import largest_background_rectangle
from .fusion import (
    RegionPlan,
    separate,
    fuse_compensate,
    fuse_final,
    check_disjoint,
    multi_region_plan,
    compose_regions,
)

__all__ = [
    "saliency_map",
    "saliency_from_lab",
    "binarize_and_dilate",
    "largest_background_rectangle",
    "RegionPlan",
    "separate",
    "fuse_compensate",
    "fuse_final",
    "check_disjoint",
    "multi_region_plan",
    "compose_regions",
]
