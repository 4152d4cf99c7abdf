"""Saliency-based blind motion deblurring."""

from .core.pipeline import (
    DeblurPipeline,
    configure_logging,
    deblur_uniform,
    deblur_spatially_variant,
    deblur_multi_region,
)
from .models.config import DeblurConfig, load_config
from .models.data import BenchRecord, BenchReport, Rect, SynthSpec

__version__ = "1.0.0"
__all__ = [
    "DeblurPipeline",
    "configure_logging",
    "deblur_uniform",
    "deblur_spatially_variant",
    "deblur_multi_region",
    "DeblurConfig",
    "load_config",
    "BenchRecord",
    "BenchReport",
    "Rect",
    "SynthSpec",
]
