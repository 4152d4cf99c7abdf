"""Core pipeline components."""

from .pipeline import (
    DeblurPipeline,
    configure_logging,
    deblur_uniform,
    deblur_spatially_variant,
    deblur_multi_region,
)
from .base_step import BaseStep
from .step_registry import StepRegistry
from .statistics import StatisticsCollector

__all__ = [
    "DeblurPipeline",
    "configure_logging",
    "deblur_uniform",
    "deblur_spatially_variant",
    "deblur_multi_region",
    "BaseStep",
    "StepRegistry",
    "StatisticsCollector",
]
