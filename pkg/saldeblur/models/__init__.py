"""Data models and configuration."""

from .config import (
    DeblurConfig,
    PredictParams,
    ShockParams,
    KernelEstParams,
    DeconvParams,
    SaliencyParams,
    load_config,
)
from .data import (
    Rect,
    ScaleLevel,
    ScaleState,
    StepMetadata,
    TraceRecord,
    SynthSpec,
    BenchRecord,
    BenchReport,
)

__all__ = [
    "DeblurConfig",
    "PredictParams",
    "ShockParams",
    "KernelEstParams",
    "DeconvParams",
    "SaliencyParams",
    "load_config",
    "Rect",
    "ScaleLevel",
    "ScaleState",
    "StepMetadata",
    "TraceRecord",
    "SynthSpec",
    "BenchRecord",
    "BenchReport",
]
