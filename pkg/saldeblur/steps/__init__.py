"""Per-iteration deblurring steps."""

from .predict_step import PdePredictStep, ShockPredictStep
from .kernel_step import ThresholdStep, EstimateStep, DenoiseStep
from .deconv_step import DeconvolveStep

__all__ = [
    "PdePredictStep",
    "ShockPredictStep",
    "ThresholdStep",
    "EstimateStep",
    "DenoiseStep",
    "DeconvolveStep",
]
