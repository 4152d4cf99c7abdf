"""Benchmark harness: metrics, synthetic blur and reports."""

from .metrics import rmse, psnr, kernel_ncc
from .synth import synth_kernel, synth_blur
from .report import (
    central_foreground,
    evaluate,
    run_synthetic,
    run_synthetic_spatially_variant,
    write_report,
)

__all__ = [
    "rmse",
    "psnr",
    "kernel_ncc",
    "synth_kernel",
    "synth_blur",
    "evaluate",
    "run_synthetic",
    "run_synthetic_spatially_variant",
    "central_foreground",
    "write_report",
]
