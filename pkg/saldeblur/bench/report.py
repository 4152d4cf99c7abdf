"""Benchmark records: evaluation of result files and timed synthetic runs."""

import logging
import time
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from ..core.pipeline import DeblurPipeline
from ..exceptions import DimensionError, ImageIOError, ParameterError
from ..imaging.types import BinaryMask, BlurKernel, PlanarImage, as_image
from ..models.config import DeblurConfig
from ..models.data import BenchRecord, BenchReport, SynthSpec
from .metrics import kernel_ncc, rmse
from .synth import synth_blur, synth_kernel

logger = logging.getLogger(__name__)


def evaluate(sharp, blurry, deblurred, image_id: str = "image",
             kernel_true: Optional[BlurKernel] = None, kernel_est: Optional[BlurKernel] = None,
             seconds: Optional[float] = None, mask: Optional[BinaryMask] = None) -> BenchRecord:
    """RMSE of the blurry and deblurred images against the sharp one, plus kernel NCC when both kernels are known.

    With ``mask`` both RMSE values cover only the selected pixels.
    """
    sharp = as_image(sharp)
    height, width = sharp.shape[:2]
    ncc = None
    if kernel_true is not None and kernel_est is not None:
        ncc = kernel_ncc(kernel_est, kernel_true)
    ksize = None
    if kernel_est is not None:
        ksize = kernel_est.shape[0]
    elif kernel_true is not None:
        ksize = kernel_true.shape[0]
    return BenchRecord(
        image_id=image_id,
        width=width,
        height=height,
        ksize=ksize,
        rmse_blurry=rmse(blurry, sharp, mask),
        rmse_deblurred=rmse(deblurred, sharp, mask),
        kernel_ncc=ncc,
        seconds=seconds,
    )


def run_synthetic(sharp, spec: SynthSpec, config: DeblurConfig,
                  image_id: str = "image") -> Tuple[BenchRecord, PlanarImage, PlanarImage]:
    """Blur ``sharp`` per ``spec``, deblur it, and score the result.

    Only the deblur call is timed. Returns the record with the blurry and
    deblurred images.
    """
    kernel_true = synth_kernel(spec)
    blurry = synth_blur(sharp, spec, kernel=kernel_true)

    pipeline = DeblurPipeline(config)
    start = time.perf_counter()
    deblurred, kernel_est = pipeline.deblur_uniform(blurry)
    seconds = time.perf_counter() - start
    logger.info(f"{image_id}: deblurred in {seconds:.2f}s")

    record = evaluate(sharp, blurry, deblurred, image_id, kernel_true, kernel_est, seconds)
    return record, blurry, deblurred


def central_foreground(height: int, width: int, fraction: float = 0.4) -> BinaryMask:
    """Centered box covering ``fraction`` of each side."""
    if not 0.0 < fraction < 1.0:
        raise ParameterError(f"Foreground fraction must lie in (0, 1), got {fraction}")
    mask = np.zeros((height, width), dtype=bool)
    h, w = max(int(round(height * fraction)), 1), max(int(round(width * fraction)), 1)
    top, left = (height - h) // 2, (width - w) // 2
    mask[top:top + h, left:left + w] = True
    return mask


def run_synthetic_spatially_variant(sharp, spec: SynthSpec, config: DeblurConfig,
                                    foreground: Optional[BinaryMask] = None, image_id: str = "image",
                                    compensate: bool = True) -> Tuple[BenchRecord, PlanarImage, PlanarImage]:
    """Blur everything but a known sharp ``foreground``, deblur in sharp-foreground mode and score the background.

    Gray input is replicated to three channels. The foreground defaults to
    :func:`central_foreground`; it is handed to the pipeline in place of the
    saliency mask. Only the deblur call is timed.
    """
    sharp = as_image(sharp)
    if sharp.ndim == 2:
        sharp = np.repeat(sharp[:, :, None], 3, axis=2)
    height, width = sharp.shape[:2]
    if foreground is None:
        foreground = central_foreground(height, width)
    foreground = np.asarray(foreground, dtype=bool)
    if foreground.shape != (height, width):
        raise DimensionError(f"Foreground mask {foreground.shape} does not match image {height}x{width}")

    kernel_true = synth_kernel(spec)
    composite = np.where(foreground[:, :, None], sharp, synth_blur(sharp, spec, kernel=kernel_true))

    pipeline = DeblurPipeline(config)
    start = time.perf_counter()
    deblurred, kernel_est, _ = pipeline.deblur_spatially_variant(
        composite, 'sharp_foreground', foreground, compensate=compensate)
    seconds = time.perf_counter() - start
    logger.info(f"{image_id}: spatially-variant deblur in {seconds:.2f}s")

    record = evaluate(sharp, composite, deblurred, image_id, kernel_true, kernel_est, seconds, mask=~foreground)
    return record, composite, deblurred


def write_report(report: BenchReport, path: Union[str, Path], include_timing: bool = True) -> None:
    path = Path(path)
    try:
        path.write_text(report.to_json(include_timing=include_timing) + "\n")
    except OSError as e:
        raise ImageIOError(path, f"cannot write report: {e}") from e
