"""Coarse-to-fine blind deblurring pipeline and the saliency-based flows."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install
from skimage.util import montage

from ..deconv.solver import AlphaSchedule, deconvolve
from ..exceptions import (
    ConfigurationError,
    DegenerateKernelError,
    DimensionError,
    SegmentationDegenerateError,
    StepError,
)
from ..imaging.color import resize, rgb_to_gray
from ..imaging.io import edge_map_to_image, kernel_to_image, save
from ..imaging.pyramid import build_pyramid
from ..imaging.types import BinaryMask, BlurKernel, PlanarImage, as_image, delta_kernel, require_color
from ..kernel.denoise import denoise_kernel
from ..models.config import DeblurConfig
from ..models.data import Rect, ScaleLevel, ScaleState, TraceRecord
from ..saliency.detection import binarize_and_dilate, saliency_map
from ..saliency.fusion import RegionPlan, compose_regions, fuse_compensate, fuse_final, multi_region_plan
from ..saliency.rectangle import largest_background_rectangle
from .step_registry import StepRegistry
from .statistics import StatisticsCollector

logger = logging.getLogger(__name__)

console = Console(stderr=True)

Mode = Literal['sharp_foreground', 'blurry_foreground']


def configure_logging(level: Union[str, int] = "INFO") -> None:
    """Route log records through rich and install rich tracebacks."""
    install(console=console)
    rich_handler = RichHandler(console=console, show_time=True, show_path=True)
    logging.basicConfig(level=level, format="%(message)s", handlers=[rich_handler], force=True)


class DeblurPipeline:
    """Blind deblurring driven by a DeblurConfig.

    One instance runs one job at a time; statistics and the trace describe
    the most recent call.
    """

    def __init__(self, config: Union[DeblurConfig, Dict[str, Any], None] = None,
                 dump_dir: Optional[Union[str, Path]] = None):
        if config is None:
            self.config = DeblurConfig()
        elif isinstance(config, dict):
            try:
                self.config = DeblurConfig(**config)
            except ValueError as e:
                raise ConfigurationError(str(e)) from e
        else:
            self.config = config

        self.step_registry = StepRegistry()
        self.statistics = StatisticsCollector()
        self.dump_dir = Path(dump_dir) if dump_dir is not None else None

        self._validate_config()
        self.steps = [self.step_registry.create_step(name, self.config) for name in self.config.steps]

    def _validate_config(self) -> None:
        available_steps = self.step_registry.list_steps()
        for step in self.config.steps:
            if step not in available_steps:
                raise ConfigurationError(
                    f"Unknown step '{step}' in configuration. Available steps: {available_steps}")

    # -- uniform blur ------------------------------------------------------

    def deblur_uniform(self, blurry) -> Tuple[PlanarImage, BlurKernel]:
        """Estimate one kernel for the whole image, then run the final deconvolution."""
        blurry = as_image(blurry)
        self.statistics.reset()
        kernel = self.estimate_kernel_multiscale(rgb_to_gray(blurry))
        return self.final_deconvolution(blurry, kernel), kernel

    def final_deconvolution(self, image: PlanarImage, kernel: BlurKernel) -> PlanarImage:
        config = self.config
        logger.info(f"Final deconvolution with {config.inner_iterations} inner iterations")
        schedule = AlphaSchedule(alpha0=config.alpha0, mu=config.mu)
        return deconvolve(image, kernel, schedule, config.deconv_params(), threads=config.threads)

    def estimate_kernel_multiscale(self, gray: PlanarImage) -> BlurKernel:
        """Run the coarse-to-fine prediction / estimation / deconvolution loop on a gray image."""
        config = self.config
        if config.iterations_per_scale == 0:
            raise ConfigurationError("no iterations configured")
        min_side = 3 * config.kernel_size
        if min(gray.shape) < min_side:
            raise DimensionError(
                f"Image {gray.shape[1]}x{gray.shape[0]} is too small for kernel size "
                f"{config.kernel_size}; need at least {min_side} pixels per side")

        levels = build_pyramid(gray, config.kernel_size, config.min_kernel, config.pyramid_factor)
        logger.info(f"Estimating {config.kernel_size}x{config.kernel_size} kernel over {len(levels)} scales")

        state: Optional[ScaleState] = None
        for level in levels:
            state = self._start_scale(level, gray, state)
            for n in range(config.iterations_per_scale):
                self._run_iteration(state, n)
            self._dump_kernels(state)

        return state.kernel

    def _start_scale(self, level: ScaleLevel, gray: PlanarImage, previous: Optional[ScaleState]) -> ScaleState:
        blurry = resize(gray, level.width, level.height)
        if previous is None:
            latent = blurry.copy()
            kernel = delta_kernel(level.kernel_size)
        else:
            latent = resize(previous.latent, level.width, level.height)
            kernel = self._upscale_kernel(previous.kernel, level.kernel_size)

        logger.info(f"Scale {level.index}: {level.width}x{level.height}, kernel {level.kernel_size}")
        return ScaleState(level=level, blurry=blurry, latent=latent, kernel=kernel,
                          lam=self.config.lambda0, alpha=self.config.alpha0)

    def _upscale_kernel(self, kernel: BlurKernel, size: int) -> BlurKernel:
        if kernel.shape[0] == size:
            return kernel.copy()
        try:
            return denoise_kernel(resize(kernel, size, size), self.config.denoise_divisor)
        except DegenerateKernelError:
            logger.warning(f"Upscaled kernel vanished; restarting from a delta at size {size}")
            return delta_kernel(size)

    def _run_iteration(self, state: ScaleState, n: int) -> None:
        config = self.config
        state.iteration = n
        state.lam = config.lambda_at(n)
        state.alpha = config.alpha_at(n)
        state.predicted = None
        state.edge_map = None
        state.pairs = None
        state.kernel_energy = None
        state.latent_energy = None

        for step in self.steps:
            try:
                _, execution_time = step.execute(state)
                self.statistics.record_step_success(step.name, execution_time, state.level.index, n)

            except StepError as e:
                logger.error(f"Step '{step.name}' failed: {e.message}")
                self.statistics.record_step_failure(step.name, 0, e.message, state.level.index, n)

                if config.error_handling == 'stop':
                    raise
                # Continue with the state as the previous step left it

        self.statistics.record_trace(TraceRecord(
            scale=state.level.index, iter=n, lam=state.lam, alpha=state.alpha,
            fK_energy=state.kernel_energy, fL_energy=state.latent_energy))
        if state.kernel_energy is not None:
            logger.info(f"Scale {state.level.index} iteration {n}: f(K) = {state.kernel_energy:.6g}")
        self._dump_iteration(state)

    # -- diagnostics -------------------------------------------------------

    def _dump_iteration(self, state: ScaleState) -> None:
        if self.dump_dir is None:
            return
        self.dump_dir.mkdir(parents=True, exist_ok=True)
        prefix = f"scale{state.level.index:02d}_iter{state.iteration:02d}"
        save(state.latent, self.dump_dir / f"{prefix}_latent.png")
        if state.predicted is not None:
            save(state.predicted, self.dump_dir / f"{prefix}_predicted.png")
        if state.edge_map is not None:
            save(edge_map_to_image(state.edge_map), self.dump_dir / f"{prefix}_edge.png")

    def _dump_kernels(self, state: ScaleState) -> None:
        if self.dump_dir is None or not state.kernels:
            return
        self.dump_dir.mkdir(parents=True, exist_ok=True)
        tiles = np.stack([kernel_to_image(k) for k in state.kernels])
        save(montage(tiles, padding_width=1, fill=0.0), self.dump_dir / f"scale{state.level.index:02d}_kernels.png")

    # -- spatially-variant blur --------------------------------------------

    def saliency_mask(self, image) -> BinaryMask:
        params = self.config.saliency_params()
        return binarize_and_dilate(saliency_map(image), params.threshold_scale, params.dilate_radius)

    def _estimate_on_rectangle(self, image: PlanarImage, region: BinaryMask) -> Tuple[BlurKernel, Rect]:
        """Estimate a kernel on the largest rectangle lying entirely inside ``region``."""
        rect = largest_background_rectangle(~region, min_side=self.config.effective_min_side)
        logger.info(f"Estimating kernel on rectangle {rect}")
        rows, cols = rect.slices()
        return self.estimate_kernel_multiscale(rgb_to_gray(image)[rows, cols]), rect

    def _deblur_region(self, image: PlanarImage, region: BinaryMask,
                       compensate: bool = True) -> Tuple[PlanarImage, BlurKernel]:
        """Deblur a blurred ``region`` on a sharp rest: blur the rest with the region's kernel, deconvolve."""
        kernel, _ = self._estimate_on_rectangle(image, region)
        fused = RegionPlan(image=image, mask=region).fuse(kernel) if compensate else image
        return self.final_deconvolution(fused, kernel), kernel

    def deblur_spatially_variant(self, image, mode: Mode = 'sharp_foreground',
                                 mask: Optional[BinaryMask] = None,
                                 compensate: bool = True) -> Tuple[PlanarImage, BlurKernel, BinaryMask]:
        """Saliency-segmented deblurring of an image whose foreground and background differ in blur.

        In ``sharp_foreground`` mode the background carries the blur; in
        ``blurry_foreground`` mode the roles swap. A supplied ``mask``
        replaces the saliency mask. With ``compensate`` off the sharp side is
        deconvolved as it is instead of first being blurred with the estimated
        kernel; the final fusion still restores it from the input.
        """
        image = require_color(image, "deblur_spatially_variant")
        self.statistics.reset()
        if mask is None:
            mask = self.saliency_mask(image)
        mask = np.asarray(mask, dtype=bool)
        if not mask.any() or mask.all():
            raise SegmentationDegenerateError(
                f"Saliency mask is {'empty' if not mask.any() else 'full'}; nothing to separate")
        logger.info(f"Saliency mask covers {mask.mean():.1%} of the image")

        if mode == 'sharp_foreground':
            kernel, _ = self._estimate_on_rectangle(image, ~mask)
            fused = fuse_compensate(image, mask, kernel) if compensate else image
            deblurred = self.final_deconvolution(fused, kernel)
            return fuse_final(image, deblurred, mask), kernel, mask
        if mode == 'blurry_foreground':
            deblurred, kernel = self._deblur_region(image, mask, compensate)
            return compose_regions(image, [mask], [deblurred]), kernel, mask
        raise ConfigurationError(f"Unknown mode '{mode}'")

    def deblur_multi_region(self, image, masks: Sequence[BinaryMask]) -> PlanarImage:
        """Deblur each blurred region with its own kernel and compose them over the sharp rest."""
        image = as_image(image)
        self.statistics.reset()
        if len(masks) == 0:
            return image.copy()

        plans = multi_region_plan(image, masks)
        restored: List[PlanarImage] = []
        for index, plan in enumerate(plans):
            logger.info(f"Region {index + 1}/{len(plans)}: {int(plan.mask.sum())} pixels")
            deblurred, _ = self._deblur_region(image, plan.mask)
            restored.append(deblurred)
        return compose_regions(image, [plan.mask for plan in plans], restored)

    def get_statistics(self) -> Dict[str, Any]:
        """Get current pipeline statistics."""
        return self.statistics.get_summary()


def deblur_uniform(blurry, config: Optional[DeblurConfig] = None) -> Tuple[PlanarImage, BlurKernel]:
    return DeblurPipeline(config).deblur_uniform(blurry)


def deblur_spatially_variant(image, config: Optional[DeblurConfig] = None, mode: Mode = 'sharp_foreground',
                             mask: Optional[BinaryMask] = None,
                             compensate: bool = True) -> Tuple[PlanarImage, BlurKernel, BinaryMask]:
    return DeblurPipeline(config).deblur_spatially_variant(image, mode, mask, compensate)


def deblur_multi_region(image, masks: Sequence[BinaryMask], config: Optional[DeblurConfig] = None) -> PlanarImage:
    return DeblurPipeline(config).deblur_multi_region(image, masks)
