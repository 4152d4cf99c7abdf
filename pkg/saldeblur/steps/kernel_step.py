"""Kernel estimation steps: gradient thresholding, FFT solve and denoising."""

import logging

from ..core.base_step import BaseStep
from ..imaging.derivatives import gradient
from ..kernel.align import align_kernel
from ..kernel.denoise import denoise_kernel
from ..kernel.estimation import estimate_kernel, kernel_energy
from ..kernel.gradients import gradient_pairs, threshold_gradients
from ..models.data import ScaleState

logger = logging.getLogger(__name__)


def _prediction(state: ScaleState):
    return state.predicted if state.predicted is not None else state.latent


class ThresholdStep(BaseStep):
    """Keep the strongest gradients of the prediction in every orientation bin."""

    name = "threshold"

    def process(self, state: ScaleState) -> ScaleState:
        field = threshold_gradients(_prediction(state), state.level.kernel_size, self.config.threshold_ratio)
        state.pairs = gradient_pairs(field, state.blurry, self.config.grad_weights)
        return state


class EstimateStep(BaseStep):
    """Solve for the kernel from the gradient pairs."""

    name = "estimate"

    def process(self, state: ScaleState) -> ScaleState:
        pairs = state.pairs
        if pairs is None:
            # no threshold step configured: use every gradient of the prediction
            pairs = gradient_pairs(gradient(_prediction(state)), state.blurry, self.config.grad_weights)

        params = self.config.kernel_params()
        previous = state.kernel
        kernel = estimate_kernel(pairs, params, state.level.kernel_size)
        state.pairs = pairs
        state.kernel = kernel
        state.kernel_energy = kernel_energy(kernel, pairs, params.theta)
        if logger.isEnabledFor(logging.DEBUG) and previous.shape == kernel.shape:
            logger.debug(f"f(K) on the current pairs: {kernel_energy(previous, pairs, params.theta):.6g} "
                         f"-> {state.kernel_energy:.6g}")
        state.kernels.append(kernel)
        return state


class DenoiseStep(BaseStep):
    """Suppress weak weights and isolated specks, then recentre the kernel on its centroid."""

    name = "denoise"

    def process(self, state: ScaleState) -> ScaleState:
        kernel = align_kernel(denoise_kernel(state.kernel, self.config.denoise_divisor))
        state.kernel = kernel
        if state.kernels:
            state.kernels[-1] = kernel
        return state
