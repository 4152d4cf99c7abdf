"""Intermediate deconvolution step."""

from ..core.base_step import BaseStep
from ..deconv.shrinkage import update_v
from ..deconv.solver import AlphaSchedule, deconvolve, latent_energy
from ..models.data import ScaleState


class DeconvolveStep(BaseStep):
    """Restore the scale's latent image with the current kernel and alpha."""

    name = "deconvolve"

    def process(self, state: ScaleState) -> ScaleState:
        config = self.config
        params = config.deconv_params(alpha=state.alpha, inner_iterations=config.intermediate_inner_iterations)
        schedule = AlphaSchedule(alpha0=config.alpha0, mu=config.mu, index=state.iteration)

        latent = deconvolve(state.blurry, state.kernel, schedule, params)
        v = update_v(latent, state.alpha, config.beta, boundary='circular')
        state.latent_energy = latent_energy(
            latent, state.blurry, state.kernel, v, state.alpha, config.beta, config.deconv_weights)
        state.latent = latent
        return state
