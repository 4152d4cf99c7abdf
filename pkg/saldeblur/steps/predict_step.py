"""Latent-image prediction steps."""

from ..core.base_step import BaseStep
from ..latent.pde import predict_latent
from ..latent.shock import predict_shock
from ..models.data import ScaleState


class PdePredictStep(BaseStep):
    """Bilateral smoothing plus anisotropic PDE enhancement with the scale's current lambda."""

    name = "pde_predict"

    def process(self, state: ScaleState) -> ScaleState:
        params = self.config.predict_params(state.lam)
        predicted, edge_map = predict_latent(state.latent, params, return_edge_map=True)
        state.predicted = predicted
        state.edge_map = edge_map
        return state


class ShockPredictStep(BaseStep):
    """Bilateral smoothing plus shock filtering, the baseline predictor."""

    name = "shock_predict"

    def validate_params(self) -> None:
        if self.config.shock_iterations < 1:
            raise ValueError("shock_predict needs shock_iterations >= 1")

    def process(self, state: ScaleState) -> ScaleState:
        predicted = predict_shock(state.latent, self.config.shock_params())
        state.predicted = predicted
        state.edge_map = predicted - state.latent
        return state
