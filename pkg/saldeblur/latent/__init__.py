"""Latent-image prediction: bilateral smoothing, anisotropic PDE and the shock-filter baseline."""

from .bilateral import bilateral_filter
from .pde import PdeTensors, enhance_step, pde_tensors, predict_latent
from .shock import shock_filter, predict_shock

__all__ = [
    "bilateral_filter",
    "PdeTensors",
    "pde_tensors",
    "enhance_step",
    "predict_latent",
    "shock_filter",
    "predict_shock",
]
