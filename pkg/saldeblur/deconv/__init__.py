"""Adaptive shrinkage deconvolution."""

from .shrinkage import shrink, update_v
from .solver import AlphaSchedule, solve_L, deconvolve, latent_energy

__all__ = ["shrink", "update_v", "AlphaSchedule", "solve_L", "deconvolve", "latent_energy"]
