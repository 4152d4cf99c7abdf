"""Configuration models for the deblurring pipeline."""

import json
import math
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import ConfigurationError

PREDICTOR_STEPS = ("pde_predict", "shock_predict")


class PredictParams(BaseModel):
    """Parameters of the bilateral + anisotropic PDE latent prediction."""
    lam: float = Field(default=1.0, ge=0.0)
    sigma_spatial: float = Field(default=1.0, gt=0.0)
    sigma_range: float = Field(default=0.1, gt=0.0)
    pde_iterations: int = Field(default=5, ge=0)


class ShockParams(BaseModel):
    """Parameters of the bilateral + shock filter baseline prediction."""
    dt: float = Field(default=0.5, gt=0.0, le=1.0)
    iterations: int = Field(default=1, ge=0)
    sigma_spatial: float = Field(default=1.0, gt=0.0)
    sigma_range: float = Field(default=0.1, gt=0.0)


class KernelEstParams(BaseModel):
    """Parameters of the FFT-domain kernel estimation and kernel denoising."""
    theta: float = Field(default=5.0, gt=0.0)
    gamma: float = Field(default=5.0, gt=0.0)
    denoise_divisor: int = Field(default=160, ge=128, le=256)
    threshold_ratio: float = Field(default=2.0, ge=0.0)
    weights: Tuple[float, float, float, float, float] = (25.0, 25.0, 12.5, 12.5, 12.5)


class DeconvParams(BaseModel):
    """Parameters of the adaptive shrinkage deconvolution."""
    alpha: float = Field(default=0.2, gt=0.0)
    beta: float = Field(default=1.0, ge=0.0)
    weights: Tuple[float, float, float, float, float, float] = (50.0, 25.0, 25.0, 12.5, 12.5, 12.5)
    inner_iterations: int = Field(default=3, ge=1)


class SaliencyParams(BaseModel):
    """Parameters of the saliency mask construction."""
    threshold_scale: float = Field(default=2.0, gt=0.0)
    dilate_radius: int = Field(default=8, ge=0)
    min_side: int = Field(default=45, ge=1)


class DeblurConfig(BaseModel):
    """Main deblurring configuration; every default follows the published settings."""
    model_config = ConfigDict(extra="forbid")

    kernel_size: int = 15
    pyramid_factor: float = Field(default=1.0 / math.sqrt(2.0), gt=0.0, lt=1.0)
    min_kernel: int = Field(default=3, ge=1)
    iterations_per_scale: int = Field(default=7, ge=0)

    lambda0: float = Field(default=1.0, gt=0.0)
    lambda_decay: float = Field(default=0.9, gt=0.0, le=1.0)
    pde_iterations: int = Field(default=5, ge=0)
    bilateral_sigma_spatial: float = Field(default=1.0, gt=0.0)
    bilateral_sigma_range: float = Field(default=0.1, gt=0.0)
    shock_dt: float = Field(default=0.5, gt=0.0, le=1.0)
    shock_iterations: int = Field(default=1, ge=0)

    theta: float = Field(default=5.0, gt=0.0)
    gamma: float = Field(default=5.0, gt=0.0)
    grad_weights: Tuple[float, float, float, float, float] = (25.0, 25.0, 12.5, 12.5, 12.5)
    denoise_divisor: int = Field(default=160, ge=128, le=256)
    threshold_ratio: float = Field(default=2.0, ge=0.0)

    alpha0: float = Field(default=0.2, gt=0.0)
    mu: float = Field(default=0.9, gt=0.0, lt=1.0)
    beta: float = Field(default=1.0, ge=0.0)
    deconv_weights: Tuple[float, float, float, float, float, float] = (50.0, 25.0, 25.0, 12.5, 12.5, 12.5)
    inner_iterations: int = Field(default=3, ge=1)
    intermediate_inner_iterations: int = Field(default=1, ge=1)

    saliency_threshold_scale: float = Field(default=2.0, gt=0.0)
    dilate_radius: Optional[int] = Field(default=None, ge=0)
    min_side: Optional[int] = Field(default=None, ge=1)

    steps: List[str] = Field(default=["pde_predict", "threshold", "estimate", "denoise", "deconvolve"])
    error_handling: Literal['continue', 'stop'] = 'stop'
    logging_level: str = 'INFO'
    threads: int = Field(default=1, ge=1)

    @field_validator("kernel_size")
    @classmethod
    def _odd_kernel(cls, value: int) -> int:
        if value < 3 or value % 2 == 0:
            raise ValueError(f"kernel_size must be odd and >= 3, got {value}")
        return value

    @field_validator("grad_weights", "deconv_weights")
    @classmethod
    def _positive_weights(cls, value):
        if any(w <= 0 for w in value):
            raise ValueError("derivative weights must be positive")
        return value

    @model_validator(mode="after")
    def _check_steps(self) -> "DeblurConfig":
        predictors = [s for s in self.steps if s in PREDICTOR_STEPS]
        if len(predictors) != 1:
            raise ValueError(f"steps must contain exactly one of {PREDICTOR_STEPS}, got {self.steps}")
        if "estimate" not in self.steps:
            raise ValueError("steps must contain 'estimate'")
        return self

    @property
    def effective_dilate_radius(self) -> int:
        if self.dilate_radius is not None:
            return self.dilate_radius
        return math.ceil(self.kernel_size / 2)

    @property
    def effective_min_side(self) -> int:
        if self.min_side is not None:
            return self.min_side
        return 3 * self.kernel_size

    def lambda_at(self, n: int) -> float:
        """PDE strength after n iterations at one scale."""
        return self.lambda0 * self.lambda_decay ** n

    def alpha_at(self, n: int) -> float:
        """Gradient-similarity weight after n iterations at one scale."""
        return self.alpha0 * self.mu ** n

    def predict_params(self, lam: float) -> PredictParams:
        return PredictParams(
            lam=lam,
            sigma_spatial=self.bilateral_sigma_spatial,
            sigma_range=self.bilateral_sigma_range,
            pde_iterations=self.pde_iterations,
        )

    def shock_params(self) -> ShockParams:
        return ShockParams(
            dt=self.shock_dt,
            iterations=self.shock_iterations,
            sigma_spatial=self.bilateral_sigma_spatial,
            sigma_range=self.bilateral_sigma_range,
        )

    def kernel_params(self) -> KernelEstParams:
        return KernelEstParams(
            theta=self.theta,
            gamma=self.gamma,
            denoise_divisor=self.denoise_divisor,
            threshold_ratio=self.threshold_ratio,
            weights=self.grad_weights,
        )

    def deconv_params(self, alpha: Optional[float] = None, inner_iterations: Optional[int] = None) -> DeconvParams:
        return DeconvParams(
            alpha=self.alpha0 if alpha is None else alpha,
            beta=self.beta,
            weights=self.deconv_weights,
            inner_iterations=self.inner_iterations if inner_iterations is None else inner_iterations,
        )

    def saliency_params(self) -> SaliencyParams:
        return SaliencyParams(
            threshold_scale=self.saliency_threshold_scale,
            dilate_radius=self.effective_dilate_radius,
            min_side=self.effective_min_side,
        )


def _parse_flat_value(raw: str) -> Union[str, None, List[str]]:
    value = raw.strip()
    if value.lower() in ("none", "null", ""):
        return None
    if "," in value:
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def load_config(path: Union[str, Path, None], **overrides) -> DeblurConfig:
    """Load a DeblurConfig from JSON or flat ``key = value`` text; overrides win."""
    config_data = {}
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise ConfigurationError(f"Cannot read configuration file {path}: {e}") from e

        if path.suffix.lower() == ".json":
            try:
                config_data = json.loads(text)
            except json.JSONDecodeError as e:
                raise ConfigurationError(f"Invalid JSON in {path}: {e}") from e
        else:
            for lineno, line in enumerate(text.splitlines(), start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
                key, raw = line.split("=", 1)
                config_data[key.strip()] = _parse_flat_value(raw)
            config_data = {k: v for k, v in config_data.items() if v is not None}
            if isinstance(config_data.get("steps"), str):
                config_data["steps"] = [config_data["steps"]]

    config_data.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return DeblurConfig(**config_data)
    except ValueError as e:
        raise ConfigurationError(str(e)) from e
