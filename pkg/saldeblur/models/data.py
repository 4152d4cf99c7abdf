"""Data models for the deblurring pipeline."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class Rect(BaseModel):
    """Axis-aligned rectangle, top-left corner plus extent, in pixels."""
    model_config = ConfigDict(frozen=True)

    x: int = Field(ge=0)
    y: int = Field(ge=0)
    w: int = Field(ge=1)
    h: int = Field(ge=1)

    @property
    def area(self) -> int:
        return self.w * self.h

    def slices(self):
        return slice(self.y, self.y + self.h), slice(self.x, self.x + self.w)

    def __str__(self) -> str:
        return f"{self.x} {self.y} {self.w} {self.h}"


class ScaleLevel(BaseModel):
    """One pyramid level: image dimensions and the odd kernel size used there."""
    model_config = ConfigDict(frozen=True)

    index: int
    width: int
    height: int
    kernel_size: int
    scale: float


@dataclass
class ScaleState:
    """Working set of one pyramid level, mutated by the iteration steps."""
    level: ScaleLevel
    blurry: np.ndarray
    latent: np.ndarray
    kernel: np.ndarray
    lam: float
    alpha: float
    iteration: int = 0
    predicted: Optional[np.ndarray] = None
    edge_map: Optional[np.ndarray] = None
    pairs: Optional[Any] = None
    kernel_energy: Optional[float] = None
    latent_energy: Optional[float] = None
    kernels: List[np.ndarray] = field(default_factory=list)


class StepMetadata(BaseModel):
    """Metadata for a single step execution."""
    step_name: str
    execution_time: float
    success: bool
    error_message: Optional[str] = None
    scale: int = 0
    iteration: int = 0


class TraceRecord(BaseModel):
    """One row of the per-iteration CSV trace."""
    scale: int
    iter: int
    lam: float = Field(serialization_alias="lambda")
    alpha: float
    fK_energy: Optional[float] = None
    fL_energy: Optional[float] = None


class SynthSpec(BaseModel):
    """Ground-truth blur generator: kernel family, noise level and seed."""
    family: Literal['line', 'gaussian', 'disk'] = 'line'
    length: float = 15.0
    angle: float = 0.0
    sigma: float = 1.0
    radius: float = 3.0
    kernel_size: Optional[int] = None
    noise: float = Field(default=0.0, ge=0.0)
    seed: int = 0

    @classmethod
    def parse(cls, text: str, noise: float = 0.0, seed: int = 0, kernel_size: Optional[int] = None) -> "SynthSpec":
        """Parse ``line:LEN:ANGLE``, ``gaussian:SIGMA`` or ``disk:RADIUS``."""
        parts = text.split(":")
        family = parts[0]
        try:
            if family == "line" and len(parts) == 3:
                return cls(family="line", length=float(parts[1]), angle=float(parts[2]),
                           noise=noise, seed=seed, kernel_size=kernel_size)
            if family == "gaussian" and len(parts) == 2:
                return cls(family="gaussian", sigma=float(parts[1]),
                           noise=noise, seed=seed, kernel_size=kernel_size)
            if family == "disk" and len(parts) == 2:
                return cls(family="disk", radius=float(parts[1]),
                           noise=noise, seed=seed, kernel_size=kernel_size)
        except ValueError:
            pass
        raise ValueError(f"Invalid kernel spec '{text}'; expected line:LEN:ANGLE, gaussian:SIGMA or disk:RADIUS")


class BenchRecord(BaseModel):
    """Per-image benchmark record (RMSE table and timing table columns)."""
    model_config = ConfigDict(populate_by_name=True)

    image_id: str = Field(alias="imageId")
    width: int
    height: int
    ksize: Optional[int] = None
    rmse_blurry: float = Field(alias="rmseBlurry", ge=0.0)
    rmse_deblurred: float = Field(alias="rmseDeblurred", ge=0.0)
    kernel_ncc: Optional[float] = Field(default=None, alias="kernelNcc")
    seconds: Optional[float] = Field(default=None, gt=0.0)


class BenchReport(BaseModel):
    """Collection of benchmark records."""
    records: List[BenchRecord] = Field(default_factory=list)

    def to_json(self, include_timing: bool = True) -> str:
        exclude: Dict[str, Any] = {} if include_timing else {"records": {"__all__": {"seconds"}}}
        return self.model_dump_json(by_alias=True, indent=2, exclude=exclude)
