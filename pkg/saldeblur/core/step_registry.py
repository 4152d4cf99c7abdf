"""Step registry for the per-iteration deblurring steps."""

from typing import Dict, Type, List

from ..exceptions import ConfigurationError
from ..models.config import DeblurConfig
from .base_step import BaseStep


class StepRegistry:
    """Registry mapping step names to BaseStep subclasses."""

    def __init__(self):
        self._steps: Dict[str, Type[BaseStep]] = {}
        self._register_default_steps()

    def _register_default_steps(self) -> None:
        """Register the built-in iteration steps."""
        # Import here to avoid circular imports
        from ..steps.predict_step import PdePredictStep, ShockPredictStep
        from ..steps.kernel_step import ThresholdStep, EstimateStep, DenoiseStep
        from ..steps.deconv_step import DeconvolveStep

        for step_class in (PdePredictStep, ShockPredictStep, ThresholdStep,
                           EstimateStep, DenoiseStep, DeconvolveStep):
            self.register_step(step_class.name, step_class)

    def register_step(self, name: str, step_class: Type[BaseStep]) -> None:
        """Register a new step class."""
        if not issubclass(step_class, BaseStep):
            raise ConfigurationError(f"Step class {step_class} must inherit from BaseStep")

        self._steps[name] = step_class

    def get_step_class(self, name: str) -> Type[BaseStep]:
        """Get a step class by name."""
        if name not in self._steps:
            raise ConfigurationError(
                f"Unknown step '{name}'. Available steps: {list(self._steps.keys())}")

        return self._steps[name]

    def list_steps(self) -> List[str]:
        """List all registered step names."""
        return list(self._steps.keys())

    def create_step(self, name: str, config: DeblurConfig) -> BaseStep:
        """Create a step instance bound to the given configuration."""
        step_class = self.get_step_class(name)
        try:
            return step_class(config)
        except ValueError as e:
            raise ConfigurationError(f"Step '{name}': {e}") from e
