"""Base step class for the per-iteration deblurring steps."""

import time
import logging
from abc import ABC, abstractmethod
from typing import Tuple

from ..exceptions import StepError
from ..models.config import DeblurConfig
from ..models.data import ScaleState

logger = logging.getLogger(__name__)


class BaseStep(ABC):
    """Abstract base class for one stage of a coarse-to-fine iteration.

    A step reads what it needs from the ScaleState, computes, and only then
    writes its outputs back, so a failing step leaves the state untouched.
    """

    name = "step"

    def __init__(self, config: DeblurConfig):
        self.config = config
        self.validate_params()

    def validate_params(self) -> None:
        """Check the configuration fields this step depends on."""

    @abstractmethod
    def process(self, state: ScaleState) -> ScaleState:
        """Advance the state by this step and return it."""

    def execute(self, state: ScaleState) -> Tuple[ScaleState, float]:
        """Execute the step with timing and error handling."""
        start_time = time.time()

        try:
            logger.debug(f"Executing step {self.name} at scale {state.level.index}, iteration {state.iteration}")
            result = self.process(state)
            execution_time = time.time() - start_time
            logger.debug(f"Step {self.name} completed in {execution_time:.4f}s")
            return result, execution_time

        except Exception as e:
            execution_time = time.time() - start_time
            logger.error(f"Step {self.name} failed after {execution_time:.4f}s: {e}")
            raise StepError(self.name, str(e), e)
