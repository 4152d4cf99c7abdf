"""Statistics and iteration-trace collection for the deblurring pipeline."""

import csv
from pathlib import Path
from typing import List, Dict, Any, Union

from ..models.data import StepMetadata, TraceRecord

TRACE_COLUMNS = ("scale", "iter", "lambda", "alpha", "fK_energy", "fL_energy")


class StatisticsCollector:
    """Collects step outcomes and the per-iteration energy trace."""

    def __init__(self):
        self.steps_applied: List[str] = []
        self.steps_skipped: List[str] = []
        self.errors: List[str] = []
        self.step_metadata: List[StepMetadata] = []
        self.trace: List[TraceRecord] = []

    def record_step_success(self, step_name: str, execution_time: float, scale: int = 0, iteration: int = 0) -> None:
        self.steps_applied.append(step_name)
        self.step_metadata.append(StepMetadata(
            step_name=step_name,
            execution_time=execution_time,
            success=True,
            scale=scale,
            iteration=iteration,
        ))

    def record_step_failure(self, step_name: str, execution_time: float, error_message: str,
                            scale: int = 0, iteration: int = 0) -> None:
        """Record a failed step execution."""
        self.steps_skipped.append(step_name)
        self.errors.append(f"{step_name}: {error_message}")
        self.step_metadata.append(StepMetadata(
            step_name=step_name,
            execution_time=execution_time,
            success=False,
            error_message=error_message,
            scale=scale,
            iteration=iteration,
        ))

    def record_trace(self, record: TraceRecord) -> None:
        self.trace.append(record)

    def write_trace_csv(self, path: Union[str, Path]) -> None:
        """Write the trace with columns scale, iter, lambda, alpha, fK_energy, fL_energy."""
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=TRACE_COLUMNS)
            writer.writeheader()
            for record in self.trace:
                row = record.model_dump(by_alias=True)
                writer.writerow({key: ("" if row[key] is None else row[key]) for key in TRACE_COLUMNS})

    def reset(self) -> None:
        """Reset all statistics and the trace."""
        self.steps_applied.clear()
        self.steps_skipped.clear()
        self.errors.clear()
        self.step_metadata.clear()
        self.trace.clear()

    def get_summary(self) -> Dict[str, Any]:
        """Get a summary of all statistics."""
        total_execution_time = sum(meta.execution_time for meta in self.step_metadata)

        return {
            'steps_applied': len(self.steps_applied),
            'steps_skipped': len(self.steps_skipped),
            'errors': self.errors.copy(),
            'total_execution_time': total_execution_time,
            'step_count': len(self.step_metadata),
            'success_rate': len(self.steps_applied) / max(len(self.step_metadata), 1),
            'iterations': len(self.trace),
        }
