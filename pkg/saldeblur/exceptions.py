"""Custom exceptions for the deblurring library."""


class DeblurError(Exception):
    """Base exception for deblurring errors."""
    pass


class StepError(DeblurError):
    """Exception raised when a pipeline step fails."""

    def __init__(self, step_name: str, message: str, original_error: Exception = None):
        self.step_name = step_name
        self.message = message
        self.original_error = original_error
        super().__init__(f"Step '{step_name}' failed: {message}")


class ConfigurationError(DeblurError):
    """Exception raised for configuration errors."""
    pass


class ValidationError(DeblurError):
    """Exception raised when an input violates an operation's preconditions."""
    pass


class DimensionError(ValidationError):
    """Shapes do not match, or an image is too small for the kernel."""
    pass


class ChannelError(ValidationError):
    """The image has the wrong number of channels for the operation."""
    pass


class ParameterError(ValidationError):
    """A numeric parameter is outside its admissible range."""
    pass


class ImageIOError(DeblurError):
    """Exception raised when an image or kernel file cannot be read or written."""

    def __init__(self, path, message: str):
        self.path = str(path)
        super().__init__(f"{path}: {message}")


class KernelError(DeblurError):
    """Base class for kernel estimation failures."""
    pass


class DegenerateKernelError(KernelError):
    """The kernel has no positive weight left."""
    pass


class NoStructureError(KernelError):
    """The gradient pairs carry no signal to estimate a kernel from."""
    pass


class SegmentationError(DeblurError):
    """Base class for saliency segmentation failures."""
    pass


class BackgroundTooSmallError(SegmentationError):
    """No background rectangle large enough for kernel estimation."""
    pass


class SegmentationDegenerateError(SegmentationError):
    """The saliency mask is empty or covers the whole image."""
    pass


class DisjointnessError(SegmentationError):
    """Region masks overlap."""
    pass
