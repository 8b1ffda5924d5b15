"""Error hierarchy shared by the resampling toolkit.

Every error raised for bad data or impossible requests derives from
``ResamplingError`` so the CLI and the HTTP service can map them in one place.
"""


class ResamplingError(ValueError):
    """Base class for data and request errors."""


class DataError(ResamplingError):
    """CSV loading, validation or splitting failed."""


class NeighborError(ResamplingError):
    """A neighbor query asked for more points than the searched set holds."""


class ResampleError(ResamplingError):
    """SMOTE or ADASYN cannot run on the given dataset/configuration."""


class MetricsError(ResamplingError):
    """Evaluation inputs are inconsistent or undefined."""


class ModelError(ResamplingError):
    """The baseline classifier cannot be trained, applied or loaded."""
