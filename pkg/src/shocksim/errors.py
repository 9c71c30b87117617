"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter lies outside its admissible domain."""


class InsufficientDataError(ValueError):
    """An estimator was asked to run on an empty or unusable sample."""


class OptimizationError(RuntimeError):
    """The margin grid search could not produce an optimum."""


class ConfigError(ValueError):
    """An experiment configuration file failed to parse or validate."""
