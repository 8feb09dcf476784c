"""Error taxonomy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, ConvergenceError -> 3.
Check failures exit 1 without raising.
"""


class ConfigError(ValueError):
    """Invalid model/decimation/run configuration or precondition violation."""


class DomainError(ConfigError):
    """Evaluation requested outside the declared analytic domain."""


class ConvergenceError(RuntimeError):
    """A numeric procedure failed to meet its tolerance."""
