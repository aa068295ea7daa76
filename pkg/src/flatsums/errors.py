"""Exception types shared across the package."""


class FlatsumsError(Exception):
    """Base class for package errors."""


class DomainError(FlatsumsError, ValueError):
    """Invalid argument or malformed input (CLI exit code 2)."""


class ResourceError(FlatsumsError, RuntimeError):
    """Evaluation/refinement budget exhausted (CLI exit code 3).

    ``certificate`` carries the best-so-far result when the failing
    operation produced one (it is still a sound, just loose, bound).
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class CutoffRangeError(ResourceError):
    """Cutoff search walked past the largest representable kernel order.

    ``last_m`` / ``last_bound`` describe the final probed order; the bound
    there is itself meaningful output (the count bound never reached the
    requested size below ``last_m``).
    """

    def __init__(self, message, last_m, last_bound):
        super().__init__(message)
        self.last_m = last_m
        self.last_bound = last_bound
