"""Exception hierarchy; the CLI maps each family to an exit code."""


class OpucError(Exception):
    exit_code = 1


class ValidationError(OpucError, ValueError):
    """Bad input data: out-of-disk coefficient, malformed file, bad config."""

    exit_code = 1

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class CertificationError(OpucError):
    """A numeric self-check failed."""

    exit_code = 2


class BracketingError(CertificationError):
    """Phase tracking could not isolate one zero per window."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class VerificationError(CertificationError):
    pass


class OracleUnavailable(CertificationError):
    pass


class SparseBuildError(CertificationError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
