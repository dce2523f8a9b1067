class KMeansError(Exception):
    """Base class for every error raised by the library."""


class ContractError(KMeansError, ValueError):
    """A precondition of an operation was violated (shape, range, dimensionality)."""


class InvalidRequestError(KMeansError, ValueError):
    pass
